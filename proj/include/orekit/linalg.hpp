#pragma once

#include <cstddef>
#include <map>

#include "orekit/ratfunc.hpp"

namespace orekit {

/// Incremental row echelon form over the coefficient field, with sparse rows
/// keyed by an arbitrary ordered column type. Pivot rows are normalized to
/// leading entry 1.
template <typename ColKey, typename Less = std::less<ColKey>>
class SparseEchelon {
  public:
    using Row = std::map<ColKey, RatFunc, Less>;

    /// Reduces the row against the current pivots; stores it if independent.
    /// Returns true when the rank grew.
    bool insert(Row row) {
        strip_zeros(row);
        while (!row.empty()) {
            const ColKey& lead = row.begin()->first;
            auto it = pivots_.find(lead);
            if (it == pivots_.end()) {
                RatFunc inv = row.begin()->second.inverse();
                for (auto& [c, v] : row) v = v * inv;
                pivots_.emplace(lead, std::move(row));
                return true;
            }
            RatFunc factor = row.begin()->second;
            for (auto& [c, v] : it->second) {
                auto jt = row.find(c);
                if (jt == row.end()) {
                    RatFunc nv = -(factor * v);
                    if (!nv.is_zero()) row.emplace(c, std::move(nv));
                } else {
                    jt->second = jt->second - factor * v;
                    if (jt->second.is_zero()) row.erase(jt);
                }
            }
        }
        return false;
    }

    std::size_t rank() const { return pivots_.size(); }

  private:
    std::map<ColKey, Row, Less> pivots_;

    static void strip_zeros(Row& row) {
        for (auto it = row.begin(); it != row.end();)
            it = it->second.is_zero() ? row.erase(it) : std::next(it);
    }
};

}  // namespace orekit
