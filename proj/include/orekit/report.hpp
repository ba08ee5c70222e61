#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace orekit {

enum class CheckStatus { pass, fail, cited };

const char* status_name(CheckStatus s);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::fail;
    std::string witness;  // expression or explanation backing the verdict
    std::int64_t elapsed_ms = 0;
};

/// Aggregated result of a verification run. "cited" entries record facts
/// taken from the paper's argument rather than computed; they never flip
/// the overall status.
struct VerificationReport {
    std::string tool_version;
    std::string command;
    std::vector<std::pair<std::string, std::string>> instance;  // ordered parameters
    std::vector<CheckResult> checks;

    bool overall_pass() const;
    /// Human-readable table; always shows timings.
    std::string to_text() const;
    /// Machine-readable document with fixed key order and no floats.
    /// Timings are volatile across runs, so they are opt-in.
    std::string to_json(bool with_timing = false) const;
};

}  // namespace orekit
