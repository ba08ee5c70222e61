#include "orekit/report.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace orekit {

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::cited: return "cited";
    }
    return "?";
}

bool VerificationReport::overall_pass() const {
    for (const auto& c : checks)
        if (c.status == CheckStatus::fail) return false;
    return true;
}

std::string VerificationReport::to_text() const {
    std::ostringstream os;
    os << command << " (" << tool_version << ")\n";
    for (auto& [k, v] : instance) os << "  " << k << " = " << v << "\n";
    std::size_t width = 4;
    for (const auto& c : checks) width = std::max(width, c.name.size());
    os << "\n";
    for (const auto& c : checks) {
        os << "  " << std::left << std::setw(static_cast<int>(width)) << c.name << "  "
           << std::setw(5) << status_name(c.status) << "  " << std::setw(6)
           << (std::to_string(c.elapsed_ms) + "ms");
        if (!c.witness.empty()) os << "  " << c.witness;
        os << "\n";
    }
    os << "\noverall: " << (overall_pass() ? "pass" : "fail") << "\n";
    return os.str();
}

std::string VerificationReport::to_json(bool with_timing) const {
    nlohmann::ordered_json doc;
    doc["tool"] = "orekit";
    doc["version"] = tool_version;
    doc["command"] = command;
    nlohmann::ordered_json inst;
    for (auto& [k, v] : instance) inst[k] = v;
    doc["instance"] = std::move(inst);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["status"] = status_name(c.status);
        jc["witness"] = c.witness;
        if (with_timing) jc["elapsed_ms"] = c.elapsed_ms;
        arr.push_back(std::move(jc));
    }
    doc["checks"] = std::move(arr);
    doc["overall"] = overall_pass() ? "pass" : "fail";
    return doc.dump(2) + "\n";
}

}  // namespace orekit
