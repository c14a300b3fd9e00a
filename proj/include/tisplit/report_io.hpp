#pragma once

#include "tisplit/errors.hpp"
#include "tisplit/matrix_io.hpp"
#include "tisplit/suite.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <span>
#include <string>

namespace tisplit::io {

/// JSON array of {variant, seed, input_digest, checks: [{name, residual,
/// tolerance, passed}]}. Skipped or failed entries additionally carry
/// "skipped" and/or "reason".
inline nlohmann::ordered_json reports_to_json(std::span<const props::VerificationReport> reports) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json obj;
        obj["variant"] = std::string(variant_name(r.variant));
        obj["seed"] = r.seed;
        obj["input_digest"] = r.input_digest;
        auto checks = nlohmann::ordered_json::array();
        for (const auto& c : r.checks) {
            nlohmann::ordered_json entry;
            entry["name"] = c.name;
            entry["residual"] = c.residual;
            entry["tolerance"] = c.tolerance;
            entry["passed"] = c.passed;
            if (c.skipped) entry["skipped"] = true;
            if (!c.reason.empty()) entry["reason"] = c.reason;
            checks.push_back(std::move(entry));
        }
        obj["checks"] = std::move(checks);
        out.push_back(std::move(obj));
    }
    return out;
}

inline std::string format_reports(std::span<const props::VerificationReport> reports) {
    auto j = reports_to_json(reports);
    return j.empty() ? std::string("[]") : j.dump(2) + "\n";
}

inline void write_report(std::span<const props::VerificationReport> reports, const std::filesystem::path& path) {
    write_text_file(path, format_reports(reports));
}

}  // namespace tisplit::io
