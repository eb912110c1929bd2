#pragma once

/**
 * @file report.hpp
 * @brief Suite reports: per-check status (pass / fail / report-only), measured value, threshold
 *        and wall time. Every failed assertion carries its measured value and threshold.
 */

#include <chrono>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace qhsf {

enum class Status { pass, fail, report };

inline std::string to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::report: return "report";
    }
    return "report";
}

struct Check {
    std::string name;
    int criterion = 0;  // 0: not tied to a numbered criterion
    Status status = Status::report;
    double value = 0.0;
    double threshold = 0.0;
    std::string comparison;  // "<=", ">=", "==", "" for report-only
    std::string detail;
    double seconds = 0.0;
    nlohmann::json data = nullptr;  // optional structured payload (tables, fits)
};

/// value <= threshold (NaN fails).
inline Check check_le(std::string name, int criterion, double value, double threshold, std::string detail = {}) {
    Check c{std::move(name), criterion, value <= threshold ? Status::pass : Status::fail, value, threshold, "<=",
            std::move(detail)};
    return c;
}

inline Check check_ge(std::string name, int criterion, double value, double threshold, std::string detail = {}) {
    Check c{std::move(name), criterion, value >= threshold ? Status::pass : Status::fail, value, threshold, ">=",
            std::move(detail)};
    return c;
}

inline Check check_true(std::string name, int criterion, bool ok, std::string detail = {}) {
    Check c{std::move(name), criterion, ok ? Status::pass : Status::fail, ok ? 1.0 : 0.0, 1.0, "==", std::move(detail)};
    return c;
}

inline Check report_value(std::string name, int criterion, double value, std::string detail = {},
                          nlohmann::json data = nullptr) {
    Check c{std::move(name), criterion, Status::report, value, 0.0, "", std::move(detail)};
    c.data = std::move(data);
    return c;
}

inline void to_json(nlohmann::json& j, const Check& c) {
    j = nlohmann::json{{"name", c.name},
                       {"criterion", c.criterion},
                       {"status", to_string(c.status)},
                       {"value", std::isfinite(c.value) ? nlohmann::json(c.value) : nlohmann::json(std::to_string(c.value))},
                       {"threshold", c.threshold},
                       {"comparison", c.comparison},
                       {"detail", c.detail},
                       {"seconds", c.seconds}};
    if (!c.data.is_null()) j["data"] = c.data;
}

struct Report {
    std::string suite;
    std::vector<Check> checks;
    double wall_time = 0.0;
    nlohmann::json config = nullptr;

    [[nodiscard]] bool all_passed() const {
        for (const auto& c : checks)
            if (c.status == Status::fail) return false;
        return true;
    }
    [[nodiscard]] int count(Status s) const {
        int n = 0;
        for (const auto& c : checks) n += c.status == s;
        return n;
    }
};

inline void to_json(nlohmann::json& j, const Report& r) {
    j = nlohmann::json{{"suite", r.suite},
                       {"passed", r.all_passed()},
                       {"counts",
                        {{"pass", r.count(Status::pass)}, {"fail", r.count(Status::fail)}, {"report", r.count(Status::report)}}},
                       {"wall_time", r.wall_time},
                       {"checks", r.checks}};
    if (!r.config.is_null()) j["config"] = r.config;
}

/// Runs fn() -> Check (or vector<Check>) and stamps the elapsed time.
template <class Fn>
std::vector<Check> timed(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    auto res = fn();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::vector<Check> out;
    if constexpr (std::is_same_v<std::decay_t<decltype(res)>, Check>) {
        out.push_back(std::move(res));
    } else {
        out = std::move(res);
    }
    for (auto& c : out) c.seconds = s / static_cast<double>(out.size());
    return out;
}

}  // namespace qhsf
