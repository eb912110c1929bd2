// Acceptance run: one PASS/FAIL line per criterion (standard tier, q = 1, seed 0).
// Usage: qhsf_acceptance [report.json]

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qhsf/suites.hpp"

using namespace qhsf;

namespace {

std::string summarize(const std::vector<Check>& checks) {
    std::ostringstream os;
    os.precision(3);
    bool first = true;
    for (const auto& c : checks) {
        if (c.status == Status::report) continue;
        os << (first ? "" : "; ") << c.name << " = " << c.value;
        if (c.comparison != "==") os << " " << c.comparison << " " << c.threshold;
        if (c.status == Status::fail && !c.detail.empty()) os << " (" << c.detail << ")";
        first = false;
    }
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    SuiteContext ctx{RunConfig{}};
    Report rep;
    rep.suite = "acceptance";
    rep.config = ctx.config();
    int failed = 0;
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& s : criteria_suites()) {
        std::vector<Check> checks;
        try {
            checks = timed([&] { return s.fn(ctx); });
        } catch (const std::exception& e) {
            checks = {check_true(s.title, s.criterion, false, std::string("exception: ") + e.what())};
        }
        bool ok = true;
        double secs = 0.0;
        for (const auto& c : checks) {
            ok = ok && c.status != Status::fail;
            secs += c.seconds;
        }
        failed += !ok;
        std::printf("criterion %2d %-4s %-38s %6.1fs  %s\n", s.criterion, ok ? "PASS" : "FAIL", s.title, secs,
                    summarize(checks).c_str());
        std::fflush(stdout);
        for (auto& c : checks) rep.checks.push_back(std::move(c));
    }
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d of %zu criteria passed (%.1f s)\n", static_cast<int>(criteria_suites().size()) - failed,
                criteria_suites().size(), rep.wall_time);
    if (argc > 1) std::ofstream(argv[1]) << nlohmann::json(rep).dump(2) << "\n";
    return failed == 0 ? 0 : 1;
}
