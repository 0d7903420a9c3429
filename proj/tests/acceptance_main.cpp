// Acceptance suite: runs every criterion of the verification registry at its
// pinned tolerance (all checks are exact rational comparisons) and prints one
// pass/fail line per criterion. Exits nonzero on any failure.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "pflat/verification.hpp"

int main(int argc, char** argv) {
    int threads = pflat::default_thread_count();
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--threads" && i + 1 < argc) threads = std::atoi(argv[++i]);
    }

    bool all_ok = true;
    double total = 0.0;
    for (const auto& crit : pflat::verification::all_criteria()) {
        pflat::verification::CheckResult res = crit.run(threads);
        bool in_budget = crit.budget_seconds <= 0.0 || res.seconds < crit.budget_seconds;
        bool ok = res.passed && in_budget;
        all_ok = all_ok && ok;
        total += res.seconds;
        std::printf("[%s] criterion %2d %-24s %7.2fs%s  %s\n", ok ? "PASS" : "FAIL", crit.number,
                    crit.name.c_str(), res.seconds,
                    in_budget ? "" : " (budget exceeded)", res.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%s (%.1fs total)\n", all_ok ? "ALL CRITERIA PASSED" : "ACCEPTANCE FAILED", total);
    return all_ok ? 0 : 1;
}
