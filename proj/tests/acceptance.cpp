// Runs the eight acceptance criteria at full size and prints one line per criterion.
#include "sp4gen/selfcheck.hpp"

#include <cstdio>
#include <cstdlib>

using namespace sp4gen;

int main(int argc, char** argv) {
    SuiteOptions opt;
    if (argc > 1) opt.seed = std::strtoull(argv[1], nullptr, 10);
    int failed = 0;
    for (const Suite& s : acceptance_suites()) {
        SuiteResult r = run_suite(s, opt);
        bool pass = r.passed();
        failed += !pass;
        std::printf("%s criterion %d: %s (%.2fs", pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds);
        if (r.budget_seconds > 0) std::printf(", budget %.0fs", r.budget_seconds);
        std::printf(")\n");
        if (!r.ok && !r.detail.empty()) std::printf("    %s\n", r.detail.c_str());
        if (r.ok && !r.within_budget()) std::printf("    over the runtime budget\n");
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(acceptance_suites().size()) - failed,
                acceptance_suites().size());
    return failed ? 1 : 0;
}
