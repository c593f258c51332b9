// Acceptance suite runner: one pass/fail line per criterion, nonzero exit on
// any failure. Criterion ids may be passed as arguments to run a subset.
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "ofq/acceptance.hpp"

int main(int argc, char** argv) {
    std::vector<ofq::accept::CriterionResult> results;
    if (argc > 1) {
        for (int i = 1; i < argc; ++i) results.push_back(ofq::accept::run(std::atoi(argv[i])));
    } else {
        results = ofq::accept::run_all();
    }
    std::fputs(ofq::accept::format_report(results).c_str(), stdout);
    for (const auto& r : results)
        if (!r.pass) return 1;
    return 0;
}
