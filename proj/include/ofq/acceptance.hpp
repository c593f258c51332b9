#pragma once

#include <string>
#include <vector>

namespace ofq::accept {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

// Runs acceptance criterion `id` (1..10). Never throws: failures (including
// exceptions) are reported in the result.
CriterionResult run(int id);

std::vector<CriterionResult> run_all();

// One "[PASS]/[FAIL] <id> <name>: <detail>" line per criterion.
std::string format_report(const std::vector<CriterionResult>& results);

}  // namespace ofq::accept
