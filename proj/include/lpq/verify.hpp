#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lpq {

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail; // measured numbers behind the verdict
};

/// Run one verification criterion (1..10). `log` receives the measured
/// numbers as the run progresses.
CriterionResult run_criterion(int number, std::ostream& log);

/// Run the whole suite (criteria 1..10) and print a PASS/FAIL table.
std::vector<CriterionResult> run_acceptance(std::ostream& log);

} // namespace lpq
