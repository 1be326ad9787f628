#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace qgsw::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
    double budget_seconds = 0.0;
};

struct Criterion {
    int id;
    std::string name;
    double budget_seconds;
    // Fills passed/detail; id, name, timing are set by the runner.
    std::function<void(CriterionResult&)> check;
};

const std::vector<Criterion>& criteria();

// Runs one criterion; a thrown exception counts as failure with its message
// as detail. Exceeding the runtime budget also fails.
CriterionResult run_one(const Criterion& c);

// Runs the named criteria (all when `only` is empty), writing one verdict line
// per criterion to `out` as each finishes. Unknown names throw std::invalid_argument.
std::vector<CriterionResult> run(const std::vector<std::string>& only, std::ostream& out);

std::string format_line(const CriterionResult& r);

}  // namespace qgsw::verify
