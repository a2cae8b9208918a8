#pragma once

#include <set>
#include <string>
#include <vector>

namespace lqt {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

inline constexpr int kCriteria = 11;

// One acceptance criterion, 1..kCriteria. `threads` = 0 uses every core.
CriterionResult run_criterion(int id, unsigned threads = 0);

// All criteria in order, or only those listed.
std::vector<CriterionResult> run_acceptance(const std::set<int>& only = {}, unsigned threads = 0);

// "[PASS] 3 title: detail (1.2 s)"
std::string format_result(const CriterionResult& r);

} // namespace lqt
