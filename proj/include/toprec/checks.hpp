#pragma once

#include <json.hpp>

#include <functional>
#include <string>
#include <vector>

namespace toprec {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool correct = false;
    double seconds = 0;
    double budget = 0;  // seconds
    std::string detail;

    bool passed() const { return correct && seconds <= budget; }
};

// The nine acceptance criteria.
CriterionResult run_criterion(int id);
int criterion_count();

// Suite names: airy, kdv, graphsum, dictionary, cp1, properties, all.
bool is_suite(const std::string& name);
std::vector<int> suite_criteria(const std::string& name);  // InvalidTarget for unknown names

nlohmann::ordered_json report_json(const std::vector<CriterionResult>& results);

}  // namespace toprec
