#pragma once

#include <string>
#include <vector>

namespace mapgrp {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = true;
    /// One line per sub-check: "name: value vs bound -> ok|FAIL".
    std::vector<std::string> details;
    double seconds = 0.0;
};

/// example-3-14, behnke-stein, section, group-law, roundtrips, integrator, maurer-cartan, topology, exp-pathology, all.
const std::vector<std::string>& suite_names();
/// Criteria run by a suite; invalid-argument for unknown names.
std::vector<int> suite_criteria(const std::string& suite);

CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_suite(const std::string& suite);

} // namespace mapgrp
