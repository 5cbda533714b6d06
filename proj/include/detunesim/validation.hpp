// validation.hpp — built-in self-checks behind the `validate` command:
// closed-form/numeric equivalence, leakage values, scaling law,
// integrator hygiene.

#pragma once

#include <string>
#include <vector>

namespace dsim::validation {

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;  // measured value vs limit
};

std::vector<Check> run_validation();

} // namespace dsim::validation
