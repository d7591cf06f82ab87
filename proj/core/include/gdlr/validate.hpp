#pragma once

#include "gdlr/description.hpp"

#include <set>
#include <string>
#include <vector>

namespace gdlr {

struct ValidationIssue {
    std::string code;  // keyword-placement, dependency, stratification, restricted-form, section
    int rule_id = 0;
    std::string message;

    std::string to_json() const;
};

/// Checks validity, stratification, restricted form and section
/// consistency. An empty result means the description is valid and in
/// restricted form.
std::vector<ValidationIssue> validate(const GameDescription& desc);

/// JSON lines, one issue per line.
std::string to_json_lines(const std::vector<ValidationIssue>& issues);

/// Predicate names that `pred` depends on, directly or transitively.
std::set<std::string> dependencies(const std::vector<Rule>& rules, const std::string& pred);

/// True if `pred` depends on `does` in the description.
bool depends_on_does(const GameDescription& desc, const std::string& pred);

} // namespace gdlr
