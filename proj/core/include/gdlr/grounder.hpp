#pragma once

#include "gdlr/gdl_parser.hpp"

#include <stdexcept>
#include <vector>

namespace gdlr {

class GroundingError : public std::runtime_error {
public:
    GroundingError(const std::string& msg, SourcePos pos) : std::runtime_error(msg), pos_(pos) {}
    SourcePos pos() const noexcept { return pos_; }

private:
    SourcePos pos_;
};

struct GroundRule {
    Rule rule;           // id left at 0
    std::size_t source;  // index of the originating source rule
};

/// Bottom-up grounding. Variables range over the atoms that are possibly
/// derivable when negation is ignored; `true(F)` ranges over possible
/// `base(F)` atoms and `does(P,A)` over possible `input(P,A)` atoms.
/// `distinct/2` is evaluated and dropped. Instances of one source rule are
/// sorted; source order is kept otherwise.
///
/// Throws GroundingError for unsafe rules and for variables whose binding
/// atom has no possible instance at all.
std::vector<GroundRule> ground_rules(const std::vector<SourceRule>& rules);

} // namespace gdlr
