#pragma once

#include "gdlr/repair.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gdlr {

/// Sufficient conditions for a repair to an n-well-formed game (any n > 0).
struct RepairabilityReport {
    // (1) the initial state is not terminal and every role has two moves
    bool init_nonterminal = false;
    std::vector<Term> roles_with_few_moves;
    bool condition1 = false;

    // (2) a terminal state won by each role
    struct Witness {
        Term role;
        std::optional<std::vector<Term>> state;
        bool inconclusive = false;  // subset cap hit before a witness was found
    };
    std::vector<Witness> witnesses;
    bool condition2 = false;
    bool inconclusive = false;

    // (3) enough legal, next and total rule slots
    std::size_t legal_rules = 0, next_rules = 0, empty_rules = 0, next_domain = 0, roles = 0;
    bool enough_legal = false;  // |G_L| + |G_E| >= 2|R|
    bool enough_next = false;   // |G_N| + |G_E| >= |N||R|
    bool enough_total = false;  // |G_C| >= (2 + |N|)|R|
    bool condition3 = false;

    bool repairable() const { return condition1 && condition2 && condition3; }
    std::string to_string() const;
};

inline constexpr std::uint64_t default_subset_cap = std::uint64_t{1} << 16;

/// Witness states are searched smallest subsets of the base first; at most
/// `subset_cap` subsets per role are tried.
RepairabilityReport check_theorem2_conditions(const GameDescription& desc,
                                              std::uint64_t subset_cap = default_subset_cap);

/// A repair whose result is 1-well-formed: two legal facts per role, and
/// next rules sending each joint action at the start to one role's winning
/// terminal state. Throws RepairError when the conditions do not hold.
Repair construct_wellformed_repair(const GameDescription& desc, std::uint64_t subset_cap = default_subset_cap);

/// K(n+1)|L| + nK|N|(|R|+1). With end(n) among the positive formulas and no
/// solution at this many empty rules, more empty rules do not help either.
long long theorem3_bound(const GameDescription& desc, int n, int K);

} // namespace gdlr
