#pragma once

#include "gdlr/checker.hpp"
#include "gdlr/cost.hpp"
#include "gdlr/description.hpp"
#include "gdlr/game.hpp"
#include "gdlr/program.hpp"
#include "gdlr/repair.hpp"
#include "gdlr/solver.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace gdlr::test {

std::string data_path(const std::string& name);
std::string read_file(const std::string& path);

GameDescription left_right_game(std::optional<int> empty = std::nullopt);
/// The left/right game must end and be playable within one step and must not
/// be lost by p; uniform cost.
RepairTask left_right_task();

using Rng = std::mt19937_64;

// ---- stratified ground programs ----

struct RandomProgram {
    std::vector<Rule> rules;
    std::vector<Term> facts;
    std::size_t atoms = 0;
};

/// Atoms a0..a{k-1} with random strata; positive body atoms come from the
/// same or a lower stratum, negative ones from a strictly lower stratum.
RandomProgram random_stratified_program(Rng& rng, std::size_t max_atoms = 12);

/// Every stable model, by checking all atom subsets against the least model
/// of the reduct.
std::vector<std::vector<Term>> brute_force_stable_models(const RandomProgram& p);

// ---- random games ----

struct GameShape {
    int roles_min = 1, roles_max = 2;
    int base_min = 1, base_max = 3;
    int moves_min = 2, moves_max = 3;
    int legal_max = 3, next_max = 3;
    int empty_max = 2;
    int body_max = 2;
};

/// GDL text of a random valid game in restricted form.
std::string random_game_text(Rng& rng, const GameShape& shape = {});
GameDescription random_game(Rng& rng, const GameShape& shape = {});

/// A random valid repair with at most `max_tuples` tuples, drawn from the
/// repair domain of `desc`; the result passes validate_repair.
Repair random_valid_repair(const GameDescription& desc, Rng& rng, int max_tuples = 4);

/// Joint actions for every role, not necessarily legal.
std::vector<std::pair<Term, Term>> random_joint_action(const GameDescription& desc, Rng& rng);
std::vector<Term> random_state(const GameDescription& desc, Rng& rng);

// ---- brute-force repair enumeration ----

/// Every valid repair of `desc` whose resulting rules have no redundant
/// body (complementary literals or two does atoms for one role), built per
/// rule from the validity conditions rather than from the solver's search.
/// Returns nullopt if there are more than `limit`.
std::optional<std::vector<Repair>> enumerate_valid_repairs(const GameDescription& desc, std::size_t limit);

struct BruteForceResult {
    std::optional<int> optimum;
    std::vector<Repair> optimal;  // every solution at the optimum
    std::size_t space = 0;
};

/// Optimal cost and all optimal solutions by checking every valid repair
/// in cost order.
std::optional<BruteForceResult> brute_force_mrp(const RepairTask& task, std::size_t limit);

/// A tiny random task (one or two rule slots worth of edits) whose valid
/// repair space has at most `limit` elements and whose input game is not
/// already a solution. Properties mix random formulas with end and play.
RepairTask random_oracle_task(Rng& rng, std::size_t limit);

/// A random formula of degree <= max_degree over terminal, true(f),
/// legal(p,a) and goal atoms of `desc`.
Formula random_formula(const GameDescription& desc, Rng& rng, int max_degree);

// ---- inverse interpreter probes ----

/// Atoms of legal, next and every G_R head predicate in the stable model of
/// Pi^-1(X) u G_R u S^true u A^does (direct) and of G_inv u X u G_R u
/// S^true u A^does (interpreted), each sorted.
struct InterpreterProbe {
    std::vector<Term> direct;
    std::vector<Term> interpreted;
};
InterpreterProbe probe_inverse_interpreter(const GameDescription& repaired, const std::vector<Term>& state,
                                           const std::vector<std::pair<Term, Term>>& joint);

// ---- repairability ----

/// A random game for which the repairability conditions are likely to hold: enough
/// empty slots, a non-terminal initial state and winning terminal states.
GameDescription random_repairable_game(Rng& rng);

// ---- Tic-Tac-Toe ----

/// True if both games have the same reachable states from the initial
/// state, with the same legal moves and successors in each.
bool same_reachable_behaviour(const Game& a, const Game& b, std::string* why = nullptr);

} // namespace gdlr::test
