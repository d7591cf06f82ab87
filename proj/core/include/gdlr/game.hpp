#pragma once

#include "gdlr/description.hpp"
#include "gdlr/program.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gdlr {

/// A set of base propositions, stored as a bitset over the game's sorted
/// base list. Only meaningful together with the Game that made it.
class State {
public:
    State() = default;
    explicit State(std::size_t nbits) : words_((nbits + 63) / 64, 0) {}

    bool test(std::size_t i) const noexcept { return (words_[i / 64] >> (i % 64)) & 1u; }
    void set(std::size_t i) noexcept { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    std::size_t hash() const noexcept;

    friend bool operator==(const State&, const State&) = default;
    friend auto operator<=>(const State&, const State&) = default;

private:
    std::vector<std::uint64_t> words_;
};

struct StateHash {
    std::size_t operator()(const State& s) const noexcept { return s.hash(); }
};

/// Action index into moves(role) for every role, roles in sorted order.
using JointAction = std::vector<std::uint32_t>;

struct PositionView {
    State state;
    bool terminal = false;
    bool playable = false;
    /// Legal actions per role (same order as Game::roles()).
    std::vector<std::vector<Term>> legal;
    /// Goal values per role.
    std::vector<std::vector<Term>> goals;
};

class StateError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Result of evaluating the rules against one state: truth per program atom.
struct Evaluation {
    std::vector<std::uint8_t> truth;
};

/// Executable transition system of a game description. Immutable and safe
/// to share across threads.
class Game {
public:
    /// Throws NotStratified.
    explicit Game(const GameDescription& desc);

    const GameDescription& description() const noexcept { return desc_; }
    const std::vector<Term>& roles() const noexcept { return roles_; }
    const std::vector<Term>& base() const noexcept { return base_; }
    const std::vector<Term>& moves(std::size_t role) const { return moves_.at(role); }
    std::optional<std::size_t> role_index(const Term& role) const;
    const GroundProgram& program() const noexcept { return program_; }

    State initial_state() const noexcept { return init_; }
    /// Throws StateError if some proposition is not in the base.
    State make_state(const std::vector<Term>& props) const;
    std::vector<Term> propositions(const State& s) const;
    std::string format_state(const State& s) const;

    /// Throws StateError unless every role gets exactly one action from its
    /// move domain.
    JointAction make_joint_action(const std::vector<std::pair<Term, Term>>& moves) const;
    std::string format_joint_action(const JointAction& a) const;

    Evaluation evaluate(const State& s) const;
    bool holds(const Evaluation& e, const Term& atom) const;
    bool terminal(const Evaluation& e) const { return terminal_ && e.truth[*terminal_]; }
    bool legal(const Evaluation& e, std::size_t role, std::size_t action) const;
    /// Legal action indices per role.
    std::vector<std::vector<std::uint32_t>> legal_actions(const Evaluation& e) const;
    bool playable(const Evaluation& e) const;

    PositionView position(const State& s) const;
    /// Successor per the next rules; legality is not checked.
    State update(const State& s, const JointAction& a) const;

    /// All legal joint actions in lexicographic order (role order, action order).
    std::vector<JointAction> legal_joint_actions(const Evaluation& e) const;

private:
    GameDescription desc_;
    GroundProgram program_;
    std::vector<Term> roles_;
    std::vector<Term> base_;
    std::vector<std::vector<Term>> moves_;
    State init_;

    std::vector<std::optional<std::uint32_t>> true_ids_;               // per base prop
    std::vector<std::optional<std::uint32_t>> next_ids_;               // per base prop
    std::vector<std::vector<std::optional<std::uint32_t>>> does_ids_;  // per role, action
    std::vector<std::vector<std::optional<std::uint32_t>>> legal_ids_;
    std::vector<std::vector<std::pair<Term, std::uint32_t>>> goal_ids_;  // per role
    std::optional<std::uint32_t> terminal_;

    std::vector<std::size_t> facts_for(const State& s) const;
};

struct HorizonResult {
    /// Smallest n such that every n-max sequence terminates, ends non-playable
    /// or revisits a state of its own prefix; empty if larger than the cap.
    std::optional<int> value;
    int cap = 0;
    std::string to_string() const;
};

HorizonResult horizon(const Game& game, int cap);

} // namespace gdlr
