#pragma once

#include "gdlr/game.hpp"
#include "gdlr/gtl.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace gdlr {

/// A valid play sequence S_0 -A_0-> S_1 ... -A_{m-1}-> S_m.
struct Sequence {
    std::vector<State> states;
    std::vector<JointAction> actions;

    std::size_t length() const noexcept { return actions.size(); }
};

struct CheckResult {
    bool holds = true;
    /// First violating sequence in lexicographic joint-action order.
    std::optional<Sequence> counterexample;
};

/// Bounded GTL model checker. Stable models are cached per state; one
/// instance must not be used from several threads at once.
class ModelChecker {
public:
    explicit ModelChecker(const Game& game) : game_(game) {}

    const Game& game() const noexcept { return game_; }

    /// G |=_t phi over all deg(phi)-max sequences.
    CheckResult models(const Formula& phi);

    /// Evaluates phi on seq from index `at`. Throws std::out_of_range.
    bool holds_on_sequence(const Sequence& seq, const Formula& phi, std::size_t at = 0);

    /// Calls `visit` on every n-max sequence in lexicographic order until it
    /// returns false. Sequences are distinguished by their joint actions.
    void for_each_sequence(int n, const std::function<bool(const Sequence&)>& visit);
    std::uint64_t count_sequences(int n);

    bool terminal(const State& s) { return info(s).terminal; }
    bool playable(const State& s) { return info(s).playable; }

private:
    struct Info {
        Evaluation eval;
        bool terminal = false;
        bool playable = false;
        bool expanded = false;
        std::vector<std::pair<JointAction, State>> succ;
    };

    const Game& game_;
    std::unordered_map<State, Info, StateHash> cache_;

    Info& info(const State& s);
    const std::vector<std::pair<JointAction, State>>& successors(const State& s);
};

CheckResult models(const Game& game, const Formula& phi);

struct WellformedReport {
    int n = 0;
    bool playability = false;
    std::optional<Sequence> playability_counterexample;
    bool termination = false;
    std::optional<Sequence> termination_counterexample;
    /// Per role: weakly winnable within n, with a winning sequence if so.
    struct Winnability {
        Term role;
        bool winnable = false;
        std::optional<Sequence> witness;
    };
    std::vector<Winnability> winnability;
    HorizonResult horizon;

    bool horizon_within() const { return horizon.value && *horizon.value <= n; }
    bool weakly_winnable() const;
    bool wellformed() const { return playability && termination && weakly_winnable() && horizon_within(); }
};

/// Playability, termination, weak winnability and horizon within n (n >= 1).
WellformedReport check_wellformed(const Game& game, int n);

/// Step-by-step trace: state, terminal/legal/goal facts, then the joint action.
std::string format_sequence(const Game& game, const Sequence& seq);

} // namespace gdlr
