#include "gdlr/checker.hpp"

#include <stdexcept>
#include <unordered_set>

namespace gdlr {

namespace {

/// Formula flattened to an array with atoms resolved to program ids.
class Compiled {
public:
    Compiled(const Game& game, const Formula& f) : game_(game) { root_ = add(f); }

    template <typename EvalAt>
    bool eval(std::size_t i, std::size_t last, EvalAt&& eval_at) const {
        return eval_node(root_, i, last, eval_at);
    }

private:
    struct Node {
        Formula::Kind kind;
        int a = -1;
        int b = -1;
        std::optional<std::size_t> atom;
    };
    const Game& game_;
    std::vector<Node> nodes_;
    int root_ = 0;

    int add(const Formula& f) {
        Node n;
        n.kind = f.kind();
        if (f.kind() == Formula::Kind::Atom) {
            n.atom = game_.program().find(f.atom_term());
        }
        if (f.arity() > 0) {
            n.a = add(f.child(0));
        }
        if (f.arity() > 1) {
            n.b = add(f.child(1));
        }
        nodes_.push_back(n);
        return static_cast<int>(nodes_.size()) - 1;
    }

    template <typename EvalAt>
    bool eval_node(int k, std::size_t i, std::size_t last, EvalAt& eval_at) const {
        const Node& n = nodes_[static_cast<std::size_t>(k)];
        using K = Formula::Kind;
        switch (n.kind) {
        case K::Atom:
            return n.atom && eval_at(i).truth[*n.atom];
        case K::Top:
            return true;
        case K::Bottom:
            return false;
        case K::Not:
            return !eval_node(n.a, i, last, eval_at);
        case K::And:
            return eval_node(n.a, i, last, eval_at) && eval_node(n.b, i, last, eval_at);
        case K::Or:
            return eval_node(n.a, i, last, eval_at) || eval_node(n.b, i, last, eval_at);
        case K::Implies:
            return !eval_node(n.a, i, last, eval_at) || eval_node(n.b, i, last, eval_at);
        case K::Next:
            return i == last || eval_node(n.a, i + 1, last, eval_at);
        }
        return false;
    }
};

} // namespace

ModelChecker::Info& ModelChecker::info(const State& s) {
    auto it = cache_.find(s);
    if (it != cache_.end()) {
        return it->second;
    }
    Info inf;
    inf.eval = game_.evaluate(s);
    inf.terminal = game_.terminal(inf.eval);
    inf.playable = game_.playable(inf.eval);
    return cache_.emplace(s, std::move(inf)).first->second;
}

const std::vector<std::pair<JointAction, State>>& ModelChecker::successors(const State& s) {
    Info& inf = info(s);
    if (!inf.expanded) {
        for (auto& a : game_.legal_joint_actions(inf.eval)) {
            State t = game_.update(s, a);
            inf.succ.emplace_back(std::move(a), std::move(t));
        }
        inf.expanded = true;
    }
    return inf.succ;
}

void ModelChecker::for_each_sequence(int n, const std::function<bool(const Sequence&)>& visit) {
    Sequence seq;
    seq.states.push_back(game_.initial_state());
    std::function<bool()> dfs = [&]() -> bool {
        const State s = seq.states.back();
        const Info& inf = info(s);
        if (static_cast<int>(seq.length()) == n || inf.terminal || !inf.playable) {
            return visit(seq);
        }
        const auto succ = successors(s);
        for (const auto& [a, t] : succ) {
            seq.actions.push_back(a);
            seq.states.push_back(t);
            bool go_on = dfs();
            seq.actions.pop_back();
            seq.states.pop_back();
            if (!go_on) {
                return false;
            }
        }
        return true;
    };
    dfs();
}

std::uint64_t ModelChecker::count_sequences(int n) {
    std::uint64_t count = 0;
    for_each_sequence(n, [&](const Sequence&) {
        ++count;
        return true;
    });
    return count;
}

CheckResult ModelChecker::models(const Formula& phi) {
    const int n = phi.degree();
    Compiled c(game_, phi);
    Sequence seq;
    seq.states.push_back(game_.initial_state());
    std::vector<const Evaluation*> evals{&info(seq.states[0]).eval};
    auto eval_at = [&](std::size_t i) -> const Evaluation& { return *evals[i]; };

    CheckResult result;
    // Only states matter to the formula, so among joint actions leading to
    // the same successor the lexicographically first one stands for all.
    std::function<bool()> dfs = [&]() -> bool {
        const State s = seq.states.back();
        const Info& inf = info(s);
        if (static_cast<int>(seq.length()) == n || inf.terminal || !inf.playable) {
            if (!c.eval(0, seq.length(), eval_at)) {
                result.holds = false;
                result.counterexample = seq;
                return false;
            }
            return true;
        }
        const auto& succ = successors(s);
        std::unordered_set<State, StateHash> seen;
        for (const auto& [a, t] : succ) {
            if (!seen.insert(t).second) {
                continue;
            }
            seq.actions.push_back(a);
            seq.states.push_back(t);
            evals.push_back(&info(t).eval);
            bool go_on = dfs();
            evals.pop_back();
            seq.actions.pop_back();
            seq.states.pop_back();
            if (!go_on) {
                return false;
            }
        }
        return true;
    };
    dfs();
    return result;
}

bool ModelChecker::holds_on_sequence(const Sequence& seq, const Formula& phi, std::size_t at) {
    if (at >= seq.states.size()) {
        throw std::out_of_range("sequence index " + std::to_string(at) + " out of range");
    }
    Compiled c(game_, phi);
    std::vector<const Evaluation*> evals;
    for (const auto& s : seq.states) {
        evals.push_back(&info(s).eval);
    }
    auto eval_at = [&](std::size_t i) -> const Evaluation& { return *evals[i]; };
    return c.eval(at, seq.states.size() - 1, eval_at);
}

CheckResult models(const Game& game, const Formula& phi) {
    ModelChecker mc(game);
    return mc.models(phi);
}

bool WellformedReport::weakly_winnable() const {
    for (const auto& w : winnability) {
        if (!w.winnable) {
            return false;
        }
    }
    return true;
}

WellformedReport check_wellformed(const Game& game, int n) {
    if (n < 1) {
        throw std::invalid_argument("well-formedness needs n >= 1");
    }
    const GameDescription& desc = game.description();
    ModelChecker mc(game);
    WellformedReport rep;
    rep.n = n;

    auto play = mc.models(macro_play(desc, n));
    rep.playability = play.holds;
    rep.playability_counterexample = std::move(play.counterexample);

    // A sequence of n steps that never reaches a terminal state violates
    // end(n), so this also covers runs still going at step n.
    auto end = mc.models(macro_end(n));
    rep.termination = end.holds;
    rep.termination_counterexample = std::move(end.counterexample);

    for (const auto& role : game.roles()) {
        auto loss = mc.models(macro_loss(role, n));
        rep.winnability.push_back({role, !loss.holds, std::move(loss.counterexample)});
    }
    rep.horizon = horizon(game, n);
    return rep;
}

std::string format_sequence(const Game& game, const Sequence& seq) {
    std::string out;
    for (std::size_t i = 0; i < seq.states.size(); ++i) {
        PositionView v = game.position(seq.states[i]);
        out += "  S" + std::to_string(i) + " = " + game.format_state(v.state);
        if (v.terminal) {
            out += " terminal";
        }
        if (!v.playable) {
            out += " non-playable";
        }
        for (std::size_t r = 0; r < game.roles().size(); ++r) {
            for (const auto& g : v.goals[r]) {
                out += " goal(" + game.roles()[r].to_string() + "," + g.to_string() + ")";
            }
        }
        out += '\n';
        if (i < seq.actions.size()) {
            out += "    does " + game.format_joint_action(seq.actions[i]) + '\n';
        }
    }
    return out;
}

} // namespace gdlr
