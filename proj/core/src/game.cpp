#include "gdlr/game.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace gdlr {

std::size_t State::hash() const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto w : words_) {
        h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

namespace {

std::optional<std::uint32_t> id_of(const GroundProgram& p, const Term& t) {
    if (auto id = p.find(t)) {
        return static_cast<std::uint32_t>(*id);
    }
    return std::nullopt;
}

} // namespace

Game::Game(const GameDescription& desc)
    : desc_(desc), program_(desc.all_rules()), roles_(desc.roles()), base_(desc.base()) {
    for (const auto& r : roles_) {
        moves_.push_back(desc.moves(r));
    }
    init_ = State(base_.size());
    for (const auto& f : desc.init()) {
        auto it = std::lower_bound(base_.begin(), base_.end(), f);
        if (it != base_.end() && *it == f) {
            init_.set(static_cast<std::size_t>(it - base_.begin()));
        }
    }
    for (const auto& f : base_) {
        true_ids_.push_back(id_of(program_, Term::compound("true", {f})));
        next_ids_.push_back(id_of(program_, Term::compound("next", {f})));
    }
    for (std::size_t r = 0; r < roles_.size(); ++r) {
        std::vector<std::optional<std::uint32_t>> does, legal;
        for (const auto& a : moves_[r]) {
            does.push_back(id_of(program_, Term::compound("does", {roles_[r], a})));
            legal.push_back(id_of(program_, Term::compound("legal", {roles_[r], a})));
        }
        does_ids_.push_back(std::move(does));
        legal_ids_.push_back(std::move(legal));
    }
    goal_ids_.resize(roles_.size());
    for (std::size_t i = 0; i < program_.atom_count(); ++i) {
        const Term& a = program_.atom(i);
        if (a.has_signature("goal", 2)) {
            if (auto r = role_index(a.arg(0))) {
                goal_ids_[*r].emplace_back(a.arg(1), static_cast<std::uint32_t>(i));
            }
        }
    }
    for (auto& g : goal_ids_) {
        std::sort(g.begin(), g.end());
    }
    terminal_ = id_of(program_, Term::symbol("terminal"));
}

std::optional<std::size_t> Game::role_index(const Term& role) const {
    auto it = std::lower_bound(roles_.begin(), roles_.end(), role);
    if (it == roles_.end() || !(*it == role)) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - roles_.begin());
}

State Game::make_state(const std::vector<Term>& props) const {
    State s(base_.size());
    for (const auto& f : props) {
        auto it = std::lower_bound(base_.begin(), base_.end(), f);
        if (it == base_.end() || !(*it == f)) {
            throw StateError(f.to_string() + " is not a base proposition");
        }
        s.set(static_cast<std::size_t>(it - base_.begin()));
    }
    return s;
}

std::vector<Term> Game::propositions(const State& s) const {
    std::vector<Term> out;
    for (std::size_t i = 0; i < base_.size(); ++i) {
        if (s.test(i)) {
            out.push_back(base_[i]);
        }
    }
    return out;
}

std::string Game::format_state(const State& s) const {
    std::string out = "{";
    bool first = true;
    for (const auto& f : propositions(s)) {
        out += (first ? "" : ", ") + f.to_string();
        first = false;
    }
    return out + "}";
}

JointAction Game::make_joint_action(const std::vector<std::pair<Term, Term>>& moves) const {
    JointAction a(roles_.size(), 0);
    std::vector<char> seen(roles_.size(), 0);
    for (const auto& [role, action] : moves) {
        auto r = role_index(role);
        if (!r) {
            throw StateError(role.to_string() + " is not a role");
        }
        if (seen[*r]) {
            throw StateError("two actions for role " + role.to_string());
        }
        const auto& dom = moves_[*r];
        auto it = std::lower_bound(dom.begin(), dom.end(), action);
        if (it == dom.end() || !(*it == action)) {
            throw StateError(action.to_string() + " is outside the move domain of " + role.to_string());
        }
        a[*r] = static_cast<std::uint32_t>(it - dom.begin());
        seen[*r] = 1;
    }
    for (std::size_t r = 0; r < roles_.size(); ++r) {
        if (!seen[r]) {
            throw StateError("no action for role " + roles_[r].to_string());
        }
    }
    return a;
}

std::string Game::format_joint_action(const JointAction& a) const {
    std::string out;
    for (std::size_t r = 0; r < a.size(); ++r) {
        out += (r ? ", " : "") + std::string("(") + roles_[r].to_string() + "," + moves_[r][a[r]].to_string() + ")";
    }
    return out;
}

std::vector<std::size_t> Game::facts_for(const State& s) const {
    std::vector<std::size_t> facts;
    for (std::size_t i = 0; i < base_.size(); ++i) {
        if (s.test(i) && true_ids_[i]) {
            facts.push_back(*true_ids_[i]);
        }
    }
    return facts;
}

Evaluation Game::evaluate(const State& s) const {
    return {program_.evaluate(facts_for(s))};
}

bool Game::holds(const Evaluation& e, const Term& atom) const {
    auto id = program_.find(atom);
    return id && e.truth[*id];
}

bool Game::legal(const Evaluation& e, std::size_t role, std::size_t action) const {
    const auto& id = legal_ids_[role][action];
    return id && e.truth[*id];
}

std::vector<std::vector<std::uint32_t>> Game::legal_actions(const Evaluation& e) const {
    std::vector<std::vector<std::uint32_t>> out(roles_.size());
    for (std::size_t r = 0; r < roles_.size(); ++r) {
        for (std::uint32_t a = 0; a < moves_[r].size(); ++a) {
            if (legal(e, r, a)) {
                out[r].push_back(a);
            }
        }
    }
    return out;
}

bool Game::playable(const Evaluation& e) const {
    for (std::size_t r = 0; r < roles_.size(); ++r) {
        bool any = false;
        for (std::size_t a = 0; a < moves_[r].size() && !any; ++a) {
            any = legal(e, r, a);
        }
        if (!any) {
            return false;
        }
    }
    return true;
}

PositionView Game::position(const State& s) const {
    PositionView v;
    v.state = s;
    auto e = evaluate(s);
    v.terminal = terminal(e);
    v.playable = playable(e);
    v.legal.resize(roles_.size());
    v.goals.resize(roles_.size());
    for (std::size_t r = 0; r < roles_.size(); ++r) {
        for (std::size_t a = 0; a < moves_[r].size(); ++a) {
            if (legal(e, r, a)) {
                v.legal[r].push_back(moves_[r][a]);
            }
        }
        for (const auto& [value, id] : goal_ids_[r]) {
            if (e.truth[id]) {
                v.goals[r].push_back(value);
            }
        }
    }
    return v;
}

State Game::update(const State& s, const JointAction& a) const {
    if (a.size() != roles_.size()) {
        throw StateError("joint action must assign every role");
    }
    auto facts = facts_for(s);
    for (std::size_t r = 0; r < roles_.size(); ++r) {
        if (a[r] >= moves_[r].size()) {
            throw StateError("action index outside the move domain of " + roles_[r].to_string());
        }
        if (const auto& id = does_ids_[r][a[r]]) {
            facts.push_back(*id);
        }
    }
    auto truth = program_.evaluate(facts);
    State out(base_.size());
    for (std::size_t i = 0; i < base_.size(); ++i) {
        if (next_ids_[i] && truth[*next_ids_[i]]) {
            out.set(i);
        }
    }
    return out;
}

std::vector<JointAction> Game::legal_joint_actions(const Evaluation& e) const {
    auto legal = legal_actions(e);
    std::vector<JointAction> out;
    for (const auto& l : legal) {
        if (l.empty()) {
            return out;
        }
    }
    JointAction cur(roles_.size(), 0);
    std::vector<std::size_t> pos(roles_.size(), 0);
    while (true) {
        for (std::size_t r = 0; r < roles_.size(); ++r) {
            cur[r] = legal[r][pos[r]];
        }
        out.push_back(cur);
        // odometer, last role varies fastest
        std::size_t r = roles_.size();
        while (r > 0) {
            --r;
            if (++pos[r] < legal[r].size()) {
                break;
            }
            pos[r] = 0;
            if (r == 0) {
                return out;
            }
        }
        if (roles_.empty()) {
            return out;
        }
    }
}

std::string HorizonResult::to_string() const {
    if (value) {
        return std::to_string(*value);
    }
    return "exceeds cap " + std::to_string(cap);
}

HorizonResult horizon(const Game& game, int cap) {
    // The horizon is one more than the longest repetition-free path whose
    // states are all non-terminal and playable; 0 if the initial state is
    // already terminal or non-playable.
    struct Node {
        bool open;  // non-terminal and playable
        std::vector<State> succ;
    };
    std::unordered_map<State, Node, StateHash> cache;
    auto node = [&](const State& s) -> const Node& {
        auto it = cache.find(s);
        if (it != cache.end()) {
            return it->second;
        }
        auto e = game.evaluate(s);
        Node n;
        n.open = !game.terminal(e) && game.playable(e);
        if (n.open) {
            for (const auto& a : game.legal_joint_actions(e)) {
                n.succ.push_back(game.update(s, a));
            }
            std::sort(n.succ.begin(), n.succ.end());
            n.succ.erase(std::unique(n.succ.begin(), n.succ.end()), n.succ.end());
        }
        return cache.emplace(s, std::move(n)).first->second;
    };

    HorizonResult result;
    result.cap = cap;
    State s0 = game.initial_state();
    if (!node(s0).open) {
        result.value = 0;
        return result;
    }
    int longest = 0;
    std::vector<State> path{s0};
    std::unordered_set<State, StateHash> on_path{s0};
    std::function<bool(const State&)> dfs = [&](const State& s) -> bool {
        int depth = static_cast<int>(path.size()) - 1;
        longest = std::max(longest, depth);
        if (longest >= cap) {
            return true;
        }
        const auto succ = node(s).succ;
        for (const auto& t : succ) {
            if (on_path.count(t) || !node(t).open) {
                continue;
            }
            path.push_back(t);
            on_path.insert(t);
            bool stop = dfs(t);
            on_path.erase(t);
            path.pop_back();
            if (stop) {
                return true;
            }
        }
        return false;
    };
    dfs(s0);
    if (longest >= cap) {
        return result;
    }
    result.value = longest + 1;
    return result;
}

} // namespace gdlr
