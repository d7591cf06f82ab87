#include "gdlr/theorems.hpp"

#include "gdlr/game.hpp"
#include "gdlr/program.hpp"

#include <algorithm>

namespace gdlr {

namespace {

/// The game used to judge terminal and goal on arbitrary states. Falls back to
/// G_R alone when the full description is not stratified.
std::optional<Game> judge_game(const GameDescription& desc) {
    try {
        return Game(desc);
    } catch (const NotStratified&) {
    }
    try {
        return Game(desc.with_changeable(std::vector<Rule>(desc.size_changeable())));
    } catch (const NotStratified&) {
        return std::nullopt;
    }
}

/// Visits subsets of {0..n-1} by size, then lexicographically.
template <typename Visit>
void for_each_subset(std::size_t n, Visit&& visit) {
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) {
            idx[i] = i;
        }
        while (true) {
            if (!visit(idx)) {
                return;
            }
            // next combination
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == n - k + i - 1) {
                --i;
            }
            if (i == 0) {
                break;
            }
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

Literal does_lit(const Term& role, const Term& action) {
    return Literal::pos(Term::compound("does", {role, action}));
}

} // namespace

RepairabilityReport check_theorem2_conditions(const GameDescription& desc, std::uint64_t subset_cap) {
    RepairabilityReport rep;
    const auto& roles = desc.roles();
    auto game = judge_game(desc);

    if (game) {
        rep.init_nonterminal = !game->terminal(game->evaluate(game->initial_state()));
    }
    for (const auto& r : roles) {
        if (desc.moves(r).size() < 2) {
            rep.roles_with_few_moves.push_back(r);
        }
    }
    rep.condition1 = rep.init_nonterminal && rep.roles_with_few_moves.empty();

    for (const auto& r : roles) {
        rep.witnesses.push_back({r, std::nullopt, false});
    }
    if (game) {
        const auto& base = desc.base();
        std::vector<Term> goals;
        for (const auto& r : roles) {
            goals.push_back(Term::compound("goal", {r, Term::symbol("100")}));
        }
        std::size_t open = roles.size();
        std::uint64_t tried = 0;
        for_each_subset(base.size(), [&](const std::vector<std::size_t>& idx) {
            if (open == 0) {
                return false;
            }
            if (tried++ >= subset_cap) {
                return false;
            }
            std::vector<Term> props;
            for (auto i : idx) {
                props.push_back(base[i]);
            }
            Evaluation e = game->evaluate(game->make_state(props));
            if (!game->terminal(e)) {
                return true;
            }
            for (std::size_t r = 0; r < roles.size(); ++r) {
                if (!rep.witnesses[r].state && game->holds(e, goals[r])) {
                    rep.witnesses[r].state = props;
                    --open;
                }
            }
            return true;
        });
        const bool complete = tried <= subset_cap && open == 0;
        for (auto& w : rep.witnesses) {
            if (!w.state && !complete && tried > subset_cap) {
                w.inconclusive = true;
                rep.inconclusive = true;
            }
        }
    }
    rep.condition2 = std::all_of(rep.witnesses.begin(), rep.witnesses.end(), [](const auto& w) { return w.state; });

    rep.legal_rules = desc.size_legal();
    rep.next_rules = desc.size_next();
    rep.empty_rules = desc.size_empty();
    rep.next_domain = desc.base().size();
    rep.roles = roles.size();
    rep.enough_legal = rep.legal_rules + rep.empty_rules >= 2 * rep.roles;
    rep.enough_next = rep.next_rules + rep.empty_rules >= rep.next_domain * rep.roles;
    rep.enough_total = rep.legal_rules + rep.next_rules + rep.empty_rules >= (2 + rep.next_domain) * rep.roles;
    rep.condition3 = rep.enough_legal && rep.enough_next && rep.enough_total;
    return rep;
}

std::string RepairabilityReport::to_string() const {
    auto yes = [](bool b) { return b ? "yes" : "no"; };
    std::string out;
    out += "condition 1: " + std::string(yes(condition1)) + "\n";
    out += "  initial state non-terminal: " + std::string(yes(init_nonterminal)) + "\n";
    for (const auto& r : roles_with_few_moves) {
        out += "  role " + r.to_string() + " has fewer than 2 moves\n";
    }
    out += "condition 2: " + std::string(yes(condition2)) + (inconclusive ? " (search cap hit)" : "") + "\n";
    for (const auto& w : witnesses) {
        out += "  " + w.role.to_string() + ": ";
        if (w.state) {
            out += "{";
            for (std::size_t i = 0; i < w.state->size(); ++i) {
                out += (i ? ", " : "") + (*w.state)[i].to_string();
            }
            out += "}\n";
        } else {
            out += w.inconclusive ? "inconclusive\n" : "no terminal winning state\n";
        }
    }
    out += "condition 3: " + std::string(yes(condition3)) + "\n";
    out += "  legal: " + std::to_string(legal_rules) + " + " + std::to_string(empty_rules) +
           " >= " + std::to_string(2 * roles) + " " + yes(enough_legal) + "\n";
    out += "  next: " + std::to_string(next_rules) + " + " + std::to_string(empty_rules) + " >= " +
           std::to_string(next_domain * roles) + " " + yes(enough_next) + "\n";
    out += "  total: " + std::to_string(legal_rules + next_rules + empty_rules) + " >= " +
           std::to_string((2 + next_domain) * roles) + " " + yes(enough_total) + "\n";
    out += std::string("repairable: ") + yes(repairable()) + "\n";
    return out;
}

Repair construct_wellformed_repair(const GameDescription& desc, std::uint64_t subset_cap) {
    RepairabilityReport rep = check_theorem2_conditions(desc, subset_cap);
    if (!rep.repairable()) {
        throw RepairError("the game does not meet the repairability conditions:\n" + rep.to_string());
    }
    const auto& roles = desc.roles();
    const std::size_t R = roles.size();

    struct Target {
        Term head;
        std::vector<Literal> body;
    };
    std::vector<Target> legal_targets, next_targets;
    std::vector<Term> a1, a2;
    for (const auto& r : roles) {
        auto ms = desc.moves(r);
        a1.push_back(ms[0]);
        a2.push_back(ms[1]);
        legal_targets.push_back({Term::compound("legal", {r, ms[0]}), {}});
        legal_targets.push_back({Term::compound("legal", {r, ms[1]}), {}});
    }
    for (std::size_t i = 0; i < R; ++i) {
        std::vector<Literal> body;
        for (std::size_t j = 0; j < i; ++j) {
            body.push_back(does_lit(roles[j], a2[j]));
        }
        if (i + 1 < R) {
            body.push_back(does_lit(roles[i], a1[i]));
        }
        std::sort(body.begin(), body.end());
        for (const auto& f : *rep.witnesses[i].state) {
            next_targets.push_back({Term::compound("next", {f}), body});
        }
    }

    // Assign each target a slot: its own section first, then the empty slots.
    const auto& rules = desc.changeable();
    std::vector<const Target*> assigned(rules.size(), nullptr);
    auto place = [&](const std::vector<Target>& targets, Section own) {
        std::vector<const Target*> rest;
        for (const auto& t : targets) {
            bool done = false;
            for (std::size_t k = 0; k < rules.size() && !done; ++k) {
                if (!assigned[k] && desc.section_of(rules[k].id) == own && rules[k].head &&
                    *rules[k].head == t.head) {
                    assigned[k] = &t;
                    done = true;
                }
            }
            if (!done) {
                rest.push_back(&t);
            }
        }
        for (Section sec : {own, Section::Empty}) {
            for (std::size_t k = 0; k < rules.size() && !rest.empty(); ++k) {
                if (!assigned[k] && desc.section_of(rules[k].id) == sec) {
                    assigned[k] = rest.front();
                    rest.erase(rest.begin());
                }
            }
        }
        if (!rest.empty()) {
            throw RepairError("not enough rule slots for the constructed game");
        }
    };
    place(legal_targets, Section::Legal);
    place(next_targets, Section::Next);

    std::vector<ChangeTuple> tuples;
    for (std::size_t k = 0; k < rules.size(); ++k) {
        const Rule& rule = rules[k];
        const Target* t = assigned[k];
        if (!t) {
            if (rule.head) {
                tuples.push_back(ChangeTuple::change(rule.id, std::nullopt));
            }
            continue;
        }
        if (!rule.head || !(*rule.head == t->head)) {
            tuples.push_back(ChangeTuple::change(rule.id, t->head));
        }
        for (const auto& l : rule.body) {
            if (std::find(t->body.begin(), t->body.end(), l) == t->body.end()) {
                tuples.push_back(ChangeTuple::remove(rule.id, l));
            }
        }
        for (const auto& l : t->body) {
            if (!rule.body_contains(l)) {
                tuples.push_back(ChangeTuple::add(rule.id, l));
            }
        }
    }
    return Repair(std::move(tuples));
}

long long theorem3_bound(const GameDescription& desc, int n, int K) {
    const long long L = static_cast<long long>(desc.inputs().size());
    const long long N = static_cast<long long>(desc.base().size());
    const long long R = static_cast<long long>(desc.roles().size());
    return static_cast<long long>(K) * (n + 1) * L + static_cast<long long>(n) * K * N * (R + 1);
}

} // namespace gdlr
