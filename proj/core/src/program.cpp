#include "gdlr/program.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace gdlr {

std::uint32_t GroundProgram::intern(const Term& t) {
    auto [it, inserted] = index_.try_emplace(t, static_cast<std::uint32_t>(atoms_.size()));
    if (inserted) {
        atoms_.push_back(t);
    }
    return it->second;
}

std::optional<std::size_t> GroundProgram::find(const Term& atom) const {
    auto it = index_.find(atom);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

GroundProgram::GroundProgram(const std::vector<Rule>& rules) {
    std::vector<CompiledRule> compiled;
    for (const auto& r : rules) {
        if (!r.head) {
            continue;
        }
        CompiledRule c;
        c.head = intern(*r.head);
        for (const auto& l : r.body) {
            (l.positive ? c.pos : c.neg).push_back(intern(l.atom));
        }
        compiled.push_back(std::move(c));
    }

    const std::size_t n = atoms_.size();
    // edges head -> body atom, flagged negative
    std::vector<std::vector<std::pair<std::uint32_t, bool>>> deps(n);
    std::vector<std::vector<std::uint32_t>> rules_of(n);
    for (std::uint32_t i = 0; i < compiled.size(); ++i) {
        const auto& c = compiled[i];
        rules_of[c.head].push_back(i);
        for (auto b : c.pos) {
            deps[c.head].emplace_back(b, false);
        }
        for (auto b : c.neg) {
            deps[c.head].emplace_back(b, true);
        }
    }

    // Tarjan; components come out dependencies-first.
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<char> on_stack(n, 0);
    std::vector<std::uint32_t> stack;
    std::vector<std::vector<std::uint32_t>> comps;
    int counter = 0;

    struct Frame {
        std::uint32_t v;
        std::size_t edge;
    };
    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] >= 0) {
            continue;
        }
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            auto& f = call.back();
            if (f.edge < deps[f.v].size()) {
                auto w = deps[f.v][f.edge++].first;
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            auto v = f.v;
            call.pop_back();
            if (!call.empty()) {
                low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
            if (low[v] == index[v]) {
                std::vector<std::uint32_t> members;
                std::uint32_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = static_cast<int>(comps.size());
                    members.push_back(w);
                } while (w != v);
                comps.push_back(std::move(members));
            }
        }
    }

    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const auto& members = comps[ci];
        bool recursive = members.size() > 1;
        for (auto a : members) {
            for (auto [b, negative] : deps[a]) {
                if (comp[b] != static_cast<int>(ci)) {
                    continue;
                }
                recursive = true;
                if (negative) {
                    std::vector<Term> cycle;
                    for (auto m : members) {
                        cycle.push_back(atoms_[m]);
                    }
                    std::sort(cycle.begin(), cycle.end());
                    std::string names;
                    for (const auto& t : cycle) {
                        names += (names.empty() ? "" : ", ") + t.to_string();
                    }
                    throw NotStratified("recursion through negation among {" + names + "}", std::move(cycle));
                }
            }
        }
        Component c;
        c.begin = static_cast<std::uint32_t>(rules_.size());
        for (auto a : members) {
            for (auto ri : rules_of[a]) {
                rules_.push_back(compiled[ri]);
            }
        }
        c.end = static_cast<std::uint32_t>(rules_.size());
        c.recursive = recursive;
        if (c.end > c.begin) {
            components_.push_back(c);
        }
    }
}

bool GroundProgram::fires(const CompiledRule& r, const std::vector<std::uint8_t>& truth) const {
    for (auto p : r.pos) {
        if (!truth[p]) {
            return false;
        }
    }
    for (auto q : r.neg) {
        if (truth[q]) {
            return false;
        }
    }
    return true;
}

std::vector<std::uint8_t> GroundProgram::evaluate(const std::vector<std::size_t>& fact_ids) const {
    std::vector<std::uint8_t> truth(atoms_.size(), 0);
    for (auto f : fact_ids) {
        truth.at(f) = 1;
    }
    for (const auto& c : components_) {
        if (!c.recursive) {
            for (auto i = c.begin; i < c.end; ++i) {
                const auto& r = rules_[i];
                if (!truth[r.head] && fires(r, truth)) {
                    truth[r.head] = 1;
                }
            }
            continue;
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto i = c.begin; i < c.end; ++i) {
                const auto& r = rules_[i];
                if (!truth[r.head] && fires(r, truth)) {
                    truth[r.head] = 1;
                    changed = true;
                }
            }
        }
    }
#ifndef NDEBUG
    for (const auto& r : rules_) {
        assert(!fires(r, truth) || truth[r.head]);
    }
#endif
    return truth;
}

std::vector<Term> GroundProgram::stable_model(const std::vector<Term>& facts) const {
    std::vector<std::size_t> ids;
    std::vector<Term> extra;
    for (const auto& f : facts) {
        if (auto id = find(f)) {
            ids.push_back(*id);
        } else {
            extra.push_back(f);
        }
    }
    auto truth = evaluate(ids);
    std::vector<Term> model = std::move(extra);
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i]) {
            model.push_back(atoms_[i]);
        }
    }
    std::sort(model.begin(), model.end());
    model.erase(std::unique(model.begin(), model.end()), model.end());
    return model;
}

std::vector<Term> stable_model(const std::vector<Rule>& rules, const std::vector<Term>& facts) {
    return GroundProgram(rules).stable_model(facts);
}

} // namespace gdlr
