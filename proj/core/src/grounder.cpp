#include "gdlr/grounder.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace gdlr {

namespace {

using Subst = std::vector<std::pair<std::string, Term>>;

const Term* lookup(const Subst& s, const std::string& name) {
    for (const auto& [k, v] : s) {
        if (k == name) {
            return &v;
        }
    }
    return nullptr;
}

bool unify(const Term& pattern, const Term& ground, Subst& s) {
    if (pattern.is_variable()) {
        if (const Term* bound = lookup(s, pattern.name())) {
            return *bound == ground;
        }
        s.emplace_back(pattern.name(), ground);
        return true;
    }
    if (pattern.kind() != ground.kind() || pattern.name() != ground.name() ||
        pattern.arity() != ground.arity()) {
        return false;
    }
    for (std::size_t i = 0; i < pattern.arity(); ++i) {
        if (!unify(pattern.arg(i), ground.arg(i), s)) {
            return false;
        }
    }
    return true;
}

Term apply(const Term& t, const Subst& s) {
    if (t.is_variable()) {
        const Term* bound = lookup(s, t.name());
        return bound ? *bound : t;
    }
    if (t.arity() == 0) {
        return t;
    }
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const auto& a : t.args()) {
        args.push_back(apply(a, s));
    }
    if (t.kind() == Term::Kind::Tuple) {
        return Term::tuple(std::move(args));
    }
    return Term::compound(t.name(), std::move(args));
}

void collect_vars(const Term& t, std::set<std::string>& out) {
    if (t.is_variable()) {
        out.insert(t.name());
        return;
    }
    for (const auto& a : t.args()) {
        collect_vars(a, out);
    }
}

bool is_distinct(const Literal& l) {
    return l.atom.has_signature("distinct", 2);
}

/// Possible atoms, indexed by signature. `true` and `does` are answered from
/// `base` and `input`.
class Universe {
public:
    bool add(const Term& atom) {
        if (!seen_.insert(atom).second) {
            return false;
        }
        by_sig_[Signature::of(atom)].push_back(atom);
        if (atom.has_signature("base", 1)) {
            add(Term::compound("true", {atom.arg(0)}));
        } else if (atom.has_signature("input", 2)) {
            add(Term::compound("does", {atom.arg(0), atom.arg(1)}));
        }
        return true;
    }

    const std::vector<Term>& candidates(const Term& pattern) const {
        static const std::vector<Term> none;
        auto it = by_sig_.find(Signature::of(pattern));
        return it == by_sig_.end() ? none : it->second;
    }

private:
    std::unordered_set<Term, TermHash> seen_;
    std::map<Signature, std::vector<Term>> by_sig_;
};

struct Prepared {
    const SourceRule* src;
    std::vector<const Literal*> positives;  // binding atoms
    bool ground;
};

void matches(const Prepared& p, const Universe& u, std::size_t k, Subst& s, std::vector<Subst>& out) {
    if (k == p.positives.size()) {
        out.push_back(s);
        return;
    }
    const Term& pattern = p.positives[k]->atom;
    for (const auto& cand : u.candidates(pattern)) {
        std::size_t mark = s.size();
        if (unify(pattern, cand, s)) {
            matches(p, u, k + 1, s, out);
        }
        s.resize(mark);
    }
}

std::string where(const SourceRule& r) {
    return "rule at line " + std::to_string(r.pos.line) + " (" + r.to_string() + ")";
}

} // namespace

std::vector<GroundRule> ground_rules(const std::vector<SourceRule>& rules) {
    std::vector<Prepared> prepared;
    prepared.reserve(rules.size());
    for (const auto& r : rules) {
        Prepared p{&r, {}, true};
        std::set<std::string> bound, needed;
        collect_vars(r.head, needed);
        for (const auto& l : r.body) {
            if (l.positive && !is_distinct(l)) {
                p.positives.push_back(&l);
                collect_vars(l.atom, bound);
            } else {
                // negative literals and distinct only test, they never bind
                collect_vars(l.atom, needed);
            }
        }
        for (const auto& l : r.body) {
            if (!l.positive && is_distinct(l)) {
                throw GroundingError("negated distinct is not supported in " + where(r), r.pos);
            }
        }
        for (const auto& v : needed) {
            if (!bound.count(v)) {
                throw GroundingError("unsafe variable " + v + " in " + where(r), r.pos);
            }
        }
        p.ground = bound.empty() && needed.empty();
        prepared.push_back(std::move(p));
    }

    Universe u;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : prepared) {
            if (p.ground && p.positives.empty()) {
                changed |= u.add(p.src->head);
                continue;
            }
            std::vector<Subst> found;
            Subst s;
            matches(p, u, 0, s, found);
            for (const auto& m : found) {
                changed |= u.add(apply(p.src->head, m));
            }
        }
    }

    std::vector<GroundRule> out;
    for (std::size_t idx = 0; idx < prepared.size(); ++idx) {
        const auto& p = prepared[idx];
        const SourceRule& r = *p.src;
        if (p.ground) {
            GroundRule g{Rule{0, r.head, {}, r.label}, idx};
            bool keep = true;
            for (const auto& l : r.body) {
                if (is_distinct(l)) {
                    keep = keep && !(l.atom.arg(0) == l.atom.arg(1));
                } else {
                    g.rule.body.push_back(l);
                }
            }
            if (keep) {
                out.push_back(std::move(g));
            }
            continue;
        }
        for (const auto* l : p.positives) {
            if (!l->atom.is_ground() && u.candidates(l->atom).empty()) {
                std::set<std::string> vars;
                collect_vars(l->atom, vars);
                throw GroundingError("variable " + *vars.begin() + " has an empty domain (no possible " +
                                         Signature::of(l->atom).to_string() + " atom) in " + where(r),
                                     r.pos);
            }
        }
        std::vector<Subst> found;
        Subst s;
        matches(p, u, 0, s, found);
        std::vector<Rule> instances;
        for (const auto& m : found) {
            Rule g{0, apply(r.head, m), {}, r.label};
            bool keep = true;
            for (const auto& l : r.body) {
                Term a = apply(l.atom, m);
                if (is_distinct(l)) {
                    if (a.arg(0) == a.arg(1)) {
                        keep = false;
                        break;
                    }
                    continue;
                }
                g.body.push_back({std::move(a), l.positive});
            }
            if (keep) {
                instances.push_back(std::move(g));
            }
        }
        std::sort(instances.begin(), instances.end(), [](const Rule& a, const Rule& b) {
            if (*a.head != *b.head) {
                return *a.head < *b.head;
            }
            return a.body < b.body;
        });
        instances.erase(std::unique(instances.begin(), instances.end()), instances.end());
        for (auto& g : instances) {
            out.push_back({std::move(g), idx});
        }
    }
    return out;
}

} // namespace gdlr
