#include "support.hpp"

#include "gdlr/asp_encoding.hpp"
#include "gdlr/grounder.hpp"
#include "gdlr/properties.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#ifndef GDLR_TEST_DATA
#define GDLR_TEST_DATA "tests/data"
#endif

namespace gdlr::test {

std::string data_path(const std::string& name) {
    return std::string(GDLR_TEST_DATA) + "/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

GameDescription left_right_game(std::optional<int> empty) {
    return load_game_file(data_path("left_right.gdl"), empty);
}

RepairTask left_right_task() {
    RepairTask task;
    task.desc = left_right_game(1);
    PropertySet props = load_properties_file(data_path("left_right.props"), task.desc);
    task.positive = props.positive;
    task.negative = props.negative;
    task.cost = CostFunction::uniform();
    return task;
}

namespace {

int uniform(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool coin(Rng& rng, double p = 0.5) {
    return std::bernoulli_distribution(p)(rng);
}

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
    return v.at(static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(v.size()) - 1)));
}

Term atom_named(std::size_t i) {
    return Term::symbol("a" + std::to_string(i));
}

} // namespace

RandomProgram random_stratified_program(Rng& rng, std::size_t max_atoms) {
    RandomProgram p;
    p.atoms = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(max_atoms)));
    std::vector<int> stratum(p.atoms);
    for (auto& s : stratum) {
        s = uniform(rng, 0, 3);
    }
    int nrules = uniform(rng, 0, static_cast<int>(2 * p.atoms));
    for (int r = 0; r < nrules; ++r) {
        std::size_t h = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(p.atoms) - 1));
        Rule rule;
        rule.head = atom_named(h);
        int nbody = uniform(rng, 0, 3);
        for (int b = 0; b < nbody; ++b) {
            std::size_t a = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(p.atoms) - 1));
            if (stratum[a] < stratum[h] && coin(rng)) {
                rule.body.push_back(Literal::neg(atom_named(a)));
            } else if (stratum[a] <= stratum[h]) {
                rule.body.push_back(Literal::pos(atom_named(a)));
            }
        }
        p.rules.push_back(std::move(rule));
    }
    for (std::size_t a = 0; a < p.atoms; ++a) {
        if (coin(rng, 0.2)) {
            p.facts.push_back(atom_named(a));
        }
    }
    return p;
}

std::vector<std::vector<Term>> brute_force_stable_models(const RandomProgram& p) {
    std::vector<std::vector<Term>> models;
    const std::size_t k = p.atoms;
    auto index_of = [](const Term& t) { return static_cast<std::size_t>(std::stoul(t.name().substr(1))); };
    std::uint64_t fact_mask = 0;
    for (const auto& f : p.facts) {
        fact_mask |= std::uint64_t{1} << index_of(f);
    }
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
        // least model of the reduct w.r.t. m
        std::uint64_t least = fact_mask;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& r : p.rules) {
                bool fires = true;
                for (const auto& l : r.body) {
                    bool in_m = (m >> index_of(l.atom)) & 1u;
                    bool in_least = (least >> index_of(l.atom)) & 1u;
                    if ((l.positive && !in_least) || (!l.positive && in_m)) {
                        fires = false;
                        break;
                    }
                }
                std::uint64_t bit = std::uint64_t{1} << index_of(*r.head);
                if (fires && !(least & bit)) {
                    least |= bit;
                    changed = true;
                }
            }
        }
        if (least == m) {
            std::vector<Term> model;
            for (std::size_t a = 0; a < k; ++a) {
                if ((m >> a) & 1u) {
                    model.push_back(atom_named(a));
                }
            }
            std::sort(model.begin(), model.end());
            models.push_back(std::move(model));
        }
    }
    return models;
}

// ---- random games ----

namespace {

struct Vocabulary {
    std::vector<std::string> roles, fluents, moves;
};

std::string random_body(Rng& rng, const Vocabulary& v, int max_lits, bool with_does) {
    std::vector<std::string> atoms;
    for (const auto& f : v.fluents) {
        atoms.push_back("true(" + f + ")");
    }
    if (with_does) {
        for (const auto& r : v.roles) {
            for (const auto& m : v.moves) {
                atoms.push_back("does(" + r + "," + m + ")");
            }
        }
    }
    std::shuffle(atoms.begin(), atoms.end(), rng);
    int n = uniform(rng, 0, max_lits);
    std::vector<std::string> lits;
    std::set<std::string> does_roles;
    for (const auto& a : atoms) {
        if (static_cast<int>(lits.size()) >= n) {
            break;
        }
        bool positive = coin(rng);
        if (positive && a.rfind("does(", 0) == 0) {
            std::string role = a.substr(5, a.find(',') - 5);
            if (!does_roles.insert(role).second) {
                continue;
            }
        }
        lits.push_back(positive ? a : "not " + a);
    }
    std::string out;
    for (std::size_t i = 0; i < lits.size(); ++i) {
        out += (i == 0 ? " :- " : ", ") + lits[i];
    }
    return out;
}

} // namespace

std::string random_game_text(Rng& rng, const GameShape& shape) {
    Vocabulary v;
    int nroles = uniform(rng, shape.roles_min, shape.roles_max);
    int nbase = uniform(rng, shape.base_min, shape.base_max);
    int nmoves = uniform(rng, shape.moves_min, shape.moves_max);
    for (int i = 0; i < nroles; ++i) {
        v.roles.push_back("p" + std::to_string(i));
    }
    for (int i = 0; i < nbase; ++i) {
        v.fluents.push_back("f" + std::to_string(i));
    }
    for (int i = 0; i < nmoves; ++i) {
        v.moves.push_back("m" + std::to_string(i));
    }
    std::ostringstream g;
    g << "#empty " << uniform(rng, 0, shape.empty_max) << ".\n";
    for (const auto& r : v.roles) {
        g << "role(" << r << ").\n";
        for (const auto& m : v.moves) {
            g << "input(" << r << "," << m << ").\n";
        }
    }
    for (const auto& f : v.fluents) {
        g << "base(" << f << ").\n";
        if (coin(rng, 0.3)) {
            g << "init(" << f << ").\n";
        }
    }
    g << "terminal :- true(" << pick(rng, v.fluents) << ").\n";
    if (coin(rng, 0.3)) {
        if (std::string body = random_body(rng, v, 2, false); !body.empty()) {
            g << "terminal" << body << ".\n";
        }
    }
    for (const auto& r : v.roles) {
        const std::string& f = pick(rng, v.fluents);
        g << "goal(" << r << ",100) :- true(" << f << ").\n";
        g << "goal(" << r << ",0) :- not true(" << f << ").\n";
    }
    int nlegal = uniform(rng, 0, shape.legal_max);
    for (int i = 0; i < nlegal; ++i) {
        g << "legal(" << pick(rng, v.roles) << "," << pick(rng, v.moves) << ")"
          << random_body(rng, v, shape.body_max, false) << ".\n";
    }
    int nnext = uniform(rng, 0, shape.next_max);
    for (int i = 0; i < nnext; ++i) {
        g << "next(" << pick(rng, v.fluents) << ")" << random_body(rng, v, shape.body_max, true) << ".\n";
    }
    return g.str();
}

GameDescription random_game(Rng& rng, const GameShape& shape) {
    return load_game(random_game_text(rng, shape));
}

Repair random_valid_repair(const GameDescription& desc, Rng& rng, int max_tuples) {
    CandidateSpace space(desc, CostFunction::uniform());
    std::vector<ChangeTuple> pool = space.tuples();
    if (pool.empty()) {
        return {};
    }
    for (int attempt = 0; attempt < 200; ++attempt) {
        int k = uniform(rng, 1, max_tuples);
        std::vector<ChangeTuple> ts;
        for (int i = 0; i < k; ++i) {
            ts.push_back(pick(rng, pool));
        }
        Repair r(ts);
        if (validate_repair(desc, r).empty()) {
            return r;
        }
    }
    return {};
}

std::vector<std::pair<Term, Term>> random_joint_action(const GameDescription& desc, Rng& rng) {
    std::vector<std::pair<Term, Term>> joint;
    for (const auto& role : desc.roles()) {
        std::vector<Term> moves = desc.moves(role);
        if (!moves.empty()) {
            joint.emplace_back(role, pick(rng, moves));
        }
    }
    return joint;
}

std::vector<Term> random_state(const GameDescription& desc, Rng& rng) {
    std::vector<Term> s;
    for (const auto& f : desc.base()) {
        if (coin(rng)) {
            s.push_back(f);
        }
    }
    return s;
}

// ---- brute-force repair enumeration ----

namespace {

bool complementary_or_double_does(const std::vector<Literal>& body) {
    for (std::size_t i = 0; i < body.size(); ++i) {
        for (std::size_t j = 0; j < body.size(); ++j) {
            if (i == j) {
                continue;
            }
            const Literal& a = body[i];
            const Literal& b = body[j];
            if (a.atom == b.atom && a.positive != b.positive) {
                return true;
            }
            if (a.positive && b.positive && a.atom.name() == "does" && b.atom.name() == "does" &&
                a.atom.arg(0) == b.atom.arg(0) && a.atom.arg(1) != b.atom.arg(1)) {
                return true;
            }
        }
    }
    return false;
}

/// Every valid tuple set for one rule, following the validity conditions:
/// at most one head change, to a head of the rule's section (or any head
/// for an empty slot, or the empty placeholder); additions only of literals
/// not in the body, removals only of body literals; fluent literals only
/// when the rule is or becomes a legal rule.
std::vector<std::vector<ChangeTuple>> rule_options(const GameDescription& desc, const RepairDomains& dom,
                                                   const Rule& rule) {
    Section sec = desc.section_of(rule.id);
    std::vector<std::optional<std::optional<Term>>> heads;  // outer nullopt: keep
    heads.emplace_back(std::nullopt);
    heads.emplace_back(std::optional<Term>{});
    if (sec == Section::Legal || sec == Section::Empty) {
        for (const auto& h : dom.legal_heads) {
            heads.emplace_back(std::optional<Term>{h});
        }
    }
    if (sec == Section::Next || sec == Section::Empty) {
        for (const auto& h : dom.next_heads) {
            heads.emplace_back(std::optional<Term>{h});
        }
    }
    std::vector<Literal> all_lits = dom.fluent_lits;
    all_lits.insert(all_lits.end(), dom.action_lits.begin(), dom.action_lits.end());

    std::vector<std::vector<ChangeTuple>> out;
    for (const auto& h : heads) {
        std::optional<Term> final_head = h ? *h : rule.head;
        bool legal_result = rule.has_head("legal", 2) || (h && *h && (*h)->has_signature("legal", 2));
        std::vector<Literal> addable;
        for (const auto& l : all_lits) {
            bool in_body = std::find(rule.body.begin(), rule.body.end(), l) != rule.body.end();
            if (in_body) {
                continue;
            }
            if (legal_result && l.atom.name() != "true") {
                continue;
            }
            addable.push_back(l);
        }
        const std::size_t nb = rule.body.size();
        const std::size_t na = addable.size();
        if (nb + na > 20) {
            throw std::length_error("rule has too many edit options");
        }
        for (std::uint64_t rm = 0; rm < (std::uint64_t{1} << nb); ++rm) {
            for (std::uint64_t ad = 0; ad < (std::uint64_t{1} << na); ++ad) {
                std::vector<ChangeTuple> ts;
                if (h) {
                    ts.push_back(ChangeTuple::change(rule.id, *h));
                }
                std::vector<Literal> body;
                for (std::size_t i = 0; i < nb; ++i) {
                    if ((rm >> i) & 1u) {
                        ts.push_back(ChangeTuple::remove(rule.id, rule.body[i]));
                    } else {
                        body.push_back(rule.body[i]);
                    }
                }
                for (std::size_t i = 0; i < na; ++i) {
                    if ((ad >> i) & 1u) {
                        ts.push_back(ChangeTuple::add(rule.id, addable[i]));
                        body.push_back(addable[i]);
                    }
                }
                if (final_head && complementary_or_double_does(body)) {
                    continue;
                }
                out.push_back(std::move(ts));
            }
        }
    }
    return out;
}

} // namespace

std::optional<std::vector<Repair>> enumerate_valid_repairs(const GameDescription& desc, std::size_t limit) {
    RepairDomains dom = repair_domains(desc);
    std::vector<std::vector<std::vector<ChangeTuple>>> per_rule;
    double total = 1;
    for (const auto& rule : desc.changeable()) {
        per_rule.push_back(rule_options(desc, dom, rule));
        total *= static_cast<double>(per_rule.back().size());
        if (total > static_cast<double>(limit)) {
            return std::nullopt;
        }
    }
    std::vector<Repair> out;
    std::vector<std::size_t> idx(per_rule.size(), 0);
    while (true) {
        std::vector<ChangeTuple> ts;
        for (std::size_t k = 0; k < per_rule.size(); ++k) {
            const auto& opt = per_rule[k][idx[k]];
            ts.insert(ts.end(), opt.begin(), opt.end());
        }
        out.emplace_back(std::move(ts));
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == per_rule[k].size()) {
            idx[k] = 0;
            ++k;
        }
        if (k == idx.size()) {
            break;
        }
    }
    return out;
}

std::optional<BruteForceResult> brute_force_mrp(const RepairTask& task, std::size_t limit) {
    auto all = enumerate_valid_repairs(task.desc, limit);
    if (!all) {
        return std::nullopt;
    }
    BruteForceResult res;
    res.space = all->size();
    std::vector<std::pair<int, std::size_t>> order;
    for (std::size_t i = 0; i < all->size(); ++i) {
        order.emplace_back(task.cost.total(task.desc, (*all)[i]), i);
    }
    std::sort(order.begin(), order.end());

    // Different repairs often give the same rules (a deleted rule's body
    // edits do not matter), so verdicts are cached per resulting G_C.
    std::unordered_map<std::string, bool> verdicts;
    auto is_solution = [&](const Repair& r) {
        std::vector<Rule> rules = repaired_rules(task.desc, r);
        std::string key;
        for (const auto& rule : rules) {
            key += rule.to_string();
            key += '\n';
        }
        if (auto it = verdicts.find(key); it != verdicts.end()) {
            return it->second;
        }
        bool ok = false;
        GameDescription repaired = task.desc.with_changeable(rules);
        if (repaired.stratified()) {
            try {
                Game game(repaired);
                ModelChecker mc(game);
                ok = true;
                for (const auto& phi : task.negative) {
                    if (mc.models(phi).holds) {
                        ok = false;
                        break;
                    }
                }
                for (std::size_t j = 0; ok && j < task.positive.size(); ++j) {
                    ok = mc.models(task.positive[j]).holds;
                }
            } catch (const NotStratified&) {
                ok = false;
            }
        }
        verdicts.emplace(std::move(key), ok);
        return ok;
    };

    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j < order.size() && order[j].first == order[i].first) {
            const Repair& r = (*all)[order[j].second];
            if (is_solution(r)) {
                res.optimal.push_back(r);
            }
            ++j;
        }
        if (!res.optimal.empty()) {
            res.optimum = order[i].first;
            std::sort(res.optimal.begin(), res.optimal.end());
            break;
        }
        i = j;
    }
    return res;
}

namespace {

bool is_solution(const RepairTask& task, const GameDescription& d) {
    Game game(d);
    ModelChecker mc(game);
    for (const auto& phi : task.negative) {
        if (mc.models(phi).holds) {
            return false;
        }
    }
    for (const auto& phi : task.positive) {
        if (!mc.models(phi).holds) {
            return false;
        }
    }
    return true;
}

} // namespace

RepairTask random_oracle_task(Rng& rng, std::size_t limit) {
    GameShape shape;
    shape.roles_max = 1;
    shape.base_max = 2;
    shape.moves_max = 2;
    shape.legal_max = 1;
    shape.next_max = 2;
    shape.empty_max = 1;
    shape.body_max = 1;
    while (true) {
        RepairTask task;
        task.desc = random_game(rng, shape);
        if (task.desc.size_changeable() == 0) {
            continue;
        }
        auto space = enumerate_valid_repairs(task.desc, limit);
        if (!space) {
            continue;
        }
        int n = uniform(rng, 1, 2);
        switch (uniform(rng, 0, 2)) {
        case 0:
            task.positive.push_back(macro_end(n));
            break;
        case 1:
            task.positive.push_back(macro_play(task.desc, n));
            break;
        default:
            task.positive.push_back(random_formula(task.desc, rng, 2));
            break;
        }
        if (coin(rng)) {
            task.positive.push_back(random_formula(task.desc, rng, 2));
        }
        if (coin(rng)) {
            task.negative.push_back(random_formula(task.desc, rng, 2));
        }
        task.cost = coin(rng) ? CostFunction::uniform() : CostFunction::edit();
        task.max_solutions = 0;
        if (is_solution(task, task.desc)) {
            continue;
        }
        task.max_cost = CandidateSpace(task.desc, task.cost).cost_ceiling();
        return task;
    }
}

Formula random_formula(const GameDescription& desc, Rng& rng, int max_degree) {
    std::vector<Term> atoms{Term::symbol("terminal")};
    for (const auto& f : desc.base()) {
        atoms.push_back(Term::compound("true", {f}));
    }
    for (const auto& [role, action] : desc.inputs()) {
        atoms.push_back(Term::compound("legal", {role, action}));
    }
    for (const auto& role : desc.roles()) {
        atoms.push_back(Term::compound("goal", {role, Term::symbol("100")}));
    }
    auto gen = [&](auto& self, int depth, int degree) -> Formula {
        int choice = depth <= 0 ? 0 : uniform(rng, 0, 5);
        switch (choice) {
        case 1:
            return Formula::negate(self(self, depth - 1, degree));
        case 2:
            return Formula::conj(self(self, depth - 1, degree), self(self, depth - 1, degree));
        case 3:
            return Formula::disj(self(self, depth - 1, degree), self(self, depth - 1, degree));
        case 4:
            return Formula::implies(self(self, depth - 1, degree), self(self, depth - 1, degree));
        case 5:
            if (degree > 0) {
                return Formula::next(self(self, depth - 1, degree - 1));
            }
            return Formula::negate(self(self, depth - 1, degree));
        default:
            return Formula::atom(pick(rng, atoms));
        }
    };
    return gen(gen, 3, max_degree);
}

// ---- inverse interpreter probes ----

InterpreterProbe probe_inverse_interpreter(const GameDescription& repaired, const std::vector<Term>& state,
                                           const std::vector<std::pair<Term, Term>>& joint) {
    std::vector<Term> facts;
    for (const auto& f : state) {
        facts.push_back(Term::compound("true", {f}));
    }
    for (const auto& [role, action] : joint) {
        facts.push_back(Term::compound("does", {role, action}));
    }
    std::set<std::string> shown{"legal", "next"};
    for (const auto& r : repaired.other()) {
        if (r.head) {
            shown.insert(r.head->name());
        }
    }
    auto project = [&](const std::vector<Term>& model) {
        std::vector<Term> out;
        for (const auto& a : model) {
            if (shown.count(a.name())) {
                out.push_back(a);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    };

    InterpreterProbe probe;
    probe.direct = project(stable_model(repaired.all_rules(), facts));

    // The grounder rejects rules whose binding atoms have no instance at
    // all, so G_inv rules over literal shapes absent from X are left out;
    // they could never fire.
    std::vector<Term> xs = asp::encode_rules(repaired).atoms;
    std::function<bool(const Term&, const Term&)> matches = [&](const Term& pat, const Term& t) {
        if (pat.is_variable()) {
            return true;
        }
        if (pat.kind() != t.kind() || pat.name() != t.name() || pat.arity() != t.arity()) {
            return false;
        }
        for (std::size_t i = 0; i < pat.arity(); ++i) {
            if (!matches(pat.arg(i), t.arg(i))) {
                return false;
            }
        }
        return true;
    };
    std::vector<SourceRule> src;
    for (const auto& r : asp::inverse_interpreter_rules()) {
        bool fireable = true;
        for (const auto& l : r.body) {
            if (l.positive && (l.atom.name() == "ha" || l.atom.name() == "lit")) {
                fireable = fireable && std::any_of(xs.begin(), xs.end(), [&](const Term& x) { return matches(l.atom, x); });
            }
        }
        if (fireable) {
            src.push_back({*r.head, r.body, {}, ""});
        }
    }
    for (const auto& x : xs) {
        src.push_back({x, {}, {}, ""});
    }
    for (const auto& r : repaired.other()) {
        src.push_back({*r.head, r.body, {}, ""});
    }
    for (const auto& f : facts) {
        src.push_back({f, {}, {}, ""});
    }
    std::vector<Rule> ground;
    for (auto& g : ground_rules(src)) {
        ground.push_back(std::move(g.rule));
    }
    probe.interpreted = project(stable_model(ground, {}));
    return probe;
}

// ---- repairability ----

GameDescription random_repairable_game(Rng& rng) {
    int nroles = uniform(rng, 1, 2);
    int nbase = uniform(rng, nroles, 3);
    int nmoves = uniform(rng, 2, 3);
    std::vector<std::string> roles, fluents, moves;
    for (int i = 0; i < nroles; ++i) {
        roles.push_back("p" + std::to_string(i));
    }
    for (int i = 0; i < nbase; ++i) {
        fluents.push_back("f" + std::to_string(i));
    }
    for (int i = 0; i < nmoves; ++i) {
        moves.push_back("m" + std::to_string(i));
    }
    std::ostringstream g;
    for (const auto& r : roles) {
        g << "role(" << r << ").\n";
        for (const auto& m : moves) {
            g << "input(" << r << "," << m << ").\n";
        }
    }
    for (const auto& f : fluents) {
        g << "base(" << f << ").\n";
    }
    // role i wins in any state containing f_i alone among the win fluents
    for (int i = 0; i < nroles; ++i) {
        g << "terminal :- true(f" << i << ").\n";
        g << "goal(p" << i << ",100) :- true(f" << i << ")";
        for (int j = 0; j < nroles; ++j) {
            if (j != i) {
                g << ", not true(f" << j << ")";
            }
        }
        g << ".\n";
        g << "goal(p" << i << ",0) :- not true(f" << i << ").\n";
    }
    for (int i = nroles; i < nbase; ++i) {
        if (coin(rng, 0.3)) {
            g << "init(f" << i << ").\n";
        }
    }
    Vocabulary v{roles, fluents, moves};
    int nlegal = uniform(rng, 0, 2);
    for (int i = 0; i < nlegal; ++i) {
        g << "legal(" << pick(rng, roles) << "," << pick(rng, moves) << ")" << random_body(rng, v, 1, false) << ".\n";
    }
    int nnext = uniform(rng, 0, 2);
    for (int i = 0; i < nnext; ++i) {
        g << "next(" << pick(rng, fluents) << ")" << random_body(rng, v, 2, true) << ".\n";
    }
    int needed_total = (2 + nbase) * nroles;
    int needed_legal = 2 * nroles;
    int needed_next = nbase * nroles;
    int empty = std::max({needed_total - nlegal - nnext, needed_legal - nlegal, needed_next - nnext, 0});
    empty += uniform(rng, 0, 1);
    return load_game(g.str(), empty);
}

// ---- reachable behaviour ----

bool same_reachable_behaviour(const Game& a, const Game& b, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) {
            *why = msg;
        }
        return false;
    };
    auto props = [](const Game& g, const State& s) {
        std::vector<Term> p = g.propositions(s);
        std::sort(p.begin(), p.end());
        return p;
    };
    if (a.roles() != b.roles()) {
        return fail("different roles");
    }
    std::set<std::vector<Term>> seen;
    std::deque<std::pair<State, State>> queue;
    queue.emplace_back(a.initial_state(), b.initial_state());
    seen.insert(props(a, a.initial_state()));
    while (!queue.empty()) {
        auto [sa, sb] = queue.front();
        queue.pop_front();
        std::vector<Term> pa = props(a, sa);
        if (pa != props(b, sb)) {
            return fail("states differ: " + a.format_state(sa) + " vs " + b.format_state(sb));
        }
        Evaluation ea = a.evaluate(sa);
        Evaluation eb = b.evaluate(sb);
        if (a.terminal(ea) != b.terminal(eb)) {
            return fail("terminal differs at " + a.format_state(sa));
        }
        PositionView va = a.position(sa);
        PositionView vb = b.position(sb);
        if (va.legal != vb.legal) {
            return fail("legal moves differ at " + a.format_state(sa));
        }
        if (va.terminal) {
            continue;
        }
        for (const auto& ja : a.legal_joint_actions(ea)) {
            std::vector<std::pair<Term, Term>> named;
            for (std::size_t r = 0; r < ja.size(); ++r) {
                named.emplace_back(a.roles()[r], a.moves(r)[ja[r]]);
            }
            State na = a.update(sa, ja);
            State nb = b.update(sb, b.make_joint_action(named));
            if (props(a, na) != props(b, nb)) {
                return fail("successors differ at " + a.format_state(sa) + " after " + a.format_joint_action(ja));
            }
            if (seen.insert(props(a, na)).second) {
                queue.emplace_back(na, nb);
            }
        }
    }
    return true;
}

} // namespace gdlr::test
