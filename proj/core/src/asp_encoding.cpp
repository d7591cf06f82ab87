#include "gdlr/asp_encoding.hpp"

#include <fstream>
#include <map>

namespace gdlr::asp {

namespace {

Term sym(const std::string& s) { return Term::symbol(s); }
Term num(long long i) { return Term::symbol(std::to_string(i)); }
Term tup2(Term a, Term b) { return Term::tuple({std::move(a), std::move(b)}); }

// Generator clauses with the placeholder constants spelled out.
constexpr const char* generator_text = R"(
1{ha(I,(TP,F)):atom(TP,F);ha(I,empty)}1 :- e_rule(I).
rtype(I,TP) :- ha(I,(TP,F)), e_rule(I).
rtype(I,TP) :- o_ha(I,(TP,F)).
1{ha(I,(TP,F)):atom(TP,F);ha(I,empty)}1 :- rtype(I,TP), o_rule(I).
tup(I,chg,F) :- rule(I), ha(I,F), not o_ha(I,F).
{tup(I,del,(Q,TP,F))} :- o_lit(I,(Q,TP,F)), not ha(I,empty).
{tup(I,add,(Q,ba,F))} :- atom(ba,F), pol(Q), not o_lit(I,(Q,ba,F)), rule(I), not ha(I,empty).
{tup(I,add,(Q,ac,F))} :- not o_lit(I,(Q,ac,F)), not ha(I,empty), rtype(I,ba), atom(ac,F), pol(Q).
lit(I,(Q,TP,F)) :- tup(I,add,(Q,TP,F)).
lit(I,(Q,TP,F)) :- o_lit(I,(Q,TP,F)), not tup(I,del,(Q,TP,F)), not ha(I,empty).
:- lit(I,(pos,TP,F)), lit(I,(neg,TP,F)).
:- lit(I,(pos,ac,(P,A1))), lit(I,(pos,ac,(P,A2))), A1<A2.
)";

constexpr const char* inverse_text = R"(
err_t(I) :- lit(I,(pos,ba,F)), not true(F).
err_t(I) :- lit(I,(neg,ba,F)), true(F).
err_d(I) :- lit(I,(pos,ac,(P,A))), not does(P,A).
err_d(I) :- lit(I,(neg,ac,(P,A))), does(P,A).
legal(P,A) :- ha(I,(ac,(P,A))), not err_t(I).
next(F) :- ha(I,(ba,F)), not err_t(I), not err_d(I).
)";

constexpr const char* weak_text = ":~ tup(I,TP,LIT), cost(I,TP,LIT,C). [C@0,I,TP,LIT]\n";

constexpr const char* holds_text = R"(
holds(ha(I,F)) :- ha(I,F).
holds(lit(I,F)) :- lit(I,F).
)";

constexpr const char* unholds_text = R"(
ha(I,F) :- holds(ha(I,F)).
lit(I,F) :- holds(lit(I,F)).
)";

void append(Program& to, const Program& from) { to.insert(to.end(), from.begin(), from.end()); }

bool is_time_free(const std::string& pred) { return pred == "ha" || pred == "lit"; }

} // namespace

Term tau(const gdlr::Literal& l) {
    Term pol = sym(l.positive ? "pos" : "neg");
    if (l.atom.has_signature("true", 1)) {
        return Term::tuple({pol, sym("ba"), l.atom.arg(0)});
    }
    if (l.atom.has_signature("does", 2)) {
        return Term::tuple({pol, sym("ac"), tup2(l.atom.arg(0), l.atom.arg(1))});
    }
    throw AspError("literal " + l.to_string() + " has no tuple encoding");
}

Term tau_head(const std::optional<Term>& head) {
    if (!head) {
        return sym("empty");
    }
    if (head->has_signature("next", 1)) {
        return tup2(sym("ba"), head->arg(0));
    }
    if (head->has_signature("legal", 2)) {
        return tup2(sym("ac"), tup2(head->arg(0), head->arg(1)));
    }
    throw AspError("head " + head->to_string() + " has no tuple encoding");
}

gdlr::Literal tau_inverse(const Term& t) {
    if (t.kind() == Term::Kind::Tuple && t.arity() == 3 && t.arg(0).is_symbol() && t.arg(1).is_symbol()) {
        const std::string& pol = t.arg(0).name();
        if (pol == "pos" || pol == "neg") {
            const bool positive = pol == "pos";
            if (t.arg(1).name() == "ba") {
                return {Term::compound("true", {t.arg(2)}), positive};
            }
            const Term& pa = t.arg(2);
            if (t.arg(1).name() == "ac" && pa.kind() == Term::Kind::Tuple && pa.arity() == 2) {
                return {Term::compound("does", {pa.arg(0), pa.arg(1)}), positive};
            }
        }
    }
    throw AspError("not a literal tuple: " + t.to_string());
}

std::optional<Term> tau_head_inverse(const Term& t) {
    if (t.is_symbol() && t.name() == "empty") {
        return std::nullopt;
    }
    if (t.kind() == Term::Kind::Tuple && t.arity() == 2 && t.arg(0).is_symbol()) {
        if (t.arg(0).name() == "ba") {
            return Term::compound("next", {t.arg(1)});
        }
        const Term& pa = t.arg(1);
        if (t.arg(0).name() == "ac" && pa.kind() == Term::Kind::Tuple && pa.arity() == 2) {
            return Term::compound("legal", {pa.arg(0), pa.arg(1)});
        }
    }
    throw AspError("not a head tuple: " + t.to_string());
}

EncodedRuleBase encode_rules(const GameDescription& desc) {
    EncodedRuleBase out;
    for (const auto& r : desc.changeable()) {
        out.atoms.push_back(Term::compound("ha", {num(r.id), tau_head(r.head)}));
        for (const auto& l : r.body) {
            out.atoms.push_back(Term::compound("lit", {num(r.id), tau(l)}));
        }
    }
    return out;
}

std::vector<gdlr::Rule> decode_rules(const std::vector<Term>& atoms, std::size_t rule_count) {
    std::vector<gdlr::Rule> rules(rule_count);
    for (std::size_t i = 0; i < rule_count; ++i) {
        rules[i].id = static_cast<int>(i + 1);
    }
    auto rule_at = [&](const Term& a) -> gdlr::Rule& {
        long long id = 0;
        try {
            id = std::stoll(a.arg(0).name());
        } catch (const std::exception&) {
            throw AspError("bad rule index in " + a.to_string());
        }
        if (id < 1 || static_cast<std::size_t>(id) > rule_count) {
            throw AspError("rule index out of range in " + a.to_string());
        }
        return rules[static_cast<std::size_t>(id - 1)];
    };
    for (const auto& a : atoms) {
        if (a.has_signature("ha", 2)) {
            rule_at(a).head = tau_head_inverse(a.arg(1));
        } else if (a.has_signature("lit", 2)) {
            rule_at(a).body.push_back(tau_inverse(a.arg(1)));
        } else {
            throw AspError("unexpected atom " + a.to_string());
        }
    }
    for (auto& r : rules) {
        if (!r.head && !r.body.empty()) {
            throw AspError("rule " + std::to_string(r.id) + " has a body but no head");
        }
    }
    return rules;
}

Program emit_domain(const GameDescription& desc) {
    Program p;
    const auto& rules = desc.changeable();
    for (const auto& r : rules) {
        if (desc.section_of(r.id) != Section::Empty) {
            p.push_back(Rule::fact(Term::compound("o_rule", {num(r.id)})));
        }
    }
    for (const auto& r : rules) {
        if (desc.section_of(r.id) == Section::Empty) {
            p.push_back(Rule::fact(Term::compound("e_rule", {num(r.id)})));
        }
    }
    for (const auto& r : rules) {
        p.push_back(Rule::fact(Term::compound("rule", {num(r.id)})));
    }
    p.push_back(Rule::fact(Term::compound("pol", {sym("pos")})));
    p.push_back(Rule::fact(Term::compound("pol", {sym("neg")})));
    for (const auto& f : desc.base()) {
        p.push_back(Rule::fact(Term::compound("atom", {sym("ba"), f})));
    }
    for (const auto& [role, action] : desc.inputs()) {
        p.push_back(Rule::fact(Term::compound("atom", {sym("ac"), tup2(role, action)})));
    }
    for (const auto& a : encode_rules(desc).atoms) {
        p.push_back(Rule::fact(Term::compound(a.name() == "ha" ? "o_ha" : "o_lit", a.args())));
    }
    return p;
}

Program emit_generator(const GameDescription& desc) {
    Program p = emit_domain(desc);
    append(p, parse_program(generator_text));
    return p;
}

Program emit_weak_constraint(const GameDescription& desc, const CostFunction& cost) {
    Program p = parse_program(weak_text);
    const RepairDomains dom = repair_domains(desc);
    std::vector<std::optional<Term>> heads{std::nullopt};
    heads.insert(heads.end(), dom.legal_heads.begin(), dom.legal_heads.end());
    heads.insert(heads.end(), dom.next_heads.begin(), dom.next_heads.end());
    std::vector<gdlr::Literal> lits = dom.action_lits;
    lits.insert(lits.end(), dom.fluent_lits.begin(), dom.fluent_lits.end());
    auto fact = [&](int id, const char* kind, Term payload, int c) {
        p.push_back(Rule::fact(Term::compound("cost", {num(id), sym(kind), std::move(payload), num(c)})));
    };
    for (const auto& r : desc.changeable()) {
        for (const auto& h : heads) {
            fact(r.id, "chg", tau_head(h), cost(desc, ChangeTuple::change(r.id, h)));
        }
        for (const auto& l : lits) {
            fact(r.id, "del", tau(l), cost(desc, ChangeTuple::remove(r.id, l)));
        }
        for (const auto& l : lits) {
            fact(r.id, "add", tau(l), cost(desc, ChangeTuple::add(r.id, l)));
        }
    }
    return p;
}

Program emit_inverse_interpreter() { return parse_program(inverse_text); }

std::vector<gdlr::Rule> inverse_interpreter_rules() {
    std::vector<gdlr::Rule> out;
    for (const auto& r : emit_inverse_interpreter()) {
        gdlr::Rule g;
        g.head = r.head.atom;
        for (const auto& b : r.body) {
            g.body.push_back({b.lit.atom, !b.lit.naf});
        }
        out.push_back(std::move(g));
    }
    return out;
}

std::set<std::string> timed_predicates(const std::vector<gdlr::Rule>& rules) {
    std::set<std::string> timed{"true", "does", "legal", "terminal"};
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : rules) {
            if (!r.head) {
                continue;
            }
            const std::string& h = r.head->name();
            if (timed.count(h) || h == "init" || h == "next" || is_time_free(h)) {
                continue;
            }
            for (const auto& l : r.body) {
                if (timed.count(l.atom.name())) {
                    timed.insert(h);
                    changed = true;
                    break;
                }
            }
        }
    }
    return timed;
}

namespace {

bool mentions_time(const Term& a, const std::set<std::string>& timed) {
    return a.has_signature("next", 1) || (!a.has_signature("init", 1) && timed.count(a.name()));
}

Term at_level(const Term& a, int i, const std::set<std::string>& timed) {
    if (a.has_signature("init", 1)) {
        return Term::compound("true", {a.arg(0), num(0)});
    }
    if (a.has_signature("next", 1)) {
        return Term::compound("true", {a.arg(0), num(i + 1)});
    }
    if (timed.count(a.name()) && !is_time_free(a.name())) {
        return a.with_arg(num(i));
    }
    return a;
}

} // namespace

Program temporal_extension(const std::vector<gdlr::Rule>& rules, int n) {
    const std::set<std::string> timed = timed_predicates(rules);
    Program p;
    for (int i = 0; i <= n; ++i) {
        for (const auto& r : rules) {
            if (!r.head) {
                continue;
            }
            bool dynamic = mentions_time(*r.head, timed);
            for (const auto& l : r.body) {
                dynamic = dynamic || mentions_time(l.atom, timed);
            }
            if (!dynamic && i > 0) {
                continue;
            }
            std::vector<BodyItem> body;
            for (const auto& l : r.body) {
                Term a = at_level(l.atom, i, timed);
                body.push_back(BodyItem::literal(l.positive ? Literal::pos(std::move(a)) : Literal::neg(std::move(a))));
            }
            p.push_back(Rule::normal(at_level(*r.head, i, timed), std::move(body)));
        }
    }
    return p;
}

Program emit_action_generator(int n) {
    const Term R = Term::variable("R");
    const Term A = Term::variable("A");
    Program p;
    for (int i = 0; i <= n; ++i) {
        const Term lv = num(i);
        const Term no_play = Term::compound("no_play", {lv});
        const Term end = Term::compound("end", {lv});
        const Term input = Term::compound("input", {R, A});
        const Term role = Term::compound("role", {R});
        const Term legal = Term::compound("legal", {R, A, lv});
        const Term does = Term::compound("does", {R, A, lv});
        p.push_back(Rule::normal(no_play, {BodyItem::literal(Literal::pos(role)),
                                           BodyItem::conditional(Literal::neg(legal), {Literal::pos(input)})}));
        p.push_back(Rule::normal(
            end, {BodyItem::count(1, {{Term::compound("terminal", {lv}), {}}, {no_play, {}}}, std::nullopt)}));
        if (i > 0) {
            p.push_back(Rule::normal(end, {BodyItem::literal(Literal::pos(Term::compound("end", {num(i - 1)})))}));
        }
        p.push_back(Rule::choice(1, {{does, {Literal::pos(input)}}}, 1,
                                 {BodyItem::literal(Literal::neg(end)), BodyItem::literal(Literal::pos(role))}));
        p.push_back(Rule::constraint({BodyItem::literal(Literal::pos(does)), BodyItem::literal(Literal::neg(legal))}));
    }
    return p;
}

namespace {

/// Post-order numbering of a formula tree.
struct Numbered {
    int index = 0;
    std::vector<Numbered> kids;
};

Numbered number_tree(const Formula& f, int& next) {
    Numbered n;
    for (std::size_t c = 0; c < f.arity(); ++c) {
        n.kids.push_back(number_tree(f.child(c), next));
    }
    n.index = next++;
    return n;
}

Term eta(const Numbered& n, int level) {
    return Term::symbol("f_" + std::to_string(n.index) + "_" + std::to_string(level));
}

void encode(const Formula& f, const Numbered& n, int i, const std::set<std::string>& timed, Program& out) {
    using K = Formula::Kind;
    const Term self = eta(n, i);
    auto pos = [](Term t) { return BodyItem::literal(Literal::pos(std::move(t))); };
    switch (f.kind()) {
    case K::Atom: {
        const Term& a = f.atom_term();
        out.push_back(Rule::normal(self, {pos(timed.count(a.name()) ? a.with_arg(num(i)) : a)}));
        return;
    }
    case K::Top:
        out.push_back(Rule::fact(self));
        return;
    case K::Not:
        out.push_back(Rule::normal(self, {BodyItem::literal(Literal::neg(eta(n.kids[0], i)))}));
        encode(f.child(0), n.kids[0], i, timed, out);
        return;
    case K::And:
        out.push_back(Rule::normal(self, {pos(eta(n.kids[0], i)), pos(eta(n.kids[1], i))}));
        encode(f.child(0), n.kids[0], i, timed, out);
        encode(f.child(1), n.kids[1], i, timed, out);
        return;
    case K::Next:
        out.push_back(Rule::normal(self, {pos(Term::compound("terminal", {num(i)}))}));
        out.push_back(Rule::normal(self, {pos(Term::compound("no_play", {num(i)}))}));
        out.push_back(Rule::normal(self, {pos(eta(n.kids[0], i + 1))}));
        encode(f.child(0), n.kids[0], i + 1, timed, out);
        return;
    case K::Or:
    case K::Implies:
    case K::Bottom:
        break;
    }
    throw AspError("formula must be desugared before encoding");
}

} // namespace

Program encode_gtl_formula(const Formula& phi, int level, const std::set<std::string>& timed) {
    const Formula f = phi.desugar();
    int next = 0;
    Numbered n = number_tree(f, next);
    Program out;
    encode(f, n, level, timed, out);
    return out;
}

Term formula_name(const Formula& phi, int level) {
    int next = 0;
    return eta(number_tree(phi.desugar(), next), level);
}

Program with_copy_index(const Program& p, int j) {
    const Term cj = num(j);
    auto atom = [&](const Term& a) { return is_time_free(a.name()) ? a : a.with_arg(cj); };
    auto lit = [&](Literal l) {
        if (!l.is_comparison()) {
            l.atom = atom(l.atom);
        }
        return l;
    };
    auto element = [&](Element e) {
        e.atom = atom(e.atom);
        for (auto& c : e.conditions) {
            c = lit(c);
        }
        return e;
    };
    Program out = p;
    for (auto& r : out) {
        if (r.head.kind == Head::Kind::Atom) {
            r.head.atom = atom(r.head.atom);
        }
        for (auto& e : r.head.elements) {
            e = element(e);
        }
        for (auto& b : r.body) {
            b.lit = b.kind == BodyItem::Kind::Count ? b.lit : lit(b.lit);
            for (auto& c : b.conditions) {
                c = lit(c);
            }
            for (auto& e : b.elements) {
                e = element(e);
            }
        }
    }
    return out;
}

namespace {

Program verifier_over(const Formula& phi, const std::vector<gdlr::Rule>& rules) {
    const int n = phi.degree();
    Program p = emit_action_generator(n);
    append(p, temporal_extension(rules, n));
    append(p, encode_gtl_formula(phi, 0, timed_predicates(rules)));
    p.push_back(Rule::constraint({BodyItem::literal(Literal::pos(formula_name(phi, 0)))}));
    return p;
}

} // namespace

Program emit_verifier(const Formula& phi, const GameDescription& desc, std::optional<int> copy) {
    std::vector<gdlr::Rule> rules = inverse_interpreter_rules();
    rules.insert(rules.end(), desc.other().begin(), desc.other().end());
    Program p = verifier_over(phi, rules);
    return copy ? with_copy_index(p, *copy) : p;
}

Program emit_model_check_program(const Formula& phi, const GameDescription& desc) {
    return verifier_over(phi, desc.all_rules());
}

GuessCheckPair emit_guess_check(const RepairTask& task) {
    GuessCheckPair gc;
    gc.guess = emit_weak_constraint(task.desc, task.cost);
    append(gc.guess, emit_generator(task.desc));
    append(gc.guess, parse_program(holds_text));
    for (std::size_t j = 0; j < task.negative.size(); ++j) {
        append(gc.guess, emit_verifier(task.negative[j], task.desc, static_cast<int>(j + 1)));
    }
    gc.check = parse_program(unholds_text);
    append(gc.check, emit_verifier(Formula::conj_all(task.positive), task.desc));
    return gc;
}

std::pair<std::filesystem::path, std::filesystem::path> write_guess_check(const GuessCheckPair& pair,
                                                                          const std::filesystem::path& dir,
                                                                          const std::string& name) {
    std::filesystem::create_directories(dir);
    auto write = [&](const std::filesystem::path& path, const Program& p) {
        std::ofstream out(path);
        if (!out) {
            throw AspError("cannot write " + path.string());
        }
        out << to_string(p);
    };
    auto guess = dir / (name + ".guess.lp");
    auto check = dir / (name + ".check.lp");
    write(guess, pair.guess);
    write(check, pair.check);
    return {guess, check};
}

} // namespace gdlr::asp
