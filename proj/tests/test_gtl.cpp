#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <functional>

using namespace gdlr;
using namespace gdlr::test;

namespace {

Term sym(const char* s) {
    return Term::symbol(s);
}

Formula terminal() {
    return Formula::atom(sym("terminal"));
}

// Independent n-max sequence enumeration and formula evaluation, built on
// Game only.
struct Path {
    std::vector<State> states;
};

void enumerate_paths(const Game& g, int n, const std::function<void(const Path&)>& visit) {
    std::function<void(Path&)> rec = [&](Path& p) {
        const State s = p.states.back();
        Evaluation e = g.evaluate(s);
        if (static_cast<int>(p.states.size()) - 1 == n || g.terminal(e) || !g.playable(e)) {
            visit(p);
            return;
        }
        for (const auto& a : g.legal_joint_actions(e)) {
            p.states.push_back(g.update(s, a));
            rec(p);
            p.states.pop_back();
        }
    };
    Path p{{g.initial_state()}};
    rec(p);
}

bool eval(const Game& g, const Path& p, const Formula& f, std::size_t i) {
    switch (f.kind()) {
    case Formula::Kind::Atom:
        return g.holds(g.evaluate(p.states[i]), f.atom_term());
    case Formula::Kind::Top:
        return true;
    case Formula::Kind::Bottom:
        return false;
    case Formula::Kind::Not:
        return !eval(g, p, f.child(0), i);
    case Formula::Kind::And:
        return eval(g, p, f.child(0), i) && eval(g, p, f.child(1), i);
    case Formula::Kind::Or:
        return eval(g, p, f.child(0), i) || eval(g, p, f.child(1), i);
    case Formula::Kind::Implies:
        return !eval(g, p, f.child(0), i) || eval(g, p, f.child(1), i);
    case Formula::Kind::Next:
        return i + 1 >= p.states.size() || eval(g, p, f.child(0), i + 1);
    }
    return false;
}

bool oracle_models(const Game& g, const Formula& f) {
    bool all = true;
    enumerate_paths(g, f.degree(), [&](const Path& p) { all = all && eval(g, p, f, 0); });
    return all;
}

std::uint64_t oracle_count(const Game& g, int n) {
    std::uint64_t c = 0;
    enumerate_paths(g, n, [&](const Path&) { ++c; });
    return c;
}

} // namespace

TEST_CASE("formula parser precedence and degree", "[gtl]") {
    Formula f = parse_gtl("~terminal & X true(win) | X X terminal -> terminal");
    CHECK(f.kind() == Formula::Kind::Implies);
    CHECK(f.degree() == 2);
    CHECK(f.child(0).kind() == Formula::Kind::Or);
    CHECK(f.child(0).child(0).kind() == Formula::Kind::And);
    CHECK(parse_gtl("a -> b -> c").child(1).kind() == Formula::Kind::Implies);
    CHECK(parse_gtl("#true").kind() == Formula::Kind::Top);
    CHECK_THROWS_AS(parse_gtl("a &"), GtlError);
}

TEST_CASE("desugaring keeps only not, and, next and top", "[gtl]") {
    Formula f = parse_gtl("(a | X b) -> #false").desugar();
    std::function<bool(const Formula&)> plain = [&](const Formula& g) {
        switch (g.kind()) {
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
        case Formula::Kind::Bottom:
            return false;
        default:
            for (std::size_t i = 0; i < g.arity(); ++i) {
                if (!plain(g.child(i))) {
                    return false;
                }
            }
            return true;
        }
    };
    CHECK(plain(f));
    CHECK(f.degree() == 1);
}

TEST_CASE("atoms that depend on does are rejected", "[gtl]") {
    GameDescription d = left_right_game();
    CHECK_THROWS_AS(parse_gtl("does(p,l)", &d), GtlError);
    CHECK_THROWS_AS(parse_gtl("next(win)", &d), GtlError);
    CHECK_NOTHROW(parse_gtl("legal(p,l) & true(win) & goal(p,100)", &d));
}

TEST_CASE("nest and the macros", "[gtl]") {
    CHECK(nest(terminal(), NestOp::Or, 0) == terminal());
    CHECK(macro_end(1) == Formula::disj(terminal(), Formula::next(terminal())));
    CHECK(macro_end(9).degree() == 9);

    Formula loss = macro_loss(sym("p"), 1);
    Formula step = Formula::disj(Formula::negate(terminal()),
                                 Formula::negate(Formula::atom(Term::compound("goal", {sym("p"), sym("100")}))));
    CHECK(loss == Formula::conj(step, Formula::next(step)));

    Formula st = macro_static(Term::compound("control", {sym("x")}), 2);
    CHECK(st.degree() == 2);
    CHECK(st.kind() == Formula::Kind::And);
    CHECK(st.child(0) == Formula::negate(terminal()));

    GameDescription d = left_right_game();
    Formula play = macro_play(d, 1);
    CHECK(play.degree() == 1);
    CHECK(build_macro("end", {"1"}, d) == macro_end(1));
    CHECK(parse_gtl("end(1)", &d) == macro_end(1));
}

TEST_CASE("left/right game has one 1-max sequence, its winning repair has two", "[gtl]") {
    GameDescription d = left_right_game();
    Game g(d);
    ModelChecker mc(g);
    CHECK(mc.count_sequences(1) == 1);

    GameDescription repaired = apply_repair(d, Repair{ChangeTuple::change(4, Term::compound("legal", {sym("p"), sym("r")}))});
    Game g2(repaired);
    ModelChecker mc2(g2);
    CHECK(mc2.count_sequences(1) == 2);
}

TEST_CASE("left/right game satisfies end and play and always loses", "[gtl]") {
    GameDescription d = left_right_game();
    Game g(d);
    CHECK(models(g, macro_end(1)).holds);
    CHECK(models(g, macro_play(d, 1)).holds);
    CHECK(models(g, macro_loss(sym("p"), 1)).holds);

    CheckResult win = models(g, parse_gtl("X goal(p,100)", &d));
    CHECK_FALSE(win.holds);
    REQUIRE(win.counterexample);
    CHECK(win.counterexample->length() == 1);
    CHECK(g.propositions(win.counterexample->states.back()) == std::vector<Term>{sym("loss")});
}

TEST_CASE("weak next is vacuous at the last state", "[gtl]") {
    GameDescription d = left_right_game();
    Game g(d);
    CHECK(models(g, parse_gtl("X X #false", &d)).holds);
    CHECK_FALSE(models(g, parse_gtl("X #false", &d)).holds);
}

TEST_CASE("checker agrees with direct sequence enumeration on random games", "[gtl]") {
    Rng rng(7);
    int checked = 0;
    for (int i = 0; i < 150; ++i) {
        GameDescription d = random_game(rng);
        Game g(d);
        ModelChecker mc(g);
        for (int n = 0; n <= 3; ++n) {
            CHECK(mc.count_sequences(n) == oracle_count(g, n));
        }
        for (int k = 0; k < 5; ++k) {
            Formula f = random_formula(d, rng, 3);
            INFO(f.to_string());
            CheckResult r = mc.models(f);
            CHECK(r.holds == oracle_models(g, f));
            if (!r.holds) {
                REQUIRE(r.counterexample);
                CHECK_FALSE(mc.holds_on_sequence(*r.counterexample, f));
            }
            ++checked;
        }
    }
    CHECK(checked == 750);
}

TEST_CASE("well-formedness of the left/right game and its repair", "[gtl]") {
    WellformedReport r = check_wellformed(Game(left_right_game()), 1);
    CHECK(r.playability);
    CHECK(r.termination);
    CHECK_FALSE(r.weakly_winnable());
    CHECK_FALSE(r.wellformed());

    GameDescription repaired =
        apply_repair(left_right_game(), Repair{ChangeTuple::change(4, Term::compound("legal", {sym("p"), sym("r")}))});
    CHECK(check_wellformed(Game(repaired), 1).wellformed());
}
