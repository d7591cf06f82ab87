#include "support.hpp"

#include "gdlr/gdl_parser.hpp"
#include "gdlr/grounder.hpp"
#include "gdlr/validate.hpp"

#include <catch_amalgamated.hpp>

using namespace gdlr;
using namespace gdlr::test;

namespace {

Term sym(const char* s) {
    return Term::symbol(s);
}

Term fn(const char* f, std::vector<Term> args) {
    return Term::compound(f, std::move(args));
}

bool has_code(const std::vector<ValidationIssue>& issues, const std::string& code) {
    for (const auto& i : issues) {
        if (i.code == code) {
            return true;
        }
    }
    return false;
}

} // namespace

TEST_CASE("parser reads rules, labels and the empty directive", "[gdl_core]") {
    ParsedGame g = parse_gdl("% comment\n#empty 3.\n[c1] legal(p,l) :- true(a), not true(b).\nrole(p).\n");
    REQUIRE(g.empty_count == 3);
    REQUIRE(g.rules.size() == 2);
    CHECK(g.rules[0].label == "c1");
    CHECK(g.rules[0].head == fn("legal", {sym("p"), sym("l")}));
    REQUIRE(g.rules[0].body.size() == 2);
    CHECK(g.rules[0].body[1] == Literal::neg(fn("true", {sym("b")})));
    CHECK(g.rules[1].body.empty());
}

TEST_CASE("parser reports the position of syntax errors", "[gdl_core]") {
    try {
        parse_gdl("role(p).\nlegal(p,l) :- true(a)\n");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.line() >= 2);
    }
    CHECK_THROWS_AS(parse_gdl("p(X :- q."), ParseError);
}

TEST_CASE("grounder instantiates variables over derivable atoms", "[gdl_core]") {
    ParsedGame g = parse_gdl("q(a). q(b). r(b).\np(X) :- q(X), not r(X).\ns(X,Y) :- q(X), q(Y), distinct(X,Y).\n");
    std::vector<GroundRule> ground = ground_rules(g.rules);
    std::vector<Rule> rules;
    for (auto& gr : ground) {
        rules.push_back(gr.rule);
    }
    std::vector<Term> model = stable_model(rules, {});
    auto in = [&](const Term& t) { return std::find(model.begin(), model.end(), t) != model.end(); };
    CHECK(in(fn("p", {sym("a")})));
    CHECK_FALSE(in(fn("p", {sym("b")})));
    CHECK(in(fn("s", {sym("a"), sym("b")})));
    CHECK(in(fn("s", {sym("b"), sym("a")})));
    CHECK_FALSE(in(fn("s", {sym("a"), sym("a")})));
}

TEST_CASE("grounder rejects unsafe rules", "[gdl_core]") {
    ParsedGame g = parse_gdl("p(X) :- not q(X).\nq(a).\n");
    CHECK_THROWS_AS(ground_rules(g.rules), GroundingError);
}

TEST_CASE("left/right game partitions into legal, next, empty and other rules", "[gdl_core]") {
    GameDescription d = left_right_game();
    CHECK(d.size_legal() == 1);
    CHECK(d.size_next() == 2);
    CHECK(d.size_empty() == 1);
    CHECK(d.other().size() == 9);
    CHECK(d.rule(1).head == fn("legal", {sym("p"), sym("l")}));
    CHECK(d.rule(1).label == "c1");
    CHECK(d.rule(3).head == fn("next", {sym("win")}));
    CHECK(d.rule(4).is_empty());
    CHECK(d.section_of(4) == Section::Empty);
    CHECK(d.roles() == std::vector<Term>{sym("p")});
    CHECK(d.base() == std::vector<Term>{sym("loss"), sym("win")});
    CHECK(d.moves(sym("p")) == std::vector<Term>{sym("l"), sym("r")});
    CHECK(d.init().empty());
    CHECK(left_right_game(3).size_empty() == 3);
}

TEST_CASE("left/right game is valid and in restricted form", "[gdl_core]") {
    CHECK(validate(left_right_game()).empty());
}

TEST_CASE("validation flags the usual mistakes", "[gdl_core]") {
    const std::string head = "role(p). base(a). input(p,m).\n";
    SECTION("legal depends on does") {
        CHECK_FALSE(validate(load_game(head + "legal(p,m) :- does(p,m).\n")).empty());
    }
    SECTION("negative cycle") {
        auto issues = validate(load_game(head + "x :- not y.\ny :- not x.\n"));
        CHECK(has_code(issues, "stratification"));
    }
    SECTION("true in a head") {
        CHECK_FALSE(validate(load_game(head + "true(a) :- x.\nx.\n")).empty());
    }
    SECTION("legal in a body") {
        CHECK_FALSE(validate(load_game(head + "legal(p,m).\nterminal :- legal(p,m).\n")).empty());
    }
    SECTION("derived predicate in a next body is not restricted form") {
        auto issues = validate(load_game(head + "x :- true(a).\nnext(a) :- x.\n"));
        CHECK(has_code(issues, "restricted-form"));
    }
}

TEST_CASE("left/right positions: l loses, r wins", "[gdl_core]") {
    Game g(left_right_game());
    State s0 = g.initial_state();
    PositionView p0 = g.position(s0);
    CHECK_FALSE(p0.terminal);
    CHECK(p0.playable);
    REQUIRE(p0.legal.size() == 1);
    CHECK(p0.legal[0] == std::vector<Term>{sym("l")});

    State after_l = g.update(s0, g.make_joint_action({{sym("p"), sym("l")}}));
    CHECK(g.propositions(after_l) == std::vector<Term>{sym("loss")});
    PositionView pl = g.position(after_l);
    CHECK(pl.terminal);
    CHECK(pl.goals[0] == std::vector<Term>{sym("0")});

    // update ignores legality: r is not legal but still leads to win
    State after_r = g.update(s0, g.make_joint_action({{sym("p"), sym("r")}}));
    CHECK(g.propositions(after_r) == std::vector<Term>{sym("win")});
    CHECK(g.position(after_r).goals[0] == std::vector<Term>{sym("100")});

    CHECK_THROWS_AS(g.make_state({sym("draw")}), StateError);
    CHECK_THROWS_AS(g.make_joint_action({{sym("p"), sym("x")}}), StateError);
}

TEST_CASE("horizon of the left/right game is 1", "[gdl_core]") {
    Game g(left_right_game());
    HorizonResult h = horizon(g, 10);
    REQUIRE(h.value);
    CHECK(*h.value == 1);
}

TEST_CASE("horizon counts a revisit as the end of a sequence", "[gdl_core]") {
    // a toggles forever: S0={} -> {a} -> {} revisits after two steps
    GameDescription d = load_game("role(p). base(a). input(p,m).\nlegal(p,m).\nnext(a) :- not true(a).\n"
                                  "goal(p,100) :- true(a).\n");
    HorizonResult h = horizon(Game(d), 10);
    REQUIRE(h.value);
    CHECK(*h.value == 2);
}

TEST_CASE("stable model of a stratified program", "[gdl_core]") {
    std::vector<Rule> rules;
    rules.push_back({0, sym("b"), {Literal::pos(sym("a"))}, ""});
    rules.push_back({0, sym("a"), {Literal::pos(sym("b"))}, ""});
    rules.push_back({0, sym("c"), {Literal::neg(sym("a"))}, ""});
    rules.push_back({0, sym("d"), {Literal::pos(sym("c")), Literal::neg(sym("e"))}, ""});
    CHECK(stable_model(rules, {}) == std::vector<Term>{sym("c"), sym("d")});
    CHECK(stable_model(rules, {sym("a")}) == std::vector<Term>{sym("a"), sym("b")});
}

TEST_CASE("unstratified programs are rejected", "[gdl_core]") {
    std::vector<Rule> rules;
    rules.push_back({0, sym("a"), {Literal::neg(sym("b"))}, ""});
    rules.push_back({0, sym("b"), {Literal::neg(sym("a"))}, ""});
    CHECK_THROWS_AS(GroundProgram(rules), NotStratified);
}

TEST_CASE("stratified evaluation agrees with brute-force stable models", "[gdl_core]") {
    Rng rng(1234);
    for (int i = 0; i < 300; ++i) {
        RandomProgram p = random_stratified_program(rng);
        auto models = brute_force_stable_models(p);
        REQUIRE(models.size() == 1);
        CHECK(stable_model(p.rules, p.facts) == models[0]);
    }
}

TEST_CASE("random games are valid", "[gdl_core]") {
    Rng rng(99);
    for (int i = 0; i < 100; ++i) {
        std::string text = random_game_text(rng);
        GameDescription d = load_game(text);
        INFO(text);
        CHECK(validate(d).empty());
    }
}
