#include "support.hpp"

#include "gdlr/asp_encoding.hpp"
#include "gdlr/asp_external.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>
#include <sstream>

using namespace gdlr;
using namespace gdlr::test;

namespace {

Term sym(const char* s) {
    return Term::symbol(s);
}

Term fn(const char* f, std::vector<Term> args) {
    return Term::compound(f, std::move(args));
}

Term tup(std::vector<Term> items) {
    return Term::tuple(std::move(items));
}

std::vector<std::string> lines_without_space(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }),
                   line.end());
        if (!line.empty()) {
            out.push_back(line);
        }
    }
    return out;
}

void check_golden(const std::string& name, const asp::Program& p) {
    INFO(name);
    CHECK(lines_without_space(asp::to_string(p)) == lines_without_space(read_file(data_path("golden/" + name))));
}

void check_reparse(const asp::Program& p) {
    std::string text = asp::to_string(p);
    asp::Program again = asp::parse_program(text);
    CHECK(again == p);
}

bool clingo_available() {
    return std::system("python3 -c 'import clingo' >/dev/null 2>&1") == 0;
}

} // namespace

TEST_CASE("tau maps literals and heads to tuples", "[asp]") {
    using gdlr::Literal;
    CHECK(asp::tau(Literal::pos(fn("true", {sym("win")}))) == tup({sym("pos"), sym("ba"), sym("win")}));
    CHECK(asp::tau(Literal::neg(fn("does", {sym("p"), sym("r")}))) ==
          tup({sym("neg"), sym("ac"), tup({sym("p"), sym("r")})}));
    CHECK(asp::tau_head(fn("next", {sym("win")})) == tup({sym("ba"), sym("win")}));
    CHECK(asp::tau_head(fn("legal", {sym("p"), sym("r")})) == tup({sym("ac"), tup({sym("p"), sym("r")})}));
    CHECK(asp::tau_head(std::nullopt) == sym("empty"));
    CHECK(asp::tau_inverse(tup({sym("neg"), sym("ba"), sym("loss")})) == Literal::neg(fn("true", {sym("loss")})));
    CHECK(asp::tau_head_inverse(sym("empty")) == std::nullopt);
    CHECK_THROWS_AS(asp::tau_inverse(tup({sym("maybe"), sym("ba"), sym("loss")})), asp::AspError);
}

TEST_CASE("rule base encoding round-trips", "[asp]") {
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        GameDescription d = random_game(rng);
        GameDescription r = apply_repair(d, random_valid_repair(d, rng));
        auto atoms = asp::encode_rules(r).atoms;
        std::vector<gdlr::Rule> back = asp::decode_rules(atoms, r.size_changeable());
        REQUIRE(back.size() == r.size_changeable());
        for (std::size_t k = 0; k < back.size(); ++k) {
            CHECK(back[k] == r.changeable()[k]);
        }
    }
}

TEST_CASE("rule base encoding of the left/right game", "[asp]") {
    auto atoms = asp::encode_rules(left_right_game()).atoms;
    auto has = [&](const Term& t) { return std::find(atoms.begin(), atoms.end(), t) == atoms.end() ? 0 : 1; };
    CHECK(has(fn("ha", {Term::symbol("1"), tup({sym("ac"), tup({sym("p"), sym("l")})})})));
    CHECK(has(fn("lit", {Term::symbol("3"), tup({sym("pos"), sym("ac"), tup({sym("p"), sym("r")})})})));
    CHECK(has(fn("ha", {Term::symbol("4"), sym("empty")})));
    CHECK(atoms.size() == 6);
}

TEST_CASE("emitted programs match the golden files", "[asp]") {
    RepairTask task = left_right_task();
    check_golden("pgen.lp", asp::emit_generator(task.desc));
    check_golden("ginv.lp", asp::emit_inverse_interpreter());
    check_golden("plegal.lp", asp::emit_action_generator(1));
    auto timed = asp::timed_predicates(task.desc.all_rules());
    check_golden("enc_end1.lp", asp::encode_gtl_formula(task.positive[0], 0, timed));
    check_golden("enc_play1.lp", asp::encode_gtl_formula(task.positive[1], 0, timed));
    check_golden("enc_loss1.lp", asp::encode_gtl_formula(task.negative[0], 0, timed));
}

TEST_CASE("every emission re-parses", "[asp]") {
    RepairTask task = left_right_task();
    check_reparse(asp::emit_generator(task.desc));
    check_reparse(asp::emit_weak_constraint(task.desc, CostFunction::edit()));
    check_reparse(asp::emit_inverse_interpreter());
    check_reparse(asp::emit_action_generator(3));
    check_reparse(asp::temporal_extension(task.desc.all_rules(), 2));
    check_reparse(asp::emit_verifier(task.negative[0], task.desc, 1));
    check_reparse(asp::emit_model_check_program(task.positive[1], task.desc));
    asp::GuessCheckPair gc = asp::emit_guess_check(task);
    check_reparse(gc.guess);
    check_reparse(gc.check);

    GameDescription ttt = load_game_file(data_path("ttt_broken.gdl"));
    check_reparse(asp::emit_generator(ttt));
    check_reparse(asp::temporal_extension(ttt.all_rules(), 1));
}

TEST_CASE("inverse interpreter has six rules", "[asp]") {
    CHECK(asp::emit_inverse_interpreter().size() == 6);
    CHECK(asp::inverse_interpreter_rules().size() == 6);
}

TEST_CASE("formula encoding sizes", "[asp]") {
    std::set<std::string> timed{"true", "does", "legal", "terminal"};
    CHECK(asp::encode_gtl_formula(parse_gtl("~terminal"), 0, timed).size() == 2);
    CHECK(asp::encode_gtl_formula(parse_gtl("terminal | X terminal"), 0, timed).size() == 9);
    CHECK(asp::formula_name(parse_gtl("~terminal"), 0) == sym("f_1_0"));
}

TEST_CASE("timed predicates and temporal extension", "[asp]") {
    GameDescription d = left_right_game();
    auto timed = asp::timed_predicates(d.all_rules());
    CHECK(timed.count("goal"));
    CHECK(timed.count("terminal"));
    CHECK_FALSE(timed.count("role"));
    CHECK_FALSE(timed.count("ha"));
    std::string text = asp::to_string(asp::temporal_extension(d.all_rules(), 1));
    CHECK(text.find("true(win,2) :- does(p,r,1).") != std::string::npos);
    CHECK(text.find("goal(p,100,0) :- true(win,0).") != std::string::npos);
    // static facts appear once
    CHECK(std::count(text.begin(), text.end(), '\n') == 19);
}

TEST_CASE("copy index extends every predicate but ha and lit", "[asp]") {
    asp::Program p = asp::parse_program("a(X,0) :- ha(I,X), lit(I,Y), not b(X).\n");
    std::string out = asp::to_string(asp::with_copy_index(p, 3));
    CHECK(out.find("a(X,0,3) :- ha(I,X), lit(I,Y), not b(X,3).") != std::string::npos);
}

TEST_CASE("guess and check programs", "[asp]") {
    RepairTask task = left_right_task();
    asp::GuessCheckPair gc = asp::emit_guess_check(task);
    std::string guess = asp::to_string(gc.guess);
    std::string check = asp::to_string(gc.check);
    CHECK(guess.find(":~") != std::string::npos);
    CHECK(guess.find("holds(ha(I,F)) :- ha(I,F).") != std::string::npos);
    CHECK(guess.find("does(R,A,0,1)") != std::string::npos);
    CHECK(check.find("ha(I,F) :- holds(ha(I,F)).") != std::string::npos);
    CHECK(check.find(":~") == std::string::npos);

    auto dir = std::filesystem::temp_directory_path() / "gdlr_test_gc";
    auto [g, c] = asp::write_guess_check(gc, dir, "left_right");
    CHECK(std::filesystem::exists(g));
    CHECK(std::filesystem::exists(c));
    check_reparse(asp::parse_program(read_file(g.string())));
}

TEST_CASE("solver output parsing", "[asp]") {
    asp::SolverOutput out = asp::parse_solver_output(
        "clingo version 5\nAnswer: 1\ntup(4,c,(ac,(p,r))) ha(4,(ac,(p,r)))\nOptimization: 3\n"
        "Answer: 2\ntup(4,chg,(ac,(p,r)))\nOptimization: 1\nOPTIMUM FOUND\n");
    CHECK(out.status == asp::AnswerStatus::Optimum);
    REQUIRE(out.answers.size() == 2);
    CHECK(out.costs[1] == std::vector<long long>{1});
    CHECK(out.answers[0][0] == fn("tup", {Term::symbol("4"), sym("chg"), tup({sym("ac"), tup({sym("p"), sym("r")})})}));
    CHECK(asp::parse_solver_output("UNSATISFIABLE\n").status == asp::AnswerStatus::Unsatisfiable);
    CHECK_THROWS_AS(asp::parse_solver_output("garbage"), asp::AspError);
}

TEST_CASE("repairs from answer sets", "[asp]") {
    RepairTask task = left_right_task();
    Term legal_r = fn("legal", {sym("p"), sym("r")});
    Term tup4 = fn("tup", {Term::symbol("4"), sym("chg"), tup({sym("ac"), tup({sym("p"), sym("r")})})});
    std::vector<Term> atoms = asp::encode_rules(apply_repair(task.desc, Repair{ChangeTuple::change(4, legal_r)})).atoms;
    atoms.push_back(tup4);
    RepairSolution s = asp::repair_from_answer(atoms, task, 1);
    CHECK(s.repair == Repair{ChangeTuple::change(4, legal_r)});
    CHECK(s.cost == 1);
    CHECK(asp::repair_from_answer({tup4}, task).repair == s.repair);
    CHECK_THROWS_AS(asp::repair_from_answer({tup4}, task, 5), asp::AspError);
    // ha/lit atoms that disagree with the tuples
    std::vector<Term> stale = asp::encode_rules(task.desc).atoms;
    stale.push_back(tup4);
    CHECK_THROWS_AS(asp::repair_from_answer(stale, task), asp::AspError);
}

TEST_CASE("missing solver is reported as unavailable", "[asp]") {
    CHECK_THROWS_AS(asp::run_solver("/nonexistent/solver", {}), asp::BackendUnavailable);
}

TEST_CASE("external solver repairs the left/right game", "[asp][clingo]") {
    if (!clingo_available()) {
        SKIP("clingo Python module not installed");
    }
    RepairTask task = left_right_task();
    auto dir = std::filesystem::temp_directory_path() / "gdlr_test_ext";
    SolveResult res = asp::solve_with_external(task, GDLR_ADAPTER, 120, dir);
    REQUIRE(res.status == SolveStatus::Solved);
    CHECK(res.solutions[0].cost == 1);
}
