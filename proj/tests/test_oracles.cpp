#include "support.hpp"

#include "gdlr/report.hpp"
#include "gdlr/theorems.hpp"
#include "gdlr/validate.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>

using namespace gdlr;
using namespace gdlr::test;

TEST_CASE("enumerated repairs are exactly the valid ones", "[oracles]") {
    // on a game small enough to check every tuple subset of a slot
    GameDescription d = load_game("role(p). base(a). input(p,m). input(p,n).\nterminal :- true(a).\n"
                                  "goal(p,100) :- true(a).\nlegal(p,m).\n");
    auto all = enumerate_valid_repairs(d, 100000);
    REQUIRE(all);
    for (const auto& r : *all) {
        CHECK(validate_repair(d, r).empty());
    }
    // rule 1 options: keep/empty/legal(p,m)/legal(p,n) heads, with the body
    // any subset of {true(a), not true(a)}; complementary pairs only count
    // once the head is empty
    CHECK(all->size() == 3 * 3 + 4);
}

TEST_CASE("random valid repairs validate", "[oracles]") {
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        GameDescription d = random_game(rng);
        Repair r = random_valid_repair(d, rng);
        CHECK(validate_repair(d, r).empty());
        CHECK(validate(apply_repair(d, r)).empty());
    }
}

TEST_CASE("solve_mrp matches exhaustive enumeration on tiny tasks", "[oracles]") {
    Rng rng(2024);
    for (int i = 0; i < 8; ++i) {
        RepairTask task = random_oracle_task(rng, 20000);
        auto brute = brute_force_mrp(task, 20000);
        REQUIRE(brute);
        SolveResult res = solve_mrp(task);
        INFO(format_description(task.desc));
        if (!brute->optimum) {
            CHECK(res.status != SolveStatus::Solved);
            continue;
        }
        REQUIRE(res.status == SolveStatus::Solved);
        CHECK(res.solutions[0].cost == *brute->optimum);
        std::vector<Repair> found;
        for (const auto& s : res.solutions) {
            found.push_back(s.repair);
        }
        std::sort(found.begin(), found.end());
        CHECK(found == brute->optimal);
    }
}

TEST_CASE("inverse interpreter agrees with the repaired rules", "[oracles]") {
    Rng rng(8);
    for (int i = 0; i < 30; ++i) {
        GameDescription d = random_game(rng);
        GameDescription repaired = apply_repair(d, random_valid_repair(d, rng));
        for (int k = 0; k < 10; ++k) {
            InterpreterProbe p = probe_inverse_interpreter(repaired, random_state(repaired, rng),
                                                           random_joint_action(repaired, rng));
            CHECK(p.direct == p.interpreted);
        }
    }
}

TEST_CASE("well-formed repair construction yields 1-well-formed games", "[oracles]") {
    Rng rng(11);
    int done = 0;
    for (int i = 0; i < 200 && done < 10; ++i) {
        GameDescription d = random_repairable_game(rng);
        if (!check_theorem2_conditions(d).repairable()) {
            continue;
        }
        Repair r = construct_wellformed_repair(d);
        REQUIRE(validate_repair(d, r).empty());
        CHECK(check_wellformed(Game(apply_repair(d, r)), 1).wellformed());
        ++done;
    }
    CHECK(done == 10);
}
