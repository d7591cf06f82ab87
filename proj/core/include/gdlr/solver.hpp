#pragma once

#include "gdlr/checker.hpp"
#include "gdlr/cost.hpp"
#include "gdlr/repair.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gdlr {

struct RepairTask {
    GameDescription desc;
    std::vector<Formula> positive;
    std::vector<Formula> negative;
    CostFunction cost = CostFunction::uniform();

    int max_cost = 16;
    /// Optimal solutions to collect; 0 means all of them.
    std::size_t max_solutions = 1;
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned jobs = 0;
};

struct RepairSolution {
    Repair repair;
    int cost = 0;
    GameDescription repaired;
    /// One violating sequence per negative formula, in task order.
    std::vector<Sequence> negative_evidence;
};

enum class SolveStatus {
    Solved,
    /// Nothing up to the cost bound; larger repairs were not tried.
    Exhausted,
    /// Every valid repair was tried.
    NoSolution,
    /// No repair works, not even with more empty rules.
    Unsolvable,
};

const char* to_string(SolveStatus s);

struct SolveResult {
    SolveStatus status = SolveStatus::Exhausted;
    int bound = 0;
    std::vector<RepairSolution> solutions;
    std::string reason;
    std::uint64_t candidates = 0;
};

/// Lowest-cost solutions, canonically least first.
SolveResult solve_mrp(const RepairTask& task);

/// Is there a solution of cost at most C?
bool decide_mrp_b(const RepairTask& task, int C);

/// Does some lowest-cost solution contain t? Finds the optimum C by binary
/// search over decide_mrp_b, then asks decide_mrp_b for cost 2C-1 under
/// costs doubled everywhere except t, which costs 2 cost(t) - 1.
bool decide_mrp_t(const RepairTask& task, const ChangeTuple& t);

/// Enumerates the valid repairs the generator admits: no head change to the
/// same head, empty slots are never "deleted", body edits only on rules that
/// keep a head, does literals only join next rules, and no resulting rule has
/// complementary literals or two does atoms for one role.
class CandidateSpace {
public:
    CandidateSpace(const GameDescription& desc, const CostFunction& cost);

    /// Visits the repairs of cost exactly C in canonical order until `visit`
    /// returns false. Returns true if some repair was cut off by the budget,
    /// i.e. repairs costlier than C may exist.
    bool for_each_at_cost(int C, const std::function<bool(const Repair&)>& visit) const;

    /// Every tuple some candidate may contain, sorted.
    std::vector<ChangeTuple> tuples() const;
    /// Sum of all tuple costs; no repair costs more.
    int cost_ceiling() const;

private:
    struct Slot {
        int id;
        Section section;
        const Rule* rule;
        std::vector<std::pair<ChangeTuple, int>> heads;    // c tuples with cost
        std::vector<std::pair<ChangeTuple, int>> removes;  // - tuples
        std::vector<std::pair<ChangeTuple, int>> adds;     // + tuples (all kinds)
    };
    const GameDescription& desc_;
    RepairDomains dom_;
    std::vector<Slot> slots_;
    std::vector<char> clean_suffix_;  // rules from k on are fine unchanged
    std::vector<char> tuples_from_;   // some rule from k on has a tuple
};

/// Degree-0 formulas over atoms independent of legal and next have the same
/// truth value under every repair. Returns a reason if such a formula already
/// rules out every solution.
std::optional<std::string> invariant_conflict(const RepairTask& task);

} // namespace gdlr
