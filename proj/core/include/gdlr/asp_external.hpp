#pragma once

#include "gdlr/asp_encoding.hpp"
#include "gdlr/solver.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gdlr::asp {

/// No solver configured, or the configured one cannot run.
class BackendUnavailable : public AspError {
public:
    using AspError::AspError;
};

inline constexpr const char* solver_env_var = "GDLREPAIR_ASP_SOLVER";

/// The explicit path if given, else $GDLREPAIR_ASP_SOLVER, else nothing.
std::optional<std::string> resolve_solver(const std::optional<std::string>& flag);

struct SolverRun {
    int exit_code = 0;
    bool timed_out = false;
    std::string output;
};

/// Runs `solver file...` with stdout and stderr captured; a time limit of
/// 0 means none. Throws BackendUnavailable if the program cannot be started.
SolverRun run_solver(const std::string& solver, const std::vector<std::filesystem::path>& files,
                     double time_limit_seconds = 0);

enum class AnswerStatus { Optimum, Satisfiable, Unsatisfiable, Unknown };

/// The usual "Answer: k / atoms / Optimization: c" text layout.
struct SolverOutput {
    AnswerStatus status = AnswerStatus::Unknown;
    std::vector<std::vector<Term>> answers;
    /// Cost vector per answer, empty when the solver reported none.
    std::vector<std::vector<long long>> costs;
};

/// Throws AspError if the text contains neither an answer nor a verdict.
/// tup atoms using `-`, `+` or `c` as kind are normalized to del/add/chg.
SolverOutput parse_solver_output(std::string_view text);

/// Builds the repair from the tup atoms of an answer set and applies it.
/// If ha/lit atoms are present, the rules they describe must match the
/// repaired rules; if `reported_cost` is given it must match the task's
/// cost function. Throws AspError on any mismatch.
RepairSolution repair_from_answer(const std::vector<Term>& atoms, const RepairTask& task,
                                  std::optional<long long> reported_cost = std::nullopt);

/// Emits the program pair into `workdir`, runs the solver on it and maps
/// the best answer to a result. A timeout yields Exhausted.
SolveResult solve_with_external(const RepairTask& task, const std::string& solver, double time_limit_seconds,
                                const std::filesystem::path& workdir);

} // namespace gdlr::asp
