#include "gdlr/asp_external.hpp"

#include "gdlr/checker.hpp"
#include "gdlr/game.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

namespace gdlr::asp {

std::optional<std::string> resolve_solver(const std::optional<std::string>& flag) {
    if (flag && !flag->empty()) {
        return flag;
    }
    if (const char* env = std::getenv(solver_env_var); env && *env) {
        return std::string(env);
    }
    return std::nullopt;
}

namespace {

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') {
            out += "'\\''";
        } else {
            out += c;
        }
    }
    return out + "'";
}

} // namespace

SolverRun run_solver(const std::string& solver, const std::vector<std::filesystem::path>& files,
                     double time_limit_seconds) {
    if (access(solver.c_str(), X_OK) != 0) {
        throw BackendUnavailable("external backend unavailable: cannot execute " + solver);
    }
    std::string cmd;
    if (time_limit_seconds > 0) {
        cmd = "timeout --kill-after=5 " + std::to_string(time_limit_seconds) + " ";
    }
    cmd += shell_quote(solver);
    for (const auto& f : files) {
        cmd += " " + shell_quote(f.string());
    }
    cmd += " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        throw BackendUnavailable("external backend unavailable: cannot start " + solver);
    }
    SolverRun run;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) {
        run.output.append(buf, n);
    }
    int status = pclose(pipe);
    run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    run.timed_out = time_limit_seconds > 0 && (run.exit_code == 124 || run.exit_code == 137);
    if (run.exit_code == 127) {
        throw BackendUnavailable("external backend unavailable: " + run.output);
    }
    return run;
}

namespace {

std::vector<std::string> split_atoms(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : line) {
        if (c == '(') {
            ++depth;
        } else if (c == ')') {
            --depth;
        }
        if (std::isspace(static_cast<unsigned char>(c)) && depth == 0) {
            if (!cur.empty()) {
                out.push_back(std::move(cur));
                cur.clear();
            }
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) {
        out.push_back(std::move(cur));
    }
    return out;
}

/// tup(i,-,x) -> tup(i,del,x) etc.
std::string normalize_atom(std::string a) {
    if (a.rfind("tup(", 0) == 0) {
        auto c1 = a.find(',');
        auto c2 = c1 == std::string::npos ? c1 : a.find(',', c1 + 1);
        if (c2 != std::string::npos) {
            std::string kind = a.substr(c1 + 1, c2 - c1 - 1);
            std::string fixed = kind == "-" ? "del" : kind == "+" ? "add" : kind == "c" ? "chg" : kind;
            a = a.substr(0, c1 + 1) + fixed + a.substr(c2);
        }
    }
    for (const char* empty : {"\xE2\x88\x85"}) {  // the empty-set sign
        for (auto p = a.find(empty); p != std::string::npos; p = a.find(empty)) {
            a.replace(p, std::string(empty).size(), "empty");
        }
    }
    return a;
}

} // namespace

SolverOutput parse_solver_output(std::string_view text) {
    SolverOutput out;
    std::istringstream in{std::string(text)};
    std::string line;
    bool saw_verdict = false;
    bool expect_atoms = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (expect_atoms) {
            expect_atoms = false;
            std::vector<Term> atoms;
            for (auto& a : split_atoms(line)) {
                try {
                    atoms.push_back(parse_term(normalize_atom(a)));
                } catch (const std::exception& e) {
                    throw AspError("unparsable atom '" + a + "' in solver output: " + e.what());
                }
            }
            out.answers.push_back(std::move(atoms));
            out.costs.emplace_back();
            continue;
        }
        if (line.rfind("Answer:", 0) == 0) {
            expect_atoms = true;
        } else if (line.rfind("Optimization:", 0) == 0) {
            if (out.costs.empty()) {
                throw AspError("Optimization line before any answer");
            }
            std::istringstream nums(line.substr(13));
            long long v = 0;
            std::vector<long long> cost;
            while (nums >> v) {
                cost.push_back(v);
            }
            out.costs.back() = std::move(cost);
        } else if (line.rfind("OPTIMUM FOUND", 0) == 0) {
            out.status = AnswerStatus::Optimum;
            saw_verdict = true;
        } else if (line.rfind("UNSATISFIABLE", 0) == 0) {
            out.status = AnswerStatus::Unsatisfiable;
            saw_verdict = true;
        } else if (line.rfind("SATISFIABLE", 0) == 0) {
            if (out.status != AnswerStatus::Optimum) {
                out.status = AnswerStatus::Satisfiable;
            }
            saw_verdict = true;
        } else if (line.rfind("UNKNOWN", 0) == 0) {
            saw_verdict = true;
        }
    }
    if (!saw_verdict && out.answers.empty()) {
        throw AspError("solver output has neither an answer nor a verdict");
    }
    if (!saw_verdict && out.status == AnswerStatus::Unknown) {
        out.status = AnswerStatus::Satisfiable;
    }
    return out;
}

RepairSolution repair_from_answer(const std::vector<Term>& atoms, const RepairTask& task,
                                  std::optional<long long> reported_cost) {
    std::vector<ChangeTuple> tuples;
    std::vector<Term> encoded;
    for (const auto& a : atoms) {
        if (a.has_signature("tup", 3)) {
            int id = 0;
            try {
                id = std::stoi(a.arg(0).name());
            } catch (const std::exception&) {
                throw AspError("bad rule index in " + a.to_string());
            }
            ChangeKind kind = ChangeKind::Change;
            try {
                kind = parse_change_kind(a.arg(1).name());
            } catch (const RepairError& e) {
                throw AspError(e.what());
            }
            if (kind == ChangeKind::Change) {
                tuples.push_back(ChangeTuple::change(id, tau_head_inverse(a.arg(2))));
            } else {
                gdlr::Literal l = tau_inverse(a.arg(2));
                tuples.push_back(kind == ChangeKind::Add ? ChangeTuple::add(id, l) : ChangeTuple::remove(id, l));
            }
        } else if (a.has_signature("ha", 2) || a.has_signature("lit", 2)) {
            encoded.push_back(a);
        }
    }
    RepairSolution sol;
    sol.repair = Repair(std::move(tuples));
    try {
        sol.repaired = apply_repair(task.desc, sol.repair);
    } catch (const RepairError& e) {
        throw AspError(std::string("solver answer is not a valid repair: ") + e.what());
    }
    sol.cost = task.cost.total(task.desc, sol.repair);
    if (reported_cost && *reported_cost != sol.cost) {
        throw AspError("solver reports cost " + std::to_string(*reported_cost) + " but the repair costs " +
                       std::to_string(sol.cost));
    }
    if (!encoded.empty()) {
        auto decoded = decode_rules(encoded, task.desc.size_changeable());
        auto expected = sol.repaired.changeable();
        for (std::size_t i = 0; i < decoded.size(); ++i) {
            std::sort(decoded[i].body.begin(), decoded[i].body.end());
            std::sort(expected[i].body.begin(), expected[i].body.end());
            if (decoded[i].head != expected[i].head || decoded[i].body != expected[i].body) {
                throw AspError("rule " + std::to_string(i + 1) + " in the answer set (" + decoded[i].to_string() +
                               ") differs from the repaired rule (" + expected[i].to_string() + ")");
            }
        }
    }
    Game game(sol.repaired);
    ModelChecker mc(game);
    for (const auto& phi : task.negative) {
        auto res = mc.models(phi);
        if (res.holds) {
            throw AspError("solver repair satisfies negative formula " + phi.to_string());
        }
        sol.negative_evidence.push_back(std::move(*res.counterexample));
    }
    return sol;
}

SolveResult solve_with_external(const RepairTask& task, const std::string& solver, double time_limit_seconds,
                                const std::filesystem::path& workdir) {
    auto [guess, check] = write_guess_check(emit_guess_check(task), workdir, "task");
    SolverRun run = run_solver(solver, {guess, check}, time_limit_seconds);
    SolveResult result;
    result.bound = task.max_cost;
    if (run.timed_out) {
        result.status = SolveStatus::Exhausted;
        result.reason = "external solver hit the time limit";
        return result;
    }
    SolverOutput out = parse_solver_output(run.output);
    if (out.status == AnswerStatus::Unsatisfiable || out.answers.empty()) {
        result.status = SolveStatus::NoSolution;
        result.reason = "the solver found no repair";
        return result;
    }
    std::optional<long long> reported;
    if (!out.costs.back().empty()) {
        reported = out.costs.back().front();
    }
    result.solutions.push_back(repair_from_answer(out.answers.back(), task, reported));
    result.status = SolveStatus::Solved;
    if (out.status != AnswerStatus::Optimum) {
        result.reason = "optimality not proven by the solver";
    }
    return result;
}

} // namespace gdlr::asp
