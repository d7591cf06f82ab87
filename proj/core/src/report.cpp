#include "gdlr/report.hpp"

#include "gdlr/game.hpp"
#include "json.hpp"

#include <sstream>

namespace gdlr {

using nlohmann::json;

std::string format_description(const GameDescription& desc) {
    std::string out;
    auto emit = [&](const Rule& r) {
        if (!r.head) {
            return;
        }
        if (!r.label.empty()) {
            out += "[" + r.label + "] ";
        }
        out += r.to_string() + "\n";
    };
    for (const auto& r : desc.changeable()) {
        emit(r);
    }
    for (const auto& r : desc.other()) {
        emit(r);
    }
    return out;
}

namespace {

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) {
        out.push_back(line);
    }
    return out;
}

struct Edit {
    char op;  // ' ', '-', '+'
    std::size_t a, b;  // line index in before/after
};

} // namespace

std::string unified_diff(const std::string& before, const std::string& after, const std::string& from_name,
                         const std::string& to_name) {
    const auto A = lines_of(before);
    const auto B = lines_of(after);
    const std::size_t n = A.size(), m = B.size();
    std::vector<std::vector<std::uint32_t>> lcs(n + 1, std::vector<std::uint32_t>(m + 1, 0));
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = m; j-- > 0;) {
            lcs[i][j] = A[i] == B[j] ? lcs[i + 1][j + 1] + 1 : std::max(lcs[i + 1][j], lcs[i][j + 1]);
        }
    }
    std::vector<Edit> script;
    std::size_t i = 0, j = 0;
    while (i < n || j < m) {
        if (i < n && j < m && A[i] == B[j]) {
            script.push_back({' ', i++, j++});
        } else if (i < n && (j == m || lcs[i + 1][j] >= lcs[i][j + 1])) {
            script.push_back({'-', i++, j});
        } else {
            script.push_back({'+', i, j++});
        }
    }
    const std::size_t ctx = 3;
    std::string out;
    std::size_t k = 0;
    while (k < script.size()) {
        while (k < script.size() && script[k].op == ' ') {
            ++k;
        }
        if (k == script.size()) {
            break;
        }
        std::size_t start = k >= ctx ? k - ctx : 0;
        std::size_t end = k;
        // extend the hunk while changes are within 2*ctx of each other
        while (end < script.size()) {
            if (script[end].op != ' ') {
                ++end;
                continue;
            }
            std::size_t run = end;
            while (run < script.size() && script[run].op == ' ') {
                ++run;
            }
            if (run == script.size() || run - end > 2 * ctx) {
                end = std::min(end + ctx, script.size());
                break;
            }
            end = run;
        }
        std::size_t a0 = script[start].a, b0 = script[start].b, na = 0, nb = 0;
        std::string body;
        for (std::size_t t = start; t < end; ++t) {
            const Edit& e = script[t];
            if (e.op != '+') {
                ++na;
            }
            if (e.op != '-') {
                ++nb;
            }
            body += e.op;
            body += (e.op == '+' ? B[e.b] : A[e.a]) + "\n";
        }
        if (out.empty()) {
            out = "--- " + from_name + "\n+++ " + to_name + "\n";
        }
        out += "@@ -" + std::to_string(na ? a0 + 1 : a0) + "," + std::to_string(na) + " +" +
               std::to_string(nb ? b0 + 1 : b0) + "," + std::to_string(nb) + " @@\n" + body;
        k = end;
    }
    return out;
}

namespace {

json sequence_to_json(const Game& game, const Sequence& seq) {
    json steps = json::array();
    for (std::size_t i = 0; i < seq.states.size(); ++i) {
        PositionView v = game.position(seq.states[i]);
        json state = json::array();
        for (const auto& f : game.propositions(v.state)) {
            state.push_back(f.to_string());
        }
        json goals = json::object();
        for (std::size_t r = 0; r < game.roles().size(); ++r) {
            json values = json::array();
            for (const auto& g : v.goals[r]) {
                values.push_back(g.to_string());
            }
            goals[game.roles()[r].to_string()] = values;
        }
        json step = {{"step", i}, {"state", state}, {"terminal", v.terminal}, {"playable", v.playable}, {"goals", goals}};
        if (i < seq.actions.size()) {
            json does = json::object();
            for (std::size_t r = 0; r < game.roles().size(); ++r) {
                does[game.roles()[r].to_string()] = game.moves(r)[seq.actions[i][r]].to_string();
            }
            step["does"] = does;
        }
        steps.push_back(step);
    }
    return steps;
}

json tuples_json(const Repair& r) {
    json out = json::array();
    for (const auto& t : r.tuples()) {
        out.push_back({{"rule", t.rule}, {"kind", to_string(t.kind)}, {"payload", t.payload_string()}});
    }
    return out;
}

} // namespace

std::string sequence_json(const Game& game, const Sequence& seq) { return sequence_to_json(game, seq).dump(); }

std::string render_report(const RepairTask& task, const SolveResult& result, ReportFormat fmt) {
    const RepairSolution* best = result.solutions.empty() ? nullptr : &result.solutions.front();
    std::string diff;
    if (best) {
        diff = unified_diff(format_description(task.desc), format_description(best->repaired), "original",
                            "repaired");
    }

    if (fmt == ReportFormat::Json) {
        json j;
        j["status"] = to_string(result.status);
        j["bound"] = result.bound;
        j["reason"] = result.reason;
        j["candidates"] = result.candidates;
        j["cost"] = best ? json(best->cost) : json(nullptr);
        j["tuples"] = best ? tuples_json(best->repair) : json::array();
        j["diff"] = diff;
        json evidence = json::array();
        if (best) {
            Game game(best->repaired);
            for (std::size_t k = 0; k < best->negative_evidence.size() && k < task.negative.size(); ++k) {
                evidence.push_back({{"formula", task.negative[k].to_string()},
                                    {"sequence", sequence_to_json(game, best->negative_evidence[k])}});
            }
        }
        j["evidence"] = evidence;
        json alts = json::array();
        for (std::size_t k = 1; k < result.solutions.size(); ++k) {
            alts.push_back({{"cost", result.solutions[k].cost}, {"tuples", tuples_json(result.solutions[k].repair)}});
        }
        j["alternatives"] = alts;
        return j.dump(2) + "\n";
    }

    std::string out = "status: " + std::string(to_string(result.status));
    if (best) {
        out += " (cost " + std::to_string(best->cost) + ")";
    }
    out += "\n";
    if (result.status == SolveStatus::Exhausted) {
        out += "bound: " + std::to_string(result.bound) + "\n";
    }
    if (!result.reason.empty()) {
        out += "reason: " + result.reason + "\n";
    }
    for (std::size_t k = 0; k < result.solutions.size(); ++k) {
        const auto& s = result.solutions[k];
        out += (k == 0 ? "repair: " : "also optimal: ") + s.repair.to_string() + "\n";
    }
    if (best) {
        out += diff.empty() ? "(no rule changes)\n" : diff;
        out += "repaired game:\n" + format_description(best->repaired);
        Game game(best->repaired);
        for (std::size_t k = 0; k < best->negative_evidence.size() && k < task.negative.size(); ++k) {
            out += "violates " + task.negative[k].to_string() + " on:\n";
            out += format_sequence(game, best->negative_evidence[k]);
        }
    }
    return out;
}

} // namespace gdlr
