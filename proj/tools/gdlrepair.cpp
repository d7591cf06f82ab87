// gdlrepair: validate, model check and repair GDL game descriptions.

#include "gdlr/asp_encoding.hpp"
#include "gdlr/asp_external.hpp"
#include "gdlr/checker.hpp"
#include "gdlr/game.hpp"
#include "gdlr/properties.hpp"
#include "gdlr/report.hpp"
#include "gdlr/solver.hpp"
#include "gdlr/theorems.hpp"
#include "gdlr/validate.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <unistd.h>

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

enum Exit { Ok = 0, NoSolution = 1, BadInput = 2, Unavailable = 3 };

struct Options {
    std::string game;
    std::string props;
    std::string cost = "uniform";
    std::optional<int> empty;
    int horizon = 1;
    std::string backend = "native";
    int max_cost = 16;
    std::size_t max_solutions = 1;
    unsigned jobs = 0;
    std::string format = "text";
    std::optional<std::string> solver;
    std::string out = ".";
    double time_limit = 0;
};

bool json_out(const Options& o) { return o.format == "json"; }

gdlr::GameDescription load(const Options& o) { return gdlr::load_game_file(o.game, o.empty); }

gdlr::PropertySet load_props(const Options& o, const gdlr::GameDescription& desc) {
    if (o.props.empty()) {
        return {};
    }
    return gdlr::load_properties_file(o.props, desc);
}

/// Stops with exit 2 unless the description is valid and in restricted form.
void require_valid(const gdlr::GameDescription& desc) {
    auto issues = gdlr::validate(desc);
    if (!issues.empty()) {
        std::string msg = "invalid game description:";
        for (const auto& i : issues) {
            msg += "\n  " + i.message;
        }
        throw std::invalid_argument(msg);
    }
}

int cmd_validate(const Options& o) {
    auto desc = load(o);
    auto issues = gdlr::validate(desc);
    if (json_out(o)) {
        std::cout << gdlr::to_json_lines(issues);
    } else if (issues.empty()) {
        std::cout << "valid: " << desc.size_legal() << " legal, " << desc.size_next() << " next, "
                  << desc.size_empty() << " empty, " << desc.other().size() << " other rules\n";
    } else {
        for (const auto& i : issues) {
            std::cout << i.code << ": " << i.message << "\n";
        }
    }
    return issues.empty() ? Ok : BadInput;
}

int cmd_check(const Options& o) {
    auto desc = load(o);
    require_valid(desc);
    auto props = load_props(o, desc);
    gdlr::Game game(desc);
    gdlr::ModelChecker mc(game);
    bool all_ok = true;
    json results = json::array();
    auto run = [&](const gdlr::Formula& f, const std::string& text, bool want) {
        auto res = mc.models(f);
        const bool ok = res.holds == want;
        all_ok = all_ok && ok;
        if (json_out(o)) {
            json r = {{"sign", want ? "+" : "-"}, {"formula", text}, {"holds", res.holds}, {"ok", ok}};
            if (res.counterexample) {
                r["counterexample"] = json::parse(gdlr::sequence_json(game, *res.counterexample));
            }
            results.push_back(r);
            return;
        }
        std::cout << (want ? "+ " : "- ") << text << ": " << (res.holds ? "holds" : "fails")
                  << (ok ? "" : "  [NOT AS REQUIRED]") << "\n";
        if (res.counterexample) {
            std::cout << gdlr::format_sequence(game, *res.counterexample);
        }
    };
    for (std::size_t i = 0; i < props.positive.size(); ++i) {
        run(props.positive[i], props.positive_text[i], true);
    }
    for (std::size_t i = 0; i < props.negative.size(); ++i) {
        run(props.negative[i], props.negative_text[i], false);
    }
    if (json_out(o)) {
        std::cout << json{{"ok", all_ok}, {"results", results}}.dump(2) << "\n";
    }
    return all_ok ? Ok : NoSolution;
}

int cmd_wellformed(const Options& o) {
    auto desc = load(o);
    require_valid(desc);
    gdlr::Game game(desc);
    auto rep = gdlr::check_wellformed(game, o.horizon);
    std::string losers;
    for (const auto& w : rep.winnability) {
        if (!w.winnable) {
            losers += (losers.empty() ? "" : ", ") + w.role.to_string();
        }
    }
    if (json_out(o)) {
        json j = {{"n", rep.n},
                  {"playability", rep.playability},
                  {"termination", rep.termination},
                  {"weak_winnability", rep.weakly_winnable()},
                  {"horizon", rep.horizon.value ? json(*rep.horizon.value) : json(nullptr)},
                  {"wellformed", rep.wellformed()}};
        if (rep.playability_counterexample) {
            j["playability_counterexample"] = json::parse(gdlr::sequence_json(game, *rep.playability_counterexample));
        }
        if (rep.termination_counterexample) {
            j["termination_counterexample"] = json::parse(gdlr::sequence_json(game, *rep.termination_counterexample));
        }
        json roles = json::object();
        for (const auto& w : rep.winnability) {
            roles[w.role.to_string()] = w.winnable;
        }
        j["winnable"] = roles;
        std::cout << j.dump(2) << "\n";
        return rep.wellformed() ? Ok : NoSolution;
    }
    auto verdict = [](bool b) { return b ? "OK" : "FAIL"; };
    std::cout << "n = " << rep.n << "\n";
    std::cout << "playability: " << verdict(rep.playability) << "\n";
    if (rep.playability_counterexample) {
        std::cout << gdlr::format_sequence(game, *rep.playability_counterexample);
    }
    std::cout << "termination: " << verdict(rep.termination) << "\n";
    if (rep.termination_counterexample) {
        std::cout << gdlr::format_sequence(game, *rep.termination_counterexample);
    }
    std::cout << "weak winnability: " << verdict(rep.weakly_winnable());
    if (!losers.empty()) {
        std::cout << " (" << losers << ")";
    }
    std::cout << "\n";
    for (const auto& w : rep.winnability) {
        if (w.witness) {
            std::cout << "  " << w.role << " wins on:\n" << gdlr::format_sequence(game, *w.witness);
        }
    }
    std::cout << "horizon: " << rep.horizon.to_string() << "\n";
    std::cout << "well-formed: " << (rep.wellformed() ? "yes" : "no") << "\n";
    return rep.wellformed() ? Ok : NoSolution;
}

gdlr::RepairTask make_task(const Options& o) {
    gdlr::RepairTask task;
    task.desc = load(o);
    require_valid(task.desc);
    auto props = load_props(o, task.desc);
    task.positive = props.positive;
    task.negative = props.negative;
    task.cost = gdlr::load_cost(o.cost);
    task.max_cost = o.max_cost;
    task.max_solutions = o.max_solutions;
    task.jobs = o.jobs;
    return task;
}

int emit(const Options& o, const gdlr::RepairTask& task) {
    auto pair = gdlr::asp::emit_guess_check(task);
    auto [guess, check] = gdlr::asp::write_guess_check(pair, o.out, fs::path(o.game).stem().string());
    if (json_out(o)) {
        std::cout << json{{"guess", guess.string()}, {"check", check.string()}}.dump(2) << "\n";
    } else {
        std::cout << "wrote " << guess.string() << "\nwrote " << check.string() << "\n";
    }
    return Ok;
}

int cmd_emit(const Options& o) { return emit(o, make_task(o)); }

int cmd_repair(const Options& o) {
    auto task = make_task(o);
    if (o.backend == "asp-emit") {
        return emit(o, task);
    }
    gdlr::SolveResult result;
    if (o.backend == "asp-solve") {
        auto solver = gdlr::asp::resolve_solver(o.solver);
        if (!solver) {
            throw gdlr::asp::BackendUnavailable("external backend unavailable: no solver given (--solver or " +
                                                std::string(gdlr::asp::solver_env_var) + ")");
        }
        fs::path work = fs::temp_directory_path() / ("gdlrepair-" + std::to_string(::getpid()));
        result = gdlr::asp::solve_with_external(task, *solver, o.time_limit, work);
        fs::remove_all(work);
    } else {
        result = gdlr::solve_mrp(task);
    }
    std::cout << gdlr::render_report(task, result,
                                     json_out(o) ? gdlr::ReportFormat::Json : gdlr::ReportFormat::Text);
    return result.status == gdlr::SolveStatus::Solved ? Ok : NoSolution;
}

int cmd_info(const Options& o) {
    auto desc = load(o);
    auto dom = gdlr::repair_domains(desc);
    auto rep = gdlr::check_theorem2_conditions(desc);
    int K = 1;
    if (!o.props.empty()) {
        K = std::max<int>(1, static_cast<int>(load_props(o, desc).negative.size()));
    }
    const long long bound = gdlr::theorem3_bound(desc, o.horizon, K);
    if (json_out(o)) {
        json roles = json::array();
        for (const auto& r : desc.roles()) {
            roles.push_back(r.to_string());
        }
        json j = {{"roles", roles},
                  {"base", desc.base().size()},
                  {"moves", desc.inputs().size()},
                  {"rules", {{"legal", desc.size_legal()}, {"next", desc.size_next()}, {"empty", desc.size_empty()},
                             {"other", desc.other().size()}}},
                  {"dom", dom.dom_size()},
                  {"repairable", rep.repairable()},
                  {"repairability", rep.to_string()},
                  {"empty_rule_bound", {{"n", o.horizon}, {"K", K}, {"value", bound}}}};
        std::cout << j.dump(2) << "\n";
        return Ok;
    }
    std::cout << "roles:";
    for (const auto& r : desc.roles()) {
        std::cout << " " << r;
    }
    std::cout << "\nbase propositions: " << desc.base().size() << "\nmove domain: " << desc.inputs().size()
              << "\nrules: " << desc.size_legal() << " legal, " << desc.size_next() << " next, " << desc.size_empty()
              << " empty, " << desc.other().size() << " other\n"
              << "|Dom| = " << dom.dom_size() << "\n"
              << "repairability to a well-formed game:\n"
              << rep.to_string() << "empty rules sufficient for n=" << o.horizon << ", K=" << K << ": " << bound
              << "\n";
    return Ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Validate, model check and repair GDL game descriptions"};
    app.require_subcommand(1);
    Options o;

    auto add_game = [&](CLI::App* sub) {
        sub->add_option("game", o.game, "GDL game file")->required()->check(CLI::ExistingFile);
        sub->add_option("--empty", o.empty, "Number of empty rule slots (overrides #empty)")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };
    auto add_props = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--props", o.props, "Property file (+/- formulas)")->check(CLI::ExistingFile);
        if (required) {
            opt->required();
        }
    };
    auto add_task = [&](CLI::App* sub) {
        sub->add_option("--cost", o.cost, "Cost preset (uniform, edit) or JSON cost file");
        sub->add_option("--out", o.out, "Directory for emitted programs");
    };

    auto* validate = app.add_subcommand("validate", "Check validity and restricted form");
    add_game(validate);

    auto* check = app.add_subcommand("check", "Model check the formulas of a property file");
    add_game(check);
    add_props(check, true);

    auto* wellformed = app.add_subcommand("wellformed", "Playability, termination, weak winnability, horizon");
    add_game(wellformed);
    wellformed->add_option("-n,--horizon", o.horizon, "Horizon n")->check(CLI::PositiveNumber);

    auto* repair = app.add_subcommand("repair", "Find a lowest-cost repair");
    add_game(repair);
    add_props(repair, true);
    add_task(repair);
    repair->add_option("--backend", o.backend, "native, asp-emit or asp-solve")
        ->check(CLI::IsMember({"native", "asp-emit", "asp-solve"}));
    repair->add_option("--max-cost", o.max_cost, "Largest repair cost to try")->check(CLI::NonNegativeNumber);
    repair->add_option("--max-solutions", o.max_solutions, "Optimal repairs to report (0 = all)");
    repair->add_option("--jobs", o.jobs, "Worker threads (0 = all cores)");
    repair->add_option("--solver", o.solver, "External solver executable");
    repair->add_option("--time-limit", o.time_limit, "Solver time limit in seconds (0 = none)")
        ->check(CLI::NonNegativeNumber);

    auto* emit_asp = app.add_subcommand("emit-asp", "Write the guess and check ASP programs");
    add_game(emit_asp);
    add_props(emit_asp, false);
    add_task(emit_asp);

    auto* info = app.add_subcommand("info", "Domains, rule counts and repairability conditions");
    add_game(info);
    add_props(info, false);
    info->add_option("-n,--horizon", o.horizon, "Horizon for the empty-rule bound")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? Ok : BadInput;
    }

    try {
        if (*validate) {
            return cmd_validate(o);
        }
        if (*check) {
            return cmd_check(o);
        }
        if (*wellformed) {
            return cmd_wellformed(o);
        }
        if (*repair) {
            return cmd_repair(o);
        }
        if (*emit_asp) {
            return cmd_emit(o);
        }
        if (*info) {
            return cmd_info(o);
        }
    } catch (const gdlr::asp::BackendUnavailable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Unavailable;
    } catch (const gdlr::asp::AspError& e) {
        std::cerr << "error: external backend: " << e.what() << "\n";
        return Unavailable;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return BadInput;
    }
    return BadInput;
}
