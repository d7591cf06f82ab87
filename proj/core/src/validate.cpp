#include "gdlr/validate.hpp"

#include "gdlr/program.hpp"

#include <algorithm>
#include <map>
#include "json.hpp"

namespace gdlr {

std::string ValidationIssue::to_json() const {
    nlohmann::json j{{"code", code}, {"rule_id", rule_id}, {"message", message}};
    return j.dump();
}

std::string to_json_lines(const std::vector<ValidationIssue>& issues) {
    std::string out;
    for (const auto& i : issues) {
        out += i.to_json();
        out += '\n';
    }
    return out;
}

namespace {

using Graph = std::map<std::string, std::set<std::string>>;

Graph predicate_graph(const std::vector<Rule>& rules) {
    Graph g;
    for (const auto& r : rules) {
        if (!r.head) {
            continue;
        }
        auto& out = g[r.head->name()];
        for (const auto& l : r.body) {
            out.insert(l.atom.name());
        }
    }
    return g;
}

std::set<std::string> reach(const Graph& g, const std::string& from) {
    std::set<std::string> seen;
    std::vector<std::string> todo{from};
    while (!todo.empty()) {
        auto p = todo.back();
        todo.pop_back();
        auto it = g.find(p);
        if (it == g.end()) {
            continue;
        }
        for (const auto& q : it->second) {
            if (seen.insert(q).second) {
                todo.push_back(q);
            }
        }
    }
    return seen;
}

bool in_f(const GameDescription& d, const Literal& l) {
    return l.atom.has_signature("true", 1) && d.is_base(l.atom.arg(0));
}

bool in_a(const GameDescription& d, const Literal& l) {
    return l.atom.has_signature("does", 2) && d.is_input(l.atom.arg(0), l.atom.arg(1));
}

bool in_l(const GameDescription& d, const Term& h) {
    return h.has_signature("legal", 2) && d.is_input(h.arg(0), h.arg(1));
}

bool in_n(const GameDescription& d, const Term& h) {
    return h.has_signature("next", 1) && d.is_base(h.arg(0));
}

} // namespace

std::set<std::string> dependencies(const std::vector<Rule>& rules, const std::string& pred) {
    return reach(predicate_graph(rules), pred);
}

bool depends_on_does(const GameDescription& desc, const std::string& pred) {
    if (pred == "does") {
        return true;
    }
    return dependencies(desc.all_rules(), pred).count("does") > 0;
}

std::vector<ValidationIssue> validate(const GameDescription& desc) {
    std::vector<ValidationIssue> issues;
    auto add = [&](const char* code, int id, std::string msg) { issues.push_back({code, id, std::move(msg)}); };

    std::vector<const Rule*> rules;
    for (const auto& r : desc.changeable()) {
        rules.push_back(&r);
    }
    for (const auto& r : desc.other()) {
        rules.push_back(&r);
    }

    // keyword placement
    for (const Rule* r : rules) {
        if (!r->head) {
            continue;
        }
        const auto& h = r->head->name();
        if (h == "role" && !r->body.empty()) {
            add("keyword-placement", r->id, "role may only be defined by facts: " + r->to_string());
        }
        if (h == "true" || h == "does") {
            add("keyword-placement", r->id, h + " may only appear in rule bodies: " + r->to_string());
        }
        for (const auto& l : r->body) {
            const auto& b = l.atom.name();
            if (b == "init" || b == "next") {
                add("keyword-placement", r->id, b + " may only appear in rule heads: " + r->to_string());
            }
        }
    }

    // dependency restrictions
    auto all = desc.all_rules();
    auto graph = predicate_graph(all);
    for (const char* p : {"legal", "terminal", "goal"}) {
        if (reach(graph, p).count("does")) {
            add("dependency", 0, std::string(p) + " depends on does");
        }
    }
    {
        auto deps = reach(graph, "init");
        for (const char* q : {"true", "does", "legal", "next", "terminal", "goal"}) {
            if (deps.count(q)) {
                add("dependency", 0, std::string("init depends on ") + q);
            }
        }
    }

    // stratification on the ground atom graph
    try {
        GroundProgram program(all);
    } catch (const NotStratified& e) {
        int id = 0;
        for (const Rule* r : rules) {
            if (r->head && std::binary_search(e.cycle().begin(), e.cycle().end(), *r->head)) {
                id = r->id;
                break;
            }
        }
        add("stratification", id, e.what());
    }

    // restricted form
    for (const Rule* r : rules) {
        if (!r->head) {
            continue;
        }
        bool next_rule = in_n(desc, *r->head);
        bool legal_rule = in_l(desc, *r->head);
        for (const auto& l : r->body) {
            if (l.atom.name() == "legal") {
                add("restricted-form", r->id, "legal appears in the body of " + r->to_string());
            }
            if (l.atom.name() == "does" && !next_rule) {
                add("restricted-form", r->id, "does appears in the body of non-next rule " + r->to_string());
            }
            if (legal_rule && !in_f(desc, l)) {
                add("restricted-form", r->id,
                    "legal rule body literal " + l.to_string() + " is not a true-literal over the base");
            }
            if (next_rule && !in_f(desc, l) && !in_a(desc, l)) {
                add("restricted-form", r->id,
                    "next rule body literal " + l.to_string() + " is not a true- or does-literal over the domains");
            }
        }
    }

    // section consistency; repaired descriptions may hold deleted rules and
    // filled empty slots
    for (const auto& r : desc.changeable()) {
        if (!r.head) {
            if (!r.body.empty()) {
                add("section", r.id, "rule without head has a body: " + r.to_string());
            }
            continue;
        }
        switch (desc.section_of(r.id)) {
        case Section::Legal:
            if (!in_l(desc, *r.head)) {
                add("section", r.id, "legal section rule head outside the legal domain: " + r.to_string());
            }
            break;
        case Section::Next:
            if (!in_n(desc, *r.head)) {
                add("section", r.id, "next section rule head outside the next domain: " + r.to_string());
            }
            break;
        case Section::Empty:
            if (!in_l(desc, *r.head) && !in_n(desc, *r.head)) {
                add("section", r.id, "empty section rule head outside the legal and next domains: " + r.to_string());
            }
            break;
        case Section::Other:
            break;
        }
    }
    for (const auto& r : desc.other()) {
        if (r.has_head("legal", 2) || r.has_head("next", 1)) {
            add("section", r.id, "legal/next rule outside its section: " + r.to_string());
        }
    }
    return issues;
}

} // namespace gdlr
