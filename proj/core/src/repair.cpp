#include "gdlr/repair.hpp"

#include <algorithm>
#include <map>

namespace gdlr {

namespace {

template <typename T>
bool sorted_contains(const std::vector<T>& v, const T& x) {
    return std::binary_search(v.begin(), v.end(), x);
}

Literal parse_literal(std::string_view s) {
    while (!s.empty() && s.front() == ' ') {
        s.remove_prefix(1);
    }
    bool positive = true;
    if (s.rfind("not ", 0) == 0) {
        positive = false;
        s.remove_prefix(4);
    }
    try {
        return {parse_term(s), positive};
    } catch (const std::invalid_argument& e) {
        throw RepairError(std::string("bad literal: ") + e.what());
    }
}

} // namespace

bool RepairDomains::is_next_head(const Term& h) const { return sorted_contains(next_heads, h); }
bool RepairDomains::is_legal_head(const Term& h) const { return sorted_contains(legal_heads, h); }
bool RepairDomains::is_fluent_lit(const Literal& l) const { return sorted_contains(fluent_lits, l); }
bool RepairDomains::is_action_lit(const Literal& l) const { return sorted_contains(action_lits, l); }

RepairDomains repair_domains(const GameDescription& desc) {
    RepairDomains d;
    for (const auto& f : desc.base()) {
        d.next_heads.push_back(Term::compound("next", {f}));
        Term t = Term::compound("true", {f});
        d.fluent_lits.push_back(Literal::pos(t));
        d.fluent_lits.push_back(Literal::neg(t));
    }
    for (const auto& [p, a] : desc.inputs()) {
        d.legal_heads.push_back(Term::compound("legal", {p, a}));
        Term t = Term::compound("does", {p, a});
        d.action_lits.push_back(Literal::pos(t));
        d.action_lits.push_back(Literal::neg(t));
    }
    std::sort(d.next_heads.begin(), d.next_heads.end());
    std::sort(d.legal_heads.begin(), d.legal_heads.end());
    std::sort(d.fluent_lits.begin(), d.fluent_lits.end());
    std::sort(d.action_lits.begin(), d.action_lits.end());
    return d;
}

const char* to_string(ChangeKind k) {
    switch (k) {
    case ChangeKind::Change:
        return "chg";
    case ChangeKind::Remove:
        return "del";
    case ChangeKind::Add:
        return "add";
    }
    return "?";
}

ChangeKind parse_change_kind(std::string_view s) {
    if (s == "chg" || s == "c") {
        return ChangeKind::Change;
    }
    if (s == "del" || s == "-") {
        return ChangeKind::Remove;
    }
    if (s == "add" || s == "+") {
        return ChangeKind::Add;
    }
    throw RepairError("unknown change kind '" + std::string(s) + "'");
}

std::string ChangeTuple::payload_string() const {
    if (kind == ChangeKind::Change) {
        return head ? head->to_string() : "empty";
    }
    return literal.to_string();
}

std::string ChangeTuple::to_string() const {
    return "<" + std::to_string(rule) + ",(" + gdlr::to_string(kind) + "," + payload_string() + ")>";
}

std::strong_ordering operator<=>(const ChangeTuple& a, const ChangeTuple& b) noexcept {
    if (auto c = a.rule <=> b.rule; c != 0) {
        return c;
    }
    if (auto c = static_cast<int>(a.kind) <=> static_cast<int>(b.kind); c != 0) {
        return c;
    }
    if (a.kind == ChangeKind::Change) {
        if (a.head.has_value() != b.head.has_value()) {
            return a.head.has_value() ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        return a.head ? *a.head <=> *b.head : std::strong_ordering::equal;
    }
    return a.literal <=> b.literal;
}

ChangeTuple parse_change_tuple(std::string_view text) {
    auto c1 = text.find(',');
    auto c2 = c1 == std::string_view::npos ? c1 : text.find(',', c1 + 1);
    if (c2 == std::string_view::npos) {
        throw RepairError("expected <rule>,<kind>,<payload>: " + std::string(text));
    }
    int rule = 0;
    try {
        rule = std::stoi(std::string(text.substr(0, c1)));
    } catch (const std::exception&) {
        throw RepairError("bad rule id in " + std::string(text));
    }
    ChangeKind kind = parse_change_kind(text.substr(c1 + 1, c2 - c1 - 1));
    std::string_view payload = text.substr(c2 + 1);
    if (kind == ChangeKind::Change) {
        if (payload == "empty") {
            return ChangeTuple::change(rule, std::nullopt);
        }
        try {
            return ChangeTuple::change(rule, parse_term(payload));
        } catch (const std::invalid_argument& e) {
            throw RepairError(std::string("bad head: ") + e.what());
        }
    }
    Literal l = parse_literal(payload);
    return kind == ChangeKind::Add ? ChangeTuple::add(rule, l) : ChangeTuple::remove(rule, l);
}

Repair::Repair(std::vector<ChangeTuple> ts) : tuples_(std::move(ts)) {
    std::sort(tuples_.begin(), tuples_.end());
    tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
}

bool Repair::contains(const ChangeTuple& t) const { return sorted_contains(tuples_, t); }

void Repair::insert(ChangeTuple t) {
    auto it = std::lower_bound(tuples_.begin(), tuples_.end(), t);
    if (it == tuples_.end() || !(*it == t)) {
        tuples_.insert(it, std::move(t));
    }
}

std::string Repair::to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < tuples_.size(); ++i) {
        out += (i ? ", " : "") + tuples_[i].to_string();
    }
    return out + "}";
}

std::vector<RepairViolation> validate_repair(const GameDescription& desc, const Repair& r) {
    const RepairDomains dom = repair_domains(desc);
    std::vector<RepairViolation> out;
    std::map<int, std::vector<const ChangeTuple*>> by_rule;
    for (const auto& t : r.tuples()) {
        if (!desc.has_rule(t.rule)) {
            throw RepairError("unknown rule id " + std::to_string(t.rule) + " in " + t.to_string());
        }
        if (t.kind == ChangeKind::Change) {
            if (t.head && !dom.is_legal_head(*t.head) && !dom.is_next_head(*t.head)) {
                throw RepairError(t.to_string() + ": head outside {empty} + L + N");
            }
        } else if (!dom.is_fluent_lit(t.literal) && !dom.is_action_lit(t.literal)) {
            throw RepairError(t.to_string() + ": literal outside A + F");
        }
        by_rule[t.rule].push_back(&t);
    }

    for (const auto& [id, ts] : by_rule) {
        const Rule& rule = desc.rule(id);
        const Section sec = desc.section_of(id);
        std::vector<const ChangeTuple*> changes;
        std::vector<Literal> adds, removes;
        for (const ChangeTuple* t : ts) {
            switch (t->kind) {
            case ChangeKind::Change:
                changes.push_back(t);
                break;
            case ChangeKind::Add:
                adds.push_back(t->literal);
                break;
            case ChangeKind::Remove:
                removes.push_back(t->literal);
                break;
            }
        }
        if (changes.size() > 1) {
            out.push_back({'a', id, "rule " + std::to_string(id) + " has " + std::to_string(changes.size()) +
                                        " head changes"});
        }
        for (const auto& l : adds) {
            if (rule.body_contains(l)) {
                out.push_back({'b', id, "adds " + l.to_string() + " which is already in the body of rule " +
                                            std::to_string(id)});
            }
        }
        for (const auto& l : removes) {
            if (!rule.body_contains(l)) {
                out.push_back({'b', id, "removes " + l.to_string() + " which is not in the body of rule " +
                                            std::to_string(id)});
            }
        }
        for (const ChangeTuple* c : changes) {
            if (sec == Section::Legal && c->head && !dom.is_legal_head(*c->head)) {
                out.push_back({'c', id, "legal rule " + std::to_string(id) + " must keep a head in {empty} + L, got " +
                                            c->head->to_string()});
            }
            if (sec == Section::Next && c->head && !dom.is_next_head(*c->head)) {
                out.push_back({'d', id, "next rule " + std::to_string(id) + " must keep a head in {empty} + N, got " +
                                            c->head->to_string()});
            }
        }
        bool legal_now = rule.head && dom.is_legal_head(*rule.head);
        bool legal_after = legal_now;
        for (const ChangeTuple* c : changes) {
            if (c->head && dom.is_legal_head(*c->head)) {
                legal_now = true;
            }
        }
        if (changes.size() == 1) {
            legal_after = changes[0]->head && dom.is_legal_head(*changes[0]->head);
        }
        if (legal_now) {
            for (const auto& l : adds) {
                if (!dom.is_fluent_lit(l)) {
                    out.push_back({'e', id, "legal rule " + std::to_string(id) + " may only gain true literals, got " +
                                                l.to_string()});
                }
            }
        }
        if (legal_after && changes.size() <= 1) {
            for (const auto& l : rule.body) {
                bool removed = std::find(removes.begin(), removes.end(), l) != removes.end();
                if (!removed && dom.is_action_lit(l)) {
                    out.push_back({'e', id, "rule " + std::to_string(id) + " becomes a legal rule but keeps " +
                                                l.to_string() + " in its body"});
                }
            }
        }
    }
    return out;
}

std::vector<Rule> repaired_rules(const GameDescription& desc, const Repair& r) {
    std::vector<Rule> rules = desc.changeable();
    std::map<int, std::vector<const ChangeTuple*>> by_rule;
    for (const auto& t : r.tuples()) {
        by_rule[t.rule].push_back(&t);
    }
    for (const auto& [id, ts] : by_rule) {
        Rule& rule = rules[static_cast<std::size_t>(id - 1)];
        std::vector<Literal> adds, removes;
        for (const ChangeTuple* t : ts) {
            if (t->kind == ChangeKind::Change) {
                rule.head = t->head;
            } else if (t->kind == ChangeKind::Add) {
                adds.push_back(t->literal);
            } else {
                removes.push_back(t->literal);
            }
        }
        if (!rule.head) {
            rule.body.clear();
            continue;
        }
        std::vector<Literal> body;
        for (const auto& l : rule.body) {
            if (std::find(removes.begin(), removes.end(), l) == removes.end()) {
                body.push_back(l);
            }
        }
        std::sort(adds.begin(), adds.end());
        for (auto& l : adds) {
            body.push_back(std::move(l));
        }
        rule.body = std::move(body);
    }
    return rules;
}

GameDescription apply_repair(const GameDescription& desc, const Repair& r) {
    auto violations = validate_repair(desc, r);
    if (!violations.empty()) {
        const auto& v = violations.front();
        throw RepairError(std::string("invalid repair, condition (") + v.condition + "): " + v.message);
    }
    return desc.with_changeable(repaired_rules(desc, r));
}

bool redundant_body(const std::vector<Literal>& body) {
    for (std::size_t i = 0; i < body.size(); ++i) {
        for (std::size_t j = i + 1; j < body.size(); ++j) {
            const Literal& a = body[i];
            const Literal& b = body[j];
            if (a.atom == b.atom && a.positive != b.positive) {
                return true;
            }
            if (a.positive && b.positive && a.atom.has_signature("does", 2) && b.atom.has_signature("does", 2) &&
                a.atom.arg(0) == b.atom.arg(0) && !(a.atom.arg(1) == b.atom.arg(1))) {
                return true;
            }
        }
    }
    return false;
}

} // namespace gdlr
