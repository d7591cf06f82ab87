#include "gdlr/description.hpp"

#include "gdlr/grounder.hpp"
#include "gdlr/program.hpp"

#include <algorithm>
#include <stdexcept>

namespace gdlr {

const char* to_string(Section s) {
    switch (s) {
    case Section::Legal:
        return "legal";
    case Section::Next:
        return "next";
    case Section::Empty:
        return "empty";
    case Section::Other:
        return "other";
    }
    return "?";
}

GameDescription::GameDescription(std::vector<Rule> legal, std::vector<Rule> next, std::size_t empty_count,
                                 std::vector<Rule> other)
    : n_legal_(legal.size()), n_next_(next.size()), n_empty_(empty_count) {
    for (auto& r : legal) {
        changeable_.push_back(std::move(r));
    }
    for (auto& r : next) {
        changeable_.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < empty_count; ++i) {
        changeable_.push_back(Rule{});
    }
    int id = 1;
    for (auto& r : changeable_) {
        r.id = id++;
    }
    other_ = std::move(other);
    for (auto& r : other_) {
        r.id = id++;
    }
    derive();
}

const Rule& GameDescription::rule(int id) const {
    if (!has_rule(id)) {
        throw std::out_of_range("no rule with id " + std::to_string(id));
    }
    return changeable_[static_cast<std::size_t>(id - 1)];
}

Section GameDescription::section_of(int id) const {
    if (id < 1) {
        return Section::Other;
    }
    auto i = static_cast<std::size_t>(id);
    if (i <= n_legal_) {
        return Section::Legal;
    }
    if (i <= n_legal_ + n_next_) {
        return Section::Next;
    }
    if (i <= changeable_.size()) {
        return Section::Empty;
    }
    return Section::Other;
}

std::vector<Rule> GameDescription::all_rules() const {
    std::vector<Rule> out;
    out.reserve(changeable_.size() + other_.size());
    for (const auto& r : changeable_) {
        if (r.head) {
            out.push_back(r);
        }
    }
    out.insert(out.end(), other_.begin(), other_.end());
    return out;
}

std::vector<Term> GameDescription::moves(const Term& role) const {
    std::vector<Term> out;
    for (const auto& [p, a] : inputs_) {
        if (p == role) {
            out.push_back(a);
        }
    }
    return out;
}

bool GameDescription::is_base(const Term& f) const {
    return std::binary_search(base_.begin(), base_.end(), f);
}

bool GameDescription::is_input(const Term& role, const Term& action) const {
    return std::binary_search(inputs_.begin(), inputs_.end(), std::make_pair(role, action));
}

GameDescription GameDescription::with_changeable(std::vector<Rule> rules) const {
    if (rules.size() != changeable_.size()) {
        throw std::invalid_argument("changeable rule count mismatch");
    }
    GameDescription d = *this;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        rules[i].id = static_cast<int>(i + 1);
        if (!rules[i].head) {
            rules[i].body.clear();
        }
    }
    d.changeable_ = std::move(rules);
    d.derive();
    return d;
}

void GameDescription::derive() {
    std::vector<Term> model;
    auto rules = all_rules();
    try {
        model = stable_model(rules, {});
        stratified_ = true;
    } catch (const NotStratified&) {
        // every head whose positive body could hold, negation ignored
        stratified_ = false;
        std::vector<Rule> relaxed = rules;
        for (auto& r : relaxed) {
            r.body.erase(std::remove_if(r.body.begin(), r.body.end(), [](const Literal& l) { return !l.positive; }),
                         r.body.end());
        }
        model = stable_model(relaxed, {});
    }
    roles_.clear();
    base_.clear();
    inputs_.clear();
    init_.clear();
    for (const auto& a : model) {
        if (a.has_signature("role", 1)) {
            roles_.push_back(a.arg(0));
        } else if (a.has_signature("base", 1)) {
            base_.push_back(a.arg(0));
        } else if (a.has_signature("input", 2)) {
            inputs_.emplace_back(a.arg(0), a.arg(1));
        } else if (a.has_signature("init", 1)) {
            init_.push_back(a.arg(0));
        }
    }
    std::sort(roles_.begin(), roles_.end());
    std::sort(base_.begin(), base_.end());
    std::sort(inputs_.begin(), inputs_.end());
    std::sort(init_.begin(), init_.end());
}

GameDescription ground_and_partition(const ParsedGame& parsed, std::optional<int> empty_count) {
    auto ground = ground_rules(parsed.rules);
    std::vector<Rule> legal, next, other;
    for (auto& g : ground) {
        const Term& h = *g.rule.head;
        if (h.has_signature("legal", 2)) {
            legal.push_back(std::move(g.rule));
        } else if (h.has_signature("next", 1)) {
            next.push_back(std::move(g.rule));
        } else {
            other.push_back(std::move(g.rule));
        }
    }
    int k = empty_count.value_or(parsed.empty_count.value_or(0));
    if (k < 0) {
        throw std::invalid_argument("empty rule count must be non-negative");
    }
    return GameDescription(std::move(legal), std::move(next), static_cast<std::size_t>(k), std::move(other));
}

GameDescription load_game(std::string_view text, std::optional<int> empty_count) {
    return ground_and_partition(parse_gdl(text), empty_count);
}

GameDescription load_game_file(const std::string& path, std::optional<int> empty_count) {
    return ground_and_partition(parse_gdl_file(path), empty_count);
}

} // namespace gdlr
