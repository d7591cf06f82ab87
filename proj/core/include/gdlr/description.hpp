#pragma once

#include "gdlr/gdl_parser.hpp"
#include "gdlr/rule.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gdlr {

enum class Section { Legal, Next, Empty, Other };

const char* to_string(Section s);

/// A grounded game description. Rules in the changeable part G_C are stored
/// by id (id i at index i-1) as three consecutive slot ranges: legal, next,
/// empty. After a repair a slot keeps its original section even if its rule
/// changed (an empty slot may now hold a legal rule, say).
class GameDescription {
public:
    GameDescription() = default;
    GameDescription(std::vector<Rule> legal, std::vector<Rule> next, std::size_t empty_count,
                    std::vector<Rule> other);

    std::size_t size_legal() const noexcept { return n_legal_; }
    std::size_t size_next() const noexcept { return n_next_; }
    std::size_t size_empty() const noexcept { return n_empty_; }
    /// |G_C| = |I|.
    std::size_t size_changeable() const noexcept { return changeable_.size(); }

    const std::vector<Rule>& changeable() const noexcept { return changeable_; }
    const std::vector<Rule>& other() const noexcept { return other_; }
    const Rule& rule(int id) const;
    bool has_rule(int id) const noexcept { return id >= 1 && static_cast<std::size_t>(id) <= changeable_.size(); }
    Section section_of(int id) const;

    /// Every non-empty rule (G_C then G_R).
    std::vector<Rule> all_rules() const;

    // derived from the rules
    const std::vector<Term>& roles() const noexcept { return roles_; }
    const std::vector<Term>& base() const noexcept { return base_; }
    /// Move domain as sorted (role, action) pairs.
    const std::vector<std::pair<Term, Term>>& inputs() const noexcept { return inputs_; }
    std::vector<Term> moves(const Term& role) const;
    const std::vector<Term>& init() const noexcept { return init_; }
    bool is_base(const Term& f) const;
    bool is_input(const Term& role, const Term& action) const;
    /// False when the rules are not stratified; the derived sets are then an
    /// over-approximation and the description cannot be executed.
    bool stratified() const noexcept { return stratified_; }

    /// Same description with `rules` replacing G_C (same section sizes).
    GameDescription with_changeable(std::vector<Rule> rules) const;

    friend bool operator==(const GameDescription& a, const GameDescription& b) {
        return a.n_legal_ == b.n_legal_ && a.n_next_ == b.n_next_ && a.n_empty_ == b.n_empty_ &&
               a.changeable_ == b.changeable_ && a.other_ == b.other_;
    }

private:
    std::size_t n_legal_ = 0, n_next_ = 0, n_empty_ = 0;
    std::vector<Rule> changeable_;
    std::vector<Rule> other_;

    std::vector<Term> roles_;
    std::vector<Term> base_;
    std::vector<std::pair<Term, Term>> inputs_;
    std::vector<Term> init_;
    bool stratified_ = true;

    void derive();
};

/// Grounds `parsed` and partitions the result: legal heads go to G_L, next
/// heads to G_N, everything else to G_R; `empty_count` (or the `#empty`
/// directive, or 0) empty slots form G_E. Ids follow G_L < G_N < G_E; G_R
/// rules get ids after |G_C| for diagnostics.
GameDescription ground_and_partition(const ParsedGame& parsed, std::optional<int> empty_count = std::nullopt);

/// parse_gdl + ground_and_partition.
GameDescription load_game(std::string_view text, std::optional<int> empty_count = std::nullopt);
GameDescription load_game_file(const std::string& path, std::optional<int> empty_count = std::nullopt);

} // namespace gdlr
