#pragma once

#include "gdlr/description.hpp"

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gdlr {

class RepairError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The edit vocabulary of a description: N, L, F and A.
struct RepairDomains {
    std::vector<Term> next_heads;     // next(f), f in base
    std::vector<Term> legal_heads;    // legal(p,a), (p,a) in the move domain
    std::vector<Literal> fluent_lits; // true(f) and not true(f)
    std::vector<Literal> action_lits; // does(p,a) and not does(p,a)

    bool is_next_head(const Term& h) const;
    bool is_legal_head(const Term& h) const;
    bool is_fluent_lit(const Literal& l) const;
    bool is_action_lit(const Literal& l) const;
    /// |Dom| = 1 + |L| + |N| + 2(|A| + |F|).
    std::size_t dom_size() const noexcept {
        return 1 + legal_heads.size() + next_heads.size() + 2 * (action_lits.size() + fluent_lits.size());
    }
};

RepairDomains repair_domains(const GameDescription& desc);

/// Kinds in canonical order: head change, removal, addition.
enum class ChangeKind { Change = 0, Remove = 1, Add = 2 };

/// `chg`, `del`, `add`.
const char* to_string(ChangeKind k);
/// Accepts chg/del/add and c/-/+. Throws RepairError.
ChangeKind parse_change_kind(std::string_view s);

/// <i,(tp,payload)>. For Change the payload is a head atom or the empty
/// placeholder (nullopt); for Add/Remove it is a body literal.
struct ChangeTuple {
    int rule = 0;
    ChangeKind kind = ChangeKind::Change;
    std::optional<Term> head;
    Literal literal;

    static ChangeTuple change(int rule, std::optional<Term> head) {
        return {rule, ChangeKind::Change, std::move(head), {}};
    }
    static ChangeTuple add(int rule, Literal l) { return {rule, ChangeKind::Add, std::nullopt, std::move(l)}; }
    static ChangeTuple remove(int rule, Literal l) { return {rule, ChangeKind::Remove, std::nullopt, std::move(l)}; }

    /// `legal(p,r)`, `empty`, `not true(win)`.
    std::string payload_string() const;
    /// `<4,(chg,legal(p,r))>`
    std::string to_string() const;

    friend bool operator==(const ChangeTuple& a, const ChangeTuple& b) noexcept {
        return a.rule == b.rule && a.kind == b.kind && a.head == b.head &&
               (a.kind == ChangeKind::Change || a.literal == b.literal);
    }
    /// Rule id, then kind, then payload (the empty head first).
    friend std::strong_ordering operator<=>(const ChangeTuple& a, const ChangeTuple& b) noexcept;
};

/// Parses `<rule>,<kind>,<payload>` as used on the command line, e.g.
/// `4,chg,legal(p,r)` or `3,del,does(p,r)` or `2,chg,empty`.
ChangeTuple parse_change_tuple(std::string_view text);

/// A set of change tuples, kept sorted and duplicate free.
class Repair {
public:
    Repair() = default;
    Repair(std::initializer_list<ChangeTuple> ts) : Repair(std::vector<ChangeTuple>(ts)) {}
    explicit Repair(std::vector<ChangeTuple> ts);

    const std::vector<ChangeTuple>& tuples() const noexcept { return tuples_; }
    std::size_t size() const noexcept { return tuples_.size(); }
    bool empty() const noexcept { return tuples_.empty(); }
    bool contains(const ChangeTuple& t) const;
    void insert(ChangeTuple t);
    std::string to_string() const;

    friend bool operator==(const Repair&, const Repair&) = default;
    friend auto operator<=>(const Repair& a, const Repair& b) {
        return std::lexicographical_compare_three_way(a.tuples_.begin(), a.tuples_.end(), b.tuples_.begin(),
                                                      b.tuples_.end());
    }

private:
    std::vector<ChangeTuple> tuples_;
};

struct RepairViolation {
    char condition;  // 'a'..'e'
    int rule;
    std::string message;
};

/// Checks conditions (a)-(e) independently. Also reports (e) when a rule
/// would end up as a legal rule with a does literal in its body. Throws
/// RepairError on an unknown rule id or a payload outside Dom.
std::vector<RepairViolation> validate_repair(const GameDescription& desc, const Repair& r);

/// rep(G,R). Kept body literals stay in order, additions follow sorted.
/// Throws RepairError if R is not valid.
GameDescription apply_repair(const GameDescription& desc, const Repair& r);

/// The resulting G_C rules without validation (the caller guarantees it).
std::vector<Rule> repaired_rules(const GameDescription& desc, const Repair& r);

/// Complementary literals, or two positive does atoms for one role.
bool redundant_body(const std::vector<Literal>& body);

} // namespace gdlr
