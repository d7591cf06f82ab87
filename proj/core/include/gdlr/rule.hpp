#pragma once

#include "gdlr/term.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace gdlr {

struct Literal {
    Term atom;
    bool positive = true;

    static Literal pos(Term a) { return {std::move(a), true}; }
    static Literal neg(Term a) { return {std::move(a), false}; }

    Literal negated() const { return {atom, !positive}; }
    std::string to_string() const;

    friend bool operator==(const Literal&, const Literal&) = default;
    /// Atom order first, positive before negative.
    friend std::strong_ordering operator<=>(const Literal& a, const Literal& b) noexcept {
        if (auto c = a.atom <=> b.atom; c != 0) {
            return c;
        }
        return b.positive <=> a.positive;
    }
};

/// A ground or non-ground rule. A missing head is the placeholder for an
/// empty rule slot; such rules always have an empty body.
struct Rule {
    int id = 0;
    std::optional<Term> head;
    std::vector<Literal> body;
    std::string label;

    bool is_empty() const noexcept { return !head.has_value(); }
    bool has_head(std::string_view name, std::size_t arity) const {
        return head && head->has_signature(name, arity);
    }
    bool body_contains(const Literal& l) const;
    /// `head :- b1, ..., bk.` or `head.`; empty rules print as `(empty).`
    std::string to_string() const;

    /// Structural equality (id, head, body order); labels are ignored.
    friend bool operator==(const Rule& a, const Rule& b) {
        return a.id == b.id && a.head == b.head && a.body == b.body;
    }
};

} // namespace gdlr
