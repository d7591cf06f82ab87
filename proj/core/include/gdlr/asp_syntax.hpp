#pragma once

#include "gdlr/term.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gdlr::asp {

class AspError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// `a`, `not a`, or a comparison `X < Y`.
struct Literal {
    Term atom;
    bool naf = false;
    std::optional<std::string> cmp;  // comparison operator; atom is the lhs
    Term rhs;

    static Literal pos(Term a) { return {std::move(a), false, std::nullopt, {}}; }
    static Literal neg(Term a) { return {std::move(a), true, std::nullopt, {}}; }
    static Literal compare(Term lhs, std::string op, Term rhs) {
        return {std::move(lhs), false, std::move(op), std::move(rhs)};
    }
    bool is_comparison() const noexcept { return cmp.has_value(); }

    friend bool operator==(const Literal&, const Literal&) = default;
};

/// `atom : c1, ..., ck` inside a choice or count aggregate.
struct Element {
    Term atom;
    std::vector<Literal> conditions;

    friend bool operator==(const Element&, const Element&) = default;
};

struct BodyItem {
    enum class Kind { Lit, Conditional, Count };
    Kind kind = Kind::Lit;
    Literal lit;                      // Lit, Conditional
    std::vector<Literal> conditions;  // Conditional
    std::optional<int> lower, upper;  // Count
    std::vector<Element> elements;    // Count

    static BodyItem literal(Literal l) { return {Kind::Lit, std::move(l), {}, {}, {}, {}}; }
    static BodyItem conditional(Literal l, std::vector<Literal> conds) {
        return {Kind::Conditional, std::move(l), std::move(conds), {}, {}, {}};
    }
    static BodyItem count(std::optional<int> lo, std::vector<Element> els, std::optional<int> hi) {
        return {Kind::Count, {}, {}, lo, hi, std::move(els)};
    }

    friend bool operator==(const BodyItem&, const BodyItem&) = default;
};

struct Head {
    enum class Kind { None, Atom, Choice };
    Kind kind = Kind::None;
    Term atom;
    std::optional<int> lower, upper;
    std::vector<Element> elements;

    friend bool operator==(const Head&, const Head&) = default;
};

struct Weak {
    Term weight;
    int priority = 0;
    std::vector<Term> terms;

    friend bool operator==(const Weak&, const Weak&) = default;
};

struct Rule {
    Head head;
    std::vector<BodyItem> body;
    std::optional<Weak> weak;

    static Rule fact(Term a);
    static Rule normal(Term a, std::vector<BodyItem> body);
    static Rule constraint(std::vector<BodyItem> body);
    static Rule choice(std::optional<int> lo, std::vector<Element> els, std::optional<int> hi,
                       std::vector<BodyItem> body);
    static Rule weak_constraint(std::vector<BodyItem> body, Weak w);

    friend bool operator==(const Rule&, const Rule&) = default;
};

using Program = std::vector<Rule>;

/// One rule per line, e.g. `1{does(R,A,0):input(R,A)}1 :- not end(0), role(R).`
std::string to_string(const Literal& l);
std::string to_string(const Rule& r);
std::string to_string(const Program& p);

/// Parses the subset of ASP-Core-2 the emitters produce: normal rules,
/// constraints, choice heads with bounds, conditional body literals, count
/// aggregates in bodies, comparisons and weak constraints. `%` comments and
/// `#show` directives are skipped. Throws AspError with a line number.
Program parse_program(std::string_view text);

} // namespace gdlr::asp
