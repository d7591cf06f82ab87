#pragma once

#include "gdlr/description.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gdlr {

class GtlError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Immutable GTL formula tree. Top/Bottom stand for the empty conjunction
/// and disjunction.
class Formula {
public:
    enum class Kind { Atom, Not, And, Or, Implies, Next, Top, Bottom };

    static Formula atom(Term a);
    static Formula top();
    static Formula bottom();
    static Formula negate(Formula f);
    static Formula conj(Formula a, Formula b);
    static Formula disj(Formula a, Formula b);
    static Formula implies(Formula a, Formula b);
    static Formula next(Formula f);
    /// Left-nested conjunction; Top when empty.
    static Formula conj_all(const std::vector<Formula>& fs);
    /// Left-nested disjunction; Bottom when empty.
    static Formula disj_all(const std::vector<Formula>& fs);

    Kind kind() const noexcept { return node_->kind; }
    const Term& atom_term() const { return node_->atom; }
    const Formula& child(std::size_t i) const { return node_->children.at(i); }
    std::size_t arity() const noexcept { return node_->children.size(); }
    /// Maximal nesting of X.
    int degree() const noexcept { return node_->degree; }
    std::size_t size() const noexcept { return node_->size; }

    /// Rewrites Or, Implies and Bottom into Not/And/Top.
    Formula desugar() const;
    /// Every atom occurring in the formula, sorted and unique.
    std::vector<Term> atoms() const;

    std::string to_string() const;

    friend bool operator==(const Formula& a, const Formula& b);

private:
    struct Node {
        Kind kind;
        Term atom;
        std::vector<Formula> children;
        int degree = 0;
        std::size_t size = 1;
    };
    std::shared_ptr<const Node> node_;

    static Formula make(Kind k, Term atom, std::vector<Formula> children);
};

/// nest(f, op, 0) = f; nest(f, op, n) = f op X nest(f, op, n-1).
enum class NestOp { And, Or };
Formula nest(const Formula& f, NestOp op, int n);

/// Named property macros over a description.
Formula macro_end(int n);
Formula macro_legal_any(const GameDescription& desc, const Term& role);
Formula macro_play(const GameDescription& desc, int n);
Formula macro_loss(const Term& role, int n);
Formula macro_static(const Term& fluent, int n);
Formula macro_turntaking(const Term& f1, const Term& f2, int n);

/// build_macro("end", {"1"}, desc) etc. `args` are the textual arguments;
/// nest takes a formula text, `and`/`or`, and a count.
Formula build_macro(const std::string& name, const std::vector<std::string>& args, const GameDescription& desc);

/// Throws GtlError if the atom may not occur in a formula over `desc`.
void check_gtl_atom(const GameDescription& desc, const Term& atom);

/// Grammar: `~` > `X` > `&` > `|` > `->` (right associative), parentheses,
/// `#true`, `#false`, ground atoms, and the macros nest/end/play/loss/static/
/// turntaking (a macro name is only taken as such if the description does
/// not define a predicate of that name). Atoms are checked against `desc`
/// when one is given.
Formula parse_gtl(std::string_view text, const GameDescription* desc = nullptr);

} // namespace gdlr
