#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace gdlr {

/// A first-order term. Ground terms double as atoms (a predicate is the
/// functor of a compound term, a 0-ary predicate is a symbol).
///
/// Tuples `(a,b)` have an empty functor; they only show up in the ASP
/// encoding of rules but share this type so one grounder serves both.
class Term {
public:
    enum class Kind : std::uint8_t { Symbol, Variable, Compound, Tuple };

    Term() = default;

    static Term symbol(std::string name);
    static Term variable(std::string name);
    static Term compound(std::string functor, std::vector<Term> args);
    static Term tuple(std::vector<Term> items);
    /// Symbol for 0 args, compound otherwise.
    static Term make(std::string functor, std::vector<Term> args);

    Kind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }
    const std::vector<Term>& args() const noexcept { return args_; }
    std::size_t arity() const noexcept { return args_.size(); }
    const Term& arg(std::size_t i) const { return args_.at(i); }

    bool is_variable() const noexcept { return kind_ == Kind::Variable; }
    bool is_symbol() const noexcept { return kind_ == Kind::Symbol; }
    bool is_ground() const;

    /// Same functor and arity.
    bool has_signature(std::string_view name, std::size_t arity) const noexcept {
        return kind_ != Kind::Variable && kind_ != Kind::Tuple && name_ == name && args_.size() == arity;
    }

    /// Copy with one extra trailing argument.
    Term with_arg(Term extra) const;

    std::string to_string() const;
    std::size_t hash() const noexcept;

    friend bool operator==(const Term& a, const Term& b) noexcept;
    friend std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept;

private:
    Kind kind_ = Kind::Symbol;
    std::string name_;
    std::vector<Term> args_;
};

std::ostream& operator<<(std::ostream& os, const Term& t);

/// Predicate name/arity.
struct Signature {
    std::string name;
    std::size_t arity = 0;

    static Signature of(const Term& atom) { return {atom.name(), atom.arity()}; }
    std::string to_string() const { return name + "/" + std::to_string(arity); }
    friend bool operator==(const Signature&, const Signature&) = default;
    friend auto operator<=>(const Signature&, const Signature&) = default;
};

struct TermHash {
    std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};

struct SignatureHash {
    std::size_t operator()(const Signature& s) const noexcept {
        return std::hash<std::string>{}(s.name) * 31u + s.arity;
    }
};

/// Parses a single ground or non-ground term, e.g. `mark(1,X)` or `(ac,(p,a))`.
/// Throws std::invalid_argument on malformed text.
Term parse_term(std::string_view text);

} // namespace gdlr

template <>
struct std::hash<gdlr::Term> {
    std::size_t operator()(const gdlr::Term& t) const noexcept { return t.hash(); }
};
