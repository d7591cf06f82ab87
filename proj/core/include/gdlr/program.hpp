#pragma once

#include "gdlr/rule.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace gdlr {

class NotStratified : public std::runtime_error {
public:
    NotStratified(const std::string& msg, std::vector<Term> cycle)
        : std::runtime_error(msg), cycle_(std::move(cycle)) {}
    /// Atoms of a strongly connected component that contains a negative edge.
    const std::vector<Term>& cycle() const noexcept { return cycle_; }

private:
    std::vector<Term> cycle_;
};

/// A ground normal program compiled for repeated evaluation. Stratification is
/// checked on the ground atom dependency graph at construction; evaluation
/// then runs component by component in dependency order.
class GroundProgram {
public:
    GroundProgram() = default;
    /// Empty-head rules are ignored. Throws NotStratified.
    explicit GroundProgram(const std::vector<Rule>& rules);

    std::size_t atom_count() const noexcept { return atoms_.size(); }
    const Term& atom(std::size_t id) const { return atoms_.at(id); }
    std::optional<std::size_t> find(const Term& atom) const;

    /// Truth value per atom id, given the ids of atoms asserted as facts.
    std::vector<std::uint8_t> evaluate(const std::vector<std::size_t>& fact_ids) const;

    /// The unique stable model of the program plus `facts`, sorted.
    std::vector<Term> stable_model(const std::vector<Term>& facts) const;

private:
    struct CompiledRule {
        std::uint32_t head;
        std::vector<std::uint32_t> pos;
        std::vector<std::uint32_t> neg;
    };
    struct Component {
        std::uint32_t begin;  // range into rules_
        std::uint32_t end;
        bool recursive;
    };

    std::vector<Term> atoms_;
    std::unordered_map<Term, std::uint32_t, TermHash> index_;
    std::vector<CompiledRule> rules_;  // grouped by component, components in dependency order
    std::vector<Component> components_;

    std::uint32_t intern(const Term& t);
    bool fires(const CompiledRule& r, const std::vector<std::uint8_t>& truth) const;
};

/// Convenience wrapper: compile and evaluate once.
std::vector<Term> stable_model(const std::vector<Rule>& rules, const std::vector<Term>& facts);

} // namespace gdlr
