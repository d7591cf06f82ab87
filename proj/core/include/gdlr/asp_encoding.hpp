#pragma once

#include "gdlr/asp_syntax.hpp"
#include "gdlr/cost.hpp"
#include "gdlr/gtl.hpp"
#include "gdlr/solver.hpp"

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gdlr::asp {

/// true(f) -> (pos,ba,f), not does(p,a) -> (neg,ac,(p,a)), ...
Term tau(const gdlr::Literal& l);
/// next(f) -> (ba,f), legal(p,a) -> (ac,(p,a)), no head -> empty.
Term tau_head(const std::optional<Term>& head);
/// Throws AspError outside the image of tau.
gdlr::Literal tau_inverse(const Term& t);
std::optional<Term> tau_head_inverse(const Term& t);

/// Pi(G_C): ha(i,tau(head)) and lit(i,tau(l)), rule by rule, body in order.
struct EncodedRuleBase {
    std::vector<Term> atoms;
};

EncodedRuleBase encode_rules(const GameDescription& desc);
/// Inverse of encode_rules: rule i (id i, index i-1) of `rule_count` gets
/// the head from ha(i,.) (empty if absent or `empty`) and the body from its
/// lit(i,.) atoms in the given order. Throws AspError on foreign atoms.
std::vector<gdlr::Rule> decode_rules(const std::vector<Term>& atoms, std::size_t rule_count);

/// Domain facts and the input rules as o_ha/o_lit facts.
Program emit_domain(const GameDescription& desc);
/// emit_domain plus the generator clauses over ha/lit/tup.
Program emit_generator(const GameDescription& desc);
/// The weak constraint over tup/4 costs plus one cost fact per I x Dom.
Program emit_weak_constraint(const GameDescription& desc, const CostFunction& cost);
/// err_t/err_d/legal/next in terms of ha and lit.
Program emit_inverse_interpreter();
/// emit_inverse_interpreter as GDL rules with variables.
std::vector<gdlr::Rule> inverse_interpreter_rules();

/// Predicates that get a time argument: true, does, legal and terminal, and
/// whatever depends on one of them. ha and lit never do.
std::set<std::string> timed_predicates(const std::vector<gdlr::Rule>& rules);

/// Copies of `rules` for levels 0..n: init(f) becomes true(f,0), next(f)
/// becomes true(f,i+1), timed predicates gain the level. Rules without
/// timed atoms are emitted once.
Program temporal_extension(const std::vector<gdlr::Rule>& rules, int n);

/// One player move per role and level until the game ends.
Program emit_action_generator(int n);

/// enc(phi, level) of the desugared formula. Subformula names are
/// f_<post-order index>_<level>. Atoms of predicates in `timed` are read at
/// their level.
Program encode_gtl_formula(const Formula& phi, int level, const std::set<std::string>& timed);
/// Name of the root atom of encode_gtl_formula(phi, level, .).
Term formula_name(const Formula& phi, int level);

/// Appends the copy index to every atom except ha and lit.
Program with_copy_index(const Program& p, int j);

/// Action generator, temporal extension of the inverse interpreter plus
/// G_R, formula encoding and `:- root`. Has no stable model iff the rules
/// given by ha/lit satisfy phi.
Program emit_verifier(const Formula& phi, const GameDescription& desc, std::optional<int> copy = std::nullopt);
/// Same over the full game instead of the inverse interpreter: no stable
/// model iff the game satisfies phi.
Program emit_model_check_program(const Formula& phi, const GameDescription& desc);

struct GuessCheckPair {
    Program guess;
    Program check;
};

/// guess: weak constraint, generator, holds wrapper, one verifier copy per
/// negative formula. check: holds unwrapper and the verifier of the
/// conjunction of the positive formulas.
GuessCheckPair emit_guess_check(const RepairTask& task);

/// Writes `<name>.guess.lp` and `<name>.check.lp` into `dir`; returns both paths.
std::pair<std::filesystem::path, std::filesystem::path> write_guess_check(const GuessCheckPair& pair,
                                                                          const std::filesystem::path& dir,
                                                                          const std::string& name);

} // namespace gdlr::asp
