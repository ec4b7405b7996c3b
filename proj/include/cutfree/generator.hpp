#pragma once

#include <cstdint>
#include <random>
#include <unordered_map>
#include <vector>

#include "cutfree/calculus.hpp"
#include "cutfree/formula.hpp"
#include "cutfree/logic.hpp"
#include "cutfree/prover.hpp"
#include "cutfree/sequent.hpp"

namespace cutfree {

struct Generated {
  Sequent sequent;
  DerivationPtr derivation;
};

/// Uniform-ish random formula of exactly `size` nodes in the logic's
/// signature over the variables a, b, c, ... (first `vars` letters).
Formula random_formula(std::mt19937_64& rng, LogicId logic, std::size_t size, int vars = 3);

/// Builds derivations forward: every step picks a rule of the logic and
/// reshapes already built subderivations into its premises (¬¬ wrapping,
/// weakening). All output passes check_derivation. Deterministic per seed.
class Generator {
 public:
  Generator(std::uint64_t seed, LogicId logic, int vars = 3);

  Formula formula(std::size_t size) { return random_formula(rng_, logic_, size, vars_); }

  /// Roughly `budget` rule applications.
  Generated provable(std::size_t budget);
  /// A provable sequent containing `target`, with target's main connective
  /// introduced by a rule wherever the logic allows it.
  Generated provable_containing(Formula target, std::size_t budget);

  std::mt19937_64& rng() { return rng_; }
  LogicId logic() const { return logic_; }

 private:
  DerivationPtr gen(std::size_t budget);
  DerivationPtr containing(Formula target, std::size_t budget);
  DerivationPtr leaf();
  DerivationPtr fallback(Formula target, std::size_t budget);

  DerivationPtr ensure_neg(DerivationPtr d, Formula x, Formula& a);
  DerivationPtr box_rule(RuleId rule, DerivationPtr d, std::vector<Formula> items, std::size_t pivot);
  DerivationPtr cond_rule(RuleId rule, DerivationPtr d, std::vector<Formula> items, std::size_t pivot,
                          Formula a0, std::ptrdiff_t exact_side, bool exact_positive);
  DerivationPtr mp_rule(RuleId rule, DerivationPtr left, Formula a, DerivationPtr right, Formula b);
  DerivationPtr equivalence(Formula a, Formula b);
  Formula variant(Formula a);
  MarkedSequent random_context();
  Generated finish(const DerivationPtr& d);

  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  bool coin() { return rng_() & 1u; }

  std::mt19937_64 rng_;
  LogicId logic_;
  int vars_;
  Prover helper_;
};

Generated random_provable(std::uint64_t seed, LogicId logic, std::size_t size_budget);

/// Every formula of the logic's signature with at most `max_size` nodes over
/// ⊥ and the first `vars` variables, by increasing size.
std::vector<Formula> enumerate_formulas(LogicId logic, std::size_t max_size, int vars = 3);

/// F₀ = d, Fₖ₊₁ = (a⇒Fₖ) ∨ (b⇒Fₖ) ∨ (c⇒Fₖ): conditional depth k, not valid in CKCEM(ID).
Formula nested_cem(int depth);

}  // namespace cutfree
