#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cutfree/formula.hpp"
#include "cutfree/logic.hpp"
#include "cutfree/sequent.hpp"

namespace cutfree {

/// One backward rule application. The conclusion is principal ⊎ context.
///
/// For K, K4 and the CK family, `pivot` indexes the positive literal
/// (□A₀ or A₀⇒B₀) inside `principal`; the remaining principal entries are
/// the selected side literals, in order. Other rules leave pivot at -1.
struct RuleInstance {
  RuleId rule = RuleId::Axiom;
  std::vector<Entry> principal;
  MarkedSequent context;
  int pivot = -1;
  std::optional<Formula> cut_formula;

  MarkedSequent conclusion() const;
  /// Number of selected literals besides the pivot (0 for single-principal rules).
  std::size_t subset_size() const;
};

std::vector<MarkedSequent> premises(const RuleInstance& inst);
std::size_t premise_count(const RuleInstance& inst);

bool is_axiom(const Sequent& s);
bool is_axiom(const MarkedSequent& s);
/// Leaf instance closing s, if s is an axiom (prefers ¬⊥, then the smallest A, ¬A pair).
std::optional<RuleInstance> axiom_instance(const MarkedSequent& s);

/// One instance per occurrence of ¬¬A, ¬(A∧B) or A∧B, in canonical order.
std::vector<RuleInstance> applicable_prop(const MarkedSequent& s);
/// First propositional instance in canonical order, if any.
std::optional<RuleInstance> first_prop(const MarkedSequent& s);

struct EnumOptions {
  /// When set, MPg/MPCEMg skip marked principals (the CKMP⁰ discipline).
  bool respect_marks = true;
  /// K/K4 only with every negated box as a side formula. Complete because
  /// weakening is admissible and the premise grows with the side set.
  bool maximal_box_sides = false;
};

/// Lazy enumeration of the modal instances matching s, ordered by
/// (premise count, selected-subset size, canonical principal order).
class ModalInstances {
 public:
  ModalInstances(const MarkedSequent& s, LogicId logic, EnumOptions options = {});

  std::optional<RuleInstance> next();

 private:
  void fill_stage();
  void add_pivoted(RuleId rule, const std::vector<std::size_t>& pivots,
                   const std::vector<std::size_t>& side, bool side_excludes_pivot);

  MarkedSequent sequent_;
  LogicId logic_;
  EnumOptions options_;
  std::vector<RuleId> rules_;
  std::vector<RuleInstance> buffer_;
  std::size_t pos_ = 0;
  std::size_t stage_ = 0;
  std::size_t max_stage_ = 0;
};

/// All modal instances (eager form of ModalInstances). Throws SignatureError
/// when s leaves the logic's signature.
std::vector<RuleInstance> applicable_modal(const MarkedSequent& s, LogicId logic,
                                           EnumOptions options = {});

/// Closure of {f} under backward application of the propositional rules.
std::vector<Sequent> propositional_descendants(Formula f);

struct Derivation;
using DerivationPtr = std::shared_ptr<const Derivation>;

/// Proof tree. Leaves are Axiom/NegBot instances.
struct Derivation {
  MarkedSequent conclusion;
  RuleInstance instance;
  std::vector<DerivationPtr> children;
};

DerivationPtr make_node(RuleInstance instance, std::vector<DerivationPtr> children);

std::size_t node_count(const Derivation& d);
std::size_t height(const Derivation& d);
/// Number of nodes using `rule`.
std::size_t rule_count(const Derivation& d, RuleId rule);
/// Nodes using any modal rule.
std::size_t modal_node_count(const Derivation& d);

/// Adds `extra` to the conclusion of d, pushing it through the context of every
/// rule that carries its context and dropping it at rules that discard it.
DerivationPtr weaken(const DerivationPtr& d, const MarkedSequent& extra);

/// Recomputes every mark below the root so that the tree follows the mark
/// lifecycle, starting from `root` (same formulas as d's conclusion).
DerivationPtr assign_marks(const DerivationPtr& d, const MarkedSequent& root);

struct CheckOptions {
  /// Reject MPg/MPCEMg on marked principals.
  bool strict_marks = false;
  /// Accept Cut nodes.
  bool allow_cut = false;
};

struct CheckReport {
  bool ok = true;
  /// Child indices from the root to the failing node, e.g. "0/2".
  std::string path;
  std::string sequent;
  std::string message;

  explicit operator bool() const { return ok; }
};

CheckReport check_derivation(const Derivation& d, LogicId logic, CheckOptions options = {});

}  // namespace cutfree
