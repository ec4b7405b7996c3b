#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cutfree/calculus.hpp"
#include "cutfree/formula.hpp"
#include "cutfree/logic.hpp"
#include "cutfree/sequent.hpp"

namespace cutfree {

enum class StrategyId : std::uint8_t { Naive, Marked, MarkedDescendants, Dp, Auto };

std::string_view name(StrategyId strategy);
std::optional<StrategyId> parse_strategy(std::string_view text);

class StrategyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Resolves Auto and validates the pair: Dp only for CKCEM/CKCEMID, the
/// marked variants only for logics containing MPg. Throws StrategyError.
StrategyId resolve_strategy(LogicId logic, StrategyId strategy);

struct SearchLimits {
  std::uint64_t max_nodes = 1'000'000;
  /// Modal rule applications per branch; propositional steps are free.
  std::uint32_t max_depth = 200;
  std::optional<std::uint64_t> timeout_ms;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint32_t max_depth_reached = 0;
  std::uint64_t memo_hits = 0;
  std::uint32_t iterations = 0;
  std::array<std::uint64_t, kRuleCount> modal_applications{};
  std::uint64_t elapsed_us = 0;
};

enum class VerdictKind : std::uint8_t { Provable, Unprovable, ResourceExceeded };

std::string_view name(VerdictKind kind);

struct Verdict {
  VerdictKind kind = VerdictKind::ResourceExceeded;
  DerivationPtr witness;  // set iff Provable
  std::string reason;     // set iff ResourceExceeded
  SearchStats stats;

  bool provable() const { return kind == VerdictKind::Provable; }
  bool unprovable() const { return kind == VerdictKind::Unprovable; }
  bool definite() const { return kind != VerdictKind::ResourceExceeded; }
};

/// Knobs beyond the strategy. The defaults give the documented behaviour of
/// each strategy; the alternatives exist for experiments and tests.
struct SearchOptions {
  /// Collapse duplicate occurrences (with equal mark) before expanding.
  bool contract = true;
  /// Fail on a sequent already open on the current branch. Used by the naive
  /// strategy, whose unrestricted MP/T rules can otherwise revisit states.
  std::optional<bool> loop_check;
  /// Naive CK-family search restricted to the maximal class of negative
  /// literals whose antecedents are provably equivalent to the pivot's.
  bool group_by_equivalence = false;
  /// Drop entries when the memo grows past this many sequents.
  std::size_t memo_capacity = 1u << 20;
};

/// Provability of {¬A, B} for ordered pairs of antecedents, filled in stages
/// of increasing modal depth.
class EquivTable {
 public:
  void set(Formula a, Formula b, bool provable);
  std::optional<bool> entry(Formula a, Formula b) const;
  /// Both directions provable (or a == b). Missing entries count as false.
  bool equivalent(Formula a, Formula b) const;

  std::size_t size() const { return entries_.size(); }
  std::size_t stage_count() const { return stage_sizes_.size(); }
  const std::vector<std::size_t>& stage_sizes() const { return stage_sizes_; }
  void begin_stage() { stage_sizes_.push_back(0); }

  const std::map<std::pair<Formula, Formula>, bool>& entries() const { return entries_; }

 private:
  std::map<std::pair<Formula, Formula>, bool> entries_;
  std::vector<std::size_t> stage_sizes_;
};

/// Equivalence classes of literal indices.
struct Partition {
  std::vector<std::vector<std::size_t>> classes;
};

class ResourceExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Backward proof search for one logic and strategy. Definite verdicts are
/// memoized across calls on the same Prover.
class Prover {
 public:
  Prover(LogicId logic, StrategyId strategy = StrategyId::Auto, SearchOptions options = {});
  ~Prover();
  Prover(Prover&&) noexcept;
  Prover& operator=(Prover&&) noexcept;

  LogicId logic() const;
  StrategyId strategy() const;

  Verdict prove(const Sequent& s, const SearchLimits& limits = {});

  /// Dp strategy only. Fills the table stage by stage for the antecedents
  /// occurring in s. Throws ResourceExceeded when the budget trips.
  EquivTable build_equiv_table(const Sequent& s, const SearchLimits& limits = {});

  /// Dp strategy only. One application of the antecedent-partition step to a
  /// sequent of conditional literals; missing table entries are computed.
  bool dp_literal_step(const std::vector<Formula>& literals, const EquivTable& table,
                       const SearchLimits& limits = {});

  /// Search with the additional rule Γ,A  Γ,¬A / Γ for A in `cut_pool`.
  Verdict prove_with_cut(const Sequent& s, const std::vector<Formula>& cut_pool,
                         const SearchLimits& limits = {});

  /// The bare calculus: no contraction, no loop check, no marks. MPg may be
  /// re-applied forever, so this only terminates through the budget on many
  /// MP-logic sequents.
  Verdict prove_unrestricted(const Sequent& s, const SearchLimits& limits = {});

  void clear_memo();
  std::size_t memo_size() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Verdict prove(const Sequent& s, LogicId logic, StrategyId strategy = StrategyId::Auto,
              const SearchLimits& limits = {});

enum class MarkedVariant { Mp0, Mp1 };

/// Marked search (mp0: marks, mp1: propositional-descendant restriction).
Verdict prove_marked(const Sequent& s, LogicId logic, MarkedVariant variant,
                     const SearchLimits& limits = {});

Verdict prove_with_cut(const Sequent& s, LogicId logic, const std::vector<Formula>& cut_pool,
                       const SearchLimits& limits = {});
/// Cut pool: the subformulas of s.
Verdict prove_with_cut(const Sequent& s, LogicId logic, const SearchLimits& limits = {});

EquivTable build_equiv_table(const Sequent& s, LogicId logic, const SearchLimits& limits = {});

Partition partition_by_antecedent(const std::vector<Formula>& literals, const EquivTable& table);

bool dp_literal_step(const std::vector<Formula>& literals, const EquivTable& table, LogicId logic,
                     const SearchLimits& limits = {});

/// Antecedents A of all conditionals A⇒B occurring in s, in canonical order.
std::vector<Formula> antecedents(const Sequent& s);

}  // namespace cutfree
