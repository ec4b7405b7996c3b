#include "cutfree/prover.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <unordered_map>

namespace cutfree {

std::string_view name(StrategyId strategy) {
  switch (strategy) {
    case StrategyId::Naive:
      return "naive";
    case StrategyId::Marked:
      return "marked";
    case StrategyId::MarkedDescendants:
      return "marked-descendants";
    case StrategyId::Dp:
      return "dp";
    case StrategyId::Auto:
      return "auto";
  }
  return "?";
}

std::optional<StrategyId> parse_strategy(std::string_view text) {
  if (text == "naive") return StrategyId::Naive;
  if (text == "marked" || text == "mp0") return StrategyId::Marked;
  if (text == "marked-descendants" || text == "marked_descendants" || text == "mp1")
    return StrategyId::MarkedDescendants;
  if (text == "dp") return StrategyId::Dp;
  if (text == "auto") return StrategyId::Auto;
  return std::nullopt;
}

std::string_view name(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Provable:
      return "Provable";
    case VerdictKind::Unprovable:
      return "Unprovable";
    case VerdictKind::ResourceExceeded:
      return "ResourceExceeded";
  }
  return "?";
}

StrategyId resolve_strategy(LogicId logic, StrategyId strategy) {
  bool dp_ok = logic == LogicId::CKCEM || logic == LogicId::CKCEMID;
  switch (strategy) {
    case StrategyId::Auto:
      if (dp_ok) return StrategyId::Dp;
      return has_mp(logic) ? StrategyId::Marked : StrategyId::Naive;
    case StrategyId::Naive:
      return strategy;
    case StrategyId::Dp:
      if (!dp_ok)
        throw StrategyError("strategy dp needs CKCEM or CKCEMID, not " + std::string(name(logic)));
      return strategy;
    case StrategyId::Marked:
    case StrategyId::MarkedDescendants:
      if (!has_mp(logic))
        throw StrategyError("strategy " + std::string(name(strategy)) +
                            " needs a logic with MPg, not " + std::string(name(logic)));
      return strategy;
  }
  throw StrategyError("unknown strategy");
}

void EquivTable::set(Formula a, Formula b, bool provable) {
  if (entries_.insert_or_assign({a, b}, provable).second && !stage_sizes_.empty())
    ++stage_sizes_.back();
}

std::optional<bool> EquivTable::entry(Formula a, Formula b) const {
  if (a == b) return true;
  auto it = entries_.find({a, b});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool EquivTable::equivalent(Formula a, Formula b) const {
  return entry(a, b).value_or(false) && entry(b, a).value_or(false);
}

std::vector<Formula> antecedents(const Sequent& s) {
  std::vector<Formula> out;
  for (Formula f : s)
    for (Formula g : subformulas(f))
      if (g.is(Tag::Cond)) out.push_back(g.left());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

Formula antecedent_of(Formula lit) { return lit.is(Tag::Cond) ? lit.left() : lit.arg().left(); }

Partition partition_with(const std::vector<Formula>& literals,
                         const std::function<bool(Formula, Formula)>& equivalent) {
  Partition out;
  std::vector<Formula> reps;
  for (std::size_t i = 0; i < literals.size(); ++i) {
    Formula a = antecedent_of(literals[i]);
    std::size_t c = 0;
    while (c < reps.size() && !equivalent(reps[c], a)) ++c;
    if (c == reps.size()) {
      reps.push_back(a);
      out.classes.emplace_back();
    }
    out.classes[c].push_back(i);
  }
  return out;
}

}  // namespace

Partition partition_by_antecedent(const std::vector<Formula>& literals, const EquivTable& table) {
  return partition_with(literals, [&](Formula a, Formula b) { return table.equivalent(a, b); });
}

namespace {

using Clock = std::chrono::steady_clock;

constexpr int kNoDep = std::numeric_limits<int>::max();

enum class Mode : std::uint8_t { Plain, Cut, Unrestricted };

struct BudgetTrip {
  std::string reason;
};

// Result of one search call. A failure is definite when `cut` is unset; it
// may still rely on an open ancestor (index `dep`) through the loop check.
struct Outcome {
  DerivationPtr proof;
  bool cut = false;
  int dep = kNoDep;

  bool proved() const { return proof != nullptr; }
  void absorb(const Outcome& o) {
    cut = cut || o.cut;
    dep = std::min(dep, o.dep);
  }
};

struct PairHash {
  std::size_t operator()(const std::pair<Formula, Formula>& p) const {
    return p.first.hash() * 0x9e3779b97f4a7c15ULL ^ p.second.hash();
  }
};

bool is_ck_family(RuleId r) {
  return r == RuleId::CKg || r == RuleId::CKIDg || r == RuleId::CKCEMg || r == RuleId::CKCEMIDg;
}

}  // namespace

struct Prover::Impl {
  using Memo = std::unordered_map<MarkedSequent, DerivationPtr, SequentHash>;

  LogicId logic;
  StrategyId strategy;
  SearchOptions options;
  std::array<Memo, 3> memos;
  std::unordered_map<std::pair<Formula, Formula>, bool, PairHash> implications;
  std::unordered_map<Formula, std::vector<Sequent>, FormulaHash> descendants;

  // per-call state
  Mode mode = Mode::Plain;
  SearchLimits limits;
  SearchStats stats;
  Clock::time_point start;
  std::uint32_t bound = 0;
  int open = 0;
  std::unordered_map<MarkedSequent, int, SequentHash> on_path;
  std::vector<Formula> cut_pool;

  Impl(LogicId l, StrategyId s, SearchOptions o)
      : logic(l), strategy(resolve_strategy(l, s)), options(o) {}

  bool erase_marks() const { return mode != Mode::Plain || strategy != StrategyId::Marked; }
  bool contracting() const { return mode != Mode::Unrestricted && options.contract; }
  bool memoizing() const { return mode != Mode::Unrestricted; }
  bool loop_checking() const {
    if (mode == Mode::Unrestricted) return false;
    if (mode == Mode::Cut) return true;
    return options.loop_check.value_or(strategy == StrategyId::Naive);
  }
  bool dp() const { return mode == Mode::Plain && strategy == StrategyId::Dp; }

  void begin(Mode m, const SearchLimits& l) {
    mode = m;
    limits = l;
    stats = {};
    start = Clock::now();
    open = 0;
    on_path.clear();
    Memo& memo = memos[static_cast<int>(m)];
    if (memo.size() > options.memo_capacity) memo.clear();
    if (implications.size() > options.memo_capacity) implications.clear();
  }

  void finish() {
    stats.elapsed_us = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count());
  }

  void tick() {
    ++stats.nodes;
    if (stats.nodes > limits.max_nodes) throw BudgetTrip{"node budget exhausted"};
    if (limits.timeout_ms && (stats.nodes & 255) == 0) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
      if (static_cast<std::uint64_t>(ms) > *limits.timeout_ms) throw BudgetTrip{"timeout"};
    }
  }

  MarkedSequent normalize(const MarkedSequent& s) const {
    return erase_marks() && s.any_marked() ? s.without_marks() : s;
  }

  static DerivationPtr adapt(const DerivationPtr& proof, const MarkedSequent& key,
                             const MarkedSequent& actual) {
    if (key.size() == actual.size()) return proof;
    return weaken(proof, actual.minus(key));
  }

  Outcome solve(const MarkedSequent& actual, std::uint32_t depth_left) {
    if (auto ax = axiom_instance(actual)) return {make_node(std::move(*ax), {})};
    MarkedSequent key = contracting() ? actual.contracted() : actual;
    Memo& memo = memos[static_cast<int>(mode)];
    if (memoizing()) {
      if (auto it = memo.find(key); it != memo.end()) {
        ++stats.memo_hits;
        if (!it->second) return {};
        return {adapt(it->second, key, actual)};
      }
      // Marks only restrict MP, so a refuted unmarked sequent stays refuted.
      if (key.any_marked()) {
        if (auto it = memo.find(key.without_marks()); it != memo.end() && !it->second) {
          ++stats.memo_hits;
          return {};
        }
      }
    }
    int index = open;
    bool tracked = false;
    if (loop_checking()) {
      auto [it, inserted] = on_path.emplace(key, index);
      if (!inserted) return {nullptr, false, it->second};
      tracked = true;
    }
    tick();
    ++open;
    Outcome r = expand(key, depth_left);
    --open;
    if (tracked) on_path.erase(key);
    if (r.dep >= index) r.dep = kNoDep;
    if (memoizing()) {
      if (r.proved())
        memo.emplace(key, r.proof);
      else if (!r.cut && r.dep == kNoDep)
        memo.emplace(key, nullptr);
    }
    if (r.proved()) r.proof = adapt(r.proof, key, actual);
    return r;
  }

  Outcome apply(const RuleInstance& inst, std::uint32_t depth_left) {
    std::vector<DerivationPtr> kids;
    Outcome fail;
    bool failed = false;
    for (const MarkedSequent& p : premises(inst)) {
      Outcome r = solve(normalize(p), depth_left);
      if (r.proved()) {
        kids.push_back(std::move(r.proof));
        continue;
      }
      failed = true;
      fail.absorb(r);
      if (!r.cut) break;
    }
    if (failed) return fail;
    return {make_node(inst, std::move(kids))};
  }

  void count_modal(RuleId rule, std::uint32_t depth_left) {
    ++stats.modal_applications[static_cast<int>(rule)];
    stats.max_depth_reached = std::max(stats.max_depth_reached, bound - depth_left + 1);
  }

  Outcome expand(const MarkedSequent& key, std::uint32_t depth_left) {
    if (auto inst = first_prop(key)) return apply(*inst, depth_left);
    if (dp()) return expand_dp(key, depth_left);
    Outcome fail;
    EnumOptions eo;
    eo.respect_marks = !erase_marks();
    eo.maximal_box_sides = mode != Mode::Unrestricted;
    ModalInstances gen(key, logic, eo);
    while (auto inst = gen.next()) {
      if (depth_left == 0) {
        fail.cut = true;
        break;
      }
      if (!admissible(*inst, depth_left, fail)) continue;
      count_modal(inst->rule, depth_left);
      Outcome r = apply(*inst, depth_left - 1);
      if (r.proved()) return r;
      fail.absorb(r);
    }
    if (mode == Mode::Cut) {
      for (Formula c : cut_pool) {
        if (key.contains_formula(c) || key.contains_formula(neg(c))) continue;
        if (depth_left == 0) {
          fail.cut = true;
          break;
        }
        RuleInstance cut;
        cut.rule = RuleId::Cut;
        cut.context = key;
        cut.cut_formula = c;
        Outcome r = apply(cut, depth_left - 1);
        if (r.proved()) return r;
        fail.absorb(r);
      }
    }
    return fail;
  }

  // Provability of {¬a, b}, cached when definite.
  Outcome implies(Formula a, Formula b, std::uint32_t depth_left) {
    if (a == b) return {make_node(*axiom_instance(MarkedSequent{{b, false}, {neg(a), false}}), {})};
    if (auto it = implications.find({a, b}); it != implications.end() && !it->second) return {};
    Outcome r = solve(MarkedSequent{{neg(a), false}, {b, false}}, depth_left);
    if (r.proved())
      implications[{a, b}] = true;
    else if (!r.cut && r.dep == kNoDep)
      implications[{a, b}] = false;
    return r;
  }

  // Three-valued equivalence: nullopt when a depth cut left it undecided.
  std::optional<bool> equivalent(Formula a, Formula b, std::uint32_t depth_left, Outcome& fail) {
    if (a == b) return true;
    for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
      Outcome r = implies(x, y, depth_left);
      if (r.proved()) continue;
      fail.absorb(r);
      if (r.cut) return std::nullopt;
      return false;
    }
    return true;
  }

  bool admissible(const RuleInstance& inst, std::uint32_t depth_left, Outcome& fail) {
    if (strategy == StrategyId::MarkedDescendants && mode == Mode::Plain &&
        (inst.rule == RuleId::MPg || inst.rule == RuleId::MPCEMg)) {
      Formula lit = inst.principal[0].formula;
      // Set inclusion: the search contracts, so {¬a,¬a} shows up as {¬a}.
      Sequent ctx = inst.context.erased().contracted();
      auto blocked = [&](Formula f) {
        for (const Sequent& d : descendants_of(f))
          if (ctx.includes(d)) return true;
        return false;
      };
      if (inst.rule == RuleId::MPg)
        return !blocked(lit.arg().left()) && !blocked(neg(lit.arg().right()));
      return !blocked(lit.left()) && !blocked(lit.right());
    }
    if (options.group_by_equivalence && is_ck_family(inst.rule)) {
      // Only the maximal class of literals equivalent to the pivot.
      Formula a0 = inst.principal[inst.pivot].formula.left();
      bool cem = inst.rule == RuleId::CKCEMg || inst.rule == RuleId::CKCEMIDg;
      for (std::size_t i = 0; i < inst.principal.size(); ++i) {
        if (static_cast<int>(i) == inst.pivot) continue;
        auto eq = equivalent(a0, antecedent_of(inst.principal[i].formula), depth_left - 1, fail);
        if (eq && !*eq) return false;
      }
      for (const Entry& e : inst.context) {
        Formula f = e.formula;
        bool side = cem ? is_conditional_literal(f) : (f.is(Tag::Neg) && f.arg().is(Tag::Cond));
        if (!side) continue;
        auto eq = equivalent(a0, antecedent_of(f), depth_left - 1, fail);
        if (eq && *eq) return false;
      }
      return true;
    }
    return true;
  }

  const std::vector<Sequent>& descendants_of(Formula f) {
    auto it = descendants.find(f);
    if (it == descendants.end()) {
      std::vector<Sequent> ds;
      for (const Sequent& d : propositional_descendants(f)) ds.push_back(d.contracted());
      it = descendants.emplace(f, std::move(ds)).first;
    }
    return it->second;
  }

  // One CKCEM(ID)g attempt per antecedent class containing a positive literal.
  Outcome expand_dp(const MarkedSequent& key, std::uint32_t depth_left) {
    std::vector<Formula> lits;
    for (const Entry& e : key)
      if (is_conditional_literal(e.formula)) lits.push_back(e.formula);
    bool any_positive = std::any_of(lits.begin(), lits.end(), [](Formula f) { return f.is(Tag::Cond); });
    Outcome fail;
    if (!any_positive) return fail;
    if (depth_left == 0) {
      fail.cut = true;
      return fail;
    }
    bool undecided = false;
    Partition part = partition_with(lits, [&](Formula a, Formula b) {
      auto eq = equivalent(a, b, depth_left - 1, fail);
      if (!eq) undecided = true;
      return eq.value_or(false);
    });
    if (undecided) {
      fail.cut = true;
      return fail;
    }
    RuleId rule = has_id(logic) ? RuleId::CKCEMIDg : RuleId::CKCEMg;
    for (const auto& cls : part.classes) {
      auto pivot = std::find_if(cls.begin(), cls.end(), [&](std::size_t i) { return lits[i].is(Tag::Cond); });
      if (pivot == cls.end()) continue;
      RuleInstance inst;
      inst.rule = rule;
      inst.pivot = 0;
      inst.principal.push_back({lits[*pivot], false});
      for (std::size_t i : cls)
        if (i != *pivot) inst.principal.push_back({lits[i], false});
      MarkedSequent principal(std::vector<Entry>(inst.principal));
      inst.context = key.minus(principal);
      count_modal(rule, depth_left);
      Outcome r = apply(inst, depth_left - 1);
      if (r.proved()) return r;
      fail.absorb(r);
    }
    return fail;
  }

  Verdict run(Mode m, const Sequent& s, const SearchLimits& l, bool deepen) {
    require_signature(s, logic);
    begin(m, l);
    Verdict v;
    MarkedSequent root(s);
    try {
      Outcome r;
      std::uint32_t first = deepen ? 0 : l.max_depth;
      for (std::uint32_t d = first;; ++d) {
        bound = d;
        ++stats.iterations;
        on_path.clear();
        open = 0;
        r = solve(root, d);
        if (r.proved() || !r.cut || d >= l.max_depth) break;
      }
      if (r.proved()) {
        v.kind = VerdictKind::Provable;
        v.witness = erase_marks() ? assign_marks(r.proof, root) : r.proof;
      } else if (!r.cut) {
        v.kind = VerdictKind::Unprovable;
      } else {
        v.kind = VerdictKind::ResourceExceeded;
        v.reason = "depth limit reached";
      }
    } catch (const BudgetTrip& trip) {
      v.kind = VerdictKind::ResourceExceeded;
      v.reason = trip.reason;
    }
    finish();
    v.stats = stats;
    return v;
  }
};

Prover::Prover(LogicId logic, StrategyId strategy, SearchOptions options)
    : impl_(std::make_unique<Impl>(logic, strategy, options)) {}
Prover::~Prover() = default;
Prover::Prover(Prover&&) noexcept = default;
Prover& Prover::operator=(Prover&&) noexcept = default;

LogicId Prover::logic() const { return impl_->logic; }
StrategyId Prover::strategy() const { return impl_->strategy; }

Verdict Prover::prove(const Sequent& s, const SearchLimits& limits) {
  return impl_->run(Mode::Plain, s, limits, impl_->strategy != StrategyId::Dp);
}

Verdict Prover::prove_with_cut(const Sequent& s, const std::vector<Formula>& cut_pool,
                               const SearchLimits& limits) {
  for (Formula c : cut_pool) require_signature(c, impl_->logic);
  impl_->cut_pool = cut_pool;
  std::sort(impl_->cut_pool.begin(), impl_->cut_pool.end());
  impl_->cut_pool.erase(std::unique(impl_->cut_pool.begin(), impl_->cut_pool.end()),
                        impl_->cut_pool.end());
  // The pool is part of the search space, so verdicts from another pool do not carry over.
  impl_->memos[static_cast<int>(Mode::Cut)].clear();
  return impl_->run(Mode::Cut, s, limits, true);
}

Verdict Prover::prove_unrestricted(const Sequent& s, const SearchLimits& limits) {
  return impl_->run(Mode::Unrestricted, s, limits, false);
}

EquivTable Prover::build_equiv_table(const Sequent& s, const SearchLimits& limits) {
  if (impl_->strategy != StrategyId::Dp)
    throw StrategyError("build_equiv_table needs the dp strategy");
  require_signature(s, impl_->logic);
  std::vector<Formula> ants = antecedents(s);
  std::uint32_t top = 0;
  for (Formula a : ants) top = std::max(top, modal_depth(a));
  EquivTable table;
  impl_->begin(Mode::Plain, limits);
  impl_->bound = limits.max_depth;
  try {
    for (std::uint32_t stage = 0; stage <= top && !ants.empty(); ++stage) {
      table.begin_stage();
      for (Formula a : ants)
        for (Formula b : ants) {
          if (std::max(modal_depth(a), modal_depth(b)) != stage) continue;
          Outcome r = impl_->implies(a, b, limits.max_depth);
          if (!r.proved() && r.cut) throw BudgetTrip{"depth limit reached"};
          table.set(a, b, r.proved());
        }
    }
  } catch (const BudgetTrip& trip) {
    throw ResourceExceeded(trip.reason);
  }
  return table;
}

bool Prover::dp_literal_step(const std::vector<Formula>& literals, const EquivTable& table,
                             const SearchLimits& limits) {
  if (impl_->strategy != StrategyId::Dp) throw StrategyError("dp_literal_step needs the dp strategy");
  MarkedSequent key;
  for (Formula f : literals) {
    if (!is_conditional_literal(f))
      throw std::invalid_argument("dp_literal_step: " + std::string("not a conditional literal"));
    require_signature(f, impl_->logic);
    key.add(f);
  }
  for (const auto& [pair, provable] : table.entries()) impl_->implications[pair] = provable;
  impl_->begin(Mode::Plain, limits);
  impl_->bound = limits.max_depth;
  try {
    Outcome r = impl_->expand_dp(key.contracted(), limits.max_depth);
    if (!r.proved() && r.cut) throw BudgetTrip{"depth limit reached"};
    return r.proved();
  } catch (const BudgetTrip& trip) {
    throw ResourceExceeded(trip.reason);
  }
}

void Prover::clear_memo() {
  for (auto& m : impl_->memos) m.clear();
  impl_->implications.clear();
}

std::size_t Prover::memo_size() const {
  std::size_t n = 0;
  for (const auto& m : impl_->memos) n += m.size();
  return n;
}

Verdict prove(const Sequent& s, LogicId logic, StrategyId strategy, const SearchLimits& limits) {
  return Prover(logic, strategy).prove(s, limits);
}

Verdict prove_marked(const Sequent& s, LogicId logic, MarkedVariant variant,
                     const SearchLimits& limits) {
  StrategyId id = variant == MarkedVariant::Mp0 ? StrategyId::Marked : StrategyId::MarkedDescendants;
  return Prover(logic, id).prove(s, limits);
}

Verdict prove_with_cut(const Sequent& s, LogicId logic, const std::vector<Formula>& cut_pool,
                       const SearchLimits& limits) {
  return Prover(logic, StrategyId::Naive).prove_with_cut(s, cut_pool, limits);
}

Verdict prove_with_cut(const Sequent& s, LogicId logic, const SearchLimits& limits) {
  std::vector<Formula> pool;
  for (Formula f : s)
    for (Formula g : subformulas(f)) pool.push_back(g);
  return prove_with_cut(s, logic, pool, limits);
}

EquivTable build_equiv_table(const Sequent& s, LogicId logic, const SearchLimits& limits) {
  return Prover(logic, StrategyId::Dp).build_equiv_table(s, limits);
}

bool dp_literal_step(const std::vector<Formula>& literals, const EquivTable& table, LogicId logic,
                     const SearchLimits& limits) {
  return Prover(logic, StrategyId::Dp).dp_literal_step(literals, table, limits);
}

}  // namespace cutfree
