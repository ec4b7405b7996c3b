#include "cutfree/generator.hpp"

#include <algorithm>
#include <stdexcept>

#include "cutfree/syntax.hpp"

namespace cutfree {

namespace {

Formula random_atom(std::mt19937_64& rng, int vars) {
  std::size_t k = rng() % static_cast<std::size_t>(vars + 1);
  if (k == static_cast<std::size_t>(vars)) return bot();
  return var(std::string(1, static_cast<char>('a' + k)));
}

MarkedSequent single(Formula f) {
  MarkedSequent s;
  s.add(f);
  return s;
}

MarkedSequent without(const MarkedSequent& s, std::initializer_list<Formula> fs) {
  MarkedSequent out = s.without_marks();
  for (Formula f : fs)
    if (!out.remove_one({f, false})) throw std::logic_error("generator: missing formula " + to_string(f));
  return out;
}

std::vector<Formula> items_of(const DerivationPtr& d) {
  Sequent s = d->conclusion.erased();
  return {s.begin(), s.end()};
}

DerivationPtr node(RuleId rule, std::vector<Formula> principal, MarkedSequent context,
                   std::vector<DerivationPtr> children, int pivot = -1) {
  RuleInstance inst;
  inst.rule = rule;
  for (Formula f : principal) inst.principal.push_back({f, false});
  inst.context = std::move(context);
  inst.pivot = pivot;
  return make_node(std::move(inst), std::move(children));
}

bool is_cem_rule(RuleId r) { return r == RuleId::CKCEMg || r == RuleId::CKCEMIDg; }
bool is_id_rule(RuleId r) { return r == RuleId::CKIDg || r == RuleId::CKCEMIDg; }

}  // namespace

Formula random_formula(std::mt19937_64& rng, LogicId logic, std::size_t size, int vars) {
  if (size <= 1) return random_atom(rng, vars);
  bool conditional = is_conditional(logic);
  if (size == 2) {
    Formula a = random_atom(rng, vars);
    return (conditional || rng() % 2 == 0) ? neg(a) : box(a);
  }
  switch (rng() % 3) {
    case 0:
      return neg(random_formula(rng, logic, size - 1, vars));
    case 1: {
      std::size_t l = 1 + rng() % (size - 2);
      return conj(random_formula(rng, logic, l, vars), random_formula(rng, logic, size - 1 - l, vars));
    }
    default:
      if (!conditional) return box(random_formula(rng, logic, size - 1, vars));
      std::size_t l = 1 + rng() % (size - 2);
      return cond(random_formula(rng, logic, l, vars), random_formula(rng, logic, size - 1 - l, vars));
  }
}

Generator::Generator(std::uint64_t seed, LogicId logic, int vars)
    : rng_(seed), logic_(logic), vars_(vars), helper_(logic, StrategyId::Naive) {}

MarkedSequent Generator::random_context() {
  MarkedSequent ctx;
  if (pick(3) == 0) ctx.add(formula(1 + pick(3)));
  return ctx;
}

DerivationPtr Generator::leaf() {
  if (pick(6) == 0) return node(RuleId::NegBot, {neg(bot())}, random_context(), {});
  Formula p = var(std::string(1, static_cast<char>('a' + pick(static_cast<std::size_t>(vars_)))));
  return node(RuleId::Axiom, {p, neg(p)}, random_context(), {});
}

DerivationPtr Generator::fallback(Formula target, std::size_t budget) {
  return weaken(gen(budget), single(target));
}

DerivationPtr Generator::ensure_neg(DerivationPtr d, Formula x, Formula& a) {
  if (x.is(Tag::Neg)) {
    a = x.arg();
    return d;
  }
  a = neg(x);
  return node(RuleId::NegNeg, {neg(neg(x))}, without(d->conclusion, {x}), {d});
}

Formula Generator::variant(Formula a) {
  switch (pick(5)) {
    case 0:
      return conj(a, a);
    case 1:
      return neg(neg(a));
    case 2:
      return conj(a, top());
    case 3:
      return conj(top(), a);
    default:
      return a;
  }
}

DerivationPtr Generator::equivalence(Formula a, Formula b) {
  Sequent s{neg(a), b};
  if (auto ax = axiom_instance(MarkedSequent(s))) return make_node(*ax, {});
  Verdict v = helper_.prove(s);
  if (!v.provable()) throw std::logic_error("generator: equivalence premise not provable: " + print_sequent(s));
  return v.witness;
}

DerivationPtr Generator::box_rule(RuleId rule, DerivationPtr d, std::vector<Formula> items,
                                  std::size_t pivot) {
  std::vector<Formula> principal{box(items[pivot])};
  std::vector<Formula> sides;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i == pivot) continue;
    Formula a;
    d = ensure_neg(d, items[i], a);
    sides.push_back(a);
    principal.push_back(neg(box(a)));
  }
  if (rule == RuleId::K4) {
    MarkedSequent extra;
    for (Formula a : sides) extra.add(neg(box(a)));
    d = weaken(d, extra);
  }
  return node(rule, principal, random_context(), {d}, 0);
}

DerivationPtr Generator::cond_rule(RuleId rule, DerivationPtr d, std::vector<Formula> items,
                                   std::size_t pivot, Formula a0, std::ptrdiff_t exact_side,
                                   bool exact_positive) {
  std::vector<Formula> principal{cond(a0, items[pivot])};
  std::vector<DerivationPtr> children;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i == pivot) continue;
    bool exact = static_cast<std::ptrdiff_t>(i) == exact_side;
    Formula ai = exact ? a0 : variant(a0);
    bool positive = is_cem_rule(rule) && (exact ? exact_positive : coin());
    if (positive) {
      principal.push_back(cond(ai, items[i]));
    } else {
      Formula b;
      d = ensure_neg(d, items[i], b);
      principal.push_back(neg(cond(ai, b)));
    }
    children.push_back(equivalence(a0, ai));
    children.push_back(equivalence(ai, a0));
  }
  if (is_id_rule(rule)) d = weaken(d, single(neg(a0)));
  children.push_back(d);
  return node(rule, principal, random_context(), std::move(children), 0);
}

DerivationPtr Generator::mp_rule(RuleId rule, DerivationPtr left, Formula a, DerivationPtr right,
                                 Formula b) {
  Formula lit = rule == RuleId::MPg ? neg(cond(a, b)) : cond(a, b);
  Formula right_formula = rule == RuleId::MPg ? neg(b) : b;
  MarkedSequent g1 = without(left->conclusion, {a});
  MarkedSequent g2 = without(right->conclusion, {right_formula});
  DerivationPtr p1 = weaken(left, g2 + single(lit));
  DerivationPtr p2 = weaken(right, g1 + single(lit));
  return node(rule, {lit}, g1 + g2, {p1, p2});
}

namespace {

DerivationPtr and_node(const DerivationPtr& d1, Formula x, const DerivationPtr& d2, Formula y) {
  MarkedSequent g1 = without(d1->conclusion, {x});
  MarkedSequent g2 = without(d2->conclusion, {y});
  return node(RuleId::AndSplit, {conj(x, y)}, g1 + g2, {weaken(d1, g2), weaken(d2, g1)});
}

std::size_t index_of(const std::vector<Formula>& items, Formula f) {
  auto it = std::find(items.begin(), items.end(), f);
  if (it == items.end()) throw std::logic_error("generator: lost formula " + to_string(f));
  return static_cast<std::size_t>(it - items.begin());
}

}  // namespace

DerivationPtr Generator::gen(std::size_t budget) {
  if (budget <= 1) return leaf();
  std::vector<RuleId> menu{RuleId::NegNeg, RuleId::NegAnd, RuleId::AndSplit};
  for (RuleId r : modal_rules(logic_)) menu.push_back(r);
  RuleId rule = menu[pick(menu.size())];
  switch (rule) {
    case RuleId::NegNeg: {
      DerivationPtr d = gen(budget - 1);
      auto items = items_of(d);
      Formula x = items[pick(items.size())];
      return node(rule, {neg(neg(x))}, without(d->conclusion, {x}), {d});
    }
    case RuleId::NegAnd: {
      DerivationPtr d = gen(budget - 1);
      auto items = items_of(d);
      Formula a;
      d = ensure_neg(d, items[pick(items.size())], a);
      Formula b = formula(1 + pick(3));
      d = weaken(d, single(neg(b)));
      Formula c = coin() ? conj(a, b) : conj(b, a);
      return node(rule, {neg(c)}, without(d->conclusion, {neg(a), neg(b)}), {d});
    }
    case RuleId::AndSplit: {
      DerivationPtr d1 = gen(budget / 2), d2 = gen(budget - budget / 2 - 1);
      auto i1 = items_of(d1), i2 = items_of(d2);
      return and_node(d1, i1[pick(i1.size())], d2, i2[pick(i2.size())]);
    }
    case RuleId::K:
    case RuleId::K4: {
      DerivationPtr d = gen(budget - 1);
      auto items = items_of(d);
      return box_rule(rule, d, items, pick(items.size()));
    }
    case RuleId::T: {
      DerivationPtr d = gen(budget - 1);
      auto items = items_of(d);
      Formula a;
      d = ensure_neg(d, items[pick(items.size())], a);
      d = weaken(d, single(neg(box(a))));
      return node(rule, {neg(box(a))}, without(d->conclusion, {neg(a), neg(box(a))}), {d});
    }
    case RuleId::MPg:
    case RuleId::MPCEMg: {
      DerivationPtr d1 = gen(budget / 2), d2 = gen(budget - budget / 2 - 1);
      auto i1 = items_of(d1), i2 = items_of(d2);
      Formula a = i1[pick(i1.size())];
      Formula b = i2[pick(i2.size())];
      if (rule == RuleId::MPg) d2 = ensure_neg(d2, b, b);
      return mp_rule(rule, d1, a, d2, b);
    }
    default: {
      DerivationPtr d = gen(budget - 1);
      auto items = items_of(d);
      return cond_rule(rule, d, items, pick(items.size()), formula(1 + pick(3)), -1, false);
    }
  }
}

DerivationPtr Generator::containing(Formula target, std::size_t budget) {
  if (budget == 0) return fallback(target, 0);
  auto ck_rule = [&]() {
    for (RuleId r : modal_rules(logic_))
      if (r == RuleId::CKg || r == RuleId::CKIDg || is_cem_rule(r)) return r;
    return RuleId::CKg;
  };
  // Premise built around `inner`, with a second formula to serve as pivot.
  auto around = [&](Formula inner, std::vector<Formula>& items, std::size_t& exact) {
    DerivationPtr d = containing(inner, budget - 1);
    items = items_of(d);
    if (items.size() < 2) {
      Formula x = formula(1 + pick(3));
      d = weaken(d, single(x));
      items = items_of(d);
    }
    exact = index_of(items, inner);
    return d;
  };
  auto other_than = [&](std::size_t n, std::size_t avoid) {
    std::size_t k = pick(n - 1);
    return k >= avoid ? k + 1 : k;
  };

  switch (target.tag()) {
    case Tag::Bot:
      return fallback(target, budget - 1);
    case Tag::Var:
      if (coin()) return node(RuleId::Axiom, {target, neg(target)}, random_context(), {});
      return fallback(target, budget - 1);
    case Tag::And: {
      std::size_t half = (budget - 1) / 2;
      return and_node(containing(target.left(), half), target.left(),
                      containing(target.right(), budget - 1 - half), target.right());
    }
    case Tag::Box: {
      DerivationPtr d = containing(target.arg(), budget - 1);
      auto items = items_of(d);
      RuleId rule = logic_ == LogicId::K4 ? RuleId::K4 : RuleId::K;
      return box_rule(rule, d, items, index_of(items, target.arg()));
    }
    case Tag::Cond: {
      bool has_mpcem = has_rule(logic_, RuleId::MPCEMg);
      std::size_t choice = pick(has_cem(logic_) ? (has_mpcem ? 3 : 2) : 1);
      if (choice == 2) {
        std::size_t half = (budget - 1) / 2;
        return mp_rule(RuleId::MPCEMg, containing(target.left(), half), target.left(),
                       containing(target.right(), budget - 1 - half), target.right());
      }
      if (choice == 1) {
        std::vector<Formula> items;
        std::size_t exact;
        DerivationPtr d = around(target.right(), items, exact);
        return cond_rule(ck_rule(), d, items, other_than(items.size(), exact), target.left(),
                         static_cast<std::ptrdiff_t>(exact), true);
      }
      DerivationPtr d = containing(target.right(), budget - 1);
      auto items = items_of(d);
      return cond_rule(ck_rule(), d, items, index_of(items, target.right()), target.left(), -1, false);
    }
    case Tag::Neg:
      break;
  }

  Formula g = target.arg();
  switch (g.tag()) {
    case Tag::Bot:
      return node(RuleId::NegBot, {target}, random_context(), {});
    case Tag::Var:
      return node(RuleId::Axiom, {g, target}, random_context(), {});
    case Tag::Neg: {
      DerivationPtr d = containing(g.arg(), budget - 1);
      return node(RuleId::NegNeg, {target}, without(d->conclusion, {g.arg()}), {d});
    }
    case Tag::And: {
      bool left = coin();
      Formula first = neg(left ? g.left() : g.right());
      Formula second = neg(left ? g.right() : g.left());
      DerivationPtr d = weaken(containing(first, budget - 1), single(second));
      return node(RuleId::NegAnd, {target}, without(d->conclusion, {first, second}), {d});
    }
    case Tag::Box: {
      Formula inner = neg(g.arg());
      if (logic_ == LogicId::T && coin()) {
        DerivationPtr d = weaken(containing(inner, budget - 1), single(target));
        return node(RuleId::T, {target}, without(d->conclusion, {inner, target}), {d});
      }
      std::vector<Formula> items;
      std::size_t exact;
      DerivationPtr d = around(inner, items, exact);
      RuleId rule = logic_ == LogicId::K4 ? RuleId::K4 : RuleId::K;
      return box_rule(rule, d, items, other_than(items.size(), exact));
    }
    case Tag::Cond: {
      if (has_mp(logic_) && coin()) {
        std::size_t half = (budget - 1) / 2;
        return mp_rule(RuleId::MPg, containing(g.left(), half), g.left(),
                       containing(neg(g.right()), budget - 1 - half), g.right());
      }
      std::vector<Formula> items;
      std::size_t exact;
      DerivationPtr d = around(neg(g.right()), items, exact);
      return cond_rule(ck_rule(), d, items, other_than(items.size(), exact), g.left(),
                       static_cast<std::ptrdiff_t>(exact), false);
    }
  }
  return fallback(target, budget - 1);
}

Generated Generator::finish(const DerivationPtr& d) {
  Sequent root = d->conclusion.erased();
  return {root, assign_marks(d, MarkedSequent(root))};
}

Generated Generator::provable(std::size_t budget) { return finish(gen(budget)); }

Generated Generator::provable_containing(Formula target, std::size_t budget) {
  require_signature(target, logic_);
  return finish(containing(target, budget));
}

Generated random_provable(std::uint64_t seed, LogicId logic, std::size_t size_budget) {
  return Generator(seed, logic).provable(size_budget);
}

std::vector<Formula> enumerate_formulas(LogicId logic, std::size_t max_size, int vars) {
  std::vector<std::vector<Formula>> layer(max_size + 1);
  std::vector<Formula> out;
  if (max_size == 0) return out;
  for (int v = 0; v < vars; ++v) layer[1].push_back(var(std::string(1, static_cast<char>('a' + v))));
  layer[1].push_back(bot());
  bool conditional = is_conditional(logic);
  for (std::size_t n = 2; n <= max_size; ++n) {
    for (Formula f : layer[n - 1]) layer[n].push_back(neg(f));
    if (!conditional)
      for (Formula f : layer[n - 1]) layer[n].push_back(box(f));
    for (std::size_t l = 1; l + 1 < n; ++l)
      for (Formula x : layer[l])
        for (Formula y : layer[n - 1 - l]) {
          layer[n].push_back(conj(x, y));
          if (conditional) layer[n].push_back(cond(x, y));
        }
  }
  for (const auto& l : layer) out.insert(out.end(), l.begin(), l.end());
  return out;
}

Formula nested_cem(int depth) {
  Formula f = var("d");
  for (int k = 0; k < depth; ++k) f = disj(disj(cond(var("a"), f), cond(var("b"), f)), cond(var("c"), f));
  return f;
}

}  // namespace cutfree
