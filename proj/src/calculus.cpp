#include "cutfree/calculus.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cutfree/syntax.hpp"

namespace cutfree {

namespace {

MarkedSequent fresh(std::initializer_list<Formula> fs) {
  MarkedSequent out;
  for (Formula f : fs) out.add(f);
  return out;
}

bool is_pos_cond(Formula f) { return f.is(Tag::Cond); }
bool is_neg_cond(Formula f) { return f.is(Tag::Neg) && f.arg().is(Tag::Cond); }
bool is_pos_box(Formula f) { return f.is(Tag::Box); }
bool is_neg_box(Formula f) { return f.is(Tag::Neg) && f.arg().is(Tag::Box); }

bool carries_context(RuleId r) {
  switch (r) {
    case RuleId::NegNeg:
    case RuleId::NegAnd:
    case RuleId::AndSplit:
    case RuleId::T:
    case RuleId::MPg:
    case RuleId::MPCEMg:
    case RuleId::Cut:
      return true;
    default:
      return false;
  }
}

// {¬A₀,Aᵢ} and {¬Aᵢ,A₀} for every side literal, in principal order.
void push_equivalences(const RuleInstance& inst, Formula a0, std::vector<MarkedSequent>& out) {
  for (std::size_t i = 0; i < inst.principal.size(); ++i) {
    if (static_cast<int>(i) == inst.pivot) continue;
    Formula lit = inst.principal[i].formula;
    Formula ai = is_neg_cond(lit) ? lit.arg().left() : lit.left();
    out.push_back(fresh({neg(a0), ai}));
    out.push_back(fresh({neg(ai), a0}));
  }
}

}  // namespace

MarkedSequent RuleInstance::conclusion() const {
  MarkedSequent out = context;
  for (const Entry& e : principal) out.add(e);
  return out;
}

std::size_t RuleInstance::subset_size() const {
  return principal.empty() ? 0 : principal.size() - 1;
}

std::vector<MarkedSequent> premises(const RuleInstance& inst) {
  std::vector<MarkedSequent> out;
  const MarkedSequent& ctx = inst.context;
  auto with = [&](std::initializer_list<Entry> es) {
    MarkedSequent s = ctx;
    for (const Entry& e : es) s.add(e);
    return s;
  };
  switch (inst.rule) {
    case RuleId::Axiom:
    case RuleId::NegBot:
      break;
    case RuleId::NegNeg:
      out.push_back(with({{inst.principal[0].formula.arg().arg(), false}}));
      break;
    case RuleId::NegAnd: {
      Formula c = inst.principal[0].formula.arg();
      out.push_back(with({{neg(c.left()), false}, {neg(c.right()), false}}));
      break;
    }
    case RuleId::AndSplit: {
      Formula c = inst.principal[0].formula;
      out.push_back(with({{c.left(), false}}));
      out.push_back(with({{c.right(), false}}));
      break;
    }
    case RuleId::K: {
      MarkedSequent s;
      for (std::size_t i = 0; i < inst.principal.size(); ++i) {
        Formula f = inst.principal[i].formula;
        s.add(static_cast<int>(i) == inst.pivot ? f.arg() : neg(f.arg().arg()));
      }
      out.push_back(std::move(s));
      break;
    }
    case RuleId::K4: {
      MarkedSequent s;
      for (std::size_t i = 0; i < inst.principal.size(); ++i) {
        Formula f = inst.principal[i].formula;
        if (static_cast<int>(i) == inst.pivot) {
          s.add(f.arg());
        } else {
          s.add(neg(f.arg().arg()));
          s.add(f);
        }
      }
      out.push_back(std::move(s));
      break;
    }
    case RuleId::T: {
      const Entry& p = inst.principal[0];
      out.push_back(with({p, {neg(p.formula.arg().arg()), false}}));
      break;
    }
    case RuleId::CKg:
    case RuleId::CKIDg:
    case RuleId::CKCEMg:
    case RuleId::CKCEMIDg: {
      Formula pivot = inst.principal[inst.pivot].formula;
      Formula a0 = pivot.left();
      push_equivalences(inst, a0, out);
      MarkedSequent s;
      for (std::size_t i = 0; i < inst.principal.size(); ++i) {
        Formula lit = inst.principal[i].formula;
        s.add(is_neg_cond(lit) ? neg(lit.arg().right()) : lit.right());
      }
      if (inst.rule == RuleId::CKIDg || inst.rule == RuleId::CKCEMIDg) s.add(neg(a0));
      out.push_back(std::move(s));
      break;
    }
    case RuleId::MPg: {
      Formula lit = inst.principal[0].formula;
      Entry marked{lit, true};
      out.push_back(with({marked, {lit.arg().left(), false}}));
      out.push_back(with({marked, {neg(lit.arg().right()), false}}));
      break;
    }
    case RuleId::MPCEMg: {
      Formula lit = inst.principal[0].formula;
      Entry marked{lit, true};
      out.push_back(with({marked, {lit.left(), false}}));
      out.push_back(with({marked, {lit.right(), false}}));
      break;
    }
    case RuleId::Cut: {
      Formula c = *inst.cut_formula;
      out.push_back(with({{c, false}}));
      out.push_back(with({{neg(c), false}}));
      break;
    }
  }
  return out;
}

std::size_t premise_count(const RuleInstance& inst) {
  switch (inst.rule) {
    case RuleId::Axiom:
    case RuleId::NegBot:
      return 0;
    case RuleId::NegNeg:
    case RuleId::NegAnd:
    case RuleId::K:
    case RuleId::K4:
    case RuleId::T:
      return 1;
    case RuleId::AndSplit:
    case RuleId::MPg:
    case RuleId::MPCEMg:
    case RuleId::Cut:
      return 2;
    default:
      return 2 * inst.subset_size() + 1;
  }
}

bool is_axiom(const Sequent& s) {
  for (Formula f : s) {
    if (!f.is(Tag::Neg)) continue;
    if (f.arg().is(Tag::Bot) || s.contains(f.arg())) return true;
  }
  return false;
}

bool is_axiom(const MarkedSequent& s) {
  for (const Entry& e : s) {
    Formula f = e.formula;
    if (!f.is(Tag::Neg)) continue;
    if (f.arg().is(Tag::Bot) || s.contains_formula(f.arg())) return true;
  }
  return false;
}

std::optional<RuleInstance> axiom_instance(const MarkedSequent& s) {
  auto find_entry = [&](Formula f) -> Entry {
    return s.count(Entry{f, false}) > 0 ? Entry{f, false} : Entry{f, true};
  };
  Formula nbot = neg(bot());
  if (s.contains_formula(nbot)) {
    RuleInstance inst;
    inst.rule = RuleId::NegBot;
    inst.principal = {find_entry(nbot)};
    MarkedSequent p;
    p.add(inst.principal[0]);
    inst.context = s.minus(p);
    return inst;
  }
  for (const Entry& e : s) {
    if (!s.contains_formula(neg(e.formula))) continue;
    RuleInstance inst;
    inst.rule = RuleId::Axiom;
    inst.principal = {find_entry(e.formula), find_entry(neg(e.formula))};
    MarkedSequent p{inst.principal[0], inst.principal[1]};
    inst.context = s.minus(p);
    return inst;
  }
  return std::nullopt;
}

namespace {

std::optional<RuleId> prop_rule_for(Formula f) {
  if (f.is(Tag::And)) return RuleId::AndSplit;
  if (f.is(Tag::Neg)) {
    if (f.arg().is(Tag::Neg)) return RuleId::NegNeg;
    if (f.arg().is(Tag::And)) return RuleId::NegAnd;
  }
  return std::nullopt;
}

RuleInstance single_principal(RuleId rule, const MarkedSequent& s, std::size_t index) {
  RuleInstance inst;
  inst.rule = rule;
  inst.principal = {s[index]};
  std::vector<Entry> rest;
  rest.reserve(s.size() - 1);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (i != index) rest.push_back(s[i]);
  inst.context = MarkedSequent(std::move(rest));
  return inst;
}

}  // namespace

std::vector<RuleInstance> applicable_prop(const MarkedSequent& s) {
  std::vector<RuleInstance> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (auto rule = prop_rule_for(s[i].formula)) out.push_back(single_principal(*rule, s, i));
  }
  return out;
}

std::optional<RuleInstance> first_prop(const MarkedSequent& s) {
  // Non-branching rules first so that AndSplit does not duplicate pending work.
  std::optional<std::size_t> split;
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto rule = prop_rule_for(s[i].formula);
    if (!rule) continue;
    if (*rule != RuleId::AndSplit) return single_principal(*rule, s, i);
    if (!split) split = i;
  }
  if (split) return single_principal(RuleId::AndSplit, s, *split);
  return std::nullopt;
}

ModalInstances::ModalInstances(const MarkedSequent& s, LogicId logic, EnumOptions options)
    : sequent_(s), logic_(logic), options_(options), rules_(modal_rules(logic)) {
  std::size_t boxes = 0, conds = 0;
  for (const Entry& e : sequent_) {
    if (is_neg_box(e.formula)) ++boxes;
    if (is_conditional_literal(e.formula)) ++conds;
  }
  max_stage_ = is_conditional(logic) ? conds : boxes;
}

void ModalInstances::add_pivoted(RuleId rule, const std::vector<std::size_t>& pivots,
                                 const std::vector<std::size_t>& side, bool side_excludes_pivot) {
  std::vector<bool> chosen(sequent_.size(), false);
  for (std::size_t p : pivots) {
    std::vector<std::size_t> pool;
    for (std::size_t i : side)
      if (!side_excludes_pivot || i != p) pool.push_back(i);
    if (stage_ > pool.size()) continue;
    // k-combinations of pool in lexicographic order of positions
    std::vector<std::size_t> comb(stage_);
    for (std::size_t i = 0; i < stage_; ++i) comb[i] = i;
    while (true) {
      RuleInstance inst;
      inst.rule = rule;
      inst.pivot = 0;
      inst.principal.push_back(sequent_[p]);
      std::fill(chosen.begin(), chosen.end(), false);
      chosen[p] = true;
      for (std::size_t c : comb) {
        inst.principal.push_back(sequent_[pool[c]]);
        chosen[pool[c]] = true;
      }
      std::vector<Entry> rest;
      for (std::size_t i = 0; i < sequent_.size(); ++i)
        if (!chosen[i]) rest.push_back(sequent_[i]);
      inst.context = MarkedSequent(std::move(rest));
      buffer_.push_back(std::move(inst));
      // advance combination
      std::size_t k = stage_;
      std::size_t i = k;
      while (i > 0 && comb[i - 1] == pool.size() - k + i - 1) --i;
      if (i == 0) break;
      ++comb[i - 1];
      for (std::size_t j = i; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
}

void ModalInstances::fill_stage() {
  buffer_.clear();
  pos_ = 0;
  std::vector<std::size_t> pos_box, neg_box, pos_cond, neg_cond, any_cond;
  for (std::size_t i = 0; i < sequent_.size(); ++i) {
    Formula f = sequent_[i].formula;
    if (is_pos_box(f)) pos_box.push_back(i);
    if (is_neg_box(f)) neg_box.push_back(i);
    if (is_pos_cond(f)) pos_cond.push_back(i);
    if (is_neg_cond(f)) neg_cond.push_back(i);
    if (is_conditional_literal(f)) any_cond.push_back(i);
  }
  for (RuleId rule : rules_) {
    switch (rule) {
      case RuleId::K:
      case RuleId::K4:
        if (!options_.maximal_box_sides || stage_ == neg_box.size())
          add_pivoted(rule, pos_box, neg_box, false);
        break;
      case RuleId::CKg:
      case RuleId::CKIDg:
        add_pivoted(rule, pos_cond, neg_cond, false);
        break;
      case RuleId::CKCEMg:
      case RuleId::CKCEMIDg:
        add_pivoted(rule, pos_cond, any_cond, true);
        break;
      case RuleId::T:
        if (stage_ == 0)
          for (std::size_t i : neg_box) buffer_.push_back(single_principal(rule, sequent_, i));
        break;
      case RuleId::MPg:
      case RuleId::MPCEMg:
        if (stage_ == 0) {
          const auto& idx = rule == RuleId::MPg ? neg_cond : pos_cond;
          for (std::size_t i : idx) {
            if (options_.respect_marks && sequent_[i].marked) continue;
            buffer_.push_back(single_principal(rule, sequent_, i));
          }
        }
        break;
      default:
        break;
    }
  }
  std::stable_sort(buffer_.begin(), buffer_.end(), [](const RuleInstance& a, const RuleInstance& b) {
    std::size_t pa = premise_count(a), pb = premise_count(b);
    if (pa != pb) return pa < pb;
    return std::lexicographical_compare(a.principal.begin(), a.principal.end(),
                                        b.principal.begin(), b.principal.end());
  });
}

std::optional<RuleInstance> ModalInstances::next() {
  while (pos_ >= buffer_.size()) {
    if (stage_ > max_stage_) return std::nullopt;
    fill_stage();
    ++stage_;
  }
  return std::move(buffer_[pos_++]);
}

std::vector<RuleInstance> applicable_modal(const MarkedSequent& s, LogicId logic,
                                           EnumOptions options) {
  require_signature(s.erased(), logic);
  std::vector<RuleInstance> out;
  ModalInstances gen(s, logic, options);
  while (auto inst = gen.next()) out.push_back(std::move(*inst));
  return out;
}

std::vector<Sequent> propositional_descendants(Formula f) {
  std::set<Sequent> seen;
  std::vector<Sequent> todo{Sequent{f}};
  while (!todo.empty()) {
    Sequent s = std::move(todo.back());
    todo.pop_back();
    if (!seen.insert(s).second) continue;
    for (const RuleInstance& inst : applicable_prop(MarkedSequent(s)))
      for (const MarkedSequent& p : premises(inst)) todo.push_back(p.erased());
  }
  return {seen.begin(), seen.end()};
}

DerivationPtr make_node(RuleInstance instance, std::vector<DerivationPtr> children) {
  auto d = std::make_shared<Derivation>();
  d->conclusion = instance.conclusion();
  d->instance = std::move(instance);
  d->children = std::move(children);
  return d;
}

std::size_t node_count(const Derivation& d) {
  std::size_t n = 1;
  for (const auto& c : d.children) n += node_count(*c);
  return n;
}

std::size_t height(const Derivation& d) {
  std::size_t h = 0;
  for (const auto& c : d.children) h = std::max(h, height(*c));
  return h + 1;
}

std::size_t rule_count(const Derivation& d, RuleId rule) {
  std::size_t n = d.instance.rule == rule ? 1 : 0;
  for (const auto& c : d.children) n += rule_count(*c, rule);
  return n;
}

std::size_t modal_node_count(const Derivation& d) {
  std::size_t n = 0;
  switch (d.instance.rule) {
    case RuleId::Axiom:
    case RuleId::NegBot:
    case RuleId::NegNeg:
    case RuleId::NegAnd:
    case RuleId::AndSplit:
    case RuleId::Cut:
      break;
    default:
      n = 1;
  }
  for (const auto& c : d.children) n += modal_node_count(*c);
  return n;
}

DerivationPtr weaken(const DerivationPtr& d, const MarkedSequent& extra) {
  if (extra.empty()) return d;
  RuleInstance inst = d->instance;
  inst.context = inst.context + extra;
  std::vector<DerivationPtr> children = d->children;
  if (carries_context(inst.rule))
    for (auto& c : children) c = weaken(c, extra);
  return make_node(std::move(inst), std::move(children));
}

namespace {

struct MarkKey {
  const Derivation* node;
  MarkedSequent root;
  bool operator<(const MarkKey& o) const {
    if (node != o.node) return node < o.node;
    return std::lexicographical_compare(root.begin(), root.end(), o.root.begin(), o.root.end());
  }
};

DerivationPtr assign_marks_rec(const DerivationPtr& d, const MarkedSequent& root,
                               std::map<MarkKey, DerivationPtr>& memo) {
  MarkKey key{d.get(), root};
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  RuleInstance inst = d->instance;
  MarkedSequent remaining = root;
  for (Entry& p : inst.principal) {
    if (!remaining.remove_one(p)) {
      Entry flipped{p.formula, !p.marked};
      if (!remaining.remove_one(flipped))
        throw std::logic_error("assign_marks: root does not match derivation");
      p = flipped;
    }
  }
  inst.context = remaining;
  std::vector<MarkedSequent> prem = premises(inst);
  std::vector<DerivationPtr> children;
  children.reserve(d->children.size());
  for (std::size_t i = 0; i < d->children.size(); ++i)
    children.push_back(assign_marks_rec(d->children[i], prem.at(i), memo));
  DerivationPtr out = make_node(std::move(inst), std::move(children));
  memo.emplace(std::move(key), out);
  return out;
}

class Checker {
 public:
  Checker(LogicId logic, CheckOptions options) : logic_(logic), options_(options) {}

  CheckReport run(const Derivation& d) {
    CheckReport report;
    visit(d, "", report);
    return report;
  }

 private:
  bool fail(CheckReport& r, const std::string& path, const Derivation& d, std::string message) {
    r.ok = false;
    r.path = path.empty() ? "root" : path;
    r.sequent = print_sequent(d.conclusion);
    r.message = std::move(message);
    return false;
  }

  bool visit(const Derivation& d, const std::string& path, CheckReport& r) {
    const RuleInstance& inst = d.instance;
    for (const Entry& e : d.conclusion) {
      if (!in_signature(e.formula, logic_))
        return fail(r, path, d, "formula " + to_string(e.formula) + " outside the signature");
      if (e.marked && !is_conditional_literal(e.formula))
        return fail(r, path, d, "mark on a non-conditional formula " + to_string(e.formula));
    }
    if (inst.rule == RuleId::Cut) {
      if (!options_.allow_cut) return fail(r, path, d, "Cut is not a rule of the calculus");
    } else if (!has_rule(logic_, inst.rule)) {
      return fail(r, path, d,
                  std::string(name(inst.rule)) + " is not a rule of " + std::string(name(logic_)));
    }
    if (!(inst.conclusion() == d.conclusion))
      return fail(r, path, d, "conclusion differs from principal + context");
    if (std::string why = shape_error(inst); !why.empty()) return fail(r, path, d, why);

    std::vector<MarkedSequent> prem = premises(inst);
    if (prem.size() != d.children.size()) {
      return fail(r, path, d,
                  std::string(name(inst.rule)) + " expects " + std::to_string(prem.size()) +
                      " premises, got " + std::to_string(d.children.size()));
    }
    for (std::size_t i = 0; i < prem.size(); ++i) {
      if (!(d.children[i]->conclusion == prem[i])) {
        return fail(r, path, d,
                    "premise " + std::to_string(i) + " should be {" + print_sequent(prem[i]) +
                        "} but child proves {" + print_sequent(d.children[i]->conclusion) + "}");
      }
    }
    for (std::size_t i = 0; i < d.children.size(); ++i) {
      std::string child_path = path.empty() ? std::to_string(i) : path + "/" + std::to_string(i);
      if (!visit(*d.children[i], child_path, r)) return false;
    }
    return true;
  }

  std::string shape_error(const RuleInstance& inst) const {
    const auto& p = inst.principal;
    auto arity = [&](std::size_t n) {
      return p.size() == n ? std::string()
                           : std::string(name(inst.rule)) + " needs " + std::to_string(n) +
                                 " principal formulas";
    };
    auto pivoted = [&](auto pivot_ok, auto side_ok) -> std::string {
      if (inst.pivot < 0 || static_cast<std::size_t>(inst.pivot) >= p.size())
        return "missing pivot";
      for (std::size_t i = 0; i < p.size(); ++i) {
        bool ok = static_cast<int>(i) == inst.pivot ? pivot_ok(p[i].formula) : side_ok(p[i].formula);
        if (!ok) return "principal formula " + to_string(p[i].formula) + " has the wrong shape";
      }
      return {};
    };
    switch (inst.rule) {
      case RuleId::Axiom:
        if (auto e = arity(2); !e.empty()) return e;
        if (p[1].formula != neg(p[0].formula) && p[0].formula != neg(p[1].formula))
          return "axiom needs A and ~A";
        return {};
      case RuleId::NegBot:
        if (auto e = arity(1); !e.empty()) return e;
        return p[0].formula == neg(bot()) ? "" : "NegBot needs ~false";
      case RuleId::NegNeg:
      case RuleId::NegAnd:
      case RuleId::AndSplit:
        if (auto e = arity(1); !e.empty()) return e;
        return prop_rule_for(p[0].formula) == inst.rule ? "" : "principal formula has the wrong shape";
      case RuleId::T:
        if (auto e = arity(1); !e.empty()) return e;
        return is_neg_box(p[0].formula) ? "" : "T needs a negated box";
      case RuleId::K:
      case RuleId::K4:
        return pivoted(is_pos_box, is_neg_box);
      case RuleId::CKg:
      case RuleId::CKIDg:
        return pivoted(is_pos_cond, is_neg_cond);
      case RuleId::CKCEMg:
      case RuleId::CKCEMIDg:
        return pivoted(is_pos_cond, is_conditional_literal);
      case RuleId::MPg:
      case RuleId::MPCEMg: {
        if (auto e = arity(1); !e.empty()) return e;
        bool shape = inst.rule == RuleId::MPg ? is_neg_cond(p[0].formula) : is_pos_cond(p[0].formula);
        if (!shape) return "principal formula has the wrong shape";
        if (options_.strict_marks && p[0].marked)
          return std::string(name(inst.rule)) + " applied to a marked formula";
        return {};
      }
      case RuleId::Cut:
        if (!p.empty() || !inst.cut_formula) return "Cut needs a cut formula and no principal";
        return {};
    }
    return "unknown rule";
  }

  LogicId logic_;
  CheckOptions options_;
};

}  // namespace

DerivationPtr assign_marks(const DerivationPtr& d, const MarkedSequent& root) {
  std::map<MarkKey, DerivationPtr> memo;
  return assign_marks_rec(d, root, memo);
}

CheckReport check_derivation(const Derivation& d, LogicId logic, CheckOptions options) {
  return Checker(logic, options).run(d);
}

}  // namespace cutfree
