#include "cutfree/semantics.hpp"

#include <bit>
#include <stdexcept>
#include <unordered_map>

#include "cutfree/syntax.hpp"

namespace cutfree {

ConditionalFrame conditional_frame(LogicId logic) {
  return {has_id(logic), has_mp(logic), has_cem(logic)};
}

KripkeFrame kripke_frame(LogicId logic) {
  return {logic == LogicId::T, logic == LogicId::K4};
}

namespace {

WorldSet all_worlds(int n) { return (WorldSet{1} << n) - 1; }

bool selection_allowed(ConditionalFrame fr, int w, WorldSet x, WorldSet y) {
  if (fr.id && (y & ~x)) return false;
  if (fr.mp && ((x >> w) & 1u) && !((y >> w) & 1u)) return false;
  if (fr.cem && std::popcount(y) > 1) return false;
  return true;
}

bool relation_allowed(KripkeFrame fr, const std::vector<WorldSet>& succ) {
  int n = static_cast<int>(succ.size());
  for (int w = 0; w < n; ++w) {
    if (fr.reflexive && !((succ[w] >> w) & 1u)) return false;
    if (fr.transitive) {
      for (int v = 0; v < n; ++v)
        if (((succ[w] >> v) & 1u) && (succ[v] & ~succ[w])) return false;
    }
  }
  return true;
}

bool var_true(const std::map<std::string, WorldSet>& val, const std::string& name, int w) {
  auto it = val.find(name);
  return it != val.end() && ((it->second >> w) & 1u);
}

}  // namespace

ConditionalModel::ConditionalModel(int n, ConditionalFrame fr) : worlds(n), frame(fr) {
  if (n < 1 || n > 16) throw std::invalid_argument("model size must be between 1 and 16");
  selection.resize(static_cast<std::size_t>(n) << n);
  for (int w = 0; w < n; ++w)
    for (WorldSet x = 0; x <= all_worlds(n); ++x) set_select(w, x, x & (WorldSet{1} << w));
}

bool ConditionalModel::frame_ok() const {
  for (int w = 0; w < worlds; ++w)
    for (WorldSet x = 0; x <= all_worlds(worlds); ++x)
      if (!selection_allowed(frame, w, x, select(w, x))) return false;
  return true;
}

KripkeModel::KripkeModel(int n, KripkeFrame fr) : worlds(n), successors(n, 0), frame(fr) {
  if (n < 1 || n > 16) throw std::invalid_argument("model size must be between 1 and 16");
}

bool KripkeModel::frame_ok() const { return relation_allowed(frame, successors); }

WorldSet extension(const ConditionalModel& m, Formula f) {
  WorldSet out = 0;
  for (int w = 0; w < m.worlds; ++w)
    if (eval(m, w, f)) out |= WorldSet{1} << w;
  return out;
}

WorldSet extension(const KripkeModel& m, Formula f) {
  WorldSet out = 0;
  for (int w = 0; w < m.worlds; ++w)
    if (eval(m, w, f)) out |= WorldSet{1} << w;
  return out;
}

bool eval(const ConditionalModel& m, int w, Formula f) {
  switch (f.tag()) {
    case Tag::Bot:
      return false;
    case Tag::Var:
      return var_true(m.valuation, f.name(), w);
    case Tag::Neg:
      return !eval(m, w, f.arg());
    case Tag::And:
      return eval(m, w, f.left()) && eval(m, w, f.right());
    case Tag::Cond: {
      WorldSet y = m.select(w, extension(m, f.left()));
      for (int v = 0; v < m.worlds; ++v)
        if (((y >> v) & 1u) && !eval(m, v, f.right())) return false;
      return true;
    }
    case Tag::Box:
      throw SignatureError("box formula " + to_string(f) + " in a conditional model");
  }
  return false;
}

bool eval(const KripkeModel& m, int w, Formula f) {
  switch (f.tag()) {
    case Tag::Bot:
      return false;
    case Tag::Var:
      return var_true(m.valuation, f.name(), w);
    case Tag::Neg:
      return !eval(m, w, f.arg());
    case Tag::And:
      return eval(m, w, f.left()) && eval(m, w, f.right());
    case Tag::Box:
      for (int v = 0; v < m.worlds; ++v)
        if (m.related(w, v) && !eval(m, v, f.arg())) return false;
      return true;
    case Tag::Cond:
      throw SignatureError("conditional formula " + to_string(f) + " in a Kripke model");
  }
  return false;
}

bool eval(const Model& m, int world, Formula f) {
  return std::visit([&](const auto& model) { return eval(model, world, f); }, m);
}

namespace {

enum class Tri : std::uint8_t { False, True, Unknown };

// Exhaustive search over partial models. Evaluation reports the first
// unassigned entry it needs; the search then branches on that entry.
class LazySearch {
 public:
  LazySearch(const Sequent& s, int worlds) : formulas_(s.begin(), s.end()), n_(worlds) {
    for (Formula f : formulas_)
      for (Formula g : subformulas(f))
        if (g.is(Tag::Var) && !var_index_.count(g)) {
          var_index_.emplace(g, static_cast<int>(var_names_.size()));
          var_names_.push_back(g.name());
        }
    val_known_.assign(var_names_.size(), 0);
    val_true_.assign(var_names_.size(), 0);
  }

  std::optional<ConditionalModel> conditional(ConditionalFrame frame) {
    cframe_ = frame;
    sel_known_.assign(static_cast<std::size_t>(n_) << n_, false);
    sel_.assign(static_cast<std::size_t>(n_) << n_, 0);
    if (!search()) return std::nullopt;
    ConditionalModel m(n_, frame);
    fill_valuation(m.valuation);
    for (int w = 0; w < n_; ++w)
      for (WorldSet x = 0; x <= all_worlds(n_); ++x)
        if (sel_known_[slot(w, x)]) m.set_select(w, x, sel_[slot(w, x)]);
    return m;
  }

  std::optional<KripkeModel> kripke(KripkeFrame frame) {
    std::size_t total = std::size_t{1} << (n_ * n_);
    std::vector<WorldSet> succ(n_);
    for (std::size_t code = 0; code < total; ++code) {
      for (int w = 0; w < n_; ++w) succ[w] = (code >> (w * n_)) & all_worlds(n_);
      if (!relation_allowed(frame, succ)) continue;
      succ_ = succ;
      std::fill(val_known_.begin(), val_known_.end(), 0);
      std::fill(val_true_.begin(), val_true_.end(), 0);
      if (!search()) continue;
      KripkeModel m(n_, frame);
      m.successors = succ;
      fill_valuation(m.valuation);
      return m;
    }
    return std::nullopt;
  }

 private:
  struct Need {
    bool selection = false;
    int index = 0;  // variable index or world
    WorldSet set = 0;
    int world = 0;
  };

  std::size_t slot(int w, WorldSet x) const { return (static_cast<std::size_t>(w) << n_) | x; }

  void fill_valuation(std::map<std::string, WorldSet>& out) const {
    for (std::size_t i = 0; i < var_names_.size(); ++i) out[var_names_[i]] = val_true_[i] & val_known_[i];
  }

  Tri ext(Formula f, WorldSet& out) {
    out = 0;
    for (int v = 0; v < n_; ++v) {
      Tri r = ev(f, v);
      if (r == Tri::Unknown) return r;
      if (r == Tri::True) out |= WorldSet{1} << v;
    }
    return Tri::True;
  }

  Tri ev(Formula f, int w) {
    switch (f.tag()) {
      case Tag::Bot:
        return Tri::False;
      case Tag::Var: {
        int i = var_index_.at(f);
        if (!((val_known_[i] >> w) & 1u)) {
          need_ = {false, i, 0, w};
          return Tri::Unknown;
        }
        return ((val_true_[i] >> w) & 1u) ? Tri::True : Tri::False;
      }
      case Tag::Neg: {
        Tri r = ev(f.arg(), w);
        return r == Tri::Unknown ? r : (r == Tri::True ? Tri::False : Tri::True);
      }
      case Tag::And: {
        Tri l = ev(f.left(), w);
        if (l == Tri::False) return l;
        Need saved = need_;
        Tri r = ev(f.right(), w);
        if (r == Tri::False) return r;
        if (l == Tri::Unknown) {
          need_ = saved;
          return l;
        }
        return r;
      }
      case Tag::Box: {
        Tri out = Tri::True;
        Need saved;
        for (int v = 0; v < n_; ++v) {
          if (!((succ_[w] >> v) & 1u)) continue;
          Tri r = ev(f.arg(), v);
          if (r == Tri::False) return r;
          if (r == Tri::Unknown && out == Tri::True) {
            out = r;
            saved = need_;
          }
        }
        if (out == Tri::Unknown) need_ = saved;
        return out;
      }
      case Tag::Cond: {
        // Decided without the antecedent's extension when the consequent holds
        // everywhere, or (under id) wherever the antecedent might.
        Need before = need_;
        bool decided = true, pending = false;
        Need first;
        for (int v = 0; v < n_ && decided; ++v) {
          Tri b = ev(f.right(), v);
          if (b == Tri::True) continue;
          if (b == Tri::Unknown && !pending) {
            pending = true;
            first = need_;
          }
          decided = cframe_.id && ev(f.left(), v) == Tri::False;
        }
        need_ = before;
        if (decided) return Tri::True;
        // Settle the consequent first: its valuation is cheaper to branch on.
        if (pending) {
          need_ = first;
          return Tri::Unknown;
        }
        WorldSet x;
        if (ext(f.left(), x) == Tri::Unknown) return Tri::Unknown;
        std::size_t k = slot(w, x);
        if (!sel_known_[k]) {
          need_ = {true, w, x, w};
          return Tri::Unknown;
        }
        Tri out = Tri::True;
        Need saved;
        for (int v = 0; v < n_; ++v) {
          if (!((sel_[k] >> v) & 1u)) continue;
          Tri r = ev(f.right(), v);
          if (r == Tri::False) return r;
          if (r == Tri::Unknown && out == Tri::True) {
            out = r;
            saved = need_;
          }
        }
        if (out == Tri::Unknown) need_ = saved;
        return out;
      }
    }
    return Tri::Unknown;
  }

  // True when the current partial model extends to one falsifying every
  // formula at world 0.
  bool search() {
    for (Formula f : formulas_) {
      Tri r = ev(f, 0);
      if (r == Tri::True) return false;
      if (r == Tri::False) continue;
      Need need = need_;
      if (need.selection) {
        std::size_t k = slot(need.index, need.set);
        sel_known_[k] = true;
        for (WorldSet y = 0; y <= all_worlds(n_); ++y) {
          if (!selection_allowed(cframe_, need.index, need.set, y)) continue;
          sel_[k] = y;
          if (search()) return true;
        }
        sel_known_[k] = false;
      } else {
        WorldSet bit = WorldSet{1} << need.world;
        val_known_[need.index] |= bit;
        for (bool value : {false, true}) {
          if (value)
            val_true_[need.index] |= bit;
          else
            val_true_[need.index] &= ~bit;
          if (search()) return true;
        }
        val_known_[need.index] &= ~bit;
        val_true_[need.index] &= ~bit;
      }
      return false;
    }
    return true;
  }

  std::vector<Formula> formulas_;
  int n_;
  std::unordered_map<Formula, int, FormulaHash> var_index_;
  std::vector<std::string> var_names_;
  std::vector<WorldSet> val_known_, val_true_;
  std::vector<bool> sel_known_;
  std::vector<WorldSet> sel_;
  std::vector<WorldSet> succ_;
  ConditionalFrame cframe_;
  Need need_;
};

}  // namespace

std::optional<Countermodel> countermodel(const Sequent& s, LogicId logic, int max_worlds) {
  require_signature(s, logic);
  if (max_worlds < 1 || max_worlds > 4) throw std::invalid_argument("max_worlds must be in 1..4");
  for (int n = 1; n <= max_worlds; ++n) {
    LazySearch search(s, n);
    if (is_conditional(logic)) {
      if (auto m = search.conditional(conditional_frame(logic))) return Countermodel{std::move(*m), 0};
    } else {
      if (auto m = search.kripke(kripke_frame(logic))) return Countermodel{std::move(*m), 0};
    }
  }
  return std::nullopt;
}

std::optional<Countermodel> countermodel(Formula f, LogicId logic, int max_worlds) {
  return countermodel(Sequent{f}, logic, max_worlds);
}

bool is_prop_tautology(Formula f) {
  if (!is_propositional(f)) throw std::invalid_argument("not a propositional formula: " + to_string(f));
  std::vector<std::string> vars = variables(f);
  if (vars.size() > 20) throw std::invalid_argument("too many variables for a truth table");
  KripkeModel m(1);
  for (std::uint64_t row = 0; row < (std::uint64_t{1} << vars.size()); ++row) {
    for (std::size_t i = 0; i < vars.size(); ++i) m.valuation[vars[i]] = (row >> i) & 1u;
    if (!eval(m, 0, f)) return false;
  }
  return true;
}

nlohmann::json to_json(const Countermodel& cm) {
  nlohmann::json j;
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        j["worlds"] = m.worlds;
        nlohmann::json val = nlohmann::json::object();
        for (int w = 0; w < m.worlds; ++w) {
          nlohmann::json names = nlohmann::json::array();
          for (const auto& [name, set] : m.valuation)
            if ((set >> w) & 1u) names.push_back(name);
          val[std::to_string(w)] = names;
        }
        j["valuation"] = val;
        auto members = [&](WorldSet s) {
          nlohmann::json a = nlohmann::json::array();
          for (int v = 0; v < m.worlds; ++v)
            if ((s >> v) & 1u) a.push_back(v);
          return a;
        };
        if constexpr (std::is_same_v<M, ConditionalModel>) {
          nlohmann::json sel = nlohmann::json::array();
          for (int w = 0; w < m.worlds; ++w)
            for (WorldSet x = 0; x <= all_worlds(m.worlds); ++x)
              sel.push_back({{"world", w}, {"set", members(x)}, {"selected", members(m.select(w, x))}});
          j["selection"] = sel;
        } else {
          nlohmann::json rel = nlohmann::json::array();
          for (int w = 0; w < m.worlds; ++w)
            for (int v = 0; v < m.worlds; ++v)
              if (m.related(w, v)) rel.push_back({w, v});
          j["relation"] = rel;
        }
      },
      cm.model);
  j["falsified_at"] = cm.world;
  return j;
}

}  // namespace cutfree
