#include <doctest.h>

#include <bit>

#include "cutfree/generator.hpp"
#include "cutfree/semantics.hpp"
#include "cutfree/syntax.hpp"

using namespace cutfree;

namespace {

Formula a = var("a"), b = var("b"), c = var("c");

// Independent evaluator over the same model type: plain recursion with sets
// of worlds computed from scratch.
bool truth(const ConditionalModel& m, int w, Formula f) {
  switch (f.tag()) {
    case Tag::Bot:
      return false;
    case Tag::Var: {
      auto it = m.valuation.find(f.name());
      return it != m.valuation.end() && ((it->second >> w) & 1u);
    }
    case Tag::Neg:
      return !truth(m, w, f.arg());
    case Tag::And:
      return truth(m, w, f.left()) && truth(m, w, f.right());
    case Tag::Cond: {
      WorldSet x = 0;
      for (int v = 0; v < m.worlds; ++v)
        if (truth(m, v, f.left())) x |= 1u << v;
      WorldSet sel = m.select(w, x);
      for (int v = 0; v < m.worlds; ++v)
        if (((sel >> v) & 1u) && !truth(m, v, f.right())) return false;
      return true;
    }
    case Tag::Box:
      break;
  }
  throw std::logic_error("box in conditional model");
}

bool truth(const KripkeModel& m, int w, Formula f) {
  switch (f.tag()) {
    case Tag::Bot:
      return false;
    case Tag::Var: {
      auto it = m.valuation.find(f.name());
      return it != m.valuation.end() && ((it->second >> w) & 1u);
    }
    case Tag::Neg:
      return !truth(m, w, f.arg());
    case Tag::And:
      return truth(m, w, f.left()) && truth(m, w, f.right());
    case Tag::Box:
      for (int v = 0; v < m.worlds; ++v)
        if (m.related(w, v) && !truth(m, v, f.arg())) return false;
      return true;
    case Tag::Cond:
      break;
  }
  throw std::logic_error("conditional in Kripke model");
}

void check_falsifies(const Countermodel& cm, const Sequent& s) {
  for (Formula f : s) {
    if (auto* m = std::get_if<ConditionalModel>(&cm.model)) {
      CHECK(m->frame_ok());
      CHECK_FALSE(truth(*m, cm.world, f));
    } else {
      auto& k = std::get<KripkeModel>(cm.model);
      CHECK(k.frame_ok());
      CHECK_FALSE(truth(k, cm.world, f));
    }
  }
}


// Exhaustive search over every model with at most 2 worlds over variables a, b.
bool brute_countermodel(Formula f, ConditionalFrame fr) {
  for (int n = 1; n <= 2; ++n) {
    const WorldSet full = (1u << n) - 1;
    const std::size_t entries = static_cast<std::size_t>(n) << n;
    std::vector<std::vector<WorldSet>> options(entries);
    for (int w = 0; w < n; ++w)
      for (WorldSet x = 0; x <= full; ++x)
        for (WorldSet y = 0; y <= full; ++y) {
          if (fr.id && (y & ~x)) continue;
          if (fr.mp && ((x >> w) & 1u) && !((y >> w) & 1u)) continue;
          if (fr.cem && std::popcount(y) > 1) continue;
          options[(static_cast<std::size_t>(w) << n) | x].push_back(y);
        }
    std::vector<std::size_t> pick(entries, 0);
    while (true) {
      for (WorldSet va = 0; va <= full; ++va)
        for (WorldSet vb = 0; vb <= full; ++vb) {
          ConditionalModel m(n);
          m.valuation = {{"a", va}, {"b", vb}};
          for (std::size_t k = 0; k < entries; ++k) m.selection[k] = options[k][pick[k]];
          if (!truth(m, 0, f)) return true;
        }
      std::size_t k = 0;
      while (k < entries && ++pick[k] == options[k].size()) pick[k++] = 0;
      if (k == entries) break;
    }
  }
  return false;
}

}  // namespace

TEST_SUITE("semantics") {
  TEST_CASE("evaluation basics") {
    ConditionalModel m(1);
    m.set_select(0, 0, 0);
    m.set_select(0, 1, 0);
    CHECK_FALSE(eval(m, 0, bot()));
    CHECK(eval(m, 0, cond(a, b)));  // empty selection
    KripkeModel k(1, {.reflexive = true});
    k.successors[0] = 1;
    k.valuation["a"] = 1;
    CHECK(eval(k, 0, box(a)));
    CHECK(k.frame_ok());
    CHECK_THROWS(eval(k, 0, cond(a, b)));
  }

  TEST_CASE("frame predicates") {
    ConditionalModel m(2, {.id = true});
    CHECK(m.frame_ok());  // default selection X ∩ {w}
    m.set_select(0, 0b10, 0b01);
    CHECK_FALSE(m.frame_ok());
    ConditionalModel mp(2, {.mp = true});
    mp.set_select(0, 0b01, 0);
    CHECK_FALSE(mp.frame_ok());
    ConditionalModel cem(2, {.cem = true});
    cem.set_select(1, 0b11, 0b11);
    CHECK_FALSE(cem.frame_ok());
    KripkeModel t(2, {.reflexive = true, .transitive = true});
    t.successors = {0b10, 0b10};
    CHECK_FALSE(t.frame_ok());
    t.successors = {0b11, 0b10};
    CHECK(t.frame_ok());
    KripkeModel k4(3, {.transitive = true});
    k4.successors = {0b010, 0b100, 0};
    CHECK_FALSE(k4.frame_ok());
    k4.successors = {0b110, 0b100, 0};
    CHECK(k4.frame_ok());
  }

  TEST_CASE("frame classes per logic") {
    CHECK(conditional_frame(LogicId::CKMPCEMID).id);
    CHECK(conditional_frame(LogicId::CKMPCEMID).mp);
    CHECK(conditional_frame(LogicId::CKMPCEMID).cem);
    CHECK_FALSE(conditional_frame(LogicId::CKCEM).mp);
    CHECK(kripke_frame(LogicId::T).reflexive);
    CHECK_FALSE(kripke_frame(LogicId::T).transitive);
    CHECK(kripke_frame(LogicId::K4).transitive);
  }

  TEST_CASE("countermodel examples") {
    CHECK_FALSE(countermodel(cond(a, a), LogicId::CKID));
    auto cm = countermodel(cond(a, b), LogicId::CK);
    REQUIRE(cm);
    CHECK(std::get<ConditionalModel>(cm->model).worlds <= 2);
    check_falsifies(*cm, Sequent{cond(a, b)});

    Formula four = parse_formula("[]a -> [][]a");
    auto k = countermodel(four, LogicId::K);
    REQUIRE(k);
    CHECK(std::get<KripkeModel>(k->model).worlds <= 3);
    check_falsifies(*k, Sequent{four});
    CHECK_FALSE(countermodel(four, LogicId::K4));

    Formula f = parse_formula("(a => b) -> ((a & c) => b)");
    auto m = countermodel(f, LogicId::CK, 3);
    REQUIRE(m);
    check_falsifies(*m, Sequent{f});
    CHECK_THROWS_AS(countermodel(cond(a, b), LogicId::K), SignatureError);
  }

  TEST_CASE("countermodels are real on random formulas") {
    std::mt19937_64 rng(9);
    for (LogicId l : kAllLogics) {
      for (int i = 0; i < 40; ++i) {
        Formula f = random_formula(rng, l, 3 + rng() % 8);
        auto cm = countermodel(f, l, 2);
        if (cm) check_falsifies(*cm, Sequent{f});
      }
    }
  }

  TEST_CASE("countermodel JSON layout") {
    auto cm = countermodel(cond(a, b), LogicId::CK);
    REQUIRE(cm);
    auto j = to_json(*cm);
    CHECK(j.contains("worlds"));
    CHECK(j.contains("valuation"));
    CHECK(j.contains("selection"));
    CHECK(j["falsified_at"] == cm->world);
    auto k = to_json(*countermodel(parse_formula("[]a -> a"), LogicId::K));
    CHECK(k.contains("relation"));
  }

  TEST_CASE("truth tables") {
    CHECK(is_prop_tautology(parse_formula("~(a & ~a)")));
    CHECK_FALSE(is_prop_tautology(a));
    CHECK_FALSE(is_prop_tautology(parse_formula("~(a & ~(a & b))")));
    CHECK(is_prop_tautology(parse_formula("a & b -> a | c")));
    CHECK_THROWS(is_prop_tautology(box(a)));
  }

  TEST_CASE("evaluation depends only on extensions") {
    // a&a and a have the same extension, so swapping them under ⇒ is invisible.
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 200; ++trial) {
      ConditionalModel m(2);
      m.valuation["a"] = rng() % 4;
      m.valuation["b"] = rng() % 4;
      for (auto& s : m.selection) s = rng() % 4;
      for (int w = 0; w < 2; ++w) {
        CHECK(eval(m, w, cond(a, b)) == eval(m, w, cond(conj(a, a), b)));
        CHECK(eval(m, w, cond(a, b)) == truth(m, w, cond(a, b)));
        CHECK(eval(m, w, cond(neg(neg(b)), a)) == eval(m, w, cond(b, a)));
      }
    }
  }

  TEST_CASE("lazy search agrees with exhaustive enumeration") {
    std::mt19937_64 rng(21);
    for (LogicId l : kConditionalLogics) {
      ConditionalFrame fr = conditional_frame(l);
      // The unrestricted frame has 4^8 selection functions at two worlds.
      int samples = l == LogicId::CK || l == LogicId::CKMP ? 40 : 120;
      for (int i = 0; i < samples; ++i) {
        Formula f = random_formula(rng, l, 4 + rng() % 7, 2);
        INFO(name(l), " ", print_formula(f));
        CHECK(countermodel(f, l, 2).has_value() == brute_countermodel(f, fr));
      }
    }
  }
}
