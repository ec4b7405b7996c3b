#include <doctest.h>

#include <set>

#include "cutfree/generator.hpp"
#include "cutfree/proof_io.hpp"
#include "cutfree/syntax.hpp"

using namespace cutfree;

namespace {

// Number of formulas of exactly size n: 4 leaves (3 variables and ⊥), one
// unary constructor and two binary ones in the conditional signature.
std::vector<std::uint64_t> formula_counts(std::size_t max, int unary, int binary) {
  std::vector<std::uint64_t> n(max + 1, 0);
  if (max >= 1) n[1] = 4;
  for (std::size_t s = 2; s <= max; ++s) {
    n[s] = unary * n[s - 1];
    for (std::size_t l = 1; l + 1 < s; ++l) n[s] += binary * n[l] * n[s - 1 - l];
  }
  return n;
}

}  // namespace

TEST_SUITE("generator") {
  TEST_CASE("every generated derivation checks") {
    for (LogicId l : kAllLogics) {
      Generator g(1234, l);
      for (int i = 0; i < 40; ++i) {
        auto gen = g.provable(1 + i % 20);
        REQUIRE(check_derivation(*gen.derivation, l).ok);
        CHECK(gen.derivation->conclusion.erased() == gen.sequent);
      }
    }
  }

  TEST_CASE("deterministic per seed") {
    auto dump = [](std::uint64_t seed) {
      Generator g(seed, LogicId::CK);
      std::string out;
      for (int i = 0; i < 5; ++i) out += derivation_to_json(*g.provable(20).derivation).dump();
      return out;
    };
    CHECK(dump(42) == dump(42));
    CHECK(dump(42) != dump(43));
  }

  TEST_CASE("provable_containing keeps the target") {
    for (LogicId l : kAllLogics) {
      Generator g(8, l);
      for (int i = 0; i < 10; ++i) {
        Formula t = g.formula(5);
        auto gen = g.provable_containing(t, 10);
        CHECK(gen.sequent.contains(t));
        CHECK(check_derivation(*gen.derivation, l).ok);
      }
    }
  }

  TEST_CASE("corpus sizes") {
    auto ck = formula_counts(9, 1, 2);
    auto k = formula_counts(7, 2, 1);
    std::uint64_t ck_total = 0, k_total = 0;
    for (auto n : ck) ck_total += n;
    for (auto n : k) k_total += n;
    auto corpus = enumerate_formulas(LogicId::CK, 9);
    CHECK(corpus.size() == ck_total);
    CHECK(enumerate_formulas(LogicId::K, 7).size() == k_total);
    for (std::size_t i = 1; i < corpus.size(); ++i) REQUIRE(size(corpus[i - 1]) <= size(corpus[i]));
    std::set<Formula> distinct(corpus.begin(), corpus.end());
    CHECK(distinct.size() == corpus.size());
    for (Formula f : enumerate_formulas(LogicId::CK, 5)) CHECK(in_signature(f, LogicId::CK));
  }

  TEST_CASE("random formulas have the requested size") {
    std::mt19937_64 rng(3);
    for (LogicId l : kAllLogics)
      for (std::size_t s = 1; s <= 20; ++s) {
        Formula f = random_formula(rng, l, s);
        CHECK(size(f) == s);
        CHECK(in_signature(f, l));
      }
  }

  TEST_CASE("nested family") {
    CHECK(nested_cem(0) == var("d"));
    CHECK(modal_depth(nested_cem(15)) == 15);
  }
}
