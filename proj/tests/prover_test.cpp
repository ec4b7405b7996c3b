#include <doctest.h>

#include "cutfree/generator.hpp"
#include "cutfree/prover.hpp"
#include "cutfree/semantics.hpp"
#include "cutfree/syntax.hpp"

using namespace cutfree;

namespace {

Formula a = var("a"), b = var("b"), c = var("c"), d = var("d");

Verdict run(const char* text, LogicId l, StrategyId s = StrategyId::Naive) {
  Verdict v = Prover(l, s).prove(parse_sequent(text));
  if (v.provable()) {
    REQUIRE(v.witness);
    CHECK(v.witness->conclusion.erased() == parse_sequent(text));
    CHECK(check_derivation(*v.witness, l, {.strict_marks = s == StrategyId::Marked}).ok);
  }
  return v;
}

}  // namespace

TEST_SUITE("prover") {
  TEST_CASE("examples") {
    Verdict id = run("a => a", LogicId::CKID);
    CHECK(id.provable());
    CHECK(modal_node_count(*id.witness) == 1);

    CHECK(run("~((a => b) & a & ~b)", LogicId::CKMP, StrategyId::Marked).provable());
    CHECK(run("~(~(a => b) & ~(a => ~b))", LogicId::CKCEM, StrategyId::Dp).provable());
    CHECK(run("~(a => b), (a & c) => b", LogicId::CK).unprovable());
    CHECK(run("~[](a & b), []a", LogicId::K).provable());
    CHECK(run("~(a => (b & c)), a => b", LogicId::CK).provable());
    CHECK(run("[]a -> [][]a", LogicId::K).unprovable());
    CHECK(run("[]a -> [][]a", LogicId::T).unprovable());
    CHECK(run("[]a -> [][]a", LogicId::K4).provable());
    CHECK(run("[]a -> a", LogicId::T).provable());
    CHECK(run("[]a -> a", LogicId::K).unprovable());
  }

  TEST_CASE("MP examples") {
    for (StrategyId s : {StrategyId::Naive, StrategyId::Marked, StrategyId::MarkedDescendants}) {
      Verdict v = run("~(a => b), ~a, b", LogicId::CKMP, s);
      REQUIRE(v.provable());
      CHECK(rule_count(*v.witness, RuleId::MPg) == 1);
      Verdict u = run("~(a => b)", LogicId::CKMP, s);
      CHECK(u.unprovable());
    }
    CHECK(run("a => b", LogicId::CKMPCEM).unprovable());
    CHECK(run("a => b", LogicId::CKMPCEM, StrategyId::Marked).unprovable());
  }

  TEST_CASE("strategy resolution") {
    CHECK(resolve_strategy(LogicId::CK, StrategyId::Auto) == StrategyId::Naive);
    CHECK(resolve_strategy(LogicId::CKCEM, StrategyId::Auto) == StrategyId::Dp);
    CHECK(resolve_strategy(LogicId::CKMPID, StrategyId::Auto) == StrategyId::Marked);
    CHECK_THROWS_AS(resolve_strategy(LogicId::CK, StrategyId::Dp), StrategyError);
    CHECK_THROWS_AS(resolve_strategy(LogicId::CKMPCEM, StrategyId::Dp), StrategyError);
    CHECK_THROWS_AS(resolve_strategy(LogicId::CKCEM, StrategyId::Marked), StrategyError);
    CHECK(parse_strategy("mp1") == StrategyId::MarkedDescendants);
    CHECK_FALSE(parse_strategy("greedy"));
  }

  TEST_CASE("budgets produce ResourceExceeded, never a wrong verdict") {
    Formula f = nested_cem(6);
    SearchLimits tiny;
    tiny.max_nodes = 20;
    Verdict v = Prover(LogicId::CKCEM, StrategyId::Naive).prove(Sequent{f}, tiny);
    CHECK(v.kind == VerdictKind::ResourceExceeded);
    CHECK_FALSE(v.reason.empty());
    CHECK_FALSE(v.witness);

    SearchLimits shallow;
    shallow.max_depth = 1;
    Verdict w = Prover(LogicId::CK).prove(parse_sequent("a => (b => c), ~(a => (b => c))"), shallow);
    CHECK(w.provable());  // an axiom needs no modal depth
    Verdict x = Prover(LogicId::CK).prove(parse_sequent("a => (b => (c => c))"), shallow);
    CHECK(x.kind != VerdictKind::Unprovable);
  }

  TEST_CASE("memo reuse gives the same verdicts") {
    Prover shared(LogicId::CKMPID, StrategyId::Marked);
    auto fs = enumerate_formulas(LogicId::CK, 6);
    for (std::size_t i = 0; i < fs.size(); i += 13) {
      Verdict v1 = shared.prove(Sequent{fs[i]});
      Verdict v2 = Prover(LogicId::CKMPID, StrategyId::Marked).prove(Sequent{fs[i]});
      REQUIRE(v1.kind == v2.kind);
    }
    CHECK(shared.memo_size() > 0);
    shared.clear_memo();
    CHECK(shared.memo_size() == 0);
  }

  TEST_CASE("equivalence table and partition") {
    EquivTable t = build_equiv_table(parse_sequent("a => b, a => ~b"), LogicId::CKCEM);
    CHECK(t.entry(a, a) == true);

    EquivTable t2 = build_equiv_table(parse_sequent("a => b, (a & a) => c, b => c"), LogicId::CKCEM);
    CHECK(t2.entry(a, conj(a, a)) == true);
    CHECK(t2.entry(conj(a, a), a) == true);
    CHECK(t2.entry(a, b) == false);
    // Oracle: the naive prover on {¬A, B}.
    for (const auto& [key, value] : t2.entries())
      CHECK(prove(Sequent{neg(key.first), key.second}, LogicId::CKCEM, StrategyId::Naive).provable() == value);

    auto p = partition_by_antecedent({cond(a, b), cond(a, neg(b))}, t);
    CHECK(p.classes == std::vector<std::vector<std::size_t>>{{0, 1}});
    EquivTable t3 = build_equiv_table(parse_sequent("a => b, c => d"), LogicId::CKCEM);
    CHECK(partition_by_antecedent({cond(a, b), cond(c, d)}, t3).classes.size() == 2);
    CHECK(partition_by_antecedent({}, t3).classes.empty());
  }

  TEST_CASE("dp literal step") {
    EquivTable t = build_equiv_table(parse_sequent("a => b, c => b"), LogicId::CKCEM);
    CHECK(dp_literal_step({cond(a, b), cond(a, neg(b))}, t, LogicId::CKCEM));
    CHECK_FALSE(dp_literal_step({neg(cond(a, b))}, t, LogicId::CKCEM));
    CHECK_FALSE(dp_literal_step({cond(a, b), cond(c, neg(b))}, t, LogicId::CKCEM));
    CHECK(countermodel(Sequent{cond(a, b), cond(c, neg(b))}, LogicId::CKCEM, 3).has_value());
  }

  TEST_CASE("cut with an empty pool changes nothing") {
    auto fs = enumerate_formulas(LogicId::CK, 6);
    for (std::size_t i = 0; i < fs.size(); i += 97) {
      for (LogicId l : {LogicId::CK, LogicId::CKMP, LogicId::CKCEMID}) {
        Verdict v = prove(Sequent{fs[i]}, l, StrategyId::Naive);
        Verdict w = prove_with_cut(Sequent{fs[i]}, l, std::vector<Formula>{});
        REQUIRE(v.kind == w.kind);
      }
    }
  }

  TEST_CASE("cut derivations check only with cuts allowed") {
    Sequent s = parse_sequent("~(a => b), a => b");
    Verdict v = prove_with_cut(s, LogicId::CK, std::vector<Formula>{cond(a, b)});
    REQUIRE(v.provable());
    CHECK(check_derivation(*v.witness, LogicId::CK, {.allow_cut = true}).ok);
  }

  TEST_CASE("generated sequents are provable") {
    for (LogicId l : kAllLogics) {
      Generator g(42, l);
      for (int i = 0; i < 15; ++i) {
        auto gen = g.provable(10);
        SearchLimits lim;
        lim.max_nodes = 100'000;
        Verdict v = Prover(l).prove(gen.sequent, lim);
        INFO(name(l), " ", print_sequent(gen.sequent));
        CHECK(v.provable());
      }
    }
  }

  TEST_CASE("unrestricted search loops on MP logics") {
    SearchLimits lim;
    lim.max_nodes = 20'000;
    Prover p(LogicId::CKMP, StrategyId::Naive);
    Verdict v = p.prove_unrestricted(parse_sequent("~(a => b)"), lim);
    CHECK(v.kind == VerdictKind::ResourceExceeded);
    CHECK(p.prove_unrestricted(parse_sequent("~(a => b), ~a, b"), lim).provable());
  }
}
