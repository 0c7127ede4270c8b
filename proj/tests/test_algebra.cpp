#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "carnapkit/algebra.hpp"
#include "carnapkit/interp.hpp"
#include "oracles.hpp"

using namespace carnap;

namespace {

oracle::Tables tables(const FiniteAlgebra& A) {
  return {A.size(), A.zero(), A.one(), A.meet_table(), A.join_table(), A.arrow_table()};
}

FiniteAlgebra dummett_chain() { return dummett_algebra(heyting_chain(3), {1, 1, 2}); }

std::vector<Consequence> with_table(std::vector<Consequence> cs) {
  auto extra = equation_consequences(heyting_equation_table());
  cs.insert(cs.end(), extra.begin(), extra.end());
  return cs;
}

}  // namespace

TEST(Interpretation, HeytingAlgebrasPass) {
  for (const auto& H : enumerate_heyting_algebras(5)) EXPECT_TRUE(check_algebraic_interpretation(H).ok);
}

TEST(Interpretation, AntisymmetryFailure) {
  FiniteAlgebra A({"a", "b"}, 0, 1, {0, 0, 1, 1}, {0, 0, 0, 0}, {0, 0, 0, 0});
  auto v = check_algebraic_interpretation(A);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.property, "antisymmetry");
  EXPECT_EQ(v.witness, (std::vector<int>{0, 1}));
  EXPECT_THROW(AlgebraicInterpretation{A}, ValidationError);
}

TEST(Interpretation, TopFailure) {
  auto C = heyting_chain(2);
  FiniteAlgebra A(C.names(), 1, 0, C.meet_table(), C.join_table(), C.arrow_table());
  EXPECT_EQ(check_algebraic_interpretation(A).property, "top");
}

TEST(Interpretation, DummettKeepsTheOrder) {
  auto D = dummett_chain();
  EXPECT_TRUE(check_algebraic_interpretation(D).ok);
  EXPECT_EQ(D.meet_table(), heyting_chain(3).meet_table());
}

TEST(Evaluate, Examples) {
  auto C = heyting_chain(3);
  EXPECT_EQ(evaluate(C, {{"p", 1}}, parse_formula("p | ~p")), 1);
  EXPECT_EQ(evaluate(C, {{"p", 1}}, parse_formula("~~p")), 2);
  EXPECT_EQ(evaluate(dummett_chain(), {{"p", 2}, {"q", 0}}, parse_formula("p -> q")), 1);
}

TEST(Consistency, BooleanAndTrivial) {
  EXPECT_TRUE(check_algebra_consistency(heyting_chain(2), probe_consequences()).consistent);
  EXPECT_TRUE(check_algebra_consistency(heyting_chain(1), probe_consequences()).consistent);
  EXPECT_TRUE(check_algebra_consistency(heyting_chain(1), {parse_consequence("|- p | ~p"), parse_consequence("p |- bot")}).consistent);
}

TEST(Consistency, EmptyPremisesNeedTop) {
  auto r = check_algebra_consistency(heyting_chain(3), {parse_consequence("|- p | ~p")});
  EXPECT_FALSE(r.consistent);
  ASSERT_TRUE(r.violation);
  EXPECT_EQ(r.violation->valuation.at("p"), 1);
}

TEST(Consistency, DummettModusPonens) {
  auto D = dummett_chain();
  const auto mp = parse_consequence("p, p -> q |- q");
  EXPECT_FALSE(check_algebra_consistency(D, {mp}).consistent);
  auto all = algebra_consistency_violations(D, mp);
  auto it = std::find_if(all.begin(), all.end(), [](const AlgebraViolation& v) {
    return v.valuation.at("p") == 2 && v.valuation.at("q") == 0 && v.c == 1;
  });
  EXPECT_NE(it, all.end());
  for (const auto& v : all) EXPECT_EQ(v.consequence, mp);
}

TEST(Consistency, MatchesOracleOnRandomAlgebras) {
  std::mt19937 rng(11);
  const auto probes = probe_consequences();
  auto base = heyting_chain(3);
  std::uniform_int_distribution<int> pick(0, 2);
  int inconsistent = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto arrow = base.arrow_table();
    auto join = base.join_table();
    for (int k = 0; k < trial % 4; ++k) arrow[pick(rng) * 3 + pick(rng)] = pick(rng);
    if (trial % 5 == 0) join[pick(rng) * 3 + pick(rng)] = pick(rng);
    FiniteAlgebra A(base.names(), 0, 2, base.meet_table(), join, arrow);
    const bool expected = oracle::algebra_consistent(tables(A), probes);
    EXPECT_EQ(check_algebra_consistency(A, probes).consistent, expected);
    inconsistent += !expected;
  }
  EXPECT_GT(inconsistent, 0);
}

TEST(Validity, Corpus) {
  const auto corpus = theorem_corpus(2, 3);
  EXPECT_TRUE(validate_theorems_algebra(dummett_chain(), corpus).valid);
  EXPECT_TRUE(validate_theorems_algebra(heyting_chain(2), corpus).valid);
  auto r = validate_theorems_algebra(heyting_chain(3), {parse_formula("p | ~p")});
  EXPECT_FALSE(r.valid);
}

TEST(Forcing, HeytingExamples) {
  auto D = heyting_forcing_check(dummett_chain());
  EXPECT_TRUE(D.pipeline_ok);
  EXPECT_FALSE(D.verdict.ok);
  EXPECT_FALSE(D.consistency.consistent);
  auto row = std::find_if(D.rows.begin(), D.rows.end(), [](const EquationRow& r) { return r.equation == "a∧(a→b)=a∧b"; });
  ASSERT_NE(row, D.rows.end());
  EXPECT_FALSE(row->holds);
  EXPECT_TRUE(row->enforced);
  for (const auto& A : {powerset_algebra(2), heyting_chain(3)}) {
    auto r = heyting_forcing_check(A);
    EXPECT_TRUE(r.pipeline_ok);
    EXPECT_TRUE(r.verdict.ok);
    EXPECT_TRUE(r.consistency.consistent);
  }
}

TEST(Forcing, BooleanExamples) {
  auto B = boolean_forcing_check(heyting_chain(2));
  EXPECT_TRUE(B.consistency.consistent);
  EXPECT_TRUE(B.verdict.ok);
  auto C = boolean_forcing_check(heyting_chain(3));
  EXPECT_TRUE(C.pipeline_ok);
  EXPECT_FALSE(C.consistency.consistent);
  auto lem = std::find_if(C.rows.begin(), C.rows.end(), [](const EquationRow& r) { return r.equation == "a∨a′=1"; });
  ASSERT_NE(lem, C.rows.end());
  EXPECT_TRUE(lem->enforced);
  ASSERT_TRUE(lem->violation);
  EXPECT_EQ(lem->violation->valuation.at("p"), 1);
  auto T = boolean_forcing_check(heyting_chain(1));
  EXPECT_TRUE(T.consistency.consistent);
  EXPECT_TRUE(T.verdict.ok);
}

TEST(Forcing, WitnessesAreIntuitionisticTheorems) {
  for (const auto& c : equation_consequences(heyting_equation_table())) EXPECT_TRUE(prove_ipc(c).provable) << to_string(c);
  EXPECT_EQ(heyting_equation_table().size(), heyting_equations().size());
}

TEST(Dummett, Examples) {
  auto D = dummett_chain();
  EXPECT_EQ(D.arrow(2, 0), 1);
  EXPECT_EQ(D.name(D.arrow(2, 0)), "a");
  for (const auto& H : {heyting_chain(3), powerset_algebra(2)}) {
    std::vector<int> id(H.size());
    for (int i = 0; i < H.size(); ++i) id[i] = i;
    EXPECT_TRUE(dummett_algebra(H, id) == H);
  }
  EXPECT_THROW(dummett_algebra(heyting_chain(3), {0, 0, 2}), ValidationError);
}

TEST(Dummett, NucleusValidation) {
  auto C = heyting_chain(3);
  EXPECT_EQ(validate_algebra_nucleus(C, {0, 0, 2}).property, "inflationarity");
  EXPECT_TRUE(validate_algebra_nucleus(C, {1, 1, 2}).ok);
  EXPECT_TRUE(validate_algebra_nucleus(C, {2, 2, 2}).ok);
}

TEST(Dummett, SearchFindsChainInstance) {
  auto found = find_non_heyting_dummett_algebras(3);
  ASSERT_FALSE(found.empty());
  EXPECT_EQ(found.front().heyting.size(), 2);
  auto pinned = std::find_if(found.begin(), found.end(), [](const DummettInstance& d) {
    return d.heyting == heyting_chain(3) && d.nucleus == std::vector<int>{1, 1, 2};
  });
  ASSERT_NE(pinned, found.end());
  EXPECT_EQ(pinned->verdict.equation, "a∧(a→b)=a∧b");
  for (const auto& d : found) {
    EXPECT_FALSE(check_heyting(d.dummett).ok);
    EXPECT_TRUE(validate_theorems_algebra(d.dummett, theorem_corpus(2, 2)).valid);
  }
}

TEST(Dummett, NonIdentityNucleusChangesOnlyTheArrow) {
  for (const auto& H : enumerate_heyting_algebras(4))
    for (const auto& j : algebra_nuclei(H)) {
      auto D = dummett_algebra(H, j);
      EXPECT_EQ(D.meet_table(), H.meet_table());
      EXPECT_EQ(D.join_table(), H.join_table());
      if (!(D == H)) {
        bool moved = false;
        for (int b = 0; b < H.size(); ++b) moved = moved || j[b] != b;
        EXPECT_TRUE(moved);
      }
    }
}

TEST(Enumeration, DistributiveLatticeCounts) {
  // Finite Heyting algebras are the finite distributive lattices:
  // 1, 1, 1, 2, 3, 5 of sizes 1 to 6.
  const int expected[] = {1, 1, 1, 2, 3, 5};
  auto all = enumerate_heyting_algebras(6);
  for (int n = 1; n <= 6; ++n)
    EXPECT_EQ(std::count_if(all.begin(), all.end(), [n](const FiniteAlgebra& A) { return A.size() == n; }), expected[n - 1]);
  EXPECT_EQ(enumerate_heyting_algebras(5).size(), 8u);
  for (const auto& A : all) {
    EXPECT_TRUE(check_heyting(A).ok);
    EXPECT_TRUE(oracle::residuated(tables(A)));
  }
}

TEST(Enumeration, HeytingAlgebrasAreConsistent) {
  for (const auto& H : enumerate_heyting_algebras(5)) {
    EXPECT_TRUE(check_algebra_consistency(H, probe_consequences()).consistent);
    EXPECT_TRUE(oracle::algebra_consistent(tables(H), probe_consequences()));
  }
}

TEST(Sweep, UpToTwoAgainstOracle) {
  // Independent count: every labelled structure of size ≤ 2 whose derived
  // order is a partial order with top `one`; Heyting iff bounded lattice
  // with residuated arrow; non-Heyting ones must break the probes plus the
  // equation table.
  std::uint64_t total = 0, non_heyting = 0, enforced = 0;
  const auto cs = with_table(probe_consequences());
  for (int n = 1; n <= 2; ++n) {
    const int cells = n * n;
    const int per = 1 << (cells * (n - 1));  // n^(n*n) with n ≤ 2
    for (int zero = 0; zero < n; ++zero)
      for (int one = 0; one < n; ++one)
        for (int m = 0; m < per; ++m)
          for (int jn = 0; jn < per; ++jn)
            for (int ar = 0; ar < per; ++ar) {
              oracle::Tables T;
              T.n = n, T.zero = zero, T.one = one;
              for (int i = 0; i < cells; ++i) {
                T.meet.push_back(n == 1 ? 0 : (m >> i) & 1);
                T.join.push_back(n == 1 ? 0 : (jn >> i) & 1);
                T.arrow.push_back(n == 1 ? 0 : (ar >> i) & 1);
              }
              auto leq = [&](int a, int b) { return T.meet[a * n + b] == a; };
              bool order = true;
              for (int a = 0; a < n; ++a) order = order && leq(a, a) && leq(a, one);
              if (n == 2 && leq(0, 1) && leq(1, 0)) order = false;
              if (!order) continue;
              ++total;
              bool lattice = true;
              for (int a = 0; a < n; ++a) {
                lattice = lattice && leq(zero, a);
                for (int b = 0; b < n; ++b) {
                  const int lo = leq(a, b) ? a : leq(b, a) ? b : -1;
                  const int hi = leq(a, b) ? b : leq(b, a) ? a : -1;
                  lattice = lattice && T.meet[a * n + b] == lo && T.join[a * n + b] == hi;
                }
              }
              if (lattice && oracle::residuated(T)) continue;
              ++non_heyting;
              enforced += !oracle::algebra_consistent(T, cs);
            }
  }
  auto r = sweep_algebraic_interpretations(2);
  EXPECT_EQ(r.interpretations, total);
  EXPECT_EQ(r.non_heyting, non_heyting);
  EXPECT_EQ(r.enforced, r.non_heyting);
  EXPECT_EQ(enforced, non_heyting);
  EXPECT_FALSE(r.counterexample);
}

TEST(Sweep, SizeLimit) { EXPECT_THROW(sweep_algebraic_interpretations(4), BudgetExceeded); }
