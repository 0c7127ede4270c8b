#include <gtest/gtest.h>

#include <algorithm>

#include "carnapkit/heyting.hpp"
#include "carnapkit/nucleus.hpp"

using namespace carnap;

namespace {

PointSet set_of(std::initializer_list<int> xs) {
  PointSet s;
  for (int x : xs) s = s.with(x);
  return s;
}

std::vector<Poset> small_posets() {
  std::vector<Poset> out;
  for (int n = 1; n <= 4; ++n)
    for (auto& P : enumerate_posets(n, true)) out.push_back(P);
  return out;
}

bool is_chain(const Poset& P, PointSet s) {
  for (int a : s.members())
    for (int b : s.members())
      if (!P.leq(a, b) && !P.leq(b, a)) return false;
  return true;
}

/// Beth operator from brute-force maximal chains of ↑x containing x.
PointSet beth_oracle(const Poset& P, PointSet u) {
  PointSet out;
  for (int x = 0; x < P.size(); ++x) {
    const PointSet above = P.up(x);
    bool all = true;
    for (PointSet::mask_type m = 0; m < (PointSet::mask_type{1} << P.size()); ++m) {
      PointSet s{m};
      if (!s.contains(x) || !s.subset_of(above) || !is_chain(P, s)) continue;
      bool maximal = true;
      for (int y : (above - s).members()) maximal = maximal && !is_chain(P, s.with(y));
      if (maximal && !s.intersects(u)) all = false;
    }
    if (all) out = out.with(x);
  }
  return out;
}

/// ¬¬U pointwise: x ∈ ¬V iff nothing above x is in V.
PointSet dd_oracle(const Poset& P, PointSet u) {
  auto neg = [&](PointSet v) {
    PointSet out;
    for (int x = 0; x < P.size(); ++x)
      if (!P.up(x).intersects(v)) out = out.with(x);
    return out;
  };
  return neg(neg(u));
}

template <class F>
std::vector<PointSet> table_of(const UpSetLattice& L, F f) {
  std::vector<PointSet> t;
  for (auto u : L.sets()) t.push_back(f(u));
  return t;
}

std::vector<PointSet> sorted(std::vector<PointSet> v) {
  std::sort(v.begin(), v.end(), [](PointSet a, PointSet b) { return a.bits() < b.bits(); });
  return v;
}

}  // namespace

TEST(Validate, IdentityIsNucleus) {
  UpSetLattice L(Poset::chain(2));
  EXPECT_TRUE(validate_nucleus(L, L.sets()).ok);
}

TEST(Validate, ConstantTopIsNucleus) {
  UpSetLattice L(Poset::chain(2));
  EXPECT_TRUE(validate_nucleus(L, std::vector<PointSet>(L.size(), set_of({0, 1}))).ok);
}

TEST(Validate, SendingTopToEmptyFailsInflationarity) {
  UpSetLattice L(Poset::chain(2));
  const PointSet X = set_of({0, 1});
  auto v = validate_nucleus(L, table_of(L, [&](PointSet u) { return u == X ? PointSet{} : u; }));
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.axiom, "inflationarity");
  EXPECT_EQ(v.witness, std::vector<PointSet>{set_of({0, 1})});
}

TEST(Validate, NonUpsetOutput) {
  UpSetLattice L(Poset::chain(2));
  auto v = validate_nucleus(L, table_of(L, [](PointSet u) { return u.is_empty() ? set_of({0}) : set_of({0, 1}); }));
  EXPECT_EQ(v.axiom, "upset");
}

TEST(Validate, NotIdempotent) {
  // On the 3-chain 0<1<2: ∅ ↦ ∅, {2} ↦ {1,2}, {1,2} ↦ X.
  UpSetLattice L(Poset::chain(3));
  auto v = validate_nucleus(L, table_of(L, [](PointSet u) {
                              if (u.is_empty()) return u;
                              return u == set_of({2}) ? set_of({1, 2}) : set_of({0, 1, 2});
                            }));
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.axiom, "idempotence");
}

TEST(Validate, NotMultiplicative) {
  // Antichain {a,b}: {a} ↦ X, {b} ↦ X, ∅ ↦ ∅ keeps the rest but breaks meets.
  UpSetLattice L(Poset::antichain(2));
  auto v = validate_nucleus(L, table_of(L, [](PointSet u) { return u.is_empty() ? u : set_of({0, 1}); }));
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.axiom, "multiplicativity");
}

TEST(Validate, WrongSizeThrows) {
  UpSetLattice L(Poset::chain(2));
  EXPECT_THROW(validate_nucleus(L, {PointSet{}}), ValidationError);
}

TEST(Dense, Examples) {
  EXPECT_TRUE(kripke_nucleus(Poset::chain(2)).is_dense());
  EXPECT_FALSE(constant_top_nucleus(Poset::chain(2)).is_dense());
  for (const auto& P : small_posets()) EXPECT_TRUE(beth_nucleus(P).is_dense());
}

TEST(Kripke, Identity) {
  auto K = kripke_nucleus(Poset::chain(2));
  EXPECT_EQ(K(set_of({1})), set_of({1}));
  EXPECT_EQ(kripke_nucleus(Poset::antichain(2)).fixpoints().size(), 4u);
  for (const auto& P : small_posets()) EXPECT_EQ(kripke_nucleus(P).fixpoints(), UpSetLattice(P).sets());
}

TEST(Beth, VeeExamples) {
  auto B = beth_nucleus(Poset::vee());
  EXPECT_EQ(B(set_of({1})), set_of({1}));
  EXPECT_EQ(B(set_of({1, 2})), set_of({0, 1, 2}));
  EXPECT_EQ(B(set_of({0, 1, 2})), set_of({0, 1, 2}));
  EXPECT_EQ(sorted(B.fixpoints()), sorted({PointSet{}, set_of({1}), set_of({2}), set_of({0, 1, 2})}));
}

TEST(Beth, MatchesBruteForceChains) {
  for (const auto& P : small_posets()) {
    auto B = beth_nucleus(P);
    for (auto u : B.lattice().sets()) EXPECT_EQ(B(u), beth_oracle(P, u));
  }
}

TEST(Beth, TwoDefinitionsAgree) {
  for (int n = 1; n <= 5; ++n)
    for (const auto& P : enumerate_posets(n, true)) EXPECT_TRUE(beth_nucleus(P) == beth_nucleus_by_maximal_points(P));
}

TEST(DoubleNegation, Examples) {
  auto D = double_negation_nucleus(Poset::chain(2));
  EXPECT_EQ(D(set_of({1})), set_of({0, 1}));
  EXPECT_EQ(D(PointSet{}), PointSet{});
  EXPECT_EQ(double_negation_nucleus(Poset::antichain(2))(set_of({0})), set_of({0}));
}

TEST(DoubleNegation, MatchesPointwiseDefinition) {
  for (const auto& P : small_posets()) {
    auto D = double_negation_nucleus(P);
    for (auto u : D.lattice().sets()) EXPECT_EQ(D(u), dd_oracle(P, u));
  }
}

TEST(Fixpoints, Examples) {
  EXPECT_EQ(kripke_nucleus(Poset::chain(2)).fixpoints().size(), 3u);
  EXPECT_EQ(constant_top_nucleus(Poset::chain(2)).fixpoints(), std::vector<PointSet>{set_of({0, 1})});
}

TEST(Properties, AllBuiltNucleiOnSmallPosets) {
  for (const auto& P : small_posets())
    for (const char* name : {"kripke", "beth", "dd", "top"}) {
      auto NF = nucleus_by_name(P, name);
      EXPECT_TRUE(check_nucleus_properties(NF).ok) << name;
      for (int i = 0; i < NF.lattice().size(); ++i) EXPECT_EQ(NF.apply(NF.apply(i)), NF.apply(i));
    }
}

TEST(Properties, FixpointsAreClosedUnderIntersection) {
  for (const auto& P : small_posets())
    for (const char* name : {"beth", "dd"}) {
      auto NF = nucleus_by_name(P, name);
      auto fs = NF.fixpoints();
      for (auto a : fs)
        for (auto b : fs) EXPECT_NE(std::find(fs.begin(), fs.end(), a & b), fs.end());
    }
}

TEST(Dragalin, SingletonDevelopmentsGiveKripke) {
  for (const auto& P : small_posets()) {
    std::vector<std::vector<PointSet>> D(P.size());
    for (int x = 0; x < P.size(); ++x)
      for (int y : P.up(x).members()) D[x].push_back(PointSet::single(y));
    auto r = dragalin_nucleus(P, D);
    ASSERT_TRUE(r.frame);
    EXPECT_TRUE(*r.frame == kripke_nucleus(P));
  }
}

TEST(Dragalin, PrincipalDevelopmentIsNotIdentity) {
  // D(x) = {↑x}: every upset containing something above the root maps onto
  // the root, which differs from the identity on the V-poset.
  const Poset P = Poset::vee();
  std::vector<std::vector<PointSet>> D(P.size());
  for (int x = 0; x < P.size(); ++x) D[x] = {P.up(x)};
  auto r = dragalin_nucleus(P, D);
  EXPECT_FALSE(r.frame && *r.frame == kripke_nucleus(P));
}

TEST(Dragalin, PathsGiveBeth) {
  const Poset P = Poset::vee();
  auto r = dragalin_nucleus(P, beth_paths(P));
  ASSERT_TRUE(r.frame);
  EXPECT_TRUE(*r.frame == beth_nucleus(P));
}

TEST(Dragalin, EmptyDevelopmentFailsInflationarity) {
  const Poset P = Poset::chain(2);
  std::vector<std::vector<PointSet>> D = {{PointSet{}}, {PointSet::single(1)}};
  auto r = dragalin_nucleus(P, D);
  EXPECT_FALSE(r.frame);
  EXPECT_EQ(r.verdict.axiom, "inflationarity");
}

TEST(FixpointAlgebra, Examples) {
  auto K = fixpoint_algebra(kripke_nucleus(Poset::chain(2)));
  EXPECT_EQ(K.algebra.size(), 3);
  EXPECT_TRUE(check_heyting(K.algebra).ok);
  EXPECT_FALSE(check_boolean(K.algebra).ok);
  auto B = fixpoint_algebra(beth_nucleus(Poset::vee()));
  EXPECT_EQ(B.algebra.size(), 4);
  EXPECT_TRUE(check_boolean(B.algebra).ok);
  EXPECT_EQ(fixpoint_algebra(constant_top_nucleus(Poset::chain(2))).algebra.size(), 1);
}

TEST(FixpointAlgebra, AlwaysHeyting) {
  for (const auto& P : small_posets())
    for (const char* name : {"kripke", "beth", "dd", "top"}) {
      auto F = fixpoint_algebra(nucleus_by_name(P, name));
      EXPECT_TRUE(check_heyting(F.algebra).ok) << name;
      EXPECT_TRUE(check_residuation(F.algebra)) << name;
    }
  for (int n = 1; n <= 3; ++n) EXPECT_TRUE(check_boolean(fixpoint_algebra(kripke_nucleus(Poset::antichain(n))).algebra).ok);
}

TEST(ByName, UnknownRejected) { EXPECT_THROW(nucleus_by_name(Poset::chain(2), "nope"), ValidationError); }
