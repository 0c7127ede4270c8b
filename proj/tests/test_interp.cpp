#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "carnapkit/interp.hpp"
#include "oracles.hpp"

using namespace carnap;

namespace {

PointSet set_of(std::initializer_list<int> xs) {
  PointSet s;
  for (int x : xs) s = s.with(x);
  return s;
}

std::vector<Poset> posets_up_to(int n) {
  std::vector<Poset> out;
  for (int k = 1; k <= n; ++k)
    for (auto& P : enumerate_posets(k, true)) out.push_back(P);
  return out;
}

oracle::Order order_of(const Poset& P) {
  oracle::Order r(P.size(), std::vector<bool>(P.size()));
  for (int x = 0; x < P.size(); ++x)
    for (int y = 0; y < P.size(); ++y) r[x][y] = P.leq(x, y);
  return r;
}

/// Every world forcing all premises forces the conclusion, for every upset
/// valuation; straight from the Kripke clauses.
bool kripke_consistent(const Poset& P, const Consequence& c) {
  const auto r = order_of(P);
  const auto ups = oracle::upsets(r);
  auto set = c.atoms();
  std::vector<std::string> atoms(set.begin(), set.end());
  std::vector<std::size_t> idx(atoms.size(), 0);
  while (true) {
    std::map<std::string, unsigned> v;
    for (std::size_t i = 0; i < atoms.size(); ++i) v[atoms[i]] = ups[idx[i]];
    for (int w = 0; w < P.size(); ++w) {
      bool all = true;
      for (const auto& p : c.premises()) all = all && oracle::forces(r, v, w, p);
      if (all && !oracle::forces(r, v, w, c.conclusion())) return false;
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == ups.size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return true;
}

/// Prover-verified consequences drawn from small formulas, one or two
/// premises each.
std::vector<Consequence> extra_theorems(std::size_t count) {
  const auto fs = formula_universe(2, 2);
  std::mt19937 rng(42);
  std::uniform_int_distribution<std::size_t> pick(0, fs.size() - 1);
  std::vector<Consequence> out;
  while (out.size() < count) {
    std::vector<Formula> prem{fs[pick(rng)]};
    if (rng() % 2) prem.push_back(fs[pick(rng)]);
    Consequence c(prem, fs[pick(rng)]);
    if (prove_ipc(c).provable && std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

}  // namespace

TEST(Probes, Contents) {
  const auto& ps = probe_consequences();
  EXPECT_EQ(ps.size(), 10u);
  for (const auto& c : ps) EXPECT_TRUE(prove_ipc(c).provable);
  EXPECT_TRUE(ps[5].premises().empty());
  EXPECT_EQ(to_string(ps[8]), "p -> r, q -> r, p | q |- r");
}

TEST(Evaluate, Examples) {
  auto I = standard_interpretation(kripke_nucleus(Poset::chain(2)));
  EXPECT_EQ(evaluate(I, {{"p", set_of({1})}}, parse_formula("~~p")), set_of({0, 1}));
  EXPECT_EQ(evaluate(I, {{"p", set_of({1})}}, parse_formula("~p")), PointSet{});
  EXPECT_THROW(evaluate(I, {{"p", set_of({0})}}, parse_formula("p")), ValidationError);
  auto top = standard_interpretation(constant_top_nucleus(Poset::chain(2)));
  EXPECT_EQ(evaluate(top, {}, parse_formula("bot")), set_of({0, 1}));
  for (const auto& P : posets_up_to(3))
    for (const char* name : {"kripke", "beth", "dd"}) {
      auto NF = nucleus_by_name(P, name);
      auto J = standard_interpretation(NF);
      EXPECT_EQ(evaluate(J, {}, parse_formula("bot")), NF(PointSet{}));
      for (auto u : NF.lattice().sets()) EXPECT_EQ(evaluate(J, {{"p", u}}, parse_formula("p -> p")), P.universe());
    }
}

TEST(Evaluate, AtomsPassThroughTheNucleus) {
  auto I = standard_interpretation(beth_nucleus(Poset::vee()));
  EXPECT_EQ(evaluate(I, {{"p", set_of({1, 2})}}, parse_formula("p")), set_of({0, 1, 2}));
  EXPECT_EQ(evaluate(I, {{"p", set_of({1})}, {"q", set_of({2})}}, parse_formula("p | q")), set_of({0, 1, 2}));
}

TEST(Evaluate, KripkeMatchesForcing) {
  std::mt19937 rng(3);
  const auto fs = formula_universe(2, 3);
  for (const auto& P : posets_up_to(3)) {
    auto I = standard_interpretation(kripke_nucleus(P));
    const auto r = order_of(P);
    const UpSetLattice L(P);
    const auto& ups = L.sets();
    for (int trial = 0; trial < 40; ++trial) {
      const auto& f = fs[rng() % fs.size()];
      PointSet u = ups[rng() % ups.size()], w = ups[rng() % ups.size()];
      PointSet forced;
      for (int x = 0; x < P.size(); ++x)
        if (oracle::forces(r, {{"p", u.bits()}, {"q", w.bits()}}, x, f)) forced = forced.with(x);
      EXPECT_EQ(evaluate(I, {{"p", u}, {"q", w}}, f), forced) << to_string(f);
    }
  }
}

TEST(Consistency, SoundnessHarness) {
  auto cs = probe_consequences();
  auto extra = extra_theorems(50);
  cs.insert(cs.end(), extra.begin(), extra.end());
  int frames = 0;
  for (const auto& P : posets_up_to(4))
    for (const char* name : {"kripke", "beth", "dd"}) {
      auto r = check_consistency(standard_interpretation(nucleus_by_name(P, name)), cs);
      EXPECT_TRUE(r.consistent) << name << " " << (r.violated ? to_string(*r.violated) : "");
      ++frames;
    }
  EXPECT_EQ(frames, 3 * (1 + 2 + 5 + 16));
}

TEST(Consistency, KripkeMatchesForcingOracle) {
  std::mt19937 rng(5);
  const auto fs = formula_universe(2, 2);
  int violated = 0;
  for (const auto& P : posets_up_to(3)) {
    auto I = standard_interpretation(kripke_nucleus(P));
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<Formula> prem;
      for (unsigned k = rng() % 3; k > 0; --k) prem.push_back(fs[rng() % fs.size()]);
      Consequence c(prem, fs[rng() % fs.size()]);
      const bool expected = kripke_consistent(P, c);
      auto r = check_consistency(I, {c});
      EXPECT_EQ(r.consistent, expected) << to_string(c);
      violated += !expected;
      if (!r.consistent) {
        // The witness re-evaluates to a genuine violation.
        PointSet meet = P.universe();
        for (const auto& p : c.premises()) meet = meet & evaluate(I, r.witness, p);
        EXPECT_EQ(meet - evaluate(I, r.witness, c.conclusion()), r.worlds);
        EXPECT_FALSE(r.worlds.is_empty());
      }
    }
  }
  EXPECT_GT(violated, 0);
}

TEST(Consistency, UnionAsConjunction) {
  auto I = standard_interpretation(kripke_nucleus(Poset::chain(2)));
  I.conj = I.disj;
  const auto c = parse_consequence("p & q |- p");
  auto r = check_consistency(I, {c});
  EXPECT_FALSE(r.consistent);
  auto all = consistency_violations(I, c);
  Valuation expected{{"p", PointSet{}}, {"q", set_of({0, 1})}};
  EXPECT_NE(std::find(all.begin(), all.end(), expected), all.end());
}

TEST(Consistency, FmlaFmlaSkipsMultiPremise) {
  auto I = standard_interpretation(kripke_nucleus(Poset::chain(2)));
  I.conj.assign(I.conj.size(), I.bottom);
  auto r = check_consistency(I, {parse_consequence("p, q |- p & q")}, Mode::FmlaFmla);
  EXPECT_TRUE(r.consistent);
  EXPECT_EQ(r.skipped, 1);
  EXPECT_FALSE(check_consistency(I, {parse_consequence("p, q |- p & q")}, Mode::SetFmla).consistent);
}

TEST(Consistency, BudgetIsEnforced) {
  auto I = standard_interpretation(kripke_nucleus(Poset::antichain(3)));
  Budget b;
  b.valuations = 10;
  EXPECT_THROW(check_consistency(I, probe_consequences(), Mode::SetFmla, b), BudgetExceeded);
}

TEST(Categoricity, DeriveOnSmallFrames) {
  for (const auto& P : posets_up_to(4))
    for (const char* name : {"kripke", "beth", "dd"}) {
      auto r = derive_forced_tables(nucleus_by_name(P, name));
      EXPECT_TRUE(r.complete) << name;
      EXPECT_TRUE(r.equals_standard) << name;
      EXPECT_TRUE(r.open.empty());
    }
}

TEST(Categoricity, OnePointIsClassical) {
  auto r = derive_forced_tables(kripke_nucleus(Poset::chain(1)));
  ASSERT_TRUE(r.forced);
  const auto& I = *r.forced;
  ASSERT_EQ(I.size(), 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const bool x = I.domain[a] == set_of({0}), y = I.domain[b] == set_of({0});
      EXPECT_EQ(I.domain[I.conj[a * 2 + b]] == set_of({0}), x && y);
      EXPECT_EQ(I.domain[I.disj[a * 2 + b]] == set_of({0}), x || y);
      EXPECT_EQ(I.domain[I.imp[a * 2 + b]] == set_of({0}), !x || y);
    }
}

TEST(Categoricity, AntichainArrowIsMaterial) {
  auto r = derive_forced_tables(kripke_nucleus(Poset::antichain(2)));
  ASSERT_TRUE(r.forced);
  const auto& I = *r.forced;
  const PointSet X = set_of({0, 1});
  for (int a = 0; a < I.size(); ++a)
    for (int b = 0; b < I.size(); ++b) EXPECT_EQ(I.domain[I.imp[a * I.size() + b]], (X - I.domain[a]) | I.domain[b]);
}

TEST(Categoricity, Exhaustive) {
  auto c2 = exhaustive_categoricity(kripke_nucleus(Poset::chain(2)));
  EXPECT_EQ(c2.mode, "joint");
  EXPECT_TRUE(c2.unique());
  EXPECT_TRUE(c2.equals_standard);
  auto c1 = exhaustive_categoricity(kripke_nucleus(Poset::chain(1)));
  EXPECT_TRUE(c1.unique());
  EXPECT_TRUE(c1.equals_standard);
  auto a2 = exhaustive_categoricity(kripke_nucleus(Poset::antichain(2)));
  EXPECT_EQ(a2.mode, "per-entry");
  EXPECT_TRUE(a2.unique());
  EXPECT_TRUE(a2.equals_standard);
  EXPECT_TRUE(a2.deviations.empty());
}

TEST(Holliday, SierpinskiNegation) {
  auto S = FiniteTopology::sierpinski();
  EXPECT_EQ(holliday_negation(S, set_of({1})), PointSet{});
  EXPECT_EQ(holliday_negation(S, PointSet{}), set_of({0, 1}));
  auto I = holliday_interpretation(S);
  EXPECT_EQ(evaluate(I, {{"p", set_of({0, 1})}, {"q", set_of({1})}}, parse_formula("p -> q")), set_of({0, 1}));
  EXPECT_FALSE(holliday_negation_divergence(S));
}

TEST(Holliday, Dichotomy) {
  auto S = FiniteTopology::sierpinski();
  auto I = holliday_interpretation(S);
  EXPECT_TRUE(check_theorem_validity(I, theorem_corpus(2, 3)).valid);
  const auto mp = parse_consequence("p, p -> q |- q");
  auto r = check_consistency(I, {mp});
  EXPECT_FALSE(r.consistent);
  Valuation w{{"p", set_of({0, 1})}, {"q", set_of({1})}};
  EXPECT_EQ(r.witness, w);
  EXPECT_EQ(r.worlds, set_of({0}));
}

TEST(Holliday, ConjunctionIsNonStandardSomewhere) {
  bool found = false;
  for (const auto& T : enumerate_topologies(3)) {
    auto w = holliday_nonstandard_witness(T);
    if (!w) continue;
    found = true;
    EXPECT_NE(regularise(T, w->first) & regularise(T, w->second), w->first & w->second);
  }
  EXPECT_TRUE(found);
  EXPECT_FALSE(holliday_nonstandard_witness(FiniteTopology::discrete(2)));
}

TEST(Holliday, TranslationIdentity) {
  auto S = FiniteTopology::sierpinski();
  for (auto u : S.opens()) EXPECT_EQ(check_translation_identity(S, parse_formula("p"), {{"p", u}}).holliday, u);
  auto n = check_translation_identity(S, parse_formula("~p"), {{"p", set_of({1})}});
  EXPECT_TRUE(n.equal);
  EXPECT_EQ(n.holliday, PointSet{});
  EXPECT_TRUE(check_translation_identity_all(S, formula_universe(2, 3)).ok);
  const auto fs = formula_universe(2, 2);
  for (const auto& T : enumerate_topologies(3)) EXPECT_TRUE(check_translation_identity_all(T, fs).ok);
}

TEST(Conjugation, ThreePointSpaces) {
  const auto fs = formula_universe(1, 3);
  for (const auto& T : enumerate_topologies(3)) EXPECT_TRUE(check_conjugated_evaluation(dragalin_realization(T), fs).ok);
}

TEST(AtomMaps, IdentitySurvives) {
  for (const auto& P : {Poset::chain(1), Poset::chain(2)}) {
    auto r = search_atom_maps(P, probe_consequences());
    const int m = r.lattice_size;
    EXPECT_EQ(r.maps.size(), static_cast<std::size_t>(std::pow(m, m)));
    std::vector<int> id(m);
    for (int i = 0; i < m; ++i) id[i] = i;
    auto it = std::find_if(r.maps.begin(), r.maps.end(), [&](const AtomMapEntry& e) { return e.map == id; });
    ASSERT_NE(it, r.maps.end());
    EXPECT_TRUE(it->nucleus());
    EXPECT_TRUE(it->standard_survives);
    ASSERT_TRUE(it->survivors);
    EXPECT_GT(*it->survivors, 0u);
    int nuclei = 0, others = 0;
    for (const auto& e : r.maps)
      if (e.survivors && *e.survivors > 0) (e.nucleus() ? nuclei : others)++;
    EXPECT_EQ(nuclei, r.surviving_nuclei);
    EXPECT_EQ(others, r.surviving_non_nuclei);
  }
}

TEST(FmlaFmla, SingletonFamily) {
  auto r = fmla_fmla_search(2, {set_of({0, 1})});
  EXPECT_EQ(r.survivors, 1u);
  EXPECT_TRUE(r.intersection_survives);
  EXPECT_TRUE(r.closure_claim_holds);
}

TEST(FmlaFmla, SurvivorCountsMatchOracle) {
  // With single premises from the ∧-fragment, T(U,U) = U, T is symmetric
  // and T(U,V) ⊆ U ∩ V, and nothing else constrains it: each unordered pair
  // U ≠ V independently picks any member of C below U ∩ V.
  auto count = [](const std::vector<PointSet>& C) {
    std::uint64_t n = 1;
    for (std::size_t a = 0; a < C.size(); ++a)
      for (std::size_t b = a + 1; b < C.size(); ++b)
        n *= std::count_if(C.begin(), C.end(), [&](PointSet c) { return c.subset_of(C[a] & C[b]); });
    return n;
  };
  std::vector<PointSet> power2 = {PointSet{}, set_of({0}), set_of({1}), set_of({0, 1})};
  auto p = fmla_fmla_search(2, power2);
  EXPECT_TRUE(p.intersection_closed);
  EXPECT_EQ(p.survivors, count(power2));
  EXPECT_EQ(p.survivors, 4u);
  EXPECT_TRUE(p.intersection_survives);
  EXPECT_TRUE(p.non_intersection_survives);
  EXPECT_FALSE(p.closure_claim_holds);

  std::vector<PointSet> no_empty = {set_of({0}), set_of({1}), set_of({0, 1})};
  auto q = fmla_fmla_search(2, no_empty);
  EXPECT_FALSE(q.intersection_closed);
  EXPECT_EQ(q.survivors, count(no_empty));

  std::vector<PointSet> chain3 = {PointSet{}, set_of({2}), set_of({1, 2}), set_of({0, 1, 2})};
  auto c = fmla_fmla_search(3, chain3);
  EXPECT_EQ(c.survivors, count(chain3));
}

TEST(FmlaFmla, RejectsBadInput) {
  EXPECT_THROW(fmla_fmla_search(4, {PointSet{}}), ValidationError);
  EXPECT_THROW(fmla_fmla_search(1, {set_of({1})}), ValidationError);
}
