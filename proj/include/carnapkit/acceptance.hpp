#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "carnapkit/algebra.hpp"
#include "carnapkit/interp.hpp"
#include "carnapkit/io.hpp"
#include "carnapkit/nucleus.hpp"
#include "carnapkit/prover.hpp"
#include "carnapkit/topology.hpp"

namespace carnap {

struct CriterionResult {
  int id = 0;
  std::string suite;
  std::string title;
  bool passed = false;
  double seconds = 0;
  double limit = 0;
  /// Counts on success; on failure, what failed and a command replaying it.
  std::string detail;
};

inline const std::vector<std::string>& acceptance_suites() {
  static const std::vector<std::string> s = {"prover", "nuclei", "categoricity", "dragalin", "holliday", "algebra"};
  return s;
}

namespace detail {

/// A poset or topology as a self-contained `inline:` argument.
inline std::string inline_arg(std::string text) {
  while (!text.empty() && text.back() == '\n') text.pop_back();
  std::replace(text.begin(), text.end(), '\n', ';');
  return "'inline:" + text + "'";
}

struct Check {
  bool passed;
  std::string detail;
};

inline const char* frame_nuclei[] = {"kripke", "beth", "dd"};

inline std::vector<Poset> posets_up_to(int n) {
  std::vector<Poset> out;
  for (int k = 1; k <= n; ++k)
    for (auto& P : enumerate_posets(k, true)) out.push_back(std::move(P));
  return out;
}

inline Check main_theorem_replay() {
  int frames = 0, four = 0;
  for (const auto& P : posets_up_to(4))
    for (const char* name : frame_nuclei) {
      auto NF = nucleus_by_name(P, name);
      auto r = derive_forced_tables(NF);
      if (!r.complete || !r.equals_standard || r.contradiction)
        return {false, std::string(name) + " nucleus: tables not forced to standard; replay: carnapkit categoricity --engine derive --poset " +
                           inline_arg(format_poset(P)) + " --nucleus " + name};
      ++frames;
      four += P.size() == 4;
    }
  return {true, std::to_string(frames) + " frames (" + std::to_string(four) + " on 4 elements) forced to standard"};
}

inline Check exhaustive_confirmation() {
  std::string detail;
  for (const Poset& P : {Poset::chain(1), Poset::chain(2)}) {
    auto r = exhaustive_categoricity(kripke_nucleus(P));
    if (!r.unique() || !r.equals_standard)
      return {false, std::to_string(r.survivors) + " survivors; replay: carnapkit categoricity --engine exhaustive --poset " +
                         inline_arg(format_poset(P)) + " --nucleus kripke"};
    detail += (detail.empty() ? "" : ", ") + std::to_string(P.size()) + "-chain: 1 survivor (" + r.mode + ", " + std::to_string(r.nodes) + " nodes)";
  }
  return {true, detail};
}

inline Check classical_specialization() {
  for (int n = 1; n <= 3; ++n) {
    const Poset P = Poset::antichain(n);
    auto r = derive_forced_tables(kripke_nucleus(P));
    const std::string replay = "; replay: carnapkit categoricity --engine derive --poset antichain:" + std::to_string(n) + " --nucleus kripke";
    if (!r.complete || !r.forced) return {false, "tables not forced" + replay};
    const Interpretation& I = *r.forced;
    const PointSet X = P.universe();
    const int m = I.size();
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        if (I.domain[I.imp[a * m + b]] != ((X - I.domain[a]) | I.domain[b]))
          return {false, "arrow differs from (X-U)|V at " + format_set(I.domain[a]) + ", " + format_set(I.domain[b]) + replay};
    std::vector<std::string> names;
    for (auto s : I.domain) names.push_back(format_set(s, I.point_names));
    FiniteAlgebra A(names, I.bottom, I.index_of(X), I.conj, I.disj, I.imp);
    auto v = check_boolean(A);
    if (!v.ok) return {false, "forced tables not Boolean: " + v.describe(A) + replay};
  }
  return {true, "antichains of 1, 2, 3 points: classical arrow, Boolean tables"};
}

inline Check dragalin_realization_suite() {
  auto spaces = enumerate_topologies(3);
  if (spaces.size() != 29) return {false, "expected 29 topologies on 3 points, found " + std::to_string(spaces.size())};
  const auto formulas = formula_universe(2, 2);
  for (const auto& T : spaces) {
    const std::string replay = "; replay: carnapkit frame --topology " + inline_arg(format_topology(T));
    auto R = dragalin_realization(T);
    if (!R.nucleus_verdict.ok) return {false, "not a nucleus: " + R.nucleus_verdict.describe(R.poset.names()) + replay};
    if (!R.dense) return {false, "nucleus not dense" + replay};
    if (!R.h_bijective) return {false, "h is not a bijection onto the fixpoints" + replay};
    if (!R.h_monotone) return {false, "h is not monotone" + replay};
    if (!R.fixpoint_characterisation) return {false, "fixpoints are not exactly the empty set and the h(U)" + replay};
    auto c = check_conjugation(R);
    if (!c.ok) return {false, "conjugation fails for " + c.connective + replay};
    auto e = check_conjugated_evaluation(R, formulas);
    if (!e.ok) return {false, "conjugated evaluation fails for " + to_string(*e.failing) + replay};
  }
  return {true, "29 topologies: dense nucleus, h bijective and monotone, fixpoints characterised, conjugation holds"};
}

inline Check holliday_counterexample() {
  const FiniteTopology T = FiniteTopology::sierpinski();
  const auto H = holliday_interpretation(T);
  const std::string replay = "; replay: carnapkit holliday --topology sierpinski --witness";
  auto corpus = theorem_corpus(2, 3);
  auto valid = check_theorem_validity(H, corpus);
  if (!valid.valid) return {false, "theorem " + to_string(*valid.failing) + " not valid" + replay};
  auto tr = check_translation_identity_all(T, formula_universe(2, 3));
  if (!tr.ok) return {false, "translation identity fails for " + to_string(*tr.failing) + replay};
  if (!holliday_nonstandard_witness(T)) return {false, "conjunction table is standard" + replay};
  const Consequence mp = parse_consequence("p, p -> q |- q");
  auto c = check_consistency(H, {mp});
  const Valuation expected = {{"p", T.universe()}, {"q", PointSet::single(1)}};
  if (c.consistent) return {false, "modus ponens not violated" + replay};
  if (c.witness != expected) return {false, "first witness is " + format_valuation(c.witness, T.names()) + replay};
  if (check_consistency(H, probe_consequences()).consistent) return {false, "consistent with the probes" + replay};
  return {true, std::to_string(corpus.size()) + " theorems valid, translation identity on " + std::to_string(formula_universe(2, 3).size()) +
                    " formulas, inconsistent at " + format_valuation(c.witness, T.names())};
}

/// Pairs (i, j) over [0, n)² ordered by max(i, j), then row before column.
inline std::vector<std::pair<int, int>> square_shell_pairs(int n, std::size_t cap) {
  std::vector<std::pair<int, int>> out;
  for (int k = 0; k < n && out.size() < cap; ++k)
    for (int i = 0; i <= k && out.size() < cap; ++i) {
      out.emplace_back(i, k);
      if (i != k && out.size() < cap) out.emplace_back(k, i);
    }
  return out;
}

inline Check prover_cross_validation() {
  const auto universe = formula_universe(2, 3);
  constexpr int sample_size = 23;
  const std::size_t stride = universe.size() / sample_size;
  std::vector<Formula> sample;
  for (int i = 0; i < sample_size; ++i) sample.push_back(universe[i * stride]);
  int provable = 0, refuted = 0;
  auto agree = [&](const Consequence& c) {
    bool p = prove_ipc(c).provable;
    bool cm = find_kripke_countermodel(c, 6).has_value();
    (p ? provable : refuted)++;
    return p != cm;
  };
  const auto pairs = square_shell_pairs(sample_size, 500);
  for (auto [i, j] : pairs) {
    Consequence c({sample[i]}, sample[j]);
    if (!agree(c)) return {false, "prover and countermodel search disagree; replay: carnapkit prove --logic ipc --witness \"" + to_string(c) + "\""};
  }
  for (const auto& f : universe) {
    Consequence c({}, f);
    if (!agree(c)) return {false, "prover and countermodel search disagree; replay: carnapkit prove --logic ipc --witness \"" + to_string(c) + "\""};
    if (prove_cpc(c).provable != prove_ipc(Consequence({}, translate_g(f))).provable)
      return {false, "negative translation disagrees on " + to_string(f) + "; replay: carnapkit prove --logic cpc \"" + to_string(c) + "\""};
  }
  return {true, std::to_string(pairs.size()) + " pairs and " + std::to_string(universe.size()) + " theorem candidates agree (" +
                    std::to_string(provable) + " provable, " + std::to_string(refuted) + " refuted); translation agrees"};
}

inline Check algebraic_forcing() {
  auto heyting = enumerate_heyting_algebras(5);
  if (heyting.size() != 8) return {false, "expected 8 Heyting algebras of size <= 5, found " + std::to_string(heyting.size())};
  for (const auto& H : heyting) {
    auto r = check_algebra_consistency(H, probe_consequences());
    if (!r.consistent)
      return {false, "Heyting algebra inconsistent with " + to_string(r.violation->consequence) +
                         "; replay: carnapkit algebra consistency --algebra " + inline_arg(format_algebra(H))};
  }
  auto sweep = sweep_algebraic_interpretations(3);
  if (sweep.counterexample)
    return {false, "non-Heyting interpretation consistent with its equation's consequences; replay: carnapkit algebra force-heyting --algebra " +
                       inline_arg(format_algebra(*sweep.counterexample))};
  if (sweep.non_heyting == 0 || sweep.enforced != sweep.non_heyting) return {false, "sweep counts inconsistent"};

  const FiniteAlgebra chain = heyting_chain(3);
  const std::vector<int> j = {chain.index_of("a"), chain.index_of("a"), chain.index_of("1")};
  std::optional<FiniteAlgebra> D;
  for (const auto& inst : find_non_heyting_dummett_algebras(3))
    if (inst.heyting.size() == 3 && inst.nucleus == j) D = inst.dummett;
  if (!D) return {false, "3-chain Dummett algebra with j = (a, a, 1) not found by the search"};
  const std::string replay = "; replay: carnapkit algebra dummett --algebra chain:3 --j 'a a 1' --witness";
  auto valid = validate_theorems_algebra(*D, theorem_corpus(2, 3));
  if (!valid.valid) return {false, "Dummett algebra refutes " + to_string(*valid.failing) + replay};
  const Consequence mp = parse_consequence("p, p -> q |- q");
  if (check_algebra_consistency(*D, {mp}).consistent) return {false, "Dummett algebra consistent with modus ponens" + replay};
  bool found = false;
  for (const auto& v : algebra_consistency_violations(*D, mp))
    found = found || (v.valuation == AlgebraValuation{{"p", D->index_of("1")}, {"q", D->index_of("0")}} && v.c == D->index_of("a"));
  if (!found) return {false, "witness v(p)=1, v(q)=0, c=a not among the violations" + replay};
  return {true, "8 Heyting algebras consistent; " + std::to_string(sweep.non_heyting) + " non-Heyting interpretations of size <= 3 all enforced; Dummett witness found"};
}

inline Check nucleus_property_suite() {
  int checked = 0;
  for (const auto& P : posets_up_to(4)) {
    const std::string replay = "; replay: carnapkit nucleus --poset " + inline_arg(format_poset(P));
    if (!(beth_nucleus(P) == beth_nucleus_by_maximal_points(P))) return {false, "Beth definitions disagree" + replay + " --nucleus beth"};
    for (const char* name : {"kripke", "beth", "dd", "top"}) {
      auto NF = nucleus_by_name(P, name);
      auto v = check_nucleus_properties(NF);
      if (!v.ok) return {false, std::string(name) + ": " + v.describe(P.names()) + replay + " --nucleus " + name};
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " nuclei on posets of <= 4 elements satisfy the axioms; Beth definitions agree"};
}

struct Criterion {
  int id;
  const char* suite;
  const char* title;
  double limit;
  Check (*run)();
};

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c = {
      {1, "categoricity", "forced tables equal the standard tables on posets of <= 4 elements", 60, main_theorem_replay},
      {2, "categoricity", "exhaustive search leaves only the standard tables", 10, exhaustive_confirmation},
      {3, "categoricity", "antichains force the classical tables", 10, classical_specialization},
      {4, "dragalin", "Dragalin realization of 3-point spaces", 10, dragalin_realization_suite},
      {5, "holliday", "double-negation interpretation on the Sierpinski space", 60, holliday_counterexample},
      {6, "prover", "prover agrees with countermodel search and the negative translation", 300, prover_cross_validation},
      {7, "algebra", "Heyting equations forced by consequences", 300, algebraic_forcing},
      {8, "nuclei", "nucleus axioms and Beth definitions", 30, nucleus_property_suite},
  };
  return c;
}

}  // namespace detail

inline bool is_acceptance_suite(const std::string& suite) {
  const auto& s = acceptance_suites();
  return suite == "all" || std::find(s.begin(), s.end(), suite) != s.end();
}

/// Runs every criterion of the suite ("all" for every suite). A criterion
/// passes when its checks hold and it finishes within its time limit.
inline std::vector<CriterionResult> run_acceptance(const std::string& suite) {
  if (!is_acceptance_suite(suite)) throw ValidationError("unknown suite '" + suite + "'");
  std::vector<CriterionResult> out;
  for (const auto& c : detail::criteria()) {
    if (suite != "all" && suite != c.suite) continue;
    CriterionResult r{c.id, c.suite, c.title, false, 0, c.limit, {}};
    auto t0 = std::chrono::steady_clock::now();
    try {
      auto o = c.run();
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.passed && r.seconds > r.limit) {
      r.passed = false;
      r.detail += "; exceeded the time limit";
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::string format_criterion(const CriterionResult& r, bool porcelain = false) {
  char elapsed[32];
  std::snprintf(elapsed, sizeof elapsed, "%.2fs", r.seconds);
  if (porcelain)
    return std::to_string(r.id) + "\t" + (r.passed ? "PASS" : "FAIL") + "\t" + elapsed + "\t" + r.suite + "\t" + r.detail;
  char limit[32];
  std::snprintf(limit, sizeof limit, "%.0fs", r.limit);
  return "criterion " + std::to_string(r.id) + " " + (r.passed ? "PASS" : "FAIL") + " " + elapsed + " (limit " + limit + ") [" + r.suite +
         "] " + r.title + ": " + r.detail;
}

}  // namespace carnap
