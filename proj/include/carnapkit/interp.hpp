#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "carnapkit/budget.hpp"
#include "carnapkit/error.hpp"
#include "carnapkit/formula.hpp"
#include "carnapkit/interpretation.hpp"
#include "carnapkit/nucleus.hpp"
#include "carnapkit/prover.hpp"
#include "carnapkit/table_search.hpp"
#include "carnapkit/topology.hpp"

namespace carnap {

/// The consequences the categoricity argument relies on, in the order the
/// argument uses them. Each is checked with the prover on first use.
inline const std::vector<Consequence>& probe_consequences() {
  static const std::vector<Consequence> probes = [] {
    const char* texts[] = {
        "p & q |- p",      "p & q |- q",      "p, q |- p & q",           "bot |- p",
        "p, p -> q |- q",  "|- p & q -> q",   "p |- p | q",              "q |- p | q",
        "p -> r, q -> r, p | q |- r",         "p, p & q -> r |- q -> r",
    };
    std::vector<Consequence> out;
    for (const char* t : texts) {
      out.push_back(parse_consequence(t));
      if (!prove_ipc(out.back()).provable) throw Error(std::string("probe consequence is not IPC-valid: ") + t);
    }
    return out;
  }();
  return probes;
}

// ---------------------------------------------------------------------------
// Consistency

enum class Mode { SetFmla, FmlaFmla };

inline const char* to_string(Mode m) { return m == Mode::SetFmla ? "set-fmla" : "fmla-fmla"; }

struct ConsistencyReport {
  bool consistent = true;
  std::optional<Consequence> violated;
  Valuation witness;
  /// Worlds in ⋂premises \ conclusion.
  PointSet worlds;
  std::uint64_t valuations_checked = 0;
  /// Multi-premise consequences ignored in FMLA-FMLA mode.
  int skipped = 0;
};

namespace detail {

inline Valuation make_valuation(const Interpretation& I, const std::vector<std::string>& atoms, const std::vector<int>& t) {
  Valuation v;
  for (std::size_t i = 0; i < atoms.size(); ++i) v[atoms[i]] = I.valuation_range[t[i]];
  return v;
}

/// Calls f(t, worlds) for each valuation violating c, in canonical order;
/// stops when f returns false.
template <class F>
void scan_violations(const Interpretation& I, const CompiledConsequence& c, std::uint64_t& checked, std::uint64_t budget, F f) {
  const PointSet X = I.universe();
  const IndexSemantics sem{&I};
  std::vector<int> mapped(c.atoms.size());
  const std::uint64_t count = checked_power(I.valuation_range.size(), c.atoms.size(), budget, "consistency check");
  if (checked + count > budget) throw BudgetExceeded("consistency check: more than " + std::to_string(budget) + " valuations");
  for_each_tuple(static_cast<int>(c.atoms.size()), static_cast<int>(I.valuation_range.size()), [&](const std::vector<int>& t) {
    ++checked;
    for (std::size_t i = 0; i < t.size(); ++i) mapped[i] = I.atom_map[t[i]];
    PointSet meet = X;
    for (const auto& p : c.premises) meet = meet & I.domain[run<int>(p, sem, mapped.data())];
    PointSet concl = I.domain[run<int>(c.conclusion, sem, mapped.data())];
    if (meet.subset_of(concl)) return true;
    return f(t, meet - concl);
  });
}

}  // namespace detail

/// SET-FMLA: ⋂[[premises]] ⊆ [[conclusion]] (empty ⋂ = X) for every
/// valuation over each consequence's atoms. FMLA-FMLA: only single-premise
/// consequences are checked. The first violation in canonical order is
/// reported.
inline ConsistencyReport check_consistency(const Interpretation& I, const std::vector<Consequence>& consequences,
                                           Mode mode = Mode::SetFmla, const Budget& budget = Budget::from_env()) {
  ConsistencyReport r;
  for (const auto& c : consequences) {
    if (mode == Mode::FmlaFmla && c.premises().size() != 1) {
      ++r.skipped;
      continue;
    }
    auto cc = detail::compile_consequence(c);
    detail::scan_violations(I, cc, r.valuations_checked, budget.valuations, [&](const std::vector<int>& t, PointSet worlds) {
      r.consistent = false;
      r.violated = c;
      r.witness = detail::make_valuation(I, cc.atoms, t);
      r.worlds = worlds;
      return false;
    });
    if (!r.consistent) break;
  }
  return r;
}

/// Every violating valuation of one consequence, in canonical order.
inline std::vector<Valuation> consistency_violations(const Interpretation& I, const Consequence& c,
                                                     const Budget& budget = Budget::from_env()) {
  std::vector<Valuation> out;
  auto cc = detail::compile_consequence(c);
  std::uint64_t checked = 0;
  detail::scan_violations(I, cc, checked, budget.valuations, [&](const std::vector<int>& t, PointSet) {
    out.push_back(detail::make_valuation(I, cc.atoms, t));
    return true;
  });
  return out;
}

struct ValidityReport {
  bool valid = true;
  std::optional<Formula> failing;
  Valuation witness;
  std::uint64_t valuations_checked = 0;
};

/// [[φ]] = X for every valuation, for each formula.
inline ValidityReport check_theorem_validity(const Interpretation& I, const std::vector<Formula>& formulas,
                                             const Budget& budget = Budget::from_env()) {
  ValidityReport r;
  for (const auto& f : formulas) {
    auto cc = detail::compile_consequence(Consequence({}, f));
    detail::scan_violations(I, cc, r.valuations_checked, budget.valuations, [&](const std::vector<int>& t, PointSet) {
      r.valid = false;
      r.failing = f;
      r.witness = detail::make_valuation(I, cc.atoms, t);
      return false;
    });
    if (!r.valid) break;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Categoricity: derivation engine

struct OpenEntry {
  std::string entry;
  std::vector<PointSet> candidates;
  /// Intersection and union of the candidates.
  PointSet lower, upper;
};

struct ForcedTables {
  /// Every entry narrowed to a single value.
  bool complete = false;
  /// Some entry lost every candidate, or a fully determined instance failed.
  bool contradiction = false;
  std::optional<Interpretation> forced;
  bool equals_standard = false;
  std::vector<OpenEntry> open;
  int passes = 0;
};

/// Narrows the connective tables of a nuclear interpretation on NF using
/// only consistency with the probe consequences. Every entry starts with all
/// fixpoints as candidates; an instance (probe, valuation) whose evaluation
/// depends on exactly one undetermined entry removes the candidates that
/// would violate it. Passes repeat until nothing changes.
inline ForcedTables derive_forced_tables(const NuclearFrame& NF, const Budget& budget = Budget::from_env()) {
  const Interpretation standard = standard_interpretation(NF);
  const int m = standard.size();
  if (m > 64) throw BudgetExceeded("derive_forced_tables: more than 64 fixpoints");
  const TableLayout layout{m};
  const ConstraintSet cs(standard, probe_consequences(), budget.valuations);
  const PointSet X = standard.universe();
  const std::uint64_t all = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;

  std::vector<std::uint64_t> cand(layout.entries(), all);
  std::vector<int> value(layout.entries(), m == 1 ? 0 : -1);
  ForcedTables out;

  bool changed = true;
  while (changed && !out.contradiction) {
    changed = false;
    ++out.passes;
    for (const auto& c : cs.constraints) {
      const auto& cc = cs.consequences[c.consequence];
      detail::PartialEval ev{&layout, value.data()};
      auto r = detail::check_constraint(cc, c.atoms.data(), standard.domain, X, ev);
      if (r == detail::Outcome::Violated) {
        out.contradiction = true;
        break;
      }
      if (r == detail::Outcome::Holds || ev.several_missing || ev.blocked) continue;
      const int e = ev.missing;
      for (int v = 0; v < m; ++v) {
        if (!((cand[e] >> v) & 1)) continue;
        value[e] = v;
        detail::PartialEval trial{&layout, value.data()};
        if (detail::check_constraint(cc, c.atoms.data(), standard.domain, X, trial) == detail::Outcome::Violated)
          cand[e] &= ~(std::uint64_t{1} << v);
      }
      value[e] = -1;
      if (cand[e] == 0) {
        out.contradiction = true;
        break;
      }
      if (std::popcount(cand[e]) == 1) {
        value[e] = std::countr_zero(cand[e]);
        changed = true;
      }
    }
  }

  auto print = [&](int i) { return format_set(standard.domain[i], standard.point_names); };
  for (int e = 0; e < layout.entries(); ++e) {
    if (std::popcount(cand[e]) == 1) continue;
    OpenEntry o{layout.describe(e, print), {}, X, {}};
    for (int v = 0; v < m; ++v)
      if ((cand[e] >> v) & 1) {
        o.candidates.push_back(standard.domain[v]);
        o.lower = o.lower & standard.domain[v];
        o.upper = o.upper | standard.domain[v];
      }
    if (o.candidates.empty()) o.lower = {};
    out.open.push_back(std::move(o));
  }
  out.complete = out.open.empty() && !out.contradiction;
  if (out.complete) {
    Interpretation forced = layout.with_entries(standard, value);
    forced.name = "forced/" + NF.name();
    out.equals_standard = forced.same_connectives(standard);
    out.forced = std::move(forced);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Categoricity: exhaustive search

struct ExhaustiveReport {
  /// "joint" (all tables searched together) or "per-entry" (one entry free,
  /// the rest held at their standard values).
  std::string mode;
  /// Joint: surviving interpretations. Per-entry: product of the per-entry
  /// survivor counts.
  std::uint64_t survivors = 0;
  bool equals_standard = false;
  std::uint64_t nodes = 0;
  /// Entries admitting more than one value (per-entry mode) or whose only
  /// survivor is non-standard.
  std::vector<std::string> deviations;
  bool unique() const { return survivors == 1; }
};

inline constexpr int joint_search_limit = 3;

/// Enumerates candidate connective tables against the probe set with early
/// pruning: jointly when there are at most three fixpoints, else entry by
/// entry with the other entries held standard.
inline ExhaustiveReport exhaustive_categoricity(const NuclearFrame& NF, const Budget& budget = Budget::from_env()) {
  const Interpretation standard = standard_interpretation(NF);
  const int m = standard.size();
  const TableLayout layout{m};
  const ConstraintSet cs(standard, probe_consequences(), budget.valuations);
  const auto reference = layout.entries_of(standard);
  auto print = [&](int i) { return format_set(standard.domain[i], standard.point_names); };
  ExhaustiveReport out;
  if (m <= joint_search_limit) {
    out.mode = "joint";
    auto r = search_tables(standard, cs, std::vector<int>(layout.entries(), -1), budget.nodes, 2);
    out.survivors = r.survivors;
    out.nodes = r.nodes;
    out.equals_standard = r.survivors == 1 && r.stored.front() == reference;
    if (r.survivors == 1 && !out.equals_standard)
      for (int e = 0; e < layout.entries(); ++e)
        if (r.stored.front()[e] != reference[e]) out.deviations.push_back(layout.describe(e, print));
    return out;
  }
  out.mode = "per-entry";
  out.survivors = 1;
  out.equals_standard = true;
  for (int e = 0; e < layout.entries(); ++e) {
    auto fixed = reference;
    fixed[e] = -1;
    auto r = search_tables(standard, cs, fixed, budget.nodes, 2);
    out.nodes += r.nodes;
    out.survivors = r.survivors == 0 ? 0 : (out.survivors > UINT64_MAX / r.survivors ? UINT64_MAX : out.survivors * r.survivors);
    if (r.survivors != 1 || r.stored.front()[e] != reference[e]) {
      out.equals_standard = false;
      out.deviations.push_back(layout.describe(e, print));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// The double-negation interpretation on a space

/// int(cl(U))
inline PointSet regularise(const FiniteTopology& T, PointSet u) { return interior(T, closure(T, u)); }

/// ¬U = int(X − int(cl(U)))
inline PointSet holliday_negation(const FiniteTopology& T, PointSet u) {
  return interior(T, T.universe() - regularise(T, u));
}

/// ∧ ↦ int(cl U) ∩ int(cl V), ¬ as above, U → V := ¬(U ∧ ¬V),
/// U ∨ V := ¬(¬U ∧ ¬V), ⊥ ↦ ∅; atoms are opens, mapped identically.
inline Interpretation holliday_interpretation(const FiniteTopology& T) {
  Interpretation I;
  I.name = "holliday";
  I.point_names = T.names();
  I.domain = T.opens();
  I.valuation_range = T.opens();
  I.bottom = T.index_of({});
  auto meet = [&](PointSet u, PointSet v) { return regularise(T, u) & regularise(T, v); };
  auto neg = [&](PointSet u) { return holliday_negation(T, u); };
  I.conj = detail::tabulate(I.domain, meet, T.names(), "∧");
  I.imp = detail::tabulate(I.domain, [&](PointSet u, PointSet v) { return neg(meet(u, neg(v))); }, T.names(), "→");
  I.disj = detail::tabulate(I.domain, [&](PointSet u, PointSet v) { return neg(meet(neg(u), neg(v))); }, T.names(), "∨");
  for (int i = 0; i < I.size(); ++i) I.atom_map.push_back(i);
  return I;
}

/// The first open U where U → ∅ differs from ¬U, if any.
inline std::optional<PointSet> holliday_negation_divergence(const FiniteTopology& T) {
  const auto I = holliday_interpretation(T);
  for (int u = 0; u < I.size(); ++u)
    if (I.domain[I.imp[u * I.size() + I.bottom]] != holliday_negation(T, I.domain[u])) return I.domain[u];
  return std::nullopt;
}

/// Opens U, V with I(∧)(U,V) ≠ U ∩ V, first in canonical order.
inline std::optional<std::pair<PointSet, PointSet>> holliday_nonstandard_witness(const FiniteTopology& T) {
  const auto I = holliday_interpretation(T);
  for (int a = 0; a < I.size(); ++a)
    for (int b = 0; b < I.size(); ++b)
      if (I.domain[I.conj[a * I.size() + b]] != (I.domain[a] & I.domain[b])) return std::pair{I.domain[a], I.domain[b]};
  return std::nullopt;
}

struct TranslationCheck {
  bool equal = true;
  /// [[φ]] under the double-negation interpretation and [[g(φ)]] under the
  /// standard topological one.
  PointSet holliday, standard;
};

inline TranslationCheck check_translation_identity(const FiniteTopology& T, const Formula& f, const Valuation& v) {
  TranslationCheck r;
  r.holliday = evaluate(holliday_interpretation(T), v, f);
  r.standard = evaluate(standard_topological_interpretation(T), v, translate_g(f));
  r.equal = r.holliday == r.standard;
  return r;
}

struct TranslationSweep {
  bool ok = true;
  std::optional<Formula> failing;
  Valuation witness;
  std::uint64_t checked = 0;
};

/// check_translation_identity for every formula and every valuation over
/// its atoms.
inline TranslationSweep check_translation_identity_all(const FiniteTopology& T, const std::vector<Formula>& formulas,
                                                       const Budget& budget = Budget::from_env()) {
  const auto H = holliday_interpretation(T);
  const auto S = standard_topological_interpretation(T);
  TranslationSweep r;
  for (const auto& f : formulas) {
    auto set = f.atoms();
    std::vector<std::string> atoms(set.begin(), set.end());
    Program ph = compile(f, atoms), ps = compile(translate_g(f), atoms);
    r.checked += detail::checked_power(H.valuation_range.size(), atoms.size(), budget.valuations, "translation check");
    detail::for_each_tuple(static_cast<int>(atoms.size()), H.size(), [&](const std::vector<int>& t) {
      if (run<int>(ph, IndexSemantics{&H}, t.data()) == run<int>(ps, IndexSemantics{&S}, t.data())) return true;
      r.ok = false;
      r.failing = f;
      r.witness = detail::make_valuation(H, atoms, t);
      return false;
    });
    if (!r.ok) break;
  }
  return r;
}

struct ConjugationSweep {
  bool ok = true;
  std::optional<Formula> failing;
  Valuation witness;
};

/// [[φ]] in the standard nuclear interpretation on the Dragalin frame equals
/// h([[φ]] in the standard topological interpretation) under
/// v*(p) = h⁻¹(j(v(p))), for every valuation v into the frame's upsets.
inline ConjugationSweep check_conjugated_evaluation(const DragalinRealization& R, const std::vector<Formula>& formulas,
                                                    const Budget& budget = Budget::from_env()) {
  ConjugationSweep r;
  if (!R.frame) return ConjugationSweep{false, std::nullopt, {}};
  const auto N = standard_interpretation(*R.frame);
  const auto S = standard_topological_interpretation(R.space);
  const auto& L = R.frame->lattice();
  for (const auto& f : formulas) {
    auto set = f.atoms();
    std::vector<std::string> atoms(set.begin(), set.end());
    Program p = compile(f, atoms);
    detail::checked_power(L.size(), atoms.size(), budget.valuations, "conjugation check");
    std::vector<int> star(atoms.size());
    detail::for_each_tuple(static_cast<int>(atoms.size()), L.size(), [&](const std::vector<int>& t) {
      for (std::size_t i = 0; i < t.size(); ++i) star[i] = R.h_inverse(L[R.frame->apply(t[i])]);
      PointSet lhs = N.domain[run<int>(p, IndexSemantics{&N}, t.data())];
      PointSet rhs = R.h[run<int>(p, IndexSemantics{&S}, star.data())];
      if (lhs == rhs) return true;
      r.ok = false;
      r.failing = f;
      r.witness = detail::make_valuation(N, atoms, t);
      return false;
    });
    if (!r.ok) break;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Exploratory searches

struct AtomMapEntry {
  /// Image of each upset, by lattice index.
  std::vector<int> map;
  bool inflationary = false, idempotent = false, multiplicative = false, monotone = false;
  bool nucleus() const { return inflationary && idempotent && multiplicative; }
  /// Surviving connective tables (joint search); empty when the search ran
  /// out of budget.
  std::optional<std::uint64_t> survivors;
  /// Whether the Kripke tables (∅, ∩, ∪, Heyting arrow) survive with this
  /// atom map.
  bool standard_survives = false;
};

struct AtomMapReport {
  int lattice_size = 0;
  std::vector<AtomMapEntry> maps;
  int surviving_nuclei = 0, surviving_non_nuclei = 0, undecided = 0;
};

/// For every atom map Up(F) → Up(F), searches the connective tables over all
/// upsets that are SET-FMLA consistent with the probes, and classifies the
/// maps that admit a survivor by the nucleus axioms. No expected outcome is
/// encoded.
inline AtomMapReport search_atom_maps(const Poset& P, const std::vector<Consequence>& probes,
                                      const Budget& budget = Budget::from_env(), std::uint64_t per_map_nodes = 200'000) {
  const auto kripke = kripke_nucleus(P, budget.poset);
  const auto& L = kripke.lattice();
  const int m = L.size();
  if (m > 5) throw BudgetExceeded("search_atom_maps: more than 5 upsets");
  Interpretation base = standard_interpretation(kripke);
  base.name = "general";
  const TableLayout layout{m};
  AtomMapReport out;
  out.lattice_size = m;
  detail::for_each_tuple(m, m, [&](const std::vector<int>& f) {
    AtomMapEntry e;
    e.map = f;
    e.inflationary = e.idempotent = e.multiplicative = e.monotone = true;
    for (int a = 0; a < m; ++a) {
      e.inflationary = e.inflationary && L[a].subset_of(L[f[a]]);
      e.idempotent = e.idempotent && f[f[a]] == f[a];
      for (int b = 0; b < m; ++b) {
        e.multiplicative = e.multiplicative && f[L.index_of(L[a] & L[b])] == L.index_of(L[f[a]] & L[f[b]]);
        e.monotone = e.monotone && (!L[a].subset_of(L[b]) || L[f[a]].subset_of(L[f[b]]));
      }
    }
    Interpretation I = base;
    I.atom_map = f;
    e.standard_survives = check_consistency(I, probes, Mode::SetFmla, budget).consistent;
    ConstraintSet cs(I, probes, budget.valuations);
    try {
      e.survivors = search_tables(I, cs, std::vector<int>(layout.entries(), -1), std::min(per_map_nodes, budget.nodes), 1).survivors;
    } catch (const BudgetExceeded&) {
      ++out.undecided;
    }
    if (e.survivors && *e.survivors > 0) (e.nucleus() ? out.surviving_nuclei : out.surviving_non_nuclei)++;
    out.maps.push_back(std::move(e));
    return true;
  });
  return out;
}

/// Valid single-premise consequences ψ ⊢ φ of the ∧-fragment: formulas over
/// `atoms` atoms of depth at most 2.
inline std::vector<Consequence> conjunction_probes(int atoms = 3) {
  std::vector<Formula> fs;
  for (const auto& a : first_atoms(atoms)) fs.push_back(Formula::atom(a));
  const std::size_t base = fs.size();
  for (std::size_t i = 0; i < base; ++i)
    for (std::size_t j = 0; j < base; ++j) fs.push_back(Formula::conj(fs[i], fs[j]));
  std::vector<Consequence> out;
  for (const auto& psi : fs)
    for (const auto& phi : fs) {
      Consequence c({psi}, phi);
      if (prove_ipc(c).provable) out.push_back(std::move(c));
    }
  return out;
}

struct FmlaFmlaReport {
  std::vector<PointSet> family;
  bool intersection_closed = false;
  std::uint64_t survivors = 0;
  /// The first surviving ∧-tables, row-major over the family.
  std::vector<std::vector<int>> tables;
  bool intersection_survives = false;
  bool non_intersection_survives = false;
  /// If the family is ∩-closed, ∩ is the only survivor.
  bool closure_claim_holds = false;
};

/// Enumerates ∧-tables on the family C ⊆ P(X), |X| ≤ 3, that are FMLA-FMLA
/// consistent with the valid single-premise ∧-fragment consequences.
inline FmlaFmlaReport fmla_fmla_search(int points, std::vector<PointSet> family, const Budget& budget = Budget::from_env()) {
  if (points < 1 || points > 3) throw ValidationError("fmla_fmla_search: the point set must have 1 to 3 elements");
  std::sort(family.begin(), family.end(), canonical_less);
  family.erase(std::unique(family.begin(), family.end()), family.end());
  if (family.empty()) throw ValidationError("fmla_fmla_search: empty family");
  for (auto s : family)
    if (!s.subset_of(PointSet::full(points))) throw ValidationError("family member outside the point set");
  FmlaFmlaReport out;
  out.family = family;
  const int m = static_cast<int>(family.size());
  auto index = [&](PointSet s) {
    auto it = std::find(family.begin(), family.end(), s);
    return it == family.end() ? -1 : static_cast<int>(it - family.begin());
  };
  out.intersection_closed = true;
  for (auto a : family)
    for (auto b : family) out.intersection_closed = out.intersection_closed && index(a & b) >= 0;

  Interpretation I;
  I.name = "fmla-fmla";
  I.point_names = Poset::default_names(points);
  I.domain = family;
  I.valuation_range = family;
  I.bottom = 0;
  I.conj.assign(m * m, 0);
  I.disj.assign(m * m, 0);
  I.imp.assign(m * m, 0);
  for (int i = 0; i < m; ++i) I.atom_map.push_back(i);
  const TableLayout layout{m};
  std::vector<int> fixed(layout.entries(), 0);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) fixed[layout.conj(a, b)] = -1;
  const ConstraintSet cs(I, conjunction_probes(), budget.valuations);
  auto r = search_tables(I, cs, fixed, budget.nodes, 64);
  out.survivors = r.survivors;
  std::vector<int> meet_table;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) meet_table.push_back(index(family[a] & family[b]));
  for (const auto& s : r.stored) {
    std::vector<int> t(s.begin() + 1, s.begin() + 1 + m * m);
    if (t == meet_table) out.intersection_survives = true;
    else out.non_intersection_survives = true;
    out.tables.push_back(std::move(t));
  }
  if (r.survivors > r.stored.size()) out.non_intersection_survives = true;
  out.closure_claim_holds = !out.intersection_closed || (out.intersection_survives && !out.non_intersection_survives);
  return out;
}

}  // namespace carnap
