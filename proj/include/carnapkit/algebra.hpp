#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "carnapkit/budget.hpp"
#include "carnapkit/error.hpp"
#include "carnapkit/formula.hpp"
#include "carnapkit/heyting.hpp"
#include "carnapkit/interp.hpp"
#include "carnapkit/program.hpp"

namespace carnap {

/// Atom name to algebra element.
using AlgebraValuation = std::map<std::string, int>;

inline std::string format_valuation(const FiniteAlgebra& A, const AlgebraValuation& v) {
  std::string out;
  for (const auto& [atom, value] : v) {
    if (!out.empty()) out += ", ";
    out += "v(" + atom + ")=" + A.name(value);
  }
  return out;
}

struct AlgebraSemantics {
  const FiniteAlgebra* A;
  int bottom() const { return A->zero(); }
  int atom(int v) const { return v; }
  int conj(int a, int b) const { return A->meet(a, b); }
  int disj(int a, int b) const { return A->join(a, b); }
  int imp(int a, int b) const { return A->arrow(a, b); }
};

inline int evaluate(const FiniteAlgebra& A, const AlgebraValuation& v, const Formula& f) {
  std::vector<std::string> atoms;
  std::vector<int> values;
  for (const auto& [a, x] : v) {
    if (x < 0 || x >= A.size()) throw ValidationError("v(" + a + ") is outside the carrier");
    atoms.push_back(a);
    values.push_back(x);
  }
  return run<int>(compile(f, atoms), AlgebraSemantics{&A}, values.data());
}

// ---------------------------------------------------------------------------
// Algebraic interpretations

struct OrderVerdict {
  bool ok = true;
  /// "reflexivity", "antisymmetry", "transitivity" or "top".
  std::string property;
  std::vector<int> witness;

  std::string describe(const FiniteAlgebra& A) const {
    if (ok) return "ok";
    std::string out = "failed " + property + " at";
    for (std::size_t i = 0; i < witness.size(); ++i) out += (i ? ", " : " ") + A.name(witness[i]);
    return out;
  }
};

/// The derived relation a ≤ b iff a∧b = a must be a partial order with 1 as
/// its largest element. Only a∧a = a follows for the meet; nothing else about
/// lattice structure is assumed.
inline OrderVerdict check_algebraic_interpretation(const FiniteAlgebra& A) {
  const int n = A.size();
  for (int a = 0; a < n; ++a)
    if (!A.leq(a, a)) return {false, "reflexivity", {a}};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && A.leq(a, b) && A.leq(b, a)) return {false, "antisymmetry", {a, b}};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (A.leq(a, b) && A.leq(b, c) && !A.leq(a, c)) return {false, "transitivity", {a, b, c}};
  for (int a = 0; a < n; ++a)
    if (!A.leq(a, A.one())) return {false, "top", {a}};
  return {};
}

/// A FiniteAlgebra that passed check_algebraic_interpretation.
class AlgebraicInterpretation {
 public:
  explicit AlgebraicInterpretation(FiniteAlgebra A) : algebra_(std::move(A)) {
    auto v = check_algebraic_interpretation(algebra_);
    if (!v.ok) throw ValidationError("not an algebraic interpretation: " + v.describe(algebra_));
  }
  const FiniteAlgebra& algebra() const { return algebra_; }
  bool leq(int a, int b) const { return algebra_.leq(a, b); }

 private:
  FiniteAlgebra algebra_;
};

struct AlgebraViolation {
  Consequence consequence;
  AlgebraValuation valuation;
  int c;
};

struct AlgebraConsistencyReport {
  bool consistent = true;
  std::optional<AlgebraViolation> violation;
  std::uint64_t checked = 0;
};

namespace detail {

/// Calls f(t, c) for every (valuation, c) violating the consequence: c is
/// below every premise but not below the conclusion. Order: valuations
/// lexicographic (alphabetically first atom most significant), then c.
template <class F>
void scan_algebra_violations(const FiniteAlgebra& A, const CompiledConsequence& cc, std::uint64_t& checked, std::uint64_t budget,
                             F f) {
  const int n = A.size();
  const std::uint64_t count = checked_power(n, cc.atoms.size(), budget, "algebra consistency");
  if (checked + count * n > budget) throw BudgetExceeded("algebra consistency: more than " + std::to_string(budget) + " checks");
  const AlgebraSemantics sem{&A};
  std::vector<int> prem(cc.premises.size());
  for_each_tuple(static_cast<int>(cc.atoms.size()), n, [&](const std::vector<int>& t) {
    checked += n;
    for (std::size_t i = 0; i < cc.premises.size(); ++i) prem[i] = run<int>(cc.premises[i], sem, t.data());
    const int concl = run<int>(cc.conclusion, sem, t.data());
    for (int c = 0; c < n; ++c) {
      bool below = true;
      for (int p : prem) below = below && A.leq(c, p);
      if (below && !A.leq(c, concl) && !f(t, c)) return false;
    }
    return true;
  });
}

inline AlgebraValuation make_algebra_valuation(const std::vector<std::string>& atoms, const std::vector<int>& t) {
  AlgebraValuation v;
  for (std::size_t i = 0; i < atoms.size(); ++i) v[atoms[i]] = t[i];
  return v;
}

}  // namespace detail

/// For every valuation and every c: if c ≤ [[ψ_i]] for all premises then
/// c ≤ [[φ]]. With no premises this says [[φ]] = 1.
inline AlgebraConsistencyReport check_algebra_consistency(const FiniteAlgebra& A, const std::vector<Consequence>& consequences,
                                                          const Budget& budget = Budget::from_env()) {
  AlgebraConsistencyReport r;
  for (const auto& c : consequences) {
    auto cc = detail::compile_consequence(c);
    detail::scan_algebra_violations(A, cc, r.checked, budget.valuations, [&](const std::vector<int>& t, int x) {
      r.consistent = false;
      r.violation = AlgebraViolation{c, detail::make_algebra_valuation(cc.atoms, t), x};
      return false;
    });
    if (!r.consistent) break;
  }
  return r;
}

inline AlgebraConsistencyReport check_algebra_consistency(const AlgebraicInterpretation& A, const std::vector<Consequence>& cs,
                                                          const Budget& budget = Budget::from_env()) {
  return check_algebra_consistency(A.algebra(), cs, budget);
}

/// Every violating (valuation, c) of one consequence, in canonical order.
inline std::vector<AlgebraViolation> algebra_consistency_violations(const FiniteAlgebra& A, const Consequence& c,
                                                                    const Budget& budget = Budget::from_env()) {
  std::vector<AlgebraViolation> out;
  auto cc = detail::compile_consequence(c);
  std::uint64_t checked = 0;
  detail::scan_algebra_violations(A, cc, checked, budget.valuations, [&](const std::vector<int>& t, int x) {
    out.push_back(AlgebraViolation{c, detail::make_algebra_valuation(cc.atoms, t), x});
    return true;
  });
  return out;
}

struct AlgebraValidityReport {
  bool valid = true;
  std::optional<Formula> failing;
  AlgebraValuation witness;
};

/// [[φ]] = 1 for every valuation, for each formula.
inline AlgebraValidityReport validate_theorems_algebra(const FiniteAlgebra& A, const std::vector<Formula>& corpus,
                                                       const Budget& budget = Budget::from_env()) {
  AlgebraValidityReport r;
  std::uint64_t checked = 0;
  const AlgebraSemantics sem{&A};
  for (const auto& f : corpus) {
    auto set = f.atoms();
    std::vector<std::string> atoms(set.begin(), set.end());
    Program p = compile(f, atoms);
    checked += detail::checked_power(A.size(), atoms.size(), budget.valuations, "theorem validity");
    if (checked > budget.valuations) throw BudgetExceeded("theorem validity: valuation budget exhausted");
    detail::for_each_tuple(static_cast<int>(atoms.size()), A.size(), [&](const std::vector<int>& t) {
      if (run<int>(p, sem, t.data()) == A.one()) return true;
      r.valid = false;
      r.failing = f;
      r.witness = detail::make_algebra_valuation(atoms, t);
      return false;
    });
    if (!r.valid) break;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Equations and the consequences that enforce them

/// A defining equation s = t with the consequences s ⊢ t and t ⊢ s (a
/// single ⊢ s when t is 1; none when the equation holds in every algebraic
/// interpretation).
struct EquationWitness {
  std::string equation;
  std::vector<Consequence> consequences;
};

inline const std::vector<EquationWitness>& heyting_equation_table() {
  static const std::vector<EquationWitness> table = [] {
    auto pair = [](const char* s, const char* t) {
      return std::vector<Consequence>{parse_consequence(std::string(s) + " |- " + t), parse_consequence(std::string(t) + " |- " + s)};
    };
    std::vector<EquationWitness> out = {
        {"a∧b=b∧a", pair("p & q", "q & p")},
        {"a∨b=b∨a", pair("p | q", "q | p")},
        {"a∧(b∧c)=(a∧b)∧c", pair("p & (q & r)", "(p & q) & r")},
        {"a∨(b∨c)=(a∨b)∨c", pair("p | (q | r)", "(p | q) | r")},
        {"a∧(a∨b)=a", pair("p & (p | q)", "p")},
        {"a∨(a∧b)=a", pair("p | p & q", "p")},
        {"a∧a=a", pair("p & p", "p")},
        {"a∨a=a", pair("p | p", "p")},
        {"0∧a=0", pair("bot & p", "bot")},
        {"a∧1=a", {}},
        {"a→a=1", {parse_consequence("|- p -> p")}},
        {"a∧(a→b)=a∧b", pair("p & (p -> q)", "p & q")},
        {"(a→b)∧b=b", pair("(p -> q) & q", "q")},
        {"a→(b∧c)=(a→b)∧(a→c)", pair("p -> q & r", "(p -> q) & (p -> r)")},
    };
    const auto& eqs = heyting_equations();
    for (std::size_t i = 0; i < out.size(); ++i)
      if (out[i].equation != eqs[i].name) throw Error("equation table out of step with heyting_equations()");
    for (const auto& row : out)
      for (const auto& c : row.consequences)
        if (!prove_ipc(c).provable) throw Error("equation witness is not IPC-valid: " + to_string(c));
    return out;
  }();
  return table;
}

/// Complement laws, enforced by classical consequences.
inline const std::vector<EquationWitness>& boolean_equation_table() {
  static const std::vector<EquationWitness> table = [] {
    std::vector<EquationWitness> out = {
        {"a∧a′=0", {parse_consequence("p & ~p |- bot"), parse_consequence("bot |- p & ~p")}},
        {"a∨a′=1", {parse_consequence("|- p | ~p")}},
    };
    for (const auto& row : out)
      for (const auto& c : row.consequences)
        if (!prove_cpc(c).provable) throw Error("equation witness is not CPC-valid: " + to_string(c));
    return out;
  }();
  return table;
}

/// Every consequence of the equation table, in table order.
inline std::vector<Consequence> equation_consequences(const std::vector<EquationWitness>& table) {
  std::vector<Consequence> out;
  for (const auto& row : table)
    for (const auto& c : row.consequences) out.push_back(c);
  return out;
}

struct EquationRow {
  std::string equation;
  bool holds = true;
  /// Some witnessing consequence is violated.
  bool enforced = false;
  std::optional<AlgebraViolation> violation;
};

struct ForcingReport {
  std::vector<EquationRow> rows;
  /// Consistency with the probes plus every table consequence.
  AlgebraConsistencyReport consistency;
  EquationVerdict verdict;
  /// Every failing equation has a violated witness, and consistency implies
  /// the equations.
  bool pipeline_ok = true;
};

namespace detail {

inline ForcingReport forcing_check(const FiniteAlgebra& A, const std::vector<Equation>& eqs, const std::vector<EquationWitness>& table,
                                   std::vector<Consequence> full, EquationVerdict verdict, const Budget& budget) {
  ForcingReport r;
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    EquationRow row;
    row.equation = eqs[i].name;
    row.holds = !first_violation(A, eqs[i]).has_value();
    auto c = check_algebra_consistency(A, table[i].consequences, budget);
    row.enforced = !c.consistent;
    row.violation = c.violation;
    if (!row.holds && !row.enforced) r.pipeline_ok = false;
    r.rows.push_back(std::move(row));
  }
  auto extra = equation_consequences(table);
  full.insert(full.end(), extra.begin(), extra.end());
  r.consistency = check_algebra_consistency(A, full, budget);
  r.verdict = std::move(verdict);
  if (r.consistency.consistent && !r.verdict.ok) r.pipeline_ok = false;
  return r;
}

}  // namespace detail

/// For each Heyting equation: does it hold, and is one of its witnessing
/// IPC consequences violated? A failing equation must be matched by a
/// violation, and consistency with the full probe set must imply Heyting.
inline ForcingReport heyting_forcing_check(const FiniteAlgebra& A, const Budget& budget = Budget::from_env()) {
  return detail::forcing_check(A, heyting_equations(), heyting_equation_table(), probe_consequences(), check_heyting(A), budget);
}

/// As heyting_forcing_check, extended with the complement laws and the
/// classical probe ⊢ p ∨ ~p.
inline ForcingReport boolean_forcing_check(const FiniteAlgebra& A, const Budget& budget = Budget::from_env()) {
  std::vector<Equation> eqs = heyting_equations();
  for (const auto& e : boolean_equations()) eqs.push_back(e);
  std::vector<EquationWitness> table = heyting_equation_table();
  for (const auto& w : boolean_equation_table()) table.push_back(w);
  auto full = probe_consequences();
  full.push_back(parse_consequence("|- p | (p -> bot)"));
  return detail::forcing_check(A, eqs, table, full, check_boolean(A), budget);
}

// ---------------------------------------------------------------------------
// Dummett algebras

/// j on a Heyting algebra: a ≤ ja, jja = ja, j(a∧b) = ja∧jb.
inline OrderVerdict validate_algebra_nucleus(const FiniteAlgebra& H, const std::vector<int>& j) {
  const int n = H.size();
  if (static_cast<int>(j.size()) != n) throw ValidationError("nucleus table is not total on the algebra");
  for (int v : j)
    if (v < 0 || v >= n) throw ValidationError("nucleus table leaves the carrier");
  for (int a = 0; a < n; ++a)
    if (!H.leq(a, j[a])) return {false, "inflationarity", {a}};
  for (int a = 0; a < n; ++a)
    if (j[j[a]] != j[a]) return {false, "idempotence", {a}};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (j[H.meet(a, b)] != H.meet(j[a], j[b])) return {false, "multiplicativity", {a, b}};
  return {};
}

/// (H, j) with a →ʲ b = a → jb; everything else unchanged.
inline FiniteAlgebra dummett_algebra(const FiniteAlgebra& H, const std::vector<int>& j) {
  auto hv = check_heyting(H);
  if (!hv.ok) throw ValidationError("dummett_algebra needs a Heyting algebra: " + hv.describe(H));
  auto nv = validate_algebra_nucleus(H, j);
  if (!nv.ok) throw ValidationError("not a nucleus on the algebra: " + nv.describe(H));
  const int n = H.size();
  FiniteAlgebra::Table arrow(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) arrow[a * n + b] = H.arrow(a, j[b]);
  return H.with_arrow(std::move(arrow));
}

// ---------------------------------------------------------------------------
// Enumeration

/// Finite Heyting algebras of each size up to max_size (≤ 6), one per
/// isomorphism class: bounded lattices from the poset enumeration, kept when
/// residuation succeeds. Elements follow the poset's canonical labelling;
/// the bottom is named 0, the top 1, the rest a, b, c, ...
inline std::vector<FiniteAlgebra> enumerate_heyting_algebras(int max_size) {
  std::vector<FiniteAlgebra> out;
  for (int n = 1; n <= max_size; ++n) {
    for (const Poset& P : enumerate_posets(n, true)) {
      int bottom = -1, top = -1;
      for (int x = 0; x < n; ++x) {
        if (P.up(x) == P.universe()) bottom = x;
        if (P.down(x) == P.universe()) top = x;
      }
      if (bottom < 0 || top < 0) continue;
      FiniteAlgebra::Table meet(n * n), join(n * n);
      bool lattice = true;
      for (int a = 0; a < n && lattice; ++a)
        for (int b = 0; b < n && lattice; ++b) {
          PointSet upper = P.up(a) & P.up(b), lower = P.down(a) & P.down(b);
          int lub = -1, glb = -1;
          for (int c : upper.members())
            if (upper.subset_of(P.up(c))) lub = c;
          for (int c : lower.members())
            if (lower.subset_of(P.down(c))) glb = c;
          if (lub < 0 || glb < 0) lattice = false;
          else {
            meet[a * n + b] = glb;
            join[a * n + b] = lub;
          }
        }
      if (!lattice) continue;
      auto arrow = residuate(n, meet);
      if (!arrow) continue;
      std::vector<std::string> names(n);
      char next = 'a';
      for (int x = 0; x < n; ++x) names[x] = x == bottom ? "0" : x == top ? "1" : std::string(1, next++);
      out.emplace_back(names, bottom, top, meet, join, *arrow);
    }
  }
  return out;
}

/// All nuclei on H, as tables, in lexicographic order.
inline std::vector<std::vector<int>> algebra_nuclei(const FiniteAlgebra& H) {
  std::vector<std::vector<int>> out;
  detail::for_each_tuple(H.size(), H.size(), [&](const std::vector<int>& j) {
    if (validate_algebra_nucleus(H, j).ok) out.push_back(j);
    return true;
  });
  return out;
}

struct DummettInstance {
  FiniteAlgebra heyting;
  std::vector<int> nucleus;
  FiniteAlgebra dummett;
  EquationVerdict verdict;
};

/// Dummett algebras D(H, j) that fail check_heyting, over every enumerated
/// Heyting algebra of size ≤ max_size and every nucleus on it; smallest
/// first.
inline std::vector<DummettInstance> find_non_heyting_dummett_algebras(int max_size) {
  std::vector<DummettInstance> out;
  for (const auto& H : enumerate_heyting_algebras(max_size))
    for (const auto& j : algebra_nuclei(H)) {
      FiniteAlgebra D = dummett_algebra(H, j);
      auto v = check_heyting(D);
      if (!v.ok) out.push_back({H, j, std::move(D), std::move(v)});
    }
  return out;
}

struct AlgebraSweepReport {
  /// Algebraic interpretations enumerated (arrow tables counted
  /// individually).
  std::uint64_t interpretations = 0;
  std::uint64_t non_heyting = 0;
  std::uint64_t enforced = 0;
  /// A non-Heyting interpretation whose first failing equation has no
  /// violated witness, if any.
  std::optional<FiniteAlgebra> counterexample;
};

namespace detail {

inline std::vector<FiniteAlgebra::Table> all_tables(int n) {
  std::vector<FiniteAlgebra::Table> out;
  for_each_tuple(n * n, n, [&](const std::vector<int>& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

}  // namespace detail

/// Every labelled algebraic interpretation with at most max_size (≤ 3)
/// elements. For each one failing a Heyting equation, the first failing
/// equation's witnessing consequences are checked for a violation. When an
/// equation not involving → already fails, the verdict covers every arrow
/// table at once.
inline AlgebraSweepReport sweep_algebraic_interpretations(int max_size, const Budget& budget = Budget::from_env()) {
  if (max_size > 3) throw BudgetExceeded("sweep_algebraic_interpretations: max_size must be at most 3");
  const auto& eqs = heyting_equations();
  const auto& table = heyting_equation_table();
  // Equations 0..9 do not mention →.
  constexpr std::size_t lattice_eqs = 10;
  AlgebraSweepReport r;
  for (int n = 1; n <= max_size; ++n) {
    const auto tables = detail::all_tables(n);
    std::uint64_t arrows = tables.size();
    const FiniteAlgebra::Table dummy(n * n, 0);
    for (int zero = 0; zero < n; ++zero)
      for (int one = 0; one < n; ++one)
        for (const auto& meet : tables) {
          FiniteAlgebra probe(Poset::default_names(n), zero, one, meet, dummy, dummy);
          if (!check_algebraic_interpretation(probe).ok) continue;
          for (const auto& join : tables) {
            FiniteAlgebra base(Poset::default_names(n), zero, one, meet, join, dummy);
            std::size_t failing = eqs.size();
            for (std::size_t e = 0; e < lattice_eqs && failing == eqs.size(); ++e)
              if (first_violation(base, eqs[e])) failing = e;
            if (failing < lattice_eqs) {
              r.interpretations += arrows;
              r.non_heyting += arrows;
              if (!check_algebra_consistency(base, table[failing].consequences, budget).consistent) r.enforced += arrows;
              else if (!r.counterexample) r.counterexample = base;
              continue;
            }
            for (const auto& arrow : tables) {
              FiniteAlgebra A = base.with_arrow(arrow);
              ++r.interpretations;
              auto v = check_heyting(A);
              if (v.ok) continue;
              ++r.non_heyting;
              std::size_t e = 0;
              while (eqs[e].name != v.equation) ++e;
              if (!check_algebra_consistency(A, table[e].consequences, budget).consistent) ++r.enforced;
              else if (!r.counterexample) r.counterexample = A;
            }
          }
        }
  }
  return r;
}

}  // namespace carnap
