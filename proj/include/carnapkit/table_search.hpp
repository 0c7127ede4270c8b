#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "carnapkit/error.hpp"
#include "carnapkit/formula.hpp"
#include "carnapkit/interpretation.hpp"
#include "carnapkit/program.hpp"

namespace carnap {

/// Flat numbering of the connective table entries of an interpretation with
/// m domain values: entry 0 is ⊥, then m² entries each for ∧, ∨ and →.
struct TableLayout {
  int m = 0;

  int entries() const { return 1 + 3 * m * m; }
  static constexpr int bottom = 0;
  int conj(int a, int b) const { return 1 + a * m + b; }
  int disj(int a, int b) const { return 1 + m * m + a * m + b; }
  int imp(int a, int b) const { return 1 + 2 * m * m + a * m + b; }
  int entry(Kind k, int a, int b) const {
    return k == Kind::And ? conj(a, b) : k == Kind::Or ? disj(a, b) : imp(a, b);
  }

  /// "bot", "&(a,b)", "|(a,b)" or "->(a,b)" with domain indices decoded by
  /// the given printer.
  template <class Print>
  std::string describe(int e, Print print) const {
    if (e == bottom) return "bot";
    int k = (e - 1) / (m * m), r = (e - 1) % (m * m);
    static const char* syms[] = {"&", "|", "->"};
    return std::string(syms[k]) + "(" + print(r / m) + ", " + print(r % m) + ")";
  }

  std::vector<int> entries_of(const Interpretation& I) const {
    std::vector<int> out(entries());
    out[bottom] = I.bottom;
    for (int i = 0; i < m * m; ++i) {
      out[1 + i] = I.conj[i];
      out[1 + m * m + i] = I.disj[i];
      out[1 + 2 * m * m + i] = I.imp[i];
    }
    return out;
  }

  /// Copies `base` with its tables replaced; unassigned entries (-1) are
  /// kept from the base.
  Interpretation with_entries(const Interpretation& base, const std::vector<int>& e) const {
    Interpretation I = base;
    if (e[bottom] >= 0) I.bottom = e[bottom];
    for (int i = 0; i < m * m; ++i) {
      if (e[1 + i] >= 0) I.conj[i] = e[1 + i];
      if (e[1 + m * m + i] >= 0) I.disj[i] = e[1 + m * m + i];
      if (e[1 + 2 * m * m + i] >= 0) I.imp[i] = e[1 + 2 * m * m + i];
    }
    return I;
  }
};

namespace detail {

/// One (consequence, valuation) instance with atoms already mapped into the
/// domain.
struct Constraint {
  int consequence;
  std::vector<int> atoms;
};

struct CompiledConsequence {
  std::vector<Program> premises;
  Program conclusion;
  std::vector<std::string> atoms;
};

inline CompiledConsequence compile_consequence(const Consequence& c) {
  CompiledConsequence out;
  auto set = c.atoms();
  out.atoms.assign(set.begin(), set.end());
  for (const auto& p : c.premises()) out.premises.push_back(compile(p, out.atoms));
  out.conclusion = compile(c.conclusion(), out.atoms);
  return out;
}

/// Calls f(indices) for every tuple over [0, base)^k, first slot most
/// significant. Stops early when f returns false.
template <class F>
bool for_each_tuple(int k, int base, F f) {
  std::vector<int> t(k, 0);
  while (true) {
    if (!f(t)) return false;
    int pos = k - 1;
    while (pos >= 0 && ++t[pos] == base) t[pos--] = 0;
    if (pos < 0) return true;
  }
}

inline std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t limit, const std::string& what) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > limit / base) throw BudgetExceeded(what + ": more than " + std::to_string(limit) + " valuations");
    r *= base;
  }
  return r;
}

/// Evaluation where some table entries may be undetermined (-1).
struct PartialEval {
  const TableLayout* layout;
  const int* entries;
  /// First undetermined entry looked up with known arguments.
  int missing = -1;
  bool several_missing = false;
  /// An undetermined value was used as an argument of a further lookup.
  bool blocked = false;

  int lookup(int e) {
    if (entries[e] >= 0) return entries[e];
    if (missing < 0) missing = e;
    else if (missing != e) several_missing = true;
    return -1;
  }

  int run(const Program& p, const int* atoms) {
    int stack[64] = {};
    std::vector<int> big;
    int* s = stack;
    if (p.max_stack > 64) {
      big.resize(p.max_stack);
      s = big.data();
    }
    int top = 0;
    for (const auto& op : p.ops) {
      switch (op.kind) {
        case Kind::Atom: s[top++] = atoms[op.atom]; break;
        case Kind::Bottom: s[top++] = lookup(TableLayout::bottom); break;
        default: {
          --top;
          int a = s[top - 1], b = s[top];
          if (a < 0 || b < 0) {
            blocked = true;
            s[top - 1] = -1;
          } else {
            s[top - 1] = lookup(layout->entry(op.kind, a, b));
          }
        }
      }
    }
    return s[0];
  }
};

enum class Outcome { Holds, Violated, Unknown };

/// ⋂ premises ⊆ conclusion (empty ⋂ = X) for one constraint.
inline Outcome check_constraint(const CompiledConsequence& c, const int* atoms, const std::vector<PointSet>& domain, PointSet X,
                                PartialEval& ev) {
  PointSet meet = X;
  bool unknown = false;
  for (const auto& p : c.premises) {
    int v = ev.run(p, atoms);
    if (v < 0) unknown = true;
    else meet = meet & domain[v];
  }
  int concl = ev.run(c.conclusion, atoms);
  if (unknown || concl < 0) return Outcome::Unknown;
  return meet.subset_of(domain[concl]) ? Outcome::Holds : Outcome::Violated;
}

}  // namespace detail

/// All (consequence, valuation) instances over the interpretation's
/// valuation range, in canonical order: consequences as given, valuations
/// lexicographic with the alphabetically first atom most significant.
struct ConstraintSet {
  std::vector<detail::CompiledConsequence> consequences;
  std::vector<detail::Constraint> constraints;

  ConstraintSet(const Interpretation& I, const std::vector<Consequence>& cs, std::uint64_t budget) {
    std::uint64_t total = 0;
    for (const auto& c : cs) {
      consequences.push_back(detail::compile_consequence(c));
      total += detail::checked_power(I.valuation_range.size(), consequences.back().atoms.size(), budget, "constraint set");
      if (total > budget) throw BudgetExceeded("constraint set: more than " + std::to_string(budget) + " valuations");
    }
    for (std::size_t i = 0; i < consequences.size(); ++i) {
      const int k = static_cast<int>(consequences[i].atoms.size());
      detail::for_each_tuple(k, static_cast<int>(I.valuation_range.size()), [&](const std::vector<int>& t) {
        detail::Constraint c{static_cast<int>(i), {}};
        for (int v : t) c.atoms.push_back(I.atom_map[v]);
        constraints.push_back(std::move(c));
        return true;
      });
    }
  }
};

struct TableSearchResult {
  /// Surviving interpretations, counting every value of untouched free
  /// entries (saturates at UINT64_MAX).
  std::uint64_t survivors = 0;
  /// The first survivors found, with -1 at entries no constraint touched.
  std::vector<std::vector<int>> stored;
  std::uint64_t nodes = 0;
};

/// Depth-first search for connective tables consistent (SET-FMLA) with every
/// constraint. Entries of `fixed` that are >= 0 are held; the rest are
/// branched on lazily, in the order the constraints first need them.
inline TableSearchResult search_tables(const Interpretation& base, const ConstraintSet& cs, std::vector<int> fixed,
                                       std::uint64_t node_budget, std::size_t store_cap = 8) {
  const TableLayout layout{base.size()};
  const int m = base.size();
  const PointSet X = base.universe();
  TableSearchResult out;
  std::vector<int>& entries = fixed;

  auto add_survivor = [&]() {
    int untouched = 0;
    for (int v : entries) untouched += v < 0;
    std::uint64_t mult = 1;
    for (int i = 0; i < untouched; ++i) mult = mult > UINT64_MAX / static_cast<std::uint64_t>(m) ? UINT64_MAX : mult * m;
    out.survivors = out.survivors > UINT64_MAX - mult ? UINT64_MAX : out.survivors + mult;
    if (out.stored.size() < store_cap) out.stored.push_back(entries);
  };

  // Explicit stack: (constraint position, entry branched on, next value).
  struct Frame {
    std::size_t pos;
    int entry;
    int next;
  };
  std::vector<Frame> stack;
  std::size_t pos = 0;
  while (true) {
    // Advance through constraints that hold under the current assignment.
    bool violated = false;
    int branch = -1;
    while (pos < cs.constraints.size()) {
      const auto& c = cs.constraints[pos];
      detail::PartialEval ev{&layout, entries.data()};
      auto r = detail::check_constraint(cs.consequences[c.consequence], c.atoms.data(), base.domain, X, ev);
      if (r == detail::Outcome::Holds) {
        ++pos;
      } else if (r == detail::Outcome::Violated) {
        violated = true;
        break;
      } else {
        branch = ev.missing;
        break;
      }
    }
    if (!violated && branch < 0) add_survivor();
    if (!violated && branch >= 0) {
      if (++out.nodes > node_budget) throw BudgetExceeded("table search: node budget of " + std::to_string(node_budget) + " exhausted");
      stack.push_back({pos, branch, 1});
      entries[branch] = 0;
      continue;
    }
    // Backtrack to the next untried value.
    while (!stack.empty() && stack.back().next == m) {
      entries[stack.back().entry] = -1;
      stack.pop_back();
    }
    if (stack.empty()) break;
    auto& f = stack.back();
    entries[f.entry] = f.next++;
    pos = f.pos;
    if (++out.nodes > node_budget) throw BudgetExceeded("table search: node budget of " + std::to_string(node_budget) + " exhausted");
  }
  return out;
}

}  // namespace carnap
