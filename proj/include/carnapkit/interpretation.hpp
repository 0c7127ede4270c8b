#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "carnapkit/error.hpp"
#include "carnapkit/formula.hpp"
#include "carnapkit/nucleus.hpp"
#include "carnapkit/program.hpp"
#include "carnapkit/valuation.hpp"

namespace carnap {

/// A table-driven interpretation of {⊥, ∧, ∨, →}.
///
/// Connective outputs range over `domain` (fixed upsets, opens, or all
/// upsets); valuations range over `valuation_range` and pass through
/// `atom_map` into the domain. Tables are row-major over domain indices.
struct Interpretation {
  std::string name;
  std::vector<std::string> point_names;
  std::vector<PointSet> domain;
  std::vector<PointSet> valuation_range;
  int bottom = 0;
  std::vector<int> conj, disj, imp;
  std::vector<int> atom_map;

  int size() const { return static_cast<int>(domain.size()); }
  int index_of(PointSet s) const {
    auto it = std::find(domain.begin(), domain.end(), s);
    return it == domain.end() ? -1 : static_cast<int>(it - domain.begin());
  }
  int range_index_of(PointSet s) const {
    auto it = std::find(valuation_range.begin(), valuation_range.end(), s);
    return it == valuation_range.end() ? -1 : static_cast<int>(it - valuation_range.begin());
  }
  PointSet universe() const { return PointSet::full(static_cast<int>(point_names.size())); }

  /// Same domain and connective tables (atom maps may differ).
  bool same_connectives(const Interpretation& o) const {
    return domain == o.domain && bottom == o.bottom && conj == o.conj && disj == o.disj && imp == o.imp;
  }
};

/// Evaluation on domain indices.
struct IndexSemantics {
  const Interpretation* I;
  int bottom() const { return I->bottom; }
  int atom(int v) const { return I->atom_map[v]; }
  int conj(int a, int b) const { return I->conj[a * I->size() + b]; }
  int disj(int a, int b) const { return I->disj[a * I->size() + b]; }
  int imp(int a, int b) const { return I->imp[a * I->size() + b]; }
};

/// [[φ]]_v. Every atom of φ must be assigned a legal value.
inline PointSet evaluate(const Interpretation& I, const Valuation& v, const Formula& f) {
  std::vector<std::string> atoms;
  std::vector<int> values;
  for (const auto& [a, s] : v) {
    int i = I.range_index_of(s);
    if (i < 0) throw ValidationError("v(" + a + ")=" + format_set(s, I.point_names) + " is not a legal value");
    atoms.push_back(a);
    values.push_back(i);
  }
  return I.domain[run<int>(compile(f, atoms), IndexSemantics{&I}, values.data())];
}

namespace detail {

template <class Op>
std::vector<int> tabulate(const std::vector<PointSet>& domain, Op op, const std::vector<std::string>& names, const char* what) {
  const int m = static_cast<int>(domain.size());
  std::vector<int> t(m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      PointSet out = op(domain[a], domain[b]);
      auto it = std::find(domain.begin(), domain.end(), out);
      if (it == domain.end())
        throw ValidationError(std::string(what) + " table leaves the value domain at " + format_set(domain[a], names) + ", " +
                              format_set(domain[b], names));
      t[a * m + b] = static_cast<int>(it - domain.begin());
    }
  return t;
}

}  // namespace detail

/// ⊥ ↦ j∅, ∧ ↦ ∩, ∨ ↦ j(∪), → ↦ the Heyting arrow; atoms pass through j.
inline Interpretation standard_interpretation(const NuclearFrame& NF) {
  const auto& P = NF.poset();
  const auto& L = NF.lattice();
  Interpretation I;
  I.name = "standard/" + NF.name();
  I.point_names = P.names();
  I.domain = NF.fixpoints();
  I.valuation_range = L.sets();
  I.bottom = I.index_of(NF(PointSet{}));
  I.conj = detail::tabulate(I.domain, [](PointSet u, PointSet v) { return u & v; }, P.names(), "∧");
  I.disj = detail::tabulate(I.domain, [&](PointSet u, PointSet v) { return NF(u | v); }, P.names(), "∨");
  I.imp = detail::tabulate(I.domain, [&](PointSet u, PointSet v) { return heyting_arrow(P, u, v); }, P.names(), "→");
  for (int i = 0; i < L.size(); ++i) I.atom_map.push_back(I.index_of(L[NF.apply(i)]));
  return I;
}

/// Human-readable connective tables, one entry per line.
inline std::string format_tables(const Interpretation& I) {
  auto s = [&](int i) { return format_set(I.domain[i], I.point_names); };
  std::string out = "bot = " + s(I.bottom) + "\n";
  const int m = I.size();
  const std::pair<const char*, const std::vector<int>*> tables[] = {{"&", &I.conj}, {"|", &I.disj}, {"->", &I.imp}};
  for (auto [sym, t] : tables)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) out += s(a) + " " + sym + " " + s(b) + " = " + s((*t)[a * m + b]) + "\n";
  return out;
}

}  // namespace carnap
