#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "carnapkit/error.hpp"
#include "carnapkit/interpretation.hpp"
#include "carnapkit/nucleus.hpp"
#include "carnapkit/poset.hpp"

namespace carnap {

/// A finite topology stored as its family of opens, in canonical set order.
class FiniteTopology {
 public:
  FiniteTopology() = default;

  /// Validates: ∅ and X are open, opens are closed under ∪ and ∩.
  FiniteTopology(std::vector<std::string> names, std::vector<PointSet> opens) : names_(std::move(names)) {
    const int n = size();
    if (n > 16) throw ValidationError("topology has more than 16 points");
    for (auto o : opens)
      if (!o.subset_of(PointSet::full(n))) throw ValidationError("open set " + format_set(o) + " mentions an unknown point");
    std::sort(opens.begin(), opens.end(), canonical_less);
    opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
    opens_ = std::move(opens);
    if (!is_open({})) throw ValidationError("the empty set is not open");
    if (!is_open(universe())) throw ValidationError("the whole space is not open");
    for (auto a : opens_)
      for (auto b : opens_) {
        if (!is_open(a | b)) throw ValidationError("opens not closed under union: " + format_set(a | b, names_));
        if (!is_open(a & b)) throw ValidationError("opens not closed under intersection: " + format_set(a & b, names_));
      }
  }

  /// Opens ∅, {1}, {0,1} on points 0, 1.
  static FiniteTopology sierpinski() {
    return FiniteTopology({"0", "1"}, {PointSet{}, PointSet::single(1), PointSet::full(2)});
  }
  static FiniteTopology discrete(int n) {
    std::vector<PointSet> opens;
    for (PointSet::mask_type m = 0; m < (PointSet::mask_type{1} << n); ++m) opens.emplace_back(m);
    return FiniteTopology(Poset::default_names(n), opens);
  }
  static FiniteTopology trivial(int n) { return FiniteTopology(Poset::default_names(n), {PointSet{}, PointSet::full(n)}); }

  int size() const { return static_cast<int>(names_.size()); }
  PointSet universe() const { return PointSet::full(size()); }
  const std::vector<PointSet>& opens() const { return opens_; }
  const std::vector<std::string>& names() const { return names_; }
  bool is_open(PointSet s) const { return std::find(opens_.begin(), opens_.end(), s) != opens_.end(); }
  int index_of(PointSet s) const {
    auto it = std::find(opens_.begin(), opens_.end(), s);
    return it == opens_.end() ? -1 : static_cast<int>(it - opens_.begin());
  }

  friend bool operator==(const FiniteTopology& a, const FiniteTopology& b) { return a.opens_ == b.opens_ && a.size() == b.size(); }

 private:
  std::vector<std::string> names_;
  std::vector<PointSet> opens_;
};

/// int(Y): the union of the opens inside Y.
inline PointSet interior(const FiniteTopology& T, PointSet y) {
  PointSet out;
  for (auto o : T.opens())
    if (o.subset_of(y)) out = out | o;
  return out;
}

/// cl(Y): the intersection of the closed sets containing Y.
inline PointSet closure(const FiniteTopology& T, PointSet y) {
  PointSet out = T.universe();
  for (auto o : T.opens()) {
    PointSet closed = o.complement(T.size());
    if (y.subset_of(closed)) out = out & closed;
  }
  return out;
}

/// Opens are the upsets of P.
inline FiniteTopology alexandroff(const Poset& P) {
  UpSetLattice L(P, 16);
  return FiniteTopology(P.names(), L.sets());
}

/// All topologies on n labelled points (n <= 4), ordered by their open
/// families.
inline std::vector<FiniteTopology> enumerate_topologies(int n) {
  if (n < 1) return {};
  if (n > 4) throw BudgetExceeded("enumerate_topologies: n must be at most 4");
  const PointSet X = PointSet::full(n);
  std::vector<PointSet> middle;
  for (PointSet::mask_type m = 1; m + 1 < (PointSet::mask_type{1} << n); ++m) middle.emplace_back(m);
  std::sort(middle.begin(), middle.end(), canonical_less);
  std::vector<FiniteTopology> out;
  for (std::uint64_t f = 0; f < (std::uint64_t{1} << middle.size()); ++f) {
    std::vector<PointSet> opens = {PointSet{}, X};
    for (std::size_t i = 0; i < middle.size(); ++i)
      if ((f >> i) & 1) opens.push_back(middle[i]);
    bool closed = true;
    auto member = [&](PointSet s) { return std::find(opens.begin(), opens.end(), s) != opens.end(); };
    for (std::size_t a = 0; a < opens.size() && closed; ++a)
      for (std::size_t b = a + 1; b < opens.size() && closed; ++b)
        closed = member(opens[a] | opens[b]) && member(opens[a] & opens[b]);
    if (closed) out.emplace_back(Poset::default_names(n), opens);
  }
  return out;
}

/// ⊥ ↦ ∅, ∧ ↦ ∩, ∨ ↦ ∪, → ↦ int((X−U)∪V); atoms are opens, mapped
/// identically.
inline Interpretation standard_topological_interpretation(const FiniteTopology& T) {
  Interpretation I;
  I.name = "standard-topological";
  I.point_names = T.names();
  I.domain = T.opens();
  I.valuation_range = T.opens();
  I.bottom = T.index_of({});
  const PointSet X = T.universe();
  I.conj = detail::tabulate(I.domain, [](PointSet u, PointSet v) { return u & v; }, T.names(), "∧");
  I.disj = detail::tabulate(I.domain, [](PointSet u, PointSet v) { return u | v; }, T.names(), "∨");
  I.imp = detail::tabulate(I.domain, [&](PointSet u, PointSet v) { return interior(T, (X - u) | v); }, T.names(), "→");
  for (int i = 0; i < I.size(); ++i) I.atom_map.push_back(i);
  return I;
}

// ---------------------------------------------------------------------------
// Dragalin realization

/// The nuclear frame of a finite space: the poset (Ω⁻, ⊇) of nonempty opens,
/// the nucleus jA = ↑⋃A, and h(U) = ↑U = {V ∈ Ω⁻ : V ⊆ U}.
struct DragalinRealization {
  FiniteTopology space;
  /// opens[i + 1] is the open behind poset element i (opens[0] is ∅).
  Poset poset;
  NucleusVerdict nucleus_verdict;
  std::optional<NuclearFrame> frame;
  /// h[i] is the image of the i-th open.
  std::vector<PointSet> h;
  bool dense = false;
  bool h_bijective = false;
  bool h_monotone = false;
  /// jA = A iff A = ∅ or A = h(U) for some open U, over all upsets A.
  bool fixpoint_characterisation = false;

  bool ok() const { return nucleus_verdict.ok && dense && h_bijective && h_monotone && fixpoint_characterisation; }

  /// h⁻¹ on fixpoints; -1 outside the image.
  int h_inverse(PointSet a) const {
    auto it = std::find(h.begin(), h.end(), a);
    return it == h.end() ? -1 : static_cast<int>(it - h.begin());
  }
};

inline DragalinRealization dragalin_realization(const FiniteTopology& T) {
  DragalinRealization R;
  R.space = T;
  const auto& opens = T.opens();
  std::vector<PointSet> nonempty(opens.begin() + 1, opens.end());
  const int n = static_cast<int>(nonempty.size());
  std::vector<std::string> names;
  std::vector<PointSet> up(n);
  for (int x = 0; x < n; ++x) {
    names.push_back(format_set(nonempty[x], T.names()));
    for (int y = 0; y < n; ++y)
      if (nonempty[y].subset_of(nonempty[x])) up[x] = up[x].with(y);
  }
  R.poset = Poset::from_upsets(up, names);

  auto h_of = [&](PointSet u) {
    PointSet out;
    for (int x = 0; x < n; ++x)
      if (nonempty[x].subset_of(u)) out = out.with(x);
    return out;
  };
  auto union_of = [&](PointSet a) {
    PointSet out;
    for (int x : a.members()) out = out | nonempty[x];
    return out;
  };
  auto L = std::make_shared<const UpSetLattice>(R.poset, 16);
  std::vector<PointSet> table;
  for (auto a : L->sets()) table.push_back(h_of(union_of(a)));
  R.nucleus_verdict = validate_nucleus(*L, table);
  for (auto o : opens) R.h.push_back(h_of(o));
  if (!R.nucleus_verdict.ok) return R;
  R.frame = NuclearFrame::from_table(L, table, "dragalin");
  const NuclearFrame& NF = *R.frame;

  R.dense = NF.is_dense();
  auto fixed = NF.fixpoints();
  std::vector<PointSet> image = R.h;
  std::sort(image.begin(), image.end(), canonical_less);
  std::vector<PointSet> sorted_fixed = fixed;
  std::sort(sorted_fixed.begin(), sorted_fixed.end(), canonical_less);
  R.h_bijective = std::adjacent_find(image.begin(), image.end()) == image.end() && image == sorted_fixed;
  R.h_monotone = true;
  for (std::size_t a = 0; a < opens.size(); ++a)
    for (std::size_t b = 0; b < opens.size(); ++b)
      if (opens[a].subset_of(opens[b]) && !R.h[a].subset_of(R.h[b])) R.h_monotone = false;
  R.fixpoint_characterisation = true;
  for (int i = 0; i < L->size(); ++i) {
    PointSet a = (*L)[i];
    bool fixed_a = NF.apply(i) == i;
    bool described = a.is_empty() || std::find(R.h.begin(), R.h.end(), a) != R.h.end();
    if (fixed_a != described) R.fixpoint_characterisation = false;
  }
  return R;
}

struct ConjugationVerdict {
  bool ok = true;
  /// "bot", "&", "|" or "->" on failure, with the fixpoint arguments.
  std::string connective;
  std::vector<PointSet> witness;
};

/// I_st^{F,j}(∘)(A,B) = h(I_st^{Ω(X)}(∘)(h⁻¹A, h⁻¹B)) for every connective and
/// all fixpoints A, B.
inline ConjugationVerdict check_conjugation(const DragalinRealization& R) {
  if (!R.frame) return ConjugationVerdict{false, "nucleus", {}};
  const Interpretation nuc = standard_interpretation(*R.frame);
  const Interpretation top = standard_topological_interpretation(R.space);
  auto h_idx = [&](int topo_index) { return nuc.index_of(R.h[topo_index]); };
  auto inv = [&](int nuc_index) { return R.h_inverse(nuc.domain[nuc_index]); };
  if (h_idx(top.bottom) != nuc.bottom) return ConjugationVerdict{false, "bot", {}};
  const int m = nuc.size();
  const int t = top.size();
  const std::pair<const char*, std::pair<const std::vector<int>*, const std::vector<int>*>> tables[] = {
      {"&", {&nuc.conj, &top.conj}}, {"|", {&nuc.disj, &top.disj}}, {"->", {&nuc.imp, &top.imp}}};
  for (auto [sym, tabs] : tables)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        int ia = inv(a), ib = inv(b);
        if (ia < 0 || ib < 0) return ConjugationVerdict{false, sym, {nuc.domain[a], nuc.domain[b]}};
        if ((*tabs.first)[a * m + b] != h_idx((*tabs.second)[ia * t + ib]))
          return ConjugationVerdict{false, sym, {nuc.domain[a], nuc.domain[b]}};
      }
  return {};
}

inline ConjugationVerdict check_conjugation(const FiniteTopology& T) { return check_conjugation(dragalin_realization(T)); }

}  // namespace carnap
