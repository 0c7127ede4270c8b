#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "carnapkit/error.hpp"
#include "carnapkit/point_set.hpp"

namespace carnap {

/// Finite partial order on elements 0..n-1, stored as principal upsets.
/// Immutable once constructed; every constructor validates the order axioms.
class Poset {
 public:
  Poset() = default;

  /// Builds the reflexive-transitive closure of the generating pairs
  /// (x <= y) and rejects the result if it is not antisymmetric.
  static Poset from_generators(std::vector<std::string> names, const std::vector<std::pair<int, int>>& pairs) {
    const int n = static_cast<int>(names.size());
    if (n > PointSet::max_points) throw ValidationError("poset has more than 32 elements");
    std::vector<PointSet> up(n);
    for (int x = 0; x < n; ++x) up[x] = PointSet::single(x);
    for (auto [x, y] : pairs) {
      if (x < 0 || y < 0 || x >= n || y >= n) throw ValidationError("order pair mentions an unknown element");
      up[x] = up[x].with(y);
    }
    // Warshall closure.
    for (int k = 0; k < n; ++k)
      for (int x = 0; x < n; ++x)
        if (up[x].contains(k)) up[x] = up[x] | up[k];
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y)
        if (up[x].contains(y) && up[y].contains(x))
          throw ValidationError("order is not antisymmetric: " + names[x] + " and " + names[y]);
    return Poset(std::move(names), std::move(up));
  }

  /// Validates a complete relation given as principal upsets.
  static Poset from_upsets(std::vector<PointSet> up, std::vector<std::string> names = {}) {
    const int n = static_cast<int>(up.size());
    if (names.empty()) names = default_names(n);
    for (int x = 0; x < n; ++x) {
      if (!up[x].contains(x)) throw ValidationError("order is not reflexive at " + names[x]);
      if (!up[x].subset_of(PointSet::full(n))) throw ValidationError("order mentions an unknown element");
      for (int y : up[x].members()) {
        if (!up[y].subset_of(up[x])) throw ValidationError("order is not transitive");
        if (y != x && up[y].contains(x)) throw ValidationError("order is not antisymmetric");
      }
    }
    return Poset(std::move(names), std::move(up));
  }

  static Poset chain(int n) {
    std::vector<std::pair<int, int>> gens;
    for (int x = 0; x + 1 < n; ++x) gens.emplace_back(x, x + 1);
    return from_generators(default_names(n), gens);
  }
  static Poset antichain(int n) { return from_generators(default_names(n), {}); }
  /// r <= a, r <= b.
  static Poset vee() { return from_generators({"r", "a", "b"}, {{0, 1}, {0, 2}}); }

  int size() const { return static_cast<int>(up_.size()); }
  PointSet universe() const { return PointSet::full(size()); }
  bool leq(int x, int y) const { return up_[x].contains(y); }
  /// ↑x
  PointSet up(int x) const { return up_[x]; }
  PointSet down(int x) const {
    PointSet out;
    for (int y = 0; y < size(); ++y)
      if (leq(y, x)) out = out.with(y);
    return out;
  }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int x) const { return names_[x]; }
  int index_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
  }

  PointSet maximal_elements() const {
    PointSet out;
    for (int x = 0; x < size(); ++x)
      if (up_[x] == PointSet::single(x)) out = out.with(x);
    return out;
  }
  /// Immediate successors of x.
  PointSet covers(int x) const {
    PointSet strict = up_[x].without(x);
    PointSet out = strict;
    for (int y : strict.members()) out = out - up_[y].without(y);
    return out;
  }

  /// Strict-order adjacency bits, row-major (x*n + y); requires n <= 8.
  std::uint64_t code() const {
    std::uint64_t c = 0;
    const int n = size();
    for (int x = 0; x < n; ++x)
      for (int y : up_[x].members())
        if (y != x) c |= std::uint64_t{1} << (x * n + y);
    return c;
  }

  /// The poset with element x renamed perm[x].
  Poset permuted(const std::vector<int>& perm) const {
    const int n = size();
    std::vector<PointSet> up(n);
    std::vector<std::string> names(n);
    for (int x = 0; x < n; ++x) {
      PointSet s;
      for (int y : up_[x].members()) s = s.with(perm[y]);
      up[perm[x]] = s;
      names[perm[x]] = names_[x];
    }
    return Poset(std::move(names), std::move(up));
  }

  friend bool operator==(const Poset& a, const Poset& b) { return a.up_ == b.up_; }

  static std::vector<std::string> default_names(int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
  }

 private:
  Poset(std::vector<std::string> names, std::vector<PointSet> up) : names_(std::move(names)), up_(std::move(up)) {}

  std::vector<std::string> names_;
  std::vector<PointSet> up_;
};

inline bool is_upset(const Poset& P, PointSet s) {
  for (int x : s.members())
    if (!P.up(x).subset_of(s)) return false;
  return true;
}

/// ↑S, the smallest upset containing S.
inline PointSet up_closure(const Poset& P, PointSet s) {
  PointSet out;
  for (int x : s.members()) out = out | P.up(x);
  return out;
}

inline PointSet principal_upset(const Poset& P, int x) { return P.up(x); }

/// U -> V = {x : ↑x ∩ U ⊆ V}.
inline PointSet heyting_arrow(const Poset& P, PointSet u, PointSet v) {
  PointSet out;
  for (int x = 0; x < P.size(); ++x)
    if ((P.up(x) & u).subset_of(v)) out = out.with(x);
  return out;
}

/// Up(F): all upsets of a poset in canonical order, with an index map for
/// table-driven operators. Index 0 is ∅ and the last index is X.
class UpSetLattice {
 public:
  static constexpr int default_bound = 12;

  explicit UpSetLattice(Poset P, int bound = default_bound) : poset_(std::move(P)) {
    const int n = poset_.size();
    if (n > bound) throw BudgetExceeded("all_upsets: poset has " + std::to_string(n) + " elements, bound is " + std::to_string(bound));
    index_.assign(std::size_t{1} << n, -1);
    for (PointSet::mask_type m = 0; m < (PointSet::mask_type{1} << n); ++m)
      if (is_upset(poset_, PointSet{m})) sets_.push_back(PointSet{m});
    std::sort(sets_.begin(), sets_.end(), canonical_less);
    for (std::size_t i = 0; i < sets_.size(); ++i) index_[sets_[i].bits()] = static_cast<int>(i);
  }

  const Poset& poset() const { return poset_; }
  int size() const { return static_cast<int>(sets_.size()); }
  PointSet operator[](int i) const { return sets_[i]; }
  const std::vector<PointSet>& sets() const { return sets_; }
  /// -1 when s is not an upset.
  int index_of(PointSet s) const {
    return s.bits() < index_.size() ? index_[s.bits()] : -1;
  }
  int bottom() const { return 0; }
  int top() const { return size() - 1; }

 private:
  Poset poset_;
  std::vector<PointSet> sets_;
  std::vector<int> index_;
};

inline UpSetLattice all_upsets(const Poset& P, int bound = UpSetLattice::default_bound) { return UpSetLattice(P, bound); }

// ---------------------------------------------------------------------------
// Enumeration

inline constexpr int max_enumerated_poset_size = 6;

namespace detail {

inline Poset canonical_form(const Poset& P) {
  const int n = P.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Poset best = P;
  std::uint64_t best_code = P.code();
  do {
    Poset Q = P.permuted(perm);
    if (Q.code() < best_code) {
      best_code = Q.code();
      best = std::move(Q);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace detail

/// One representative per isomorphism class: the relabelling with minimum
/// adjacency code. Representatives are sorted by code.
inline Poset canonical_form(const Poset& P) { return detail::canonical_form(P); }

inline bool isomorphic(const Poset& a, const Poset& b) {
  return a.size() == b.size() && canonical_form(a).code() == canonical_form(b).code();
}

/// All posets on n elements; with up_to_iso, one canonical representative per
/// isomorphism class, ordered by adjacency code.
inline std::vector<Poset> enumerate_posets(int n, bool up_to_iso) {
  if (n < 1) return {};
  if (n > max_enumerated_poset_size) throw BudgetExceeded("enumerate_posets: n must be at most 6");
  // Every poset has a natural labelling (x < y implies x < y as integers), so
  // upper-triangular transitive relations cover every isomorphism class.
  std::vector<std::pair<int, int>> slots;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) slots.emplace_back(x, y);
  std::vector<std::pair<std::uint64_t, Poset>> reps;
  std::set<std::uint64_t> seen;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << slots.size()); ++m) {
    std::vector<PointSet> up(n);
    for (int x = 0; x < n; ++x) up[x] = PointSet::single(x);
    for (std::size_t s = 0; s < slots.size(); ++s)
      if ((m >> s) & 1) up[slots[s].first] = up[slots[s].first].with(slots[s].second);
    bool transitive = true;
    for (int x = 0; x < n && transitive; ++x)
      for (int y : up[x].members())
        if (!up[y].subset_of(up[x])) {
          transitive = false;
          break;
        }
    if (!transitive) continue;
    Poset canon = detail::canonical_form(Poset::from_upsets(std::move(up)));
    if (seen.insert(canon.code()).second) reps.emplace_back(canon.code(), std::move(canon));
  }
  std::sort(reps.begin(), reps.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Poset> out;
  if (up_to_iso) {
    for (auto& [code, P] : reps) out.push_back(std::move(P));
    return out;
  }
  std::set<std::uint64_t> labelled;
  std::vector<std::pair<std::uint64_t, Poset>> all;
  for (auto& [code, P] : reps) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      Poset Q = P.permuted(perm);
      if (labelled.insert(Q.code()).second) all.emplace_back(Q.code(), Poset::from_upsets([&] {
        std::vector<PointSet> up;
        for (int x = 0; x < n; ++x) up.push_back(Q.up(x));
        return up;
      }()));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [code, P] : all) out.push_back(std::move(P));
  return out;
}

/// Posets with a least element (element 0), one per isomorphism class, built
/// by adding a new bottom below each poset on n-1 elements.
inline std::vector<Poset> enumerate_rooted_posets(int n) {
  if (n == 1) return {Poset::antichain(1)};
  std::vector<Poset> out;
  for (const Poset& P : enumerate_posets(n - 1, true)) {
    std::vector<PointSet> up(n);
    up[0] = PointSet::full(n);
    for (int x = 0; x < n - 1; ++x) up[x + 1] = PointSet{P.up(x).bits() << 1};
    out.push_back(Poset::from_upsets(std::move(up)));
  }
  return out;
}

}  // namespace carnap
