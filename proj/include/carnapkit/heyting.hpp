#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "carnapkit/error.hpp"
#include "carnapkit/nucleus.hpp"

namespace carnap {

/// Raw finite algebra of the signature (0, 1, ∧, ∨, →); no axioms are
/// assumed. Elements are 0..n-1; operation tables are row-major n*n.
class FiniteAlgebra {
 public:
  using Table = std::vector<int>;

  FiniteAlgebra() = default;
  FiniteAlgebra(std::vector<std::string> names, int zero, int one, Table meet, Table join, Table arrow)
      : names_(std::move(names)), zero_(zero), one_(one), meet_(std::move(meet)), join_(std::move(join)), arrow_(std::move(arrow)) {
    const int n = size();
    if (n < 1) throw ValidationError("algebra carrier is empty");
    auto in_range = [n](int x) { return x >= 0 && x < n; };
    if (!in_range(zero_) || !in_range(one_)) throw ValidationError("zero/one outside the carrier");
    for (const Table* t : {&meet_, &join_, &arrow_}) {
      if (static_cast<int>(t->size()) != n * n) throw ValidationError("operation table is not total");
      for (int v : *t)
        if (!in_range(v)) throw ValidationError("operation table leaves the carrier");
    }
  }

  int size() const { return static_cast<int>(names_.size()); }
  int zero() const { return zero_; }
  int one() const { return one_; }
  int meet(int a, int b) const { return meet_[a * size() + b]; }
  int join(int a, int b) const { return join_[a * size() + b]; }
  int arrow(int a, int b) const { return arrow_[a * size() + b]; }
  /// a′ = a → 0
  int neg(int a) const { return arrow(a, zero_); }
  /// Derived order: a ≤ b iff a ∧ b = a.
  bool leq(int a, int b) const { return meet(a, b) == a; }

  const Table& meet_table() const { return meet_; }
  const Table& join_table() const { return join_; }
  const Table& arrow_table() const { return arrow_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int a) const { return names_[a]; }
  int index_of(const std::string& n) const {
    for (int i = 0; i < size(); ++i)
      if (names_[i] == n) return i;
    return -1;
  }

  FiniteAlgebra with_arrow(Table arrow) const { return FiniteAlgebra(names_, zero_, one_, meet_, join_, std::move(arrow)); }

  friend bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    return a.zero_ == b.zero_ && a.one_ == b.one_ && a.meet_ == b.meet_ && a.join_ == b.join_ && a.arrow_ == b.arrow_;
  }

 private:
  std::vector<std::string> names_;
  int zero_ = 0;
  int one_ = 0;
  Table meet_, join_, arrow_;
};

// ---------------------------------------------------------------------------
// Equations

/// One defining equation, evaluated on an argument tuple to its two sides.
struct Equation {
  std::string name;
  int arity;
  std::function<std::pair<int, int>(const FiniteAlgebra&, const int*)> sides;
};

/// Bounded-lattice axioms followed by the four arrow equations.
inline const std::vector<Equation>& heyting_equations() {
  using A = FiniteAlgebra;
  static const std::vector<Equation> eqs = {
      {"a∧b=b∧a", 2, [](const A& h, const int* x) { return std::pair{h.meet(x[0], x[1]), h.meet(x[1], x[0])}; }},
      {"a∨b=b∨a", 2, [](const A& h, const int* x) { return std::pair{h.join(x[0], x[1]), h.join(x[1], x[0])}; }},
      {"a∧(b∧c)=(a∧b)∧c", 3,
       [](const A& h, const int* x) { return std::pair{h.meet(x[0], h.meet(x[1], x[2])), h.meet(h.meet(x[0], x[1]), x[2])}; }},
      {"a∨(b∨c)=(a∨b)∨c", 3,
       [](const A& h, const int* x) { return std::pair{h.join(x[0], h.join(x[1], x[2])), h.join(h.join(x[0], x[1]), x[2])}; }},
      {"a∧(a∨b)=a", 2, [](const A& h, const int* x) { return std::pair{h.meet(x[0], h.join(x[0], x[1])), x[0]}; }},
      {"a∨(a∧b)=a", 2, [](const A& h, const int* x) { return std::pair{h.join(x[0], h.meet(x[0], x[1])), x[0]}; }},
      {"a∧a=a", 1, [](const A& h, const int* x) { return std::pair{h.meet(x[0], x[0]), x[0]}; }},
      {"a∨a=a", 1, [](const A& h, const int* x) { return std::pair{h.join(x[0], x[0]), x[0]}; }},
      {"0∧a=0", 1, [](const A& h, const int* x) { return std::pair{h.meet(h.zero(), x[0]), h.zero()}; }},
      {"a∧1=a", 1, [](const A& h, const int* x) { return std::pair{h.meet(x[0], h.one()), x[0]}; }},
      {"a→a=1", 1, [](const A& h, const int* x) { return std::pair{h.arrow(x[0], x[0]), h.one()}; }},
      {"a∧(a→b)=a∧b", 2,
       [](const A& h, const int* x) { return std::pair{h.meet(x[0], h.arrow(x[0], x[1])), h.meet(x[0], x[1])}; }},
      {"(a→b)∧b=b", 2, [](const A& h, const int* x) { return std::pair{h.meet(h.arrow(x[0], x[1]), x[1]), x[1]}; }},
      {"a→(b∧c)=(a→b)∧(a→c)", 3,
       [](const A& h, const int* x) {
         return std::pair{h.arrow(x[0], h.meet(x[1], x[2])), h.meet(h.arrow(x[0], x[1]), h.arrow(x[0], x[2]))};
       }},
  };
  return eqs;
}

/// Complement laws with a′ = a→0, checked after the Heyting equations.
inline const std::vector<Equation>& boolean_equations() {
  using A = FiniteAlgebra;
  static const std::vector<Equation> eqs = {
      {"a∧a′=0", 1, [](const A& h, const int* x) { return std::pair{h.meet(x[0], h.neg(x[0])), h.zero()}; }},
      {"a∨a′=1", 1, [](const A& h, const int* x) { return std::pair{h.join(x[0], h.neg(x[0])), h.one()}; }},
  };
  return eqs;
}

struct EquationVerdict {
  bool ok = true;
  std::string equation;
  std::vector<int> witness;

  std::string describe(const FiniteAlgebra& A) const {
    if (ok) return "ok";
    static const char* vars[] = {"a", "b", "c"};
    std::string out = "failed " + equation + " at";
    for (std::size_t i = 0; i < witness.size(); ++i) out += std::string(i ? ", " : " ") + vars[i] + "=" + A.name(witness[i]);
    return out;
  }
};

/// Every failing tuple of one equation, in lexicographic tuple order.
inline std::vector<std::vector<int>> equation_violations(const FiniteAlgebra& A, const Equation& eq) {
  std::vector<std::vector<int>> out;
  const int n = A.size();
  std::vector<int> t(eq.arity, 0);
  while (true) {
    auto [l, r] = eq.sides(A, t.data());
    if (l != r) out.push_back(t);
    int pos = eq.arity - 1;
    while (pos >= 0 && ++t[pos] == n) t[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

inline std::optional<std::vector<int>> first_violation(const FiniteAlgebra& A, const Equation& eq) {
  const int n = A.size();
  std::vector<int> t(eq.arity, 0);
  while (true) {
    auto [l, r] = eq.sides(A, t.data());
    if (l != r) return t;
    int pos = eq.arity - 1;
    while (pos >= 0 && ++t[pos] == n) t[pos--] = 0;
    if (pos < 0) return std::nullopt;
  }
}

inline EquationVerdict check_equations(const FiniteAlgebra& A, const std::vector<Equation>& eqs) {
  for (const auto& eq : eqs)
    if (auto w = first_violation(A, eq)) return EquationVerdict{false, eq.name, *w};
  return {};
}

inline EquationVerdict check_heyting(const FiniteAlgebra& A) { return check_equations(A, heyting_equations()); }

inline EquationVerdict check_boolean(const FiniteAlgebra& A) {
  auto v = check_heyting(A);
  return v.ok ? check_equations(A, boolean_equations()) : v;
}

/// a∧b ≤ c iff a ≤ b→c for all a, b, c.
inline bool check_residuation(const FiniteAlgebra& A) {
  for (int a = 0; a < A.size(); ++a)
    for (int b = 0; b < A.size(); ++b)
      for (int c = 0; c < A.size(); ++c)
        if (A.leq(A.meet(a, b), c) != A.leq(a, A.arrow(b, c))) return false;
  return true;
}

/// arrow(a,b) = the largest c with c∧a ≤ b in the derived order, when every
/// such maximum exists.
inline std::optional<FiniteAlgebra::Table> residuate(int n, const FiniteAlgebra::Table& meet) {
  auto leq = [&](int a, int b) { return meet[a * n + b] == a; };
  FiniteAlgebra::Table arrow(n * n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n && arrow[a * n + b] < 0; ++c) {
        if (!leq(meet[c * n + a], b)) continue;
        bool greatest = true;
        for (int d = 0; d < n && greatest; ++d)
          if (leq(meet[d * n + a], b) && !leq(d, c)) greatest = false;
        if (greatest) arrow[a * n + b] = c;
      }
      if (arrow[a * n + b] < 0) return std::nullopt;
    }
  return arrow;
}

// ---------------------------------------------------------------------------
// Standard algebras

/// Chain 0 < a1 < ... < 1 with its Heyting arrow. Sizes 1..3 use the names
/// {0}, {0,1}, {0,a,1}.
inline FiniteAlgebra heyting_chain(int n) {
  if (n < 1) throw ValidationError("chain size must be positive");
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    if (i == 0) names.push_back("0");
    else if (i == n - 1) names.push_back("1");
    else names.push_back(n == 3 ? "a" : "a" + std::to_string(i));
  }
  FiniteAlgebra::Table meet(n * n), join(n * n), arrow(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      meet[a * n + b] = std::min(a, b);
      join[a * n + b] = std::max(a, b);
      arrow[a * n + b] = a <= b ? n - 1 : b;
    }
  return FiniteAlgebra(names, 0, n - 1, meet, join, arrow);
}

/// Powerset of a k-element set (Boolean, 2^k elements), members in
/// canonical set order.
inline FiniteAlgebra powerset_algebra(int k) {
  std::vector<PointSet> sets;
  for (PointSet::mask_type m = 0; m < (PointSet::mask_type{1} << k); ++m) sets.emplace_back(m);
  std::sort(sets.begin(), sets.end(), canonical_less);
  const int n = static_cast<int>(sets.size());
  auto idx = [&](PointSet s) { return static_cast<int>(std::find(sets.begin(), sets.end(), s) - sets.begin()); };
  std::vector<std::string> names;
  for (auto s : sets) names.push_back(format_set(s));
  FiniteAlgebra::Table meet(n * n), join(n * n), arrow(n * n);
  const PointSet X = PointSet::full(k);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      meet[a * n + b] = idx(sets[a] & sets[b]);
      join[a * n + b] = idx(sets[a] | sets[b]);
      arrow[a * n + b] = idx(sets[a].complement(k) | sets[b]);
    }
  return FiniteAlgebra(names, idx({}), idx(X), meet, join, arrow);
}

// ---------------------------------------------------------------------------
// Fixpoint algebras

struct FixpointAlgebra {
  FiniteAlgebra algebra;
  /// The fixed upset behind each algebra element.
  std::vector<PointSet> carrier;
  /// Lattice index of each element.
  std::vector<int> lattice_index;
};

/// Up_j: fixpoints with 0_j = j∅, 1 = X, ∩, j(∪) and the Heyting arrow.
inline FixpointAlgebra fixpoint_algebra(const NuclearFrame& NF) {
  const auto& L = NF.lattice();
  const auto& P = NF.poset();
  FixpointAlgebra out;
  out.lattice_index = NF.fixpoint_indices();
  out.carrier = NF.fixpoints();
  const int n = static_cast<int>(out.carrier.size());
  std::vector<int> elem(L.size(), -1);
  for (int i = 0; i < n; ++i) elem[out.lattice_index[i]] = i;
  auto element = [&](PointSet s, const char* what) {
    int i = L.index_of(s);
    if (i < 0 || elem[i] < 0) throw Error(std::string("fixpoint algebra: ") + what + " left the fixpoints");
    return elem[i];
  };
  std::vector<std::string> names;
  for (auto s : out.carrier) names.push_back(format_set(s, P.names()));
  FiniteAlgebra::Table meet(n * n), join(n * n), arrow(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      PointSet u = out.carrier[a], v = out.carrier[b];
      meet[a * n + b] = element(u & v, "meet");
      join[a * n + b] = element(NF(u | v), "join");
      arrow[a * n + b] = element(heyting_arrow(P, u, v), "arrow");
    }
  out.algebra = FiniteAlgebra(names, element(NF(PointSet{}), "zero"), element(P.universe(), "one"), meet, join, arrow);
  return out;
}

}  // namespace carnap
