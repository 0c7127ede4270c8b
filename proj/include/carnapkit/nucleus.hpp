#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "carnapkit/error.hpp"
#include "carnapkit/poset.hpp"

namespace carnap {

/// Outcome of checking an operator against the nucleus axioms.
struct NucleusVerdict {
  bool ok = true;
  /// "inflationarity", "upset", "idempotence", "multiplicativity" or
  /// "monotonicity".
  std::string axiom;
  /// Offending argument(s).
  std::vector<PointSet> witness;

  std::string describe(const std::vector<std::string>& names = {}) const {
    if (ok) return "ok";
    std::string out = "failed " + axiom + " at";
    for (auto w : witness) out += " " + format_set(w, names);
    return out;
  }
};

namespace detail {

inline NucleusVerdict fail(std::string axiom, std::vector<PointSet> witness) {
  return NucleusVerdict{false, std::move(axiom), std::move(witness)};
}

}  // namespace detail

/// Checks a raw operator (outputs indexed like the lattice) against the
/// nucleus axioms, in this order: inflationarity, outputs are upsets,
/// idempotence jjU = jU, multiplicativity j(U∩V) = jU∩jV. The first failure
/// in canonical argument order is reported.
inline NucleusVerdict validate_nucleus(const UpSetLattice& L, const std::vector<PointSet>& table) {
  if (static_cast<int>(table.size()) != L.size()) throw ValidationError("nucleus table is not total on the upset lattice");
  for (int i = 0; i < L.size(); ++i)
    if (!L[i].subset_of(table[i])) return detail::fail("inflationarity", {L[i]});
  for (int i = 0; i < L.size(); ++i)
    if (L.index_of(table[i]) < 0) return detail::fail("upset", {L[i]});
  auto j = [&](PointSet u) { return table[L.index_of(u)]; };
  for (int i = 0; i < L.size(); ++i)
    if (j(table[i]) != table[i]) return detail::fail("idempotence", {L[i]});
  for (int a = 0; a < L.size(); ++a)
    for (int b = 0; b < L.size(); ++b)
      if (j(L[a] & L[b]) != (table[a] & table[b])) return detail::fail("multiplicativity", {L[a], L[b]});
  return {};
}

/// A poset paired with a validated nucleus on its upset lattice, stored as a
/// full table of lattice indices.
class NuclearFrame {
 public:
  /// Validates and throws ValidationError on failure.
  static NuclearFrame from_table(std::shared_ptr<const UpSetLattice> L, const std::vector<PointSet>& table, std::string name) {
    auto verdict = validate_nucleus(*L, table);
    if (!verdict.ok) throw ValidationError(name + " is not a nucleus: " + verdict.describe(L->poset().names()));
    std::vector<int> idx;
    for (auto s : table) idx.push_back(L->index_of(s));
    return NuclearFrame(std::move(L), std::move(idx), std::move(name));
  }

  const UpSetLattice& lattice() const { return *lattice_; }
  std::shared_ptr<const UpSetLattice> lattice_ptr() const { return lattice_; }
  const Poset& poset() const { return lattice_->poset(); }
  const std::string& name() const { return name_; }

  /// j on lattice indices.
  int apply(int i) const { return table_[i]; }
  /// j on an upset; throws for non-upsets.
  PointSet operator()(PointSet u) const {
    int i = lattice_->index_of(u);
    if (i < 0) throw ValidationError("argument " + format_set(u, poset().names()) + " is not an upset");
    return (*lattice_)[table_[i]];
  }
  const std::vector<int>& table() const { return table_; }

  bool is_dense() const { return table_[lattice_->bottom()] == lattice_->bottom(); }

  /// Indices of fixed upsets, in lattice order.
  std::vector<int> fixpoint_indices() const {
    std::vector<int> out;
    for (int i = 0; i < lattice_->size(); ++i)
      if (table_[i] == i) out.push_back(i);
    return out;
  }
  std::vector<PointSet> fixpoints() const {
    std::vector<PointSet> out;
    for (int i : fixpoint_indices()) out.push_back((*lattice_)[i]);
    return out;
  }

  friend bool operator==(const NuclearFrame& a, const NuclearFrame& b) {
    return a.poset() == b.poset() && a.table_ == b.table_;
  }

 private:
  NuclearFrame(std::shared_ptr<const UpSetLattice> L, std::vector<int> table, std::string name)
      : lattice_(std::move(L)), table_(std::move(table)), name_(std::move(name)) {}

  std::shared_ptr<const UpSetLattice> lattice_;
  std::vector<int> table_;
  std::string name_;
};

inline std::vector<PointSet> fixpoints(const NuclearFrame& NF) { return NF.fixpoints(); }
inline bool is_dense(const NuclearFrame& NF) { return NF.is_dense(); }

/// Re-checks a frame's table: the three axioms, derived monotonicity
/// (U ⊆ V implies jU ⊆ jV) and jjU = jU.
inline NucleusVerdict check_nucleus_properties(const NuclearFrame& NF) {
  const auto& L = NF.lattice();
  std::vector<PointSet> outputs;
  for (int i = 0; i < L.size(); ++i) outputs.push_back(L[NF.apply(i)]);
  auto v = validate_nucleus(L, outputs);
  if (!v.ok) return v;
  for (int a = 0; a < L.size(); ++a)
    for (int b = 0; b < L.size(); ++b)
      if (L[a].subset_of(L[b]) && !outputs[a].subset_of(outputs[b])) return detail::fail("monotonicity", {L[a], L[b]});
  for (int a = 0; a < L.size(); ++a)
    if (NF.apply(NF.apply(a)) != NF.apply(a)) return detail::fail("idempotence", {L[a]});
  return {};
}

// ---------------------------------------------------------------------------
// Builders

namespace detail {

template <class Op>
NuclearFrame build(const Poset& P, Op op, const std::string& name, int bound) {
  auto L = std::make_shared<const UpSetLattice>(P, bound);
  std::vector<PointSet> table;
  for (auto u : L->sets()) table.push_back(op(u));
  return NuclearFrame::from_table(std::move(L), table, name);
}

/// Cover-step chains from x to a maximal element: the maximal chains of ↑x.
inline void collect_paths(const Poset& P, int x, PointSet acc, std::vector<PointSet>& out) {
  acc = acc.with(x);
  PointSet next = P.covers(x);
  if (next.is_empty()) {
    out.push_back(acc);
    return;
  }
  for (int y : next.members()) collect_paths(P, y, acc, out);
}

}  // namespace detail

/// Maximal chains of ↑x, one list per element.
inline std::vector<std::vector<PointSet>> beth_paths(const Poset& P) {
  std::vector<std::vector<PointSet>> out(P.size());
  for (int x = 0; x < P.size(); ++x) detail::collect_paths(P, x, {}, out[x]);
  return out;
}

/// Identity on Up(F).
inline NuclearFrame kripke_nucleus(const Poset& P, int bound = UpSetLattice::default_bound) {
  return detail::build(P, [](PointSet u) { return u; }, "kripke", bound);
}

/// j_b U = {x : every path through x intersects U}, paths being maximal
/// chains of ↑x.
inline NuclearFrame beth_nucleus(const Poset& P, int bound = UpSetLattice::default_bound) {
  const auto paths = beth_paths(P);
  return detail::build(
      P,
      [&](PointSet u) {
        PointSet out;
        for (int x = 0; x < P.size(); ++x) {
          bool all = true;
          for (auto path : paths[x]) all = all && path.intersects(u);
          if (all) out = out.with(x);
        }
        return out;
      },
      "beth", bound);
}

/// j U = {x : every maximal element above x lies in U}.
inline NuclearFrame beth_nucleus_by_maximal_points(const Poset& P, int bound = UpSetLattice::default_bound) {
  const PointSet maximal = P.maximal_elements();
  return detail::build(
      P,
      [&](PointSet u) {
        PointSet out;
        for (int x = 0; x < P.size(); ++x)
          if ((P.up(x) & maximal).subset_of(u)) out = out.with(x);
        return out;
      },
      "beth-max", bound);
}

/// j U = (U -> ∅) -> ∅.
inline NuclearFrame double_negation_nucleus(const Poset& P, int bound = UpSetLattice::default_bound) {
  return detail::build(
      P, [&](PointSet u) { return heyting_arrow(P, heyting_arrow(P, u, {}), {}); }, "dd", bound);
}

/// j U = X for every U.
inline NuclearFrame constant_top_nucleus(const Poset& P, int bound = UpSetLattice::default_bound) {
  return detail::build(P, [&](PointSet) { return P.universe(); }, "top", bound);
}

struct DragalinResult {
  std::optional<NuclearFrame> frame;
  NucleusVerdict verdict;
};

/// j_D U = {x : every development in D(x) intersects U}. The operator is
/// validated extensionally; a failing D yields a verdict instead of a frame.
inline DragalinResult dragalin_nucleus(const Poset& P, const std::vector<std::vector<PointSet>>& D,
                                       int bound = UpSetLattice::default_bound) {
  if (static_cast<int>(D.size()) != P.size()) throw ValidationError("developments must be given for every element");
  for (int x = 0; x < P.size(); ++x)
    if (D[x].empty()) throw ValidationError("D(" + P.name(x) + ") is empty");
  auto L = std::make_shared<const UpSetLattice>(P, bound);
  std::vector<PointSet> table;
  for (auto u : L->sets()) {
    PointSet out;
    for (int x = 0; x < P.size(); ++x) {
      bool all = true;
      for (auto d : D[x]) all = all && d.intersects(u);
      if (all) out = out.with(x);
    }
    table.push_back(out);
  }
  DragalinResult r;
  r.verdict = validate_nucleus(*L, table);
  if (r.verdict.ok) r.frame = NuclearFrame::from_table(std::move(L), table, "dragalin");
  return r;
}

/// kripke | beth | dd (double negation) | top
inline NuclearFrame nucleus_by_name(const Poset& P, const std::string& name, int bound = UpSetLattice::default_bound) {
  if (name == "kripke") return kripke_nucleus(P, bound);
  if (name == "beth") return beth_nucleus(P, bound);
  if (name == "dd") return double_negation_nucleus(P, bound);
  if (name == "top") return constant_top_nucleus(P, bound);
  throw ValidationError("unknown nucleus '" + name + "' (expected kripke, beth, dd or top)");
}

}  // namespace carnap
