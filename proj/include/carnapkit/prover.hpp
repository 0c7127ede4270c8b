#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "carnapkit/budget.hpp"
#include "carnapkit/error.hpp"
#include "carnapkit/formula.hpp"
#include "carnapkit/poset.hpp"
#include "carnapkit/program.hpp"
#include "carnapkit/valuation.hpp"

namespace carnap {

/// A finite Kripke model refuting a consequence at `world`.
struct Countermodel {
  Poset poset;
  Valuation valuation;
  int world = 0;
};

struct ProofVerdict {
  bool provable = false;
  /// Present only when the consequence is not provable and a witness was
  /// requested and found.
  std::optional<Countermodel> witness;
};

struct ProverOptions {
  bool want_countermodel = false;
  int countermodel_size = 6;
  std::uint64_t nodes = Budget{}.nodes;
};

/// Upset semantics on a poset (Kripke semantics, identity nucleus).
struct KripkeSemantics {
  const Poset* poset;
  PointSet bottom() const { return {}; }
  PointSet atom(PointSet v) const { return v; }
  PointSet conj(PointSet a, PointSet b) const { return a & b; }
  PointSet disj(PointSet a, PointSet b) const { return a | b; }
  PointSet imp(PointSet a, PointSet b) const { return heyting_arrow(*poset, a, b); }
};

inline PointSet kripke_value(const Poset& P, const Valuation& v, const Formula& f) {
  std::vector<std::string> atoms;
  std::vector<PointSet> values;
  for (const auto& [a, s] : v) {
    atoms.push_back(a);
    values.push_back(s);
  }
  return run<PointSet>(compile(f, atoms), KripkeSemantics{&P}, values.data());
}

/// (∧ premises) -> conclusion, or the bare conclusion when there are no
/// premises.
inline Formula folded(const Consequence& c) {
  if (c.premises().empty()) return c.conclusion();
  Formula acc = c.premises().front();
  for (std::size_t i = 1; i < c.premises().size(); ++i) acc = Formula::conj(acc, c.premises()[i]);
  return Formula::imp(acc, c.conclusion());
}

namespace detail {

/// Contraction-free sequent search (G4ip) over hash-consed formulas.
class G4ip {
 public:
  explicit G4ip(std::uint64_t budget) : budget_(budget) { bot_ = make(Kind::Bottom, -1, -1, {}); }

  int intern(const Formula& f) {
    switch (f.kind()) {
      case Kind::Atom: return make(Kind::Atom, -1, -1, f.name());
      case Kind::Bottom: return bot_;
      default: {
        int l = intern(f.left());
        int r = intern(f.right());
        return make(f.kind(), l, r, {});
      }
    }
  }

  bool prove(std::vector<int> ctx, int goal) {
    std::sort(ctx.begin(), ctx.end());
    ctx.erase(std::unique(ctx.begin(), ctx.end()), ctx.end());
    auto key = std::make_pair(ctx, goal);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (++steps_ > budget_) throw BudgetExceeded("prover: node budget of " + std::to_string(budget_) + " exhausted");
    bool r = search(ctx, goal);
    memo_.emplace(std::move(key), r);
    return r;
  }

  std::uint64_t steps() const { return steps_; }

 private:
  struct Node {
    Kind kind;
    int l, r;
  };

  int make(Kind k, int l, int r, const std::string& name) {
    auto key = std::make_tuple(static_cast<int>(k), l, r, name);
    if (auto it = ids_.find(key); it != ids_.end()) return it->second;
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back({k, l, r});
    ids_.emplace(std::move(key), id);
    return id;
  }
  int imp(int a, int b) { return make(Kind::Imp, a, b, {}); }

  static std::vector<int> without(const std::vector<int>& ctx, std::size_t i) {
    std::vector<int> c(ctx);
    c.erase(c.begin() + static_cast<std::ptrdiff_t>(i));
    return c;
  }
  static std::vector<int> plus(std::vector<int> c, int f) {
    c.push_back(f);
    return c;
  }

  bool search(const std::vector<int>& ctx, int goal) {
    auto has = [&](int f) { return std::binary_search(ctx.begin(), ctx.end(), f); };
    if (has(bot_) || has(goal)) return true;

    // Invertible left rules.
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      const Node n = nodes_[ctx[i]];
      if (n.kind == Kind::And) return prove(plus(plus(without(ctx, i), n.l), n.r), goal);
      if (n.kind == Kind::Or) return prove(plus(without(ctx, i), n.l), goal) && prove(plus(without(ctx, i), n.r), goal);
      if (n.kind != Kind::Imp) continue;
      const Node a = nodes_[n.l];
      switch (a.kind) {
        case Kind::Bottom: return prove(without(ctx, i), goal);
        case Kind::Atom:
          if (has(n.l)) return prove(plus(without(ctx, i), n.r), goal);
          break;
        case Kind::And: return prove(plus(without(ctx, i), imp(a.l, imp(a.r, n.r))), goal);
        case Kind::Or: return prove(plus(plus(without(ctx, i), imp(a.l, n.r)), imp(a.r, n.r)), goal);
        case Kind::Imp: break;
      }
    }

    // Invertible right rules.
    const Node g = nodes_[goal];
    if (g.kind == Kind::And) return prove(ctx, g.l) && prove(ctx, g.r);
    if (g.kind == Kind::Imp) return prove(plus(ctx, g.l), g.r);

    // Non-invertible choices.
    if (g.kind == Kind::Or && (prove(ctx, g.l) || prove(ctx, g.r))) return true;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      const Node n = nodes_[ctx[i]];
      if (n.kind != Kind::Imp || nodes_[n.l].kind != Kind::Imp) continue;
      const Node cd = nodes_[n.l];
      auto rest = without(ctx, i);
      if (prove(plus(rest, imp(cd.r, n.r)), n.l) && prove(plus(rest, n.r), goal)) return true;
    }
    return false;
  }

  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
  int bot_ = -1;
  std::vector<Node> nodes_;
  std::map<std::tuple<int, int, int, std::string>, int> ids_;
  std::map<std::pair<std::vector<int>, int>, bool> memo_;
};

/// Rooted posets up to isomorphism, cached per size.
inline const std::vector<Poset>& rooted_posets(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<Poset>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, enumerate_rooted_posets(n)).first;
  return it->second;
}

}  // namespace detail

/// Exhaustive search for a Kripke model on at most `max_size` worlds where
/// all premises hold at a world and the conclusion fails there. Only rooted
/// posets are visited, with the root as the refuting world: any refutation at
/// a world w restricts to the rooted subframe ↑w. Sizes are tried in
/// increasing order, so the returned model is minimal.
inline std::optional<Countermodel> find_kripke_countermodel(const Consequence& c, int max_size) {
  if (max_size < 1) throw ValidationError("max_size must be positive");
  if (max_size > max_enumerated_poset_size + 1) throw BudgetExceeded("countermodel search: max_size must be at most 7");
  const auto atom_set = c.atoms();
  const std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
  std::vector<Program> premises;
  for (const auto& p : c.premises()) premises.push_back(compile(p, atoms));
  const Program conclusion = compile(c.conclusion(), atoms);

  for (int k = 1; k <= max_size; ++k) {
    for (const Poset& P : detail::rooted_posets(k)) {
      const UpSetLattice L(P, max_enumerated_poset_size + 1);
      const KripkeSemantics sem{&P};
      std::vector<int> idx(atoms.size(), 0);
      std::vector<PointSet> values(atoms.size(), L[0]);
      while (true) {
        bool refutes = !run<PointSet>(conclusion, sem, values.data()).contains(0);
        for (std::size_t i = 0; refutes && i < premises.size(); ++i)
          refutes = run<PointSet>(premises[i], sem, values.data()).contains(0);
        if (refutes) {
          Countermodel cm{P, {}, 0};
          for (std::size_t i = 0; i < atoms.size(); ++i) cm.valuation[atoms[i]] = values[i];
          return cm;
        }
        std::size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == L.size()) {
          idx[pos] = 0;
          values[pos] = L[0];
          ++pos;
        }
        if (pos == idx.size()) break;
        values[pos] = L[idx[pos]];
      }
    }
  }
  return std::nullopt;
}

/// Decides Γ ⊢IPC φ as ⊢ (∧Γ) -> φ.
inline ProofVerdict prove_ipc(const Consequence& c, const ProverOptions& opts = {}) {
  detail::G4ip prover(opts.nodes);
  ProofVerdict v;
  v.provable = prover.prove({}, prover.intern(folded(c)));
  if (!v.provable && opts.want_countermodel) {
    if (auto cm = find_kripke_countermodel(c, opts.countermodel_size)) v.witness = std::move(*cm);
  }
  return v;
}

inline bool ipc_provable(const Formula& f) { return prove_ipc(Consequence({}, f)).provable; }

/// Truth tables over the consequence's atoms. A refuting row is reported as
/// a one-world model.
inline ProofVerdict prove_cpc(const Consequence& c) {
  const auto atom_set = c.atoms();
  const std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
  if (atoms.size() > 24) throw BudgetExceeded("prove_cpc: more than 24 atoms");
  struct Bool {
    bool bottom() const { return false; }
    bool atom(bool v) const { return v; }
    bool conj(bool a, bool b) const { return a && b; }
    bool disj(bool a, bool b) const { return a || b; }
    bool imp(bool a, bool b) const { return !a || b; }
  };
  std::vector<Program> premises;
  for (const auto& p : c.premises()) premises.push_back(compile(p, atoms));
  const Program conclusion = compile(c.conclusion(), atoms);
  // std::vector<bool> has no data(); use a plain buffer.
  std::unique_ptr<bool[]> row(new bool[atoms.size() + 1]);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << atoms.size()); ++m) {
    for (std::size_t i = 0; i < atoms.size(); ++i) row[i] = (m >> i) & 1;
    bool refutes = !run<bool>(conclusion, Bool{}, row.get());
    for (std::size_t i = 0; refutes && i < premises.size(); ++i) refutes = run<bool>(premises[i], Bool{}, row.get());
    if (refutes) {
      ProofVerdict v;
      Countermodel cm{Poset::antichain(1), {}, 0};
      for (std::size_t i = 0; i < atoms.size(); ++i) cm.valuation[atoms[i]] = row[i] ? PointSet::single(0) : PointSet{};
      v.witness = std::move(cm);
      return v;
    }
  }
  return ProofVerdict{true, std::nullopt};
}

/// IPC theorems among formula_universe(atoms, depth), in universe order.
inline std::vector<Formula> theorem_corpus(int atoms, int depth) {
  std::vector<Formula> out;
  for (auto& f : formula_universe(atoms, depth))
    if (ipc_provable(f)) out.push_back(std::move(f));
  return out;
}

}  // namespace carnap
