#pragma once

#include <algorithm>
#include <array>
#include <memory>
#include <string>
#include <vector>

#include "carnapkit/error.hpp"
#include "carnapkit/formula.hpp"

namespace carnap {

/// A formula flattened to postfix form with atoms resolved to slots, so that
/// sweeps over many valuations avoid walking the tree.
struct Program {
  struct Op {
    Kind kind;
    int atom;
  };
  std::vector<Op> ops;
  int max_stack = 0;
};

namespace detail {

inline int compile_into(Program& p, const Formula& f, const std::vector<std::string>& atoms) {
  switch (f.kind()) {
    case Kind::Atom: {
      auto it = std::find(atoms.begin(), atoms.end(), f.name());
      if (it == atoms.end()) throw ValidationError("valuation does not cover atom '" + f.name() + "'");
      p.ops.push_back({Kind::Atom, static_cast<int>(it - atoms.begin())});
      return 1;
    }
    case Kind::Bottom:
      p.ops.push_back({Kind::Bottom, -1});
      return 1;
    default: {
      int l = compile_into(p, f.left(), atoms);
      int r = compile_into(p, f.right(), atoms);
      p.ops.push_back({f.kind(), -1});
      return std::max(l, r + 1);
    }
  }
}

}  // namespace detail

/// Atom slot i is `atoms[i]`.
inline Program compile(const Formula& f, const std::vector<std::string>& atoms) {
  Program p;
  p.max_stack = detail::compile_into(p, f, atoms);
  return p;
}

/// Runs a program under a semantics providing bottom(), atom(v), conj, disj
/// and imp over the value type V.
template <class V, class Sem>
V run(const Program& p, const Sem& sem, const V* atom_values) {
  std::array<V, 64> small{};
  std::unique_ptr<V[]> large;
  V* stack = small.data();
  if (p.max_stack > static_cast<int>(small.size())) {
    large.reset(new V[p.max_stack]);
    stack = large.get();
  }
  int top = 0;
  for (const auto& op : p.ops) {
    switch (op.kind) {
      case Kind::Atom: stack[top++] = sem.atom(atom_values[op.atom]); break;
      case Kind::Bottom: stack[top++] = sem.bottom(); break;
      case Kind::And: --top; stack[top - 1] = sem.conj(stack[top - 1], stack[top]); break;
      case Kind::Or: --top; stack[top - 1] = sem.disj(stack[top - 1], stack[top]); break;
      case Kind::Imp: --top; stack[top - 1] = sem.imp(stack[top - 1], stack[top]); break;
    }
  }
  return stack[0];
}

}  // namespace carnap
