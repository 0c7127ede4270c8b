#pragma once

#include <map>
#include <string>
#include <vector>

#include "carnapkit/point_set.hpp"

namespace carnap {

/// Atom name to semantic value (an upset, open, or fixpoint).
using Valuation = std::map<std::string, PointSet>;

inline std::string format_valuation(const Valuation& v, const std::vector<std::string>& names = {}) {
  std::string out;
  for (const auto& [atom, value] : v) {
    if (!out.empty()) out += ", ";
    out += "v(" + atom + ")=" + format_set(value, names);
  }
  return out;
}

}  // namespace carnap
