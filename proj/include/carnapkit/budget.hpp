#pragma once

#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <string>

#include "carnapkit/error.hpp"

namespace carnap {

/// Resource bounds shared by the searches. Every search throws
/// BudgetExceeded instead of running past its limit.
struct Budget {
  /// Valuations (or valuation/element pairs) examined per consistency check.
  std::uint64_t valuations = 50'000'000;
  /// Proof-search sequents and table-search nodes per call.
  std::uint64_t nodes = 20'000'000;
  /// Largest poset whose upset lattice is materialised.
  int poset = 12;

  /// Parses CARNAPKIT_BUDGET. A bare integer scales `valuations` and `nodes`
  /// together; otherwise a comma list such as `valuations=1000,nodes=50,poset=8`.
  static Budget parse(const std::string& text) {
    Budget b;
    if (text.empty()) return b;
    auto number = [&](const std::string& s) -> std::uint64_t {
      std::size_t used = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(s, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != s.size() || v == 0) throw ValidationError("invalid budget value '" + s + "'");
      return v;
    };
    if (text.find('=') == std::string::npos) {
      b.valuations = b.nodes = number(text);
      return b;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw ValidationError("invalid budget entry '" + item + "'");
      std::string key = item.substr(0, eq);
      std::uint64_t v = number(item.substr(eq + 1));
      if (key == "valuations") b.valuations = v;
      else if (key == "nodes") b.nodes = v;
      else if (key == "poset") b.poset = static_cast<int>(v);
      else throw ValidationError("unknown budget key '" + key + "'");
    }
    return b;
  }

  static Budget from_env() {
    const char* env = std::getenv("CARNAPKIT_BUDGET");
    return env ? parse(env) : Budget{};
  }
};

}  // namespace carnap
