#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace carnap {

/// A subset of a finite carrier {0, ..., 31}, stored as a bit mask.
///
/// Every semantic value in the library (upsets, opens, fixpoints) is a
/// PointSet; the carrier size lives with the owning frame.
class PointSet {
 public:
  using mask_type = std::uint32_t;
  static constexpr int max_points = 32;

  constexpr PointSet() = default;
  constexpr explicit PointSet(mask_type bits) : bits_(bits) {}

  static constexpr PointSet empty() { return PointSet{}; }
  static constexpr PointSet full(int n) {
    return PointSet{n >= max_points ? ~mask_type{0} : ((mask_type{1} << n) - 1)};
  }
  static constexpr PointSet single(int x) { return PointSet{mask_type{1} << x}; }

  constexpr mask_type bits() const { return bits_; }
  constexpr bool contains(int x) const { return (bits_ >> x) & 1u; }
  constexpr bool is_empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool subset_of(PointSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(PointSet other) const { return (bits_ & other.bits_) != 0; }

  constexpr PointSet with(int x) const { return PointSet{bits_ | (mask_type{1} << x)}; }
  constexpr PointSet without(int x) const { return PointSet{bits_ & ~(mask_type{1} << x)}; }
  /// Complement relative to the carrier {0, ..., n-1}.
  constexpr PointSet complement(int n) const { return PointSet{~bits_ & full(n).bits_}; }

  friend constexpr PointSet operator&(PointSet a, PointSet b) { return PointSet{a.bits_ & b.bits_}; }
  friend constexpr PointSet operator|(PointSet a, PointSet b) { return PointSet{a.bits_ | b.bits_}; }
  friend constexpr PointSet operator-(PointSet a, PointSet b) { return PointSet{a.bits_ & ~b.bits_}; }
  friend constexpr bool operator==(PointSet a, PointSet b) = default;

  std::vector<int> members() const {
    std::vector<int> out;
    for (mask_type b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

 private:
  mask_type bits_ = 0;
};

/// Canonical order on point sets: by cardinality, then lexicographic on the
/// sorted member lists ({0,1} < {0,2} < {1,2}).
inline bool canonical_less(PointSet a, PointSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  auto ma = a.members();
  auto mb = b.members();
  return ma < mb;
}

/// Renders `{a,b}` using the given point names (indices when names are empty).
inline std::string format_set(PointSet s, const std::vector<std::string>& names = {}) {
  std::string out = "{";
  bool first = true;
  for (int x : s.members()) {
    if (!first) out += ',';
    first = false;
    out += x < static_cast<int>(names.size()) ? names[x] : std::to_string(x);
  }
  out += '}';
  return out;
}

}  // namespace carnap
