#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "meshpat/permutation.hpp"

namespace meshpat {

/// Unit box (col,row) of the (k+1)x(k+1) grid around a pattern of length k.
struct Box {
  int col = 0;
  int row = 0;
  friend bool operator==(const Box&, const Box&) = default;
  friend auto operator<=>(const Box&, const Box&) = default;
};

/// Bitmask over boxes, bit col*(k+1)+row. Enough room for k <= 7.
using BoxMask = std::uint64_t;

inline constexpr int box_bit(int k, Box b) { return b.col * (k + 1) + b.row; }

class MeshPattern {
 public:
  MeshPattern() = default;

  /// Sorts and dedups the shading. Throws std::invalid_argument for boxes outside [0,k]^2.
  MeshPattern(Permutation tau, std::vector<Box> shading);

  /// Literal form `<tau>:<boxes>`, e.g. "132:00,12,21". Throws ParseError.
  static MeshPattern parse(std::string_view literal);

  /// Length-k pattern from a shading mask (bit layout as box_bit).
  static MeshPattern from_mask(Permutation tau, BoxMask mask);

  const Permutation& tau() const noexcept { return tau_; }
  int length() const noexcept { return tau_.size(); }
  const std::vector<Box>& shading() const noexcept { return shading_; }
  bool is_shaded(Box b) const;
  BoxMask mask() const;

  MeshPattern with_box(Box b) const;

  MeshPattern complement() const;
  MeshPattern reverse() const;
  MeshPattern inverse() const;

  /// Canonical literal; round-trips through parse() for k <= 9.
  std::string literal() const;

  friend bool operator==(const MeshPattern&, const MeshPattern&) = default;
  friend auto operator<=>(const MeshPattern&, const MeshPattern&) = default;

 private:
  Permutation tau_;
  std::vector<Box> shading_;
};

std::ostream& operator<<(std::ostream& os, const MeshPattern& p);

inline MeshPattern parse_pattern(std::string_view text) { return MeshPattern::parse(text); }
inline std::string format_pattern(const MeshPattern& p) { return p.literal(); }

/// Closure of {p} under complement, reverse and inverse, sorted by literal.
std::vector<MeshPattern> symmetry_orbit(const MeshPattern& p);

/// {12,21} x all 512 shadings, ordered by tau then by shading mask.
const std::vector<MeshPattern>& all_length2_patterns();

/// Index into all_length2_patterns(): (tau==21)*512 + mask.
int length2_index(const MeshPattern& p);

}  // namespace meshpat
