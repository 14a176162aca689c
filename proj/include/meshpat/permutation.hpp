#pragma once

#include <compare>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace meshpat {

/// A permutation of 1..n in one-line notation. n == 0 is the empty permutation.
/// Positions are 0-based in the API; values are 1-based as in the usual notation.
class Permutation {
 public:
  Permutation() = default;

  /// Throws std::invalid_argument unless `entries` is a bijection onto 1..n.
  explicit Permutation(std::vector<int> entries);

  static Permutation identity(int n);
  static Permutation decreasing(int n);

  /// Skips the bijection check. Only for values produced by other permutation code.
  static Permutation unchecked(std::vector<int> entries);

  /// Digit string ("2413") for n <= 9, or comma-separated integers ("10,2,1,...").
  static Permutation parse(std::string_view text);

  int size() const noexcept { return static_cast<int>(entries_.size()); }
  bool empty() const noexcept { return entries_.empty(); }
  int operator[](int position) const { return entries_[static_cast<std::size_t>(position)]; }
  std::span<const int> entries() const noexcept { return entries_; }

  /// 0-based position of `value`.
  int position_of(int value) const;

  Permutation complement() const;
  Permutation reverse() const;
  Permutation inverse() const;

  /// Advances to the lexicographic successor; false (and wraps to identity) after the last one.
  bool next_lexicographic();

  /// Serialization per the interchange format: digits for n <= 9, commas otherwise.
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> entries_;
};

std::ostream& operator<<(std::ostream& os, const Permutation& p);

/// Calls fn(const Permutation&) for every element of S_n in lexicographic order.
template <class Fn>
void for_each_permutation(int n, Fn&& fn) {
  Permutation p = Permutation::identity(n);
  do {
    fn(static_cast<const Permutation&>(p));
  } while (p.next_lexicographic());
}

/// Right-to-left maximum of a permutation: value together with its 0-based position.
struct RightToLeftMaximum {
  int value = 0;
  int position = 0;
  friend bool operator==(const RightToLeftMaximum&, const RightToLeftMaximum&) = default;
};

/// Right-to-left maxima r_1 > r_2 > ... > r_l listed left to right, and for each r_i
/// the block of positions holding values strictly between r_{i+1} and r_i (r_{l+1} = 0).
/// Every such value sits to the left of r_i.
struct RLDecomposition {
  std::vector<RightToLeftMaximum> maxima;
  std::vector<std::vector<int>> blocks;
};

/// Throws std::invalid_argument for the empty permutation.
RLDecomposition rl_decomposition(const Permutation& pi);

int count_rl_maxima(const Permutation& pi);

}  // namespace meshpat
