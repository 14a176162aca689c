#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "meshpat/pattern.hpp"
#include "meshpat/permutation.hpp"

namespace testsupport {

using meshpat::Box;
using meshpat::MeshPattern;
using meshpat::Permutation;

inline Permutation random_permutation(std::mt19937_64& rng, int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation(v);
}

inline MeshPattern random_pattern(std::mt19937_64& rng, int k) {
  const Permutation tau = random_permutation(rng, k);
  std::vector<Box> boxes;
  std::bernoulli_distribution coin(0.4);
  for (int c = 0; c <= k; ++c)
    for (int r = 0; r <= k; ++r)
      if (coin(rng)) boxes.push_back({c, r});
  return MeshPattern(tau, boxes);
}

// Straight from the definition: order-isomorphic subsequence, then every shaded box empty.
// Positions and values are 1-based here, sentinels 0 and n+1.
inline bool naive_is_occurrence(const MeshPattern& p, const Permutation& pi, const std::vector<int>& w0) {
  const int n = pi.size(), k = p.length();
  std::vector<int> pos{0}, val;
  for (int x : w0) pos.push_back(x + 1);
  pos.push_back(n + 1);
  for (int x : w0) val.push_back(pi[x]);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if ((val[a] < val[b]) != (p.tau()[a] < p.tau()[b])) return false;
  std::vector<int> sorted_vals = val;
  std::sort(sorted_vals.begin(), sorted_vals.end());
  sorted_vals.insert(sorted_vals.begin(), 0);
  sorted_vals.push_back(n + 1);
  for (const Box& b : p.shading())
    for (int x = 1; x <= n; ++x) {
      const int y = pi[x - 1];
      if (std::find(w0.begin(), w0.end(), x - 1) != w0.end()) continue;
      if (pos[b.col] < x && x < pos[b.col + 1] && sorted_vals[b.row] < y && y < sorted_vals[b.row + 1]) return false;
    }
  return true;
}

inline std::uint64_t naive_count(const MeshPattern& p, const Permutation& pi) {
  const int n = pi.size(), k = p.length();
  std::uint64_t count = 0;
  for (std::uint32_t sub = 0; sub < (1u << n); ++sub) {
    if (std::popcount(sub) != k) continue;
    std::vector<int> w;
    for (int i = 0; i < n; ++i)
      if (sub >> i & 1u) w.push_back(i);
    if (naive_is_occurrence(p, pi, w)) ++count;
  }
  return count;
}

}  // namespace testsupport
