#include "meshpat/occurrence.hpp"

#include <algorithm>

namespace meshpat {

namespace {

// Visits every k-subset of 0..n-1 as a strictly increasing vector; stops when fn returns false.
template <class Fn>
void for_each_witness(int n, int k, Fn&& fn) {
  if (k > n) return;
  OccurrenceWitness w(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) w[static_cast<std::size_t>(i)] = i;
  while (true) {
    if (!fn(static_cast<const OccurrenceWitness&>(w))) return;
    int i = k - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++w[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) w[static_cast<std::size_t>(j)] = w[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace

BoxMask box_occupancy(const Permutation& pi, const OccurrenceWitness& w) {
  const int k = static_cast<int>(w.size());
  std::vector<int> values;
  values.reserve(w.size());
  for (int pos : w) values.push_back(pi[pos]);
  std::sort(values.begin(), values.end());

  BoxMask mask = 0;
  std::size_t next = 0;  // witnesses to the left of pos
  for (int pos = 0; pos < pi.size(); ++pos) {
    if (next < w.size() && w[next] == pos) {
      ++next;
      continue;
    }
    const int v = pi[pos];
    const int row = static_cast<int>(std::lower_bound(values.begin(), values.end(), v) - values.begin());
    mask |= BoxMask{1} << box_bit(k, {static_cast<int>(next), row});
  }
  return mask;
}

bool order_isomorphic(const Permutation& pi, const OccurrenceWitness& w, const Permutation& tau) {
  const int k = tau.size();
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if ((pi[w[static_cast<std::size_t>(a)]] < pi[w[static_cast<std::size_t>(b)]]) != (tau[a] < tau[b])) return false;
  return true;
}

bool is_occurrence(const MeshPattern& p, const Permutation& pi, const OccurrenceWitness& w) {
  if (!order_isomorphic(pi, w, p.tau())) return false;
  const BoxMask occ = box_occupancy(pi, w);
  const int k = p.length();
  for (const Box& b : p.shading())
    if (occ >> box_bit(k, b) & 1u) return false;
  return true;
}

std::uint64_t count_occurrences(const MeshPattern& p, const Permutation& pi) {
  std::uint64_t count = 0;
  for_each_witness(pi.size(), p.length(), [&](const OccurrenceWitness& w) {
    if (is_occurrence(p, pi, w)) ++count;
    return true;
  });
  return count;
}

std::vector<OccurrenceWitness> list_occurrences(const MeshPattern& p, const Permutation& pi) {
  std::vector<OccurrenceWitness> out;
  for_each_witness(pi.size(), p.length(), [&](const OccurrenceWitness& w) {
    if (is_occurrence(p, pi, w)) out.push_back(w);
    return true;
  });
  return out;
}

bool contains(const MeshPattern& p, const Permutation& pi) {
  bool found = false;
  for_each_witness(pi.size(), p.length(), [&](const OccurrenceWitness& w) {
    found = is_occurrence(p, pi, w);
    return !found;
  });
  return found;
}

std::uint32_t pair_occupancy(const Permutation& pi, int a, int b) {
  const int va = pi[a], vb = pi[b];
  const int lo = std::min(va, vb), hi = std::max(va, vb);
  std::uint32_t mask = 0;
  for (int pos = 0; pos < pi.size(); ++pos) {
    if (pos == a || pos == b) continue;
    const int col = pos < a ? 0 : (pos < b ? 1 : 2);
    const int v = pi[pos];
    const int row = v < lo ? 0 : (v < hi ? 1 : 2);
    mask |= 1u << (col * 3 + row);
  }
  return mask;
}

}  // namespace meshpat
