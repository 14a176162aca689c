#pragma once

#include <cstdint>
#include <vector>

#include "meshpat/pattern.hpp"
#include "meshpat/permutation.hpp"

namespace meshpat {

/// Strictly increasing 0-based positions into the host permutation.
using OccurrenceWitness = std::vector<int>;

/// Bit box_bit(k,(c,r)) is set iff some non-witness entry of pi lies in box (c,r).
BoxMask box_occupancy(const Permutation& pi, const OccurrenceWitness& w);

/// Whether the values at w are order-isomorphic to tau.
bool order_isomorphic(const Permutation& pi, const OccurrenceWitness& w, const Permutation& tau);

bool is_occurrence(const MeshPattern& p, const Permutation& pi, const OccurrenceWitness& w);

std::uint64_t count_occurrences(const MeshPattern& p, const Permutation& pi);

/// Witnesses in lexicographic order.
std::vector<OccurrenceWitness> list_occurrences(const MeshPattern& p, const Permutation& pi);

/// True iff pi contains p; stops at the first occurrence.
bool contains(const MeshPattern& p, const Permutation& pi);

/// Length-2 fast path: pair occupancy over 9 bits for positions a < b.
std::uint32_t pair_occupancy(const Permutation& pi, int a, int b);

}  // namespace meshpat
