#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "meshpat/pattern.hpp"
#include "meshpat/permutation.hpp"

namespace meshpat {

using PermutationMap = std::function<Permutation(const Permutation&)>;

// Fix n, complement the rest within [n-1] (i -> n-i). Throws on the empty permutation.
Permutation keep_max_complement(const Permutation& pi);

// Reverse everything strictly left of n. Throws on the empty permutation.
Permutation keep_max_reverse_left(const Permutation& pi);

// Involutive form of the Class 2 rewriting; see README for the exact cases.
Permutation class2_map(const Permutation& pi);

Permutation bij46(const Permutation& pi);
Permutation bij49(const Permutation& pi);
Permutation bij73(const Permutation& pi);
Permutation bij75(const Permutation& pi);

struct BijectionSpec {
  std::string name;
  MeshPattern p1;
  MeshPattern p2;
  std::string class_tag;
  PermutationMap map;
};

// bij46, bij49, bij73, bij75, class2, lemma-left, lemma-right.
// The two lemma maps carry one representative instantiation each.
const std::vector<BijectionSpec>& bijection_registry();

// Throws meshpat::Error for an unknown name.
const BijectionSpec& bijection_by_name(std::string_view name);

struct Counterexample {
  Permutation input;
  Permutation image;
  Permutation image_of_image;
  std::uint64_t p1_before = 0, p2_before = 0, p1_after = 0, p2_after = 0;
  std::string reason;
};

struct BijectionVerdict {
  std::string check;  // "involution" or "joint-swap"
  int depth = 0;
  bool pass = true;
  std::uint64_t checked = 0;
  std::optional<Counterexample> counterexample;  // lexicographically first over n = 1..depth
};

BijectionVerdict verify_involution(const PermutationMap& f, int max_n, int threads = 1);
BijectionVerdict verify_joint_swap(const PermutationMap& f, const MeshPattern& p1, const MeshPattern& p2,
                                   int max_n, int threads = 1);

// Wraps f so that one input of size n, drawn from `seed`, gets its last two image entries swapped.
// Used to show the harness actually catches a broken map.
PermutationMap with_seeded_fault(PermutationMap f, int n, std::uint64_t seed);

// Keep-max families: every instantiation of the free cells, paired with its partner.
struct PatternPair {
  MeshPattern first;
  MeshPattern second;
};
std::vector<PatternPair> lemma_left_pairs();   // 64 pairs, x1..x6 free
std::vector<PatternPair> lemma_right_pairs();  // 16 pairs, x1..x4 free

}  // namespace meshpat
