#include <random>
#include <set>

#include "doctest.h"
#include "meshpat/bijections.hpp"
#include "meshpat/errors.hpp"
#include "meshpat/occurrence.hpp"
#include "support.hpp"

using namespace meshpat;

namespace {

Permutation P(const char* s) { return Permutation::parse(s); }

}  // namespace

TEST_CASE("lemma maps: examples and edge cases") {
  CHECK(keep_max_complement(P("132")) == P("231"));
  CHECK(keep_max_complement(P("312")) == P("321"));
  CHECK(keep_max_complement(P("1")) == P("1"));
  CHECK_THROWS(keep_max_complement(Permutation{}));

  // reversing "231" gives "132"
  CHECK(keep_max_reverse_left(P("2314")) == P("1324"));
  CHECK(keep_max_reverse_left(P("4123")) == P("4123"));
  CHECK_THROWS(keep_max_reverse_left(Permutation{}));

  for (int n = 1; n <= 5; ++n)
    for_each_permutation(n, [](const Permutation& pi) {
      REQUIRE(keep_max_complement(keep_max_complement(pi)) == pi);
      REQUIRE(keep_max_reverse_left(keep_max_reverse_left(pi)) == pi);
      REQUIRE(keep_max_complement(pi).position_of(pi.size()) == pi.position_of(pi.size()));
    });
}

TEST_CASE("class 2 map") {
  CHECK(class2_map(P("3142")) == P("1324"));
  CHECK(class2_map(P("1324")) == P("3142"));
  CHECK(class2_map(P("4132")) == P("4132"));  // n-1 after n, not ending in n
  CHECK(class2_map(P("3124")) == P("3124"));  // starts with n-1 and ends with n
  CHECK(class2_map(P("12")) == P("12"));

  // a bijection on every S_n, unlike the one-directional rewriting
  for (int n = 1; n <= 6; ++n) {
    std::set<Permutation> images;
    for_each_permutation(n, [&](const Permutation& pi) { images.insert(class2_map(pi)); });
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    CHECK(images.size() == f);
  }
}

TEST_CASE("worked examples") {
  CHECK(bij46(P("23471856")) == P("23457816"));
  CHECK(bij49(P("24867315")) == P("26817345"));
  CHECK(bij73(P("8,2,9,7,10,6,4,3,1,5")) == P("7,1,9,8,10,6,3,4,2,5"));
  CHECK(bij75(P("23784516")) == P("74382156"));
}

TEST_CASE("trivial fixed points") {
  for (int n = 1; n <= 8; ++n) {
    CHECK(bij46(Permutation::decreasing(n)) == Permutation::decreasing(n));
    CHECK(bij49(Permutation::decreasing(n)) == Permutation::decreasing(n));
    CHECK(bij73(Permutation::decreasing(n)) == Permutation::decreasing(n));
  }
  // 12...n has one maximum whose block is 1..n-1, so the block is reversed
  CHECK(bij73(P("12345")) == P("43215"));
  CHECK(bij75(P("1")) == P("1"));
  CHECK(bij46(Permutation{}) == Permutation{});
}

TEST_CASE("registry invariants") {
  std::set<std::string> names;
  for (const auto& b : bijection_registry()) {
    CHECK(b.p1 != b.p2);
    CHECK(b.p1.length() == 2);
    CHECK(b.p2.length() == 2);
    names.insert(b.name);
  }
  CHECK(names.size() == bijection_registry().size());
  CHECK(bijection_by_name("bij73").class_tag == "73");
  CHECK_THROWS_AS(bijection_by_name("nope"), Error);
}

TEST_CASE("exhaustive involution and swap") {
  for (const auto& b : bijection_registry()) {
    CAPTURE(b.name);
    const auto inv = verify_involution(b.map, 7, 4);
    CHECK(inv.pass);
    CHECK(inv.checked == 5913);  // 1! + ... + 7!
    CHECK(verify_joint_swap(b.map, b.p1, b.p2, 6, 4).pass);
  }
}

TEST_CASE("random larger permutations") {
  std::mt19937_64 rng(20261016);
  for (const auto& b : bijection_registry()) {
    CAPTURE(b.name);
    for (int trial = 0; trial < 150; ++trial) {
      const int n = 8 + trial % 3;
      const Permutation pi = testsupport::random_permutation(rng, n);
      CAPTURE(pi);
      const Permutation y = b.map(pi);
      REQUIRE(b.map(y) == pi);
      REQUIRE(count_occurrences(b.p1, pi) == count_occurrences(b.p2, y));
      REQUIRE(count_occurrences(b.p2, pi) == count_occurrences(b.p1, y));
    }
  }
}

TEST_CASE("negative control reports the first witness") {
  const auto v = verify_joint_swap(bij46, parse_pattern("12:"), parse_pattern("21:"), 4);
  REQUIRE_FALSE(v.pass);
  REQUIRE(v.counterexample);
  // nothing smaller fails
  const auto& w = *v.counterexample;
  bool earlier = false;
  for (int n = 1; n <= w.input.size(); ++n)
    for_each_permutation(n, [&](const Permutation& pi) {
      if (n == w.input.size() && !(pi < w.input)) return;
      const auto y = bij46(pi);
      if (count_occurrences(parse_pattern("12:"), pi) != count_occurrences(parse_pattern("21:"), y)) earlier = true;
    });
  CHECK_FALSE(earlier);
  CHECK(w.image == bij46(w.input));

  const auto single = verify_joint_swap(bij46, parse_pattern("12:"), parse_pattern("21:"), 4, 1);
  const auto multi = verify_joint_swap(bij46, parse_pattern("12:"), parse_pattern("21:"), 4, 3);
  CHECK(single.counterexample->input == multi.counterexample->input);
}

TEST_CASE("seeded fault is caught") {
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    const auto f = with_seeded_fault(bij75, 6, seed);
    CHECK_FALSE(verify_involution(f, 6).pass);
    CHECK(verify_involution(f, 5).pass);  // the fault lives in S_6 only
  }
  CHECK_THROWS(with_seeded_fault(bij75, 1, 0));
}

TEST_CASE("lemma families") {
  const auto left = lemma_left_pairs();
  const auto right = lemma_right_pairs();
  REQUIRE(left.size() == 64);
  REQUIRE(right.size() == 16);
  for (const auto& pp : left) {
    CAPTURE(pp.first);
    CHECK(verify_joint_swap(keep_max_complement, pp.first, pp.second, 5).pass);
  }
  for (const auto& pp : right) {
    CAPTURE(pp.first);
    CHECK(verify_joint_swap(keep_max_reverse_left, pp.first, pp.second, 5).pass);
  }
}

TEST_CASE("class 75 first part, per permutation") {
  const auto a = parse_pattern("12:01,11,22");
  const auto b = parse_pattern("12:00,10,22");
  for_each_permutation(7, [&](const Permutation& pi) { REQUIRE(count_occurrences(a, pi) == count_occurrences(b, pi)); });
}
