#include <random>
#include <set>

#include "doctest.h"
#include "meshpat/errors.hpp"
#include "meshpat/occurrence.hpp"
#include "meshpat/pattern.hpp"
#include "support.hpp"

using namespace meshpat;

TEST_CASE("permutation parsing and serialization") {
  CHECK(Permutation::parse("2413").to_string() == "2413");
  const auto big = Permutation::parse("8,2,9,7,10,6,4,3,1,5");
  CHECK(big.size() == 10);
  CHECK(big.to_string() == "8,2,9,7,10,6,4,3,1,5");
  CHECK(Permutation::parse("").empty());
  CHECK_THROWS_AS(Permutation::parse("122"), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::parse("13"), std::invalid_argument);
  CHECK_THROWS_AS(Permutation(std::vector<int>{0, 1}), std::invalid_argument);
}

TEST_CASE("permutation symmetries") {
  const auto p = Permutation::parse("2413");
  CHECK(p.complement().to_string() == "3142");
  CHECK(p.reverse().to_string() == "3142");
  CHECK(p.inverse().to_string() == "3142");
  CHECK(Permutation::parse("231").inverse().to_string() == "312");
  int count = 0;
  for_each_permutation(4, [&](const Permutation&) { ++count; });
  CHECK(count == 24);
}

TEST_CASE("pattern literal parsing") {
  const auto p = parse_pattern("132:00,12,21,23,30,31");
  CHECK(p.tau().to_string() == "132");
  CHECK(p.shading() == std::vector<Box>{{0, 0}, {1, 2}, {2, 1}, {2, 3}, {3, 0}, {3, 1}});

  const auto classical = parse_pattern("231:");
  CHECK(classical.shading().empty());
  CHECK(classical.length() == 3);

  CHECK_THROWS_AS(parse_pattern("12:33"), ParseError);
  try {
    parse_pattern("12:33");
  } catch (const ParseError& e) {
    CHECK(e.token() == "33");
  }
  CHECK_THROWS_AS(parse_pattern("12:0"), ParseError);
  CHECK_THROWS_AS(parse_pattern("12:001"), ParseError);
  CHECK_THROWS_AS(parse_pattern("11:"), ParseError);
  CHECK_THROWS_AS(parse_pattern("13:"), ParseError);
  CHECK_THROWS_AS(parse_pattern("12"), ParseError);
  CHECK_THROWS_AS(parse_pattern("1a:"), ParseError);
  CHECK_THROWS_AS(parse_pattern("12:00,"), ParseError);
}

TEST_CASE("pattern formatting is canonical") {
  CHECK(format_pattern(MeshPattern(Permutation::parse("12"), {{1, 1}, {0, 0}})) == "12:00,11");
  CHECK(format_pattern(MeshPattern{}) == ":");
  CHECK(parse_pattern("12:22,00,22,11").literal() == "12:00,11,22");

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = testsupport::random_pattern(rng, static_cast<int>(rng() % 5));
    CHECK(parse_pattern(format_pattern(p)) == p);
  }
}

TEST_CASE("occurrence examples") {
  CHECK(is_occurrence(parse_pattern("12:"), Permutation::parse("123"), {0, 2}));
  CHECK_FALSE(is_occurrence(parse_pattern("1:01,10"), Permutation::parse("231"), {0}));
  CHECK_FALSE(is_occurrence(parse_pattern("12:00,01,02,10,11,12,20,21,22"), Permutation::parse("123"), {0, 1}));

  CHECK(count_occurrences(parse_pattern("231:"), Permutation::parse("32154")) == 0);
  CHECK(count_occurrences(parse_pattern("12:"), Permutation::parse("123")) == 3);
  CHECK(count_occurrences(parse_pattern("1:01,10"), Permutation::parse("123")) == 3);
  CHECK(count_occurrences(parse_pattern("1:01,10"), Permutation::parse("231")) == 0);

  const auto occ = list_occurrences(parse_pattern("12:"), Permutation::parse("1324"));
  CHECK(occ == std::vector<OccurrenceWitness>{{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}});
}

TEST_CASE("empty pattern semantics") {
  const auto empty = parse_pattern(":");
  const auto full = parse_pattern(":00");
  CHECK(count_occurrences(empty, Permutation{}) == 1);
  CHECK(count_occurrences(empty, Permutation::parse("312")) == 1);
  CHECK(count_occurrences(full, Permutation{}) == 1);
  CHECK(count_occurrences(full, Permutation::parse("1")) == 0);
}

TEST_CASE("box occupancy") {
  CHECK(box_occupancy(Permutation::parse("12"), {0, 1}) == 0);
  CHECK(box_occupancy(Permutation::parse("123"), {0, 1}) == BoxMask{1} << box_bit(2, {2, 2}));
  CHECK(box_occupancy(Permutation::parse("321"), {0, 2}) == BoxMask{1} << box_bit(2, {1, 1}));
  // pair kernel agrees with the general one
  for_each_permutation(5, [](const Permutation& pi) {
    for (int a = 0; a < 5; ++a)
      for (int b = a + 1; b < 5; ++b) REQUIRE(pair_occupancy(pi, a, b) == box_occupancy(pi, {a, b}));
  });
}

TEST_CASE("pattern symmetries") {
  CHECK(parse_pattern("12:01").complement().literal() == "21:01");
  CHECK(parse_pattern("12:00").reverse().literal() == "21:20");
  CHECK(parse_pattern("132:12").inverse().literal() == "132:21");

  const auto orbit12 = symmetry_orbit(parse_pattern("12:"));
  REQUIRE(orbit12.size() == 2);
  CHECK(orbit12[0].literal() == "12:");
  CHECK(orbit12[1].literal() == "21:");
  CHECK(symmetry_orbit(parse_pattern("12:00,01,10,11")).size() == 4);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = testsupport::random_pattern(rng, 1 + static_cast<int>(rng() % 3));
    const auto orbit = symmetry_orbit(p);
    CHECK(orbit.size() <= 8);
    for (const auto& q : orbit) CHECK(symmetry_orbit(q) == orbit);
    CHECK(p.complement().complement() == p);
    CHECK(p.reverse().reverse() == p);
    CHECK(p.inverse().inverse() == p);
  }
}

TEST_CASE("occurrence counts transport under symmetries, n <= 6") {
  std::mt19937_64 rng(3);
  std::vector<MeshPattern> patterns;
  for (int i = 0; i < 6; ++i) patterns.push_back(testsupport::random_pattern(rng, 2));
  patterns.push_back(testsupport::random_pattern(rng, 1));
  patterns.push_back(testsupport::random_pattern(rng, 3));
  for (const auto& p : patterns) {
    const auto pc = p.complement(), pr = p.reverse(), pinv = p.inverse();
    for (int n = 0; n <= 6; ++n)
      for_each_permutation(n, [&](const Permutation& pi) {
        const auto c = count_occurrences(p, pi);
        REQUIRE(count_occurrences(pc, pi.complement()) == c);
        REQUIRE(count_occurrences(pr, pi.reverse()) == c);
        REQUIRE(count_occurrences(pinv, pi.inverse()) == c);
      });
  }
}

TEST_CASE("shading is monotone") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 400; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 3);
    const auto p = testsupport::random_pattern(rng, k);
    const Box b{static_cast<int>(rng() % (k + 1)), static_cast<int>(rng() % (k + 1))};
    const auto pi = testsupport::random_permutation(rng, static_cast<int>(rng() % 8));
    CHECK(count_occurrences(p.with_box(b), pi) <= count_occurrences(p, pi));
  }
}

TEST_CASE("classical patterns match a plain subsequence counter") {
  for (const char* tau : {"1", "12", "21", "123", "132", "213", "231", "312", "321"}) {
    const auto p = parse_pattern(std::string(tau) + ":");
    const auto t = p.tau();
    for (int n = 0; n <= 6; ++n)
      for_each_permutation(n, [&](const Permutation& pi) {
        std::uint64_t plain = 0;
        const int k = t.size();
        for (std::uint32_t sub = 0; sub < (1u << n); ++sub) {
          if (std::popcount(sub) != k) continue;
          std::vector<int> vals;
          for (int i = 0; i < n; ++i)
            if (sub >> i & 1u) vals.push_back(pi[i]);
          bool same = true;
          for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) same = same && ((vals[a] < vals[b]) == (t[a] < t[b]));
          plain += same;
        }
        REQUIRE(count_occurrences(p, pi) == plain);
      });
  }
}

TEST_CASE("kernel counting equals the definition for all 1024 length-2 patterns on S5") {
  const auto& all = all_length2_patterns();
  REQUIRE(all.size() == 1024);
  for_each_permutation(5, [&](const Permutation& pi) {
    for (const auto& p : all) REQUIRE(count_occurrences(p, pi) == testsupport::naive_count(p, pi));
  });
}

TEST_CASE("length-2 catalogue") {
  const auto& all = all_length2_patterns();
  std::set<std::string> literals;
  for (const auto& p : all) literals.insert(p.literal());
  CHECK(literals.size() == 1024);
  CHECK(literals.count("12:"));
  CHECK(literals.count("21:00,01,02,10,11,12,20,21,22"));
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(length2_index(all[i]) == static_cast<int>(i));
}

TEST_CASE("right-to-left maxima") {
  const auto d = rl_decomposition(Permutation::parse("23471856"));
  REQUIRE(d.maxima.size() == 2);
  CHECK(d.maxima[0] == RightToLeftMaximum{8, 5});
  CHECK(d.maxima[1] == RightToLeftMaximum{6, 7});
  // block of 8: values 7 (between 6 and 8); block of 6: 2,3,4,1,5
  CHECK(d.blocks[0] == std::vector<int>{3});
  CHECK(d.blocks[1] == std::vector<int>{0, 1, 2, 4, 6});

  const auto dec = rl_decomposition(Permutation::parse("321"));
  CHECK(dec.maxima.size() == 3);
  CHECK(dec.maxima[2].value == 1);
  CHECK(rl_decomposition(Permutation::parse("123")).maxima == std::vector<RightToLeftMaximum>{{3, 2}});
  CHECK_THROWS_AS(rl_decomposition(Permutation{}), std::invalid_argument);

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pi = testsupport::random_permutation(rng, 1 + static_cast<int>(rng() % 9));
    const auto r = rl_decomposition(pi);
    CHECK(r.maxima.front().value == pi.size());
    CHECK(static_cast<int>(r.maxima.size()) == count_rl_maxima(pi));
    std::size_t covered = r.maxima.size();
    for (std::size_t i = 0; i < r.maxima.size(); ++i) {
      if (i + 1 < r.maxima.size()) {
        CHECK(r.maxima[i].position < r.maxima[i + 1].position);
        CHECK(r.maxima[i].value > r.maxima[i + 1].value);
      }
      covered += r.blocks[i].size();
    }
    CHECK(covered == static_cast<std::size_t>(pi.size()));
  }
}
