#include "meshpat/bijections.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

#include "meshpat/distribution.hpp"
#include "meshpat/errors.hpp"
#include "meshpat/occurrence.hpp"

namespace meshpat {

namespace {

void require_nonempty(const Permutation& pi, const char* who) {
  if (pi.empty()) throw std::invalid_argument(std::string(who) + ": empty permutation");
}

// Rewrites the values sitting at `positions` along the cycle order[0] -> order[1] -> ... -> order[0].
// The value set must come out unchanged; anything else is a bug in the caller.
void cycle_values(std::vector<int>& v, const std::vector<int>& positions, const std::vector<int>& order) {
  std::map<int, int> to;
  for (std::size_t t = 0; t < order.size(); ++t) to[order[t]] = order[(t + 1) % order.size()];
  std::vector<int> before, after;
  for (int p : positions) {
    auto it = to.find(v[p]);
    if (it == to.end()) throw std::logic_error("cycle_values: value outside the cycle");
    before.push_back(v[p]);
    v[p] = it->second;
    after.push_back(v[p]);
  }
  std::sort(before.begin(), before.end());
  std::sort(after.begin(), after.end());
  if (before != after) throw std::logic_error("cycle_values: value set changed");
}

// Complement the values at `positions` among themselves: k-th smallest <-> k-th largest.
void complement_within(std::vector<int>& v, const std::vector<int>& positions) {
  std::vector<int> vals;
  for (int p : positions) vals.push_back(v[p]);
  std::vector<int> sorted = vals;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  for (int p : positions) {
    auto idx = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), v[p]) - sorted.begin());
    v[p] = sorted[m - 1 - idx];
  }
}

std::vector<int> positions_left_below(const std::vector<int>& v, int end_pos, int bound) {
  std::vector<int> out;
  for (int p = 0; p < end_pos; ++p)
    if (v[p] < bound) out.push_back(p);
  return out;
}

std::vector<int> sorted_values(const std::vector<int>& v, const std::vector<int>& positions) {
  std::vector<int> out;
  for (int p : positions) out.push_back(v[p]);
  std::sort(out.begin(), out.end());
  return out;
}

bool occ(const MeshPattern& p, const std::vector<int>& v, int a, int b) {
  return is_occurrence(p, Permutation::unchecked(v), {a, b});
}

const MeshPattern& pat(const char* lit) {
  static std::map<std::string, MeshPattern> memo;
  static std::mutex mu;
  std::lock_guard lock(mu);
  auto it = memo.find(lit);
  if (it == memo.end()) it = memo.emplace(lit, MeshPattern::parse(lit)).first;
  return it->second;
}

}  // namespace

Permutation keep_max_complement(const Permutation& pi) {
  require_nonempty(pi, "keep_max_complement");
  const int n = pi.size();
  std::vector<int> v(pi.entries().begin(), pi.entries().end());
  for (int& x : v)
    if (x != n) x = n - x;
  return Permutation::unchecked(std::move(v));
}

Permutation keep_max_reverse_left(const Permutation& pi) {
  require_nonempty(pi, "keep_max_reverse_left");
  std::vector<int> v(pi.entries().begin(), pi.entries().end());
  const int q = pi.position_of(pi.size());
  std::reverse(v.begin(), v.begin() + q);
  return Permutation::unchecked(std::move(v));
}

Permutation class2_map(const Permutation& pi) {
  const int n = pi.size();
  if (n < 3) return pi;
  const auto e = pi.entries();
  const int p = pi.position_of(n - 1);
  const int q = pi.position_of(n);
  auto seg = [&](int lo, int hi) { return std::vector<int>(e.begin() + lo, e.begin() + hi); };
  std::vector<int> out;
  auto put = [&](const std::vector<int>& s) { out.insert(out.end(), s.begin(), s.end()); };

  if (p == 0 && q == n - 1) return pi;
  if (p == 0 && q == 1) {
    // (n-1) n B  ->  B (n-1) n
    put(seg(2, n));
    out.push_back(n - 1);
    out.push_back(n);
  } else if (p == 0) {
    // (n-1) A n B  ->  A (n-1) B n, A and B nonempty
    put(seg(1, q));
    out.push_back(n - 1);
    put(seg(q + 1, n));
    out.push_back(n);
  } else if (q == n - 1 && p == n - 2) {
    out.push_back(n - 1);
    out.push_back(n);
    put(seg(0, p));
  } else if (q == n - 1) {
    out.push_back(n - 1);
    put(seg(0, p));
    out.push_back(n);
    put(seg(p + 1, n - 1));
  } else {
    return pi;
  }
  return Permutation::unchecked(std::move(out));
}

Permutation bij46(const Permutation& pi) {
  if (pi.size() < 2) return pi;
  const MeshPattern& p1 = pat("12:01,10,11,12,22");
  const MeshPattern& p2 = pat("12:00,10,11,12,22");
  const RLDecomposition d = rl_decomposition(pi);
  std::vector<bool> is_max(static_cast<std::size_t>(pi.size()), false);
  for (const auto& r : d.maxima) is_max[r.position] = true;

  std::vector<int> v(pi.entries().begin(), pi.entries().end());
  for (auto it = d.maxima.rbegin(); it != d.maxima.rend(); ++it) {
    const int rp = it->position;
    if (rp == 0 || is_max[rp - 1]) continue;
    const bool o1 = occ(p1, v, rp - 1, rp);
    const bool o2 = occ(p2, v, rp - 1, rp);
    if (o1 == o2) continue;
    const auto positions = positions_left_below(v, rp, it->value);
    auto a = sorted_values(v, positions);
    // o1: x_i is the largest of S_i and it goes to the bottom; o2: the reverse
    if (o2) std::reverse(a.begin(), a.end());
    cycle_values(v, positions, a);
  }
  return Permutation::unchecked(std::move(v));
}

Permutation bij49(const Permutation& pi) {
  if (pi.size() < 2) return pi;
  const MeshPattern& p1 = pat("12:01,11,12,22");
  const MeshPattern& p2 = pat("12:00,10,12,22");
  const RLDecomposition d = rl_decomposition(pi);
  std::vector<int> v(pi.entries().begin(), pi.entries().end());

  for (int i = static_cast<int>(d.maxima.size()) - 1; i >= 1; --i) {
    const int rp = d.maxima[i].position;
    const int r = d.maxima[i].value;
    int a1 = -1, a2 = -1;
    for (int p = 0; p < rp; ++p) {
      if (a1 < 0 && occ(p1, v, p, rp)) a1 = p;
      if (a2 < 0 && occ(p2, v, p, rp)) a2 = p;
    }
    if ((a1 < 0) == (a2 < 0)) continue;
    const auto m = positions_left_below(v, d.maxima[i - 1].position, r);
    if (m.empty()) continue;
    const int apos = a1 >= 0 ? a1 : a2;
    auto vals = sorted_values(v, m);
    if (a2 >= 0) std::reverse(vals.begin(), vals.end());
    std::vector<int> order{v[apos]};
    order.insert(order.end(), vals.begin(), vals.end());
    std::vector<int> positions = m;
    positions.push_back(apos);
    cycle_values(v, positions, order);
  }
  return Permutation::unchecked(std::move(v));
}

Permutation bij73(const Permutation& pi) {
  if (pi.size() < 2) return pi;
  const RLDecomposition d = rl_decomposition(pi);
  std::vector<int> v(pi.entries().begin(), pi.entries().end());
  for (const auto& block : d.blocks) {
    const std::size_t m = block.size();
    for (std::size_t t = 0; t < m / 2; ++t) std::swap(v[block[t]], v[block[m - 1 - t]]);
  }
  return Permutation::unchecked(std::move(v));
}

Permutation bij75(const Permutation& pi) {
  if (pi.size() < 2) return pi;
  const RLDecomposition d = rl_decomposition(pi);
  std::vector<int> v(pi.entries().begin(), pi.entries().end());
  for (int i = static_cast<int>(d.maxima.size()) - 1; i >= 0; --i) {
    const int r = d.maxima[i].value;
    complement_within(v, positions_left_below(v, d.maxima[i].position, r));
    if (i > 0) complement_within(v, positions_left_below(v, d.maxima[i - 1].position, r));
  }
  return Permutation::unchecked(std::move(v));
}

const std::vector<BijectionSpec>& bijection_registry() {
  static const std::vector<BijectionSpec> reg = [] {
    auto P = [](const char* s) { return MeshPattern::parse(s); };
    return std::vector<BijectionSpec>{
        {"bij46", P("12:01,10,11,12,22"), P("12:00,10,11,12,22"), "46", bij46},
        {"bij49", P("12:01,11,12,22"), P("12:00,10,12,22"), "49", bij49},
        {"bij73", P("12:11,21,22"), P("12:01,21,22"), "73", bij73},
        {"bij75", P("12:01,12,22"), P("12:00,12,22"), "75", bij75},
        {"class2", P("12:00,01,02,11,12,21,22"), P("12:01,02,11,12,20,21,22"), "2", class2_map},
        {"lemma-left", P("12:01,02,12,22"), P("12:00,02,12,22"), "lemma-left", keep_max_complement},
        {"lemma-right", P("12:01,02,12,22"), P("12:02,11,12,22"), "lemma-right", keep_max_reverse_left},
    };
  }();
  return reg;
}

const BijectionSpec& bijection_by_name(std::string_view name) {
  for (const auto& b : bijection_registry())
    if (b.name == name) return b;
  throw Error("unknown bijection '" + std::string(name) + "'");
}

namespace {

// Runs `probe` over S_1..S_max_n; probe returns a counterexample or nothing.
// Keeps the lexicographically smallest failing input of the smallest failing n.
template <class Probe>
BijectionVerdict sweep(const char* check, int max_n, int threads, Probe probe) {
  BijectionVerdict verdict;
  verdict.check = check;
  verdict.depth = max_n;
  for (int n = 1; n <= max_n; ++n) {
    const int workers = std::max(1, threads);
    std::vector<std::optional<Counterexample>> best(static_cast<std::size_t>(workers));
    std::vector<std::uint64_t> seen(static_cast<std::size_t>(workers), 0);
    parallel_permutations(n, workers, [&](int w, const Permutation& pi) {
      ++seen[w];
      auto& slot = best[w];
      if (slot && slot->input < pi) return;
      if (auto c = probe(pi)) slot = std::move(c);
    });
    for (auto s : seen) verdict.checked += s;
    for (auto& s : best) {
      if (!s) continue;
      if (!verdict.counterexample || s->input < verdict.counterexample->input) verdict.counterexample = std::move(s);
    }
    if (verdict.counterexample) {
      verdict.pass = false;
      return verdict;
    }
  }
  return verdict;
}

}  // namespace

BijectionVerdict verify_involution(const PermutationMap& f, int max_n, int threads) {
  return sweep("involution", max_n, threads, [&](const Permutation& pi) -> std::optional<Counterexample> {
    Permutation y = f(pi);
    Permutation z = f(y);
    if (z == pi) return std::nullopt;
    Counterexample c;
    c.input = pi;
    c.image = y;
    c.image_of_image = z;
    c.reason = "f(f(pi)) != pi";
    return c;
  });
}

BijectionVerdict verify_joint_swap(const PermutationMap& f, const MeshPattern& p1, const MeshPattern& p2,
                                   int max_n, int threads) {
  return sweep("joint-swap", max_n, threads, [&](const Permutation& pi) -> std::optional<Counterexample> {
    Permutation y = f(pi);
    Counterexample c;
    c.input = pi;
    c.image = y;
    c.image_of_image = f(y);
    c.p1_before = count_occurrences(p1, pi);
    c.p2_before = count_occurrences(p2, pi);
    c.p1_after = count_occurrences(p1, y);
    c.p2_after = count_occurrences(p2, y);
    if (c.p1_before == c.p2_after && c.p2_before == c.p1_after) return std::nullopt;
    c.reason = "occurrence counts not exchanged";
    return c;
  });
}

PermutationMap with_seeded_fault(PermutationMap f, int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("with_seeded_fault: need n >= 2");
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = i + 1;
  std::mt19937_64 rng(seed);
  std::shuffle(v.begin(), v.end(), rng);
  const Permutation target(v);
  return [f = std::move(f), target](const Permutation& pi) {
    Permutation y = f(pi);
    if (pi != target) return y;
    std::vector<int> w(y.entries().begin(), y.entries().end());
    std::swap(w[w.size() - 1], w[w.size() - 2]);
    return Permutation::unchecked(std::move(w));
  };
}

std::vector<PatternPair> lemma_left_pairs() {
  const std::vector<Box> base{{0, 2}, {1, 2}, {2, 2}};
  std::vector<PatternPair> out;
  for (int bits = 0; bits < 64; ++bits) {
    std::vector<Box> a = base, b = base;
    for (int c = 0; c < 3; ++c) {
      // x_{2c+1} sits at row 1, x_{2c+2} at row 0; the partner swaps the two rows
      if (bits >> (2 * c) & 1) { a.push_back({c, 1}); b.push_back({c, 0}); }
      if (bits >> (2 * c + 1) & 1) { a.push_back({c, 0}); b.push_back({c, 1}); }
    }
    out.push_back({MeshPattern(Permutation::identity(2), a), MeshPattern(Permutation::identity(2), b)});
  }
  return out;
}

std::vector<PatternPair> lemma_right_pairs() {
  const std::vector<Box> base{{0, 2}, {1, 2}, {2, 2}};
  std::vector<PatternPair> out;
  for (int bits = 0; bits < 16; ++bits) {
    std::vector<Box> a = base, b = base;
    for (int c = 0; c < 2; ++c) {
      // columns 0 and 1 trade places in the partner
      for (int row = 0; row < 2; ++row) {
        if (!(bits >> (2 * c + (1 - row)) & 1)) continue;
        a.push_back({c, row});
        b.push_back({1 - c, row});
      }
    }
    out.push_back({MeshPattern(Permutation::identity(2), a), MeshPattern(Permutation::identity(2), b)});
  }
  return out;
}

}  // namespace meshpat
