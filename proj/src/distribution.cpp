#include "meshpat/distribution.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "meshpat/errors.hpp"
#include "meshpat/occurrence.hpp"

namespace meshpat {

namespace {

std::size_t row_length(int n, int k) {
  if (k > n) return 1;
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return static_cast<std::size_t>(c) + 1;
}

// Length-2 patterns go through the 9-bit pair kernel, everything else through the definition.
std::uint64_t fast_count(const MeshPattern& p, BoxMask mask, const Permutation& pi) {
  if (p.length() != 2) return count_occurrences(p, pi);
  const bool up = p.tau()[0] == 1;
  std::uint64_t count = 0;
  for (int a = 0; a < pi.size(); ++a)
    for (int b = a + 1; b < pi.size(); ++b)
      if ((pi[a] < pi[b]) == up && (pair_occupancy(pi, a, b) & mask) == 0) ++count;
  return count;
}

bool fast_contains(const MeshPattern& p, BoxMask mask, const Permutation& pi) {
  if (p.length() != 2) return contains(p, pi);
  const bool up = p.tau()[0] == 1;
  for (int a = 0; a < pi.size(); ++a)
    for (int b = a + 1; b < pi.size(); ++b)
      if ((pi[a] < pi[b]) == up && (pair_occupancy(pi, a, b) & mask) == 0) return true;
  return false;
}

BoxMask mask_or_zero(const MeshPattern& p) { return p.length() == 2 ? p.mask() : 0; }

int clamp_threads(int threads) { return std::max(1, threads); }

}  // namespace

std::uint64_t DistributionTable::at(int n, int k) const {
  if (n < 0 || n >= static_cast<int>(rows.size())) return 0;
  const Row& r = rows[static_cast<std::size_t>(n)];
  return k >= 0 && k < static_cast<int>(r.size()) ? r[static_cast<std::size_t>(k)] : 0;
}

void check_depth(int depth, const ScanOptions& opts) {
  if (depth < 0) throw ResourceGuardError("depth must be nonnegative");
  if (depth > opts.max_depth)
    throw ResourceGuardError("depth " + std::to_string(depth) + " exceeds the configured maximum " +
                             std::to_string(opts.max_depth));
}

void parallel_permutations(int n, int threads, const std::function<void(int, const Permutation&)>& fn) {
  if (n == 0) {
    fn(0, Permutation{});
    return;
  }
  threads = std::min(clamp_threads(threads), n);
  auto work = [&](int worker) {
    for (int first = 1 + worker; first <= n; first += threads) {
      std::vector<int> v{first};
      for (int x = 1; x <= n; ++x)
        if (x != first) v.push_back(x);
      do {
        fn(worker, Permutation::unchecked(v));
      } while (std::next_permutation(v.begin() + 1, v.end()));
    }
  };
  if (threads == 1) {
    work(0);
    return;
  }
  std::vector<std::jthread> pool;
  for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
}

DistributionTable distribution(const MeshPattern& p, int depth, const ScanOptions& opts) {
  check_depth(depth, opts);
  const BoxMask mask = mask_or_zero(p);
  DistributionTable t{p, depth, {}};
  for (int n = 0; n <= depth; ++n) {
    const int threads = clamp_threads(opts.threads);
    std::vector<Row> partial(static_cast<std::size_t>(threads), Row(row_length(n, p.length()), 0));
    parallel_permutations(n, threads, [&](int w, const Permutation& pi) {
      ++partial[static_cast<std::size_t>(w)][fast_count(p, mask, pi)];
    });
    Row row(row_length(n, p.length()), 0);
    for (const Row& r : partial)
      for (std::size_t k = 0; k < r.size(); ++k) row[k] += r[k];
    t.rows.push_back(std::move(row));
  }
  return t;
}

AvoidanceSequence avoidance(const MeshPattern& p, int depth, const ScanOptions& opts) {
  check_depth(depth, opts);
  const BoxMask mask = mask_or_zero(p);
  AvoidanceSequence a{p, depth, {}};
  for (int n = 0; n <= depth; ++n) {
    const int threads = clamp_threads(opts.threads);
    std::vector<std::uint64_t> partial(static_cast<std::size_t>(threads), 0);
    parallel_permutations(n, threads, [&](int w, const Permutation& pi) {
      if (!fast_contains(p, mask, pi)) ++partial[static_cast<std::size_t>(w)];
    });
    a.values.push_back(std::accumulate(partial.begin(), partial.end(), std::uint64_t{0}));
  }
  return a;
}

AvoidanceSequence avoidance_of(const DistributionTable& t) {
  AvoidanceSequence a{t.pattern, t.depth, {}};
  for (const Row& r : t.rows) a.values.push_back(r.empty() ? 0 : r[0]);
  return a;
}

JointTable joint_distribution(const MeshPattern& p1, const MeshPattern& p2, int depth, const ScanOptions& opts) {
  check_depth(depth, opts);
  const BoxMask m1 = mask_or_zero(p1), m2 = mask_or_zero(p2);
  JointTable j{p1, p2, depth, {}};
  for (int n = 0; n <= depth; ++n) {
    const std::size_t r1 = row_length(n, p1.length()), r2 = row_length(n, p2.length());
    const int threads = clamp_threads(opts.threads);
    std::vector<std::vector<Row>> partial(static_cast<std::size_t>(threads), std::vector<Row>(r1, Row(r2, 0)));
    parallel_permutations(n, threads, [&](int w, const Permutation& pi) {
      ++partial[static_cast<std::size_t>(w)][fast_count(p1, m1, pi)][fast_count(p2, m2, pi)];
    });
    std::vector<Row> m(r1, Row(r2, 0));
    for (const auto& part : partial)
      for (std::size_t k = 0; k < r1; ++k)
        for (std::size_t l = 0; l < r2; ++l) m[k][l] += part[k][l];
    j.matrices.push_back(std::move(m));
  }
  return j;
}

std::vector<DistributionTable> bulk_scan_length2(int depth, const ScanOptions& opts) {
  check_depth(depth, opts);
  const auto& patterns = all_length2_patterns();
  std::vector<DistributionTable> tables;
  tables.reserve(patterns.size());
  for (const auto& p : patterns) tables.push_back({p, depth, {}});

  for (int n = 0; n <= depth; ++n) {
    const std::size_t width = row_length(n, 2);
    const int threads = std::min(clamp_threads(opts.threads), std::max(n, 1));
    // partial[w][pattern * width + k]
    std::vector<std::vector<std::uint64_t>> partial(static_cast<std::size_t>(threads),
                                                    std::vector<std::uint64_t>(1024 * width, 0));
    parallel_permutations(n, threads, [&](int w, const Permutation& pi) {
      std::array<std::uint32_t, 1024> counts{};
      for (int a = 0; a < pi.size(); ++a)
        for (int b = a + 1; b < pi.size(); ++b) {
          const std::uint32_t base = pi[a] < pi[b] ? 0 : 512;
          const std::uint32_t free = ~pair_occupancy(pi, a, b) & 511u;
          // every shading inside the free boxes sees this pair as an occurrence
          for (std::uint32_t s = free;; s = (s - 1) & free) {
            ++counts[base + s];
            if (s == 0) break;
          }
        }
      auto& out = partial[static_cast<std::size_t>(w)];
      for (std::size_t i = 0; i < 1024; ++i) ++out[i * width + counts[i]];
    });
    for (std::size_t i = 0; i < 1024; ++i) {
      Row row(width, 0);
      for (const auto& part : partial)
        for (std::size_t k = 0; k < width; ++k) row[k] += part[i * width + k];
      tables[i].rows.push_back(std::move(row));
    }
  }
  return tables;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

Signature Signature::of(const DistributionTable& t) {
  std::ostringstream os;
  for (std::size_t n = 1; n < t.rows.size(); ++n) {
    os << 'n' << n << ':';
    for (std::size_t k = 0; k < t.rows[n].size(); ++k) os << (k ? "," : "") << k << '=' << t.rows[n][k];
    os << ';';
  }
  Signature s;
  s.text_ = os.str();
  s.digest_ = fnv1a64(s.text_);
  return s;
}

Signature Signature::of_avoidance(const AvoidanceSequence& a) {
  std::ostringstream os;
  for (std::size_t n = 1; n < a.values.size(); ++n) os << 'n' << n << '=' << a.values[n] << ';';
  Signature s;
  s.text_ = os.str();
  s.digest_ = fnv1a64(s.text_);
  return s;
}

// ---- cache ----

DistributionCache::DistributionCache(std::filesystem::path directory)
    : file_(std::move(directory) / "distributions.jsonl"), write_mutex_(std::make_shared<std::mutex>()) {}

std::optional<DistributionCache> DistributionCache::from_env() {
  const char* dir = std::getenv(kEnvVar);
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return DistributionCache(dir);
}

std::vector<std::optional<DistributionTable>> DistributionCache::get_many(const std::vector<MeshPattern>& patterns,
                                                                          int depth) const {
  std::map<std::string, std::size_t> wanted;
  for (std::size_t i = 0; i < patterns.size(); ++i) wanted.emplace(patterns[i].literal(), i);
  std::vector<std::map<int, Row>> found(patterns.size());

  std::ifstream in(file_);
  if (in) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        throw CacheError(file_.string() + ":" + std::to_string(lineno) + ": " + e.what());
      }
      if (j.value("version", -1) != kFormatVersion) continue;  // stale rows are recomputed
      const auto it = wanted.find(j.value("pattern", std::string{}));
      if (it == wanted.end()) continue;
      const int n = j.value("n", -1);
      if (n < 0 || n > depth) continue;
      found[it->second][n] = j.at("counts").get<Row>();
    }
  }

  std::vector<std::optional<DistributionTable>> out(patterns.size());
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    if (static_cast<int>(found[i].size()) != depth + 1) continue;
    DistributionTable t{patterns[i], depth, {}};
    for (auto& [n, row] : found[i]) t.rows.push_back(std::move(row));
    out[i] = std::move(t);
  }
  return out;
}

std::optional<DistributionTable> DistributionCache::get(const MeshPattern& p, int depth) const {
  return get_many({p}, depth).front();
}

void DistributionCache::put(const DistributionTable& t) { put_all({t}); }

void DistributionCache::put_all(const std::vector<DistributionTable>& tables) {
  std::lock_guard lock(*write_mutex_);
  std::error_code ec;
  std::filesystem::create_directories(file_.parent_path(), ec);
  std::ofstream out(file_, std::ios::app);
  if (!out) throw CacheError("cannot open cache file " + file_.string());
  for (const auto& t : tables)
    for (std::size_t n = 0; n < t.rows.size(); ++n) {
      nlohmann::json j{{"version", kFormatVersion}, {"pattern", t.pattern.literal()}, {"n", n}, {"counts", t.rows[n]}};
      out << j.dump() << '\n';
    }
  if (!out) throw CacheError("write failed for cache file " + file_.string());
}

}  // namespace meshpat
