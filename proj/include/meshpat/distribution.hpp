#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "meshpat/pattern.hpp"

namespace meshpat {

using Row = std::vector<std::uint64_t>;

struct DistributionTable {
  MeshPattern pattern;
  int depth = 0;
  std::vector<Row> rows;  // rows[n][k] = s_{n,k}, n = 0..depth

  std::uint64_t at(int n, int k) const;
  friend bool operator==(const DistributionTable&, const DistributionTable&) = default;
};

struct AvoidanceSequence {
  MeshPattern pattern;
  int depth = 0;
  std::vector<std::uint64_t> values;  // s_{n,0}, n = 0..depth
  friend bool operator==(const AvoidanceSequence&, const AvoidanceSequence&) = default;
};

struct JointTable {
  MeshPattern first;
  MeshPattern second;
  int depth = 0;
  std::vector<std::vector<Row>> matrices;  // matrices[n][k][l]
};

struct ScanOptions {
  int threads = 1;
  int max_depth = 9;
};

/// Throws ResourceGuardError when depth exceeds opts.max_depth (or is negative).
void check_depth(int depth, const ScanOptions& opts);

DistributionTable distribution(const MeshPattern& p, int depth, const ScanOptions& opts = {});
AvoidanceSequence avoidance(const MeshPattern& p, int depth, const ScanOptions& opts = {});
JointTable joint_distribution(const MeshPattern& p1, const MeshPattern& p2, int depth, const ScanOptions& opts = {});

AvoidanceSequence avoidance_of(const DistributionTable& t);

/// Tables for all 1024 length-2 patterns, in the order of all_length2_patterns().
std::vector<DistributionTable> bulk_scan_length2(int depth, const ScanOptions& opts = {});

/// Runs fn(worker, pi) over S_n split among `threads` workers by first entry.
/// Each worker sees its permutations in lexicographic order.
void parallel_permutations(int n, int threads, const std::function<void(int, const Permutation&)>& fn);

/// Byte-stable text of rows 1..depth plus a 64-bit FNV-1a digest of that text.
class Signature {
 public:
  static Signature of(const DistributionTable& t);
  static Signature of_avoidance(const AvoidanceSequence& a);

  const std::string& text() const noexcept { return text_; }
  std::uint64_t digest() const noexcept { return digest_; }

  friend bool operator==(const Signature& a, const Signature& b) { return a.text_ == b.text_; }
  friend auto operator<=>(const Signature& a, const Signature& b) { return a.text_ <=> b.text_; }

 private:
  std::string text_;
  std::uint64_t digest_ = 0;
};

std::uint64_t fnv1a64(std::string_view bytes);

/// Line-delimited JSON store of distribution rows, one {version, pattern, n, counts} object per line.
class DistributionCache {
 public:
  static constexpr int kFormatVersion = 1;
  static constexpr const char* kEnvVar = "MESHPAT_CACHE_DIR";

  explicit DistributionCache(std::filesystem::path directory);

  /// Cache rooted at $MESHPAT_CACHE_DIR, or nullopt when unset/empty.
  static std::optional<DistributionCache> from_env();

  const std::filesystem::path& file() const noexcept { return file_; }

  /// Table with rows 0..depth if every row is present at the current version.
  std::optional<DistributionTable> get(const MeshPattern& p, int depth) const;
  /// One pass over the file; entry i is nullopt when patterns[i] is incomplete.
  std::vector<std::optional<DistributionTable>> get_many(const std::vector<MeshPattern>& patterns, int depth) const;
  void put(const DistributionTable& t);
  void put_all(const std::vector<DistributionTable>& tables);

 private:
  std::filesystem::path file_;
  std::shared_ptr<std::mutex> write_mutex_;
};

}  // namespace meshpat
