#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "meshpat/distribution.hpp"
#include "meshpat/pattern.hpp"

namespace meshpat {

/// One numbered class of the seed ledger. Patterns are stored with their full symmetry
/// orbits, so members cover both tau = 12 and tau = 21.
struct ClassRecord {
  int class_id = 0;
  std::vector<MeshPattern> representatives;
  std::vector<std::vector<MeshPattern>> cells;          // as listed (tau = 12 only)
  std::vector<std::vector<MeshPattern>> proven_blocks;  // orbit-closed
  std::vector<MeshPattern> members;                     // orbit-closed, sorted
  bool conjectured = false;
  std::string status;         // "A", "D" or "?" as tabulated
  std::string status_source;  // "theorem", "cite:<key>" or empty
  std::string proof;
};

/// Group of blocks asserted to share avoidance sequences. Entries are "<id>" for every block
/// of a class or "<id>.<b>" for block b (1-based) of a class.
struct WilfMerge {
  std::vector<std::string> members;
  std::string source;
  std::string strength = "proved";  // "proved" or "sketched" (argument given with details omitted)
};

struct ClassSeed {
  std::string format;
  std::vector<ClassRecord> classes;
  std::vector<WilfMerge> wilf_merges;
  std::vector<std::vector<int>> shading_groups;

  const ClassRecord& by_id(int class_id) const;
};

/// Parses the seed JSON. Throws LedgerError on malformed content or overlapping classes.
ClassSeed parse_class_seed(std::string_view json_text);
ClassSeed load_class_seed(const std::string& path);

/// The seed compiled into the library.
const ClassSeed& builtin_seed();

/// Union of the symmetry orbits of the given patterns, sorted.
std::vector<MeshPattern> orbit_closure(const std::vector<MeshPattern>& patterns);

/// Lookup helper for tables from bulk_scan_length2.
const DistributionTable& table_for(const std::vector<DistributionTable>& tables, const MeshPattern& p);

struct SignatureClass {
  MeshPattern representative;  // smallest literal
  std::vector<MeshPattern> members;
  Signature signature;
  std::optional<int> class_id;
};

struct NumberingResult {
  std::map<int, std::size_t> class_to_signature;  // class id -> index into classes
  std::vector<std::size_t> unassigned;
  std::vector<std::string> problems;
};

struct ClassificationReport {
  int depth = 0;
  std::vector<SignatureClass> classes;  // ordered by representative literal
  int distribution_classes = 0;
  int avoidance_sequences = 0;
  int proven_blocks = 0;
  std::vector<std::string> discrepancies;
};

/// Partition by Signature. With a seed, also overlays class ids and records discrepancies.
ClassificationReport classify(const std::vector<DistributionTable>& tables, const ClassSeed* seed = nullptr);
ClassificationReport classify(int depth, const ScanOptions& opts = {}, const ClassSeed* seed = nullptr);

NumberingResult load_class_numbering(const ClassSeed& seed, const std::vector<SignatureClass>& classes);

struct ProvenMergeReport {
  int block_count = 0;
  std::vector<int> split_classes;       // classes with more than one proven block
  std::vector<std::string> violations;  // blocks that are not signature-homogeneous, coverage gaps
};

ProvenMergeReport proven_merge_report(const ClassSeed& seed, const std::vector<DistributionTable>& tables);

struct WilfReport {
  int depth = 0;
  int observed_sequences = 0;
  int proven_merge_count = 0;     // "proved" merges only
  int with_sketched_count = 0;    // also applying "sketched" merges
  std::vector<std::vector<std::string>> proven_groups;  // block labels per component
  std::vector<std::string> violations;                  // ledger merges contradicted by data
};

WilfReport wilf_classify(const ClassSeed& seed, const std::vector<DistributionTable>& tables);

struct CoincidenceVerdict {
  std::vector<int> group;
  bool equal = false;
  std::string detail;
};

std::vector<CoincidenceVerdict> verify_shading_coincidences(const ClassSeed& seed,
                                                            const std::vector<DistributionTable>& tables,
                                                            const std::vector<std::vector<int>>& groups);

struct ConjectureVerdict {
  int class_id = 0;
  int depth = 0;
  bool equal = false;
  int first_difference = -1;  // smallest n where the blocks disagree
};

ConjectureVerdict conjecture_check(const ClassSeed& seed, int class_id, const std::vector<DistributionTable>& tables);

struct CellAudit {
  int cells_checked = 0;
  std::vector<std::string> violations;
};

/// Every listed cell must equal orbit-of-member restricted to tau = 12 and be signature-equal.
CellAudit audit_trivial_cells(const ClassSeed& seed, const std::vector<DistributionTable>& tables);

nlohmann::json to_json(const ClassificationReport& report);

}  // namespace meshpat
