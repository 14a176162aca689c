#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "meshpat/distribution.hpp"
#include "meshpat/numeric.hpp"

namespace meshpat {

/// Unsigned Stirling numbers of the first kind; 0 outside 0 <= k <= n.
BigInt stirling_first(int n, int k);

/// H_n = 1 + 1/2 + ... + 1/n, H_0 = 0.
Rational harmonic(int n);

/// Alternating-sum Eulerian form; 0 for k outside 0..n-1.
BigInt eulerian_snk(int n, int k);

enum class FormulaKind {
  DistributionClosedForm,
  DistributionRecurrence,
  AvoidanceClosedForm,
  AvoidanceRecurrence,
  GeneratingFunction,
};

std::string to_string(FormulaKind kind);

struct FormulaRef {
  std::vector<int> class_ids;  // classes the statement covers
  FormulaKind kind;
  std::string evaluator;       // unique id
  std::string source;
  bool primary = true;         // false for variants kept only for adjudication
  int valid_from = 0;          // smallest n the statement claims
  std::string note;
};

const std::vector<FormulaRef>& formula_registry();
const FormulaRef& formula_by_evaluator(const std::string& evaluator);

/// Distribution row s_{n,0..} (trailing zeros trimmed) from the primary registered
/// formula for the class. Throws NoFormulaError naming the tabulated status otherwise.
std::vector<BigInt> formula_distribution(int class_id, int n);

/// s_{n,0} from the primary avoidance formula (or a distribution formula's k = 0 entry).
BigInt formula_avoidance(int class_id, int n);

/// Evaluates one registry entry. Avoidance entries return a single value.
std::vector<BigInt> evaluate_formula(const std::string& evaluator, int n);

/// s_{n,k,l} for class 73's representative (occurrences k, right-to-left maxima l).
struct RefinedTable {
  int n = 0;
  std::vector<std::vector<BigInt>> counts;  // counts[k][l]
  BigInt at(int k, int l) const;
};

RefinedTable class73_refined(int n);
/// s_{n,k} from the aggregate recurrence over the refined table of size n-1.
std::vector<BigInt> class73_aggregate(int n);

struct FormulaVerdict {
  std::string evaluator;
  bool verified = false;
  int checked_through = 0;
  std::string first_mismatch;  // empty when verified
};

/// Compares each registry entry with brute-force tables (a full length-2 scan) for every
/// member of every covered class, for valid_from <= n <= depth of the tables.
std::vector<FormulaVerdict> verify_formulas(const std::vector<DistributionTable>& tables);

nlohmann::json registry_json(const std::vector<FormulaVerdict>& verdicts);

struct GfVerdict {
  std::string key;
  std::string mode;  // "avoidance" or "distribution"
  bool verified = false;
  int checked_through = 0;
  std::string first_mismatch;
};

/// Expands every registered generating function to the depth of `tables` and compares each
/// coefficient (all q-powers in distribution mode) with brute force for every class member.
std::vector<GfVerdict> verify_gf(const std::vector<DistributionTable>& tables);

nlohmann::json gf_json(const std::vector<GfVerdict>& verdicts);

}  // namespace meshpat
