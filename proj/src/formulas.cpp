#include "meshpat/formulas.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "meshpat/catalog.hpp"
#include "meshpat/errors.hpp"
#include "meshpat/series.hpp"

namespace meshpat {

namespace {

using Vec = std::vector<BigInt>;

Vec trimmed(Vec v) {
  while (v.size() > 1 && v.back() == 0) v.pop_back();
  return v;
}

BigInt exact_div(const BigInt& a, const BigInt& b) {
  if (a % b != 0) throw std::domain_error("inexact division " + a.str() + " / " + b.str());
  return a / b;
}

// Memo table for two-index recurrences; reads outside the stored range are 0.
struct Table2 {
  std::vector<Vec> rows;
  BigInt at(int n, int k) const {
    if (n < 0 || k < 0 || n >= static_cast<int>(rows.size())) return 0;
    const auto& r = rows[static_cast<std::size_t>(n)];
    return k < static_cast<int>(r.size()) ? r[static_cast<std::size_t>(k)] : BigInt(0);
  }
};

// Rows 0..n; base rows as given, later rows filled by step(t, m, k) for k = 0..m.
Vec run_recurrence(int n, std::vector<Vec> base, const std::function<BigInt(const Table2&, int, int)>& step) {
  Table2 t{std::move(base)};
  for (int m = static_cast<int>(t.rows.size()); m <= n; ++m) {
    Vec row(static_cast<std::size_t>(m) + 1);
    for (int k = 0; k <= m; ++k) row[static_cast<std::size_t>(k)] = step(t, m, k);
    t.rows.push_back(std::move(row));
  }
  return trimmed(t.rows[static_cast<std::size_t>(n)]);
}

Vec two_term(int n, const BigInt& s1) { return trimmed({factorial(n) - s1, s1}); }

Vec dist_class1(int n) {
  BigInt s1 = 0;
  for (int i = 1; i <= n - 1; ++i) s1 += factorial(i - 1) * factorial(n - i - 1);
  return two_term(n, s1);
}

Vec dist_class2(int n) { return two_term(n, factorial(n - 1)); }

Vec dist_class2_printed(int n) { return trimmed({factorial(n - 1), factorial(n) - factorial(n - 1)}); }

Vec dist_class25(int n) {
  Vec row(static_cast<std::size_t>(n));
  for (int k = 0; k <= n - 2; ++k) row[static_cast<std::size_t>(k)] = exact_div(factorial(n), BigInt((k + 1) * (k + 2)));
  row[static_cast<std::size_t>(n - 1)] = factorial(n - 1);
  return trimmed(row);
}

Vec dist_class31(int n) {
  BigInt s1 = 0;
  for (int i = 0; i <= n - 2; ++i) s1 += factorial(i) * factorial(n - i - 1);
  return two_term(n, s1);
}

Vec dist_class32(int n) {
  BigInt s1 = 0;
  for (int i = 1; i <= n - 1; ++i) s1 += exact_div(factorial(n - 1), BigInt(i));
  return two_term(n, s1);
}

Vec dist_class33(int n) {
  if (n < 2) return {1};
  const BigInt half = exact_div(factorial(n), 2);
  return {half, half};
}

Vec dist_class45(int n) { return trimmed({factorial(n - 1), (n - 1) * factorial(n - 1)}); }

Vec dist_class53(int n) {
  if (n < 2) return {1};
  return two_term(n, factorial(n - 2));
}

Vec dist_class15(int n) {
  if (n == 0) return {1};
  return run_recurrence(n, {{1}, {1, 0}}, [](const Table2& t, int m, int k) {
    return t.at(m - 1, k) + (m - 1) * t.at(m - 1, k - 1);
  });
}

Vec dist_class68(int n) {
  if (n == 0) return {1};
  return run_recurrence(n, {{1}, {1}}, [](const Table2& t, int m, int k) {
    if (k == 0) return factorial(m - 1);
    return t.at(m - 1, k - 1) + (m - 1) * t.at(m - 1, k);
  });
}

const std::vector<Vec> kKzBase{{1}, {1}, {1, 1}};

Vec dist_class61(int n) {
  if (n < 3) return kKzBase[static_cast<std::size_t>(n)];
  return run_recurrence(n, kKzBase, [](const Table2& t, int m, int k) {
    return t.at(m - 1, k - 1) + (k + 1) * t.at(m - 1, k + 1) + (m - k - 1) * t.at(m - 1, k);
  });
}

Vec dist_class37(int n) {
  if (n < 3) return kKzBase[static_cast<std::size_t>(n)];
  return run_recurrence(n, kKzBase, [](const Table2& t, int m, int k) {
    return (k + 1) * t.at(m - 1, k + 1) + (m - k) * t.at(m - 1, k) - t.at(m - 2, k) + t.at(m - 2, k - 1);
  });
}

Vec dist_class81(int n) {
  if (n < 3) return kKzBase[static_cast<std::size_t>(n)];
  return run_recurrence(n, kKzBase, [](const Table2& t, int m, int k) {
    return (k + 1) * t.at(m - 1, k + 1) + (m - k - 1) * t.at(m - 1, k) + t.at(m - 1, k - 1) +
           (k + 1) * t.at(m - 2, k + 1) + (m - 2 * k - 2) * t.at(m - 2, k) - (m - k - 1) * t.at(m - 2, k - 1);
  });
}

Vec dist_class74(int n) {
  if (n == 0) return {1};
  Vec row;
  for (int k = 0; k <= n - 1; ++k) row.push_back(eulerian_snk(n, k));
  return trimmed(row);
}

Vec dist_class73(int n) { return class73_aggregate(n); }

// ---- avoidance ----

BigInt avoid_harmonic_sum(int n) {
  if (n == 0) return 1;
  BigInt s = factorial(n);
  for (int i = 1; i <= n - 1; ++i) s -= exact_div(factorial(n - 1), BigInt(i));
  return s;
}

BigInt avoid_class62(int n) {
  if (n == 0) return 1;
  return to_integer(Rational(factorial(n - 1)) * (Rational(n) - harmonic(n - 1)));
}

BigInt avoid_alternating_literal(int n) {
  BigInt s = 0;
  for (int k = 0; k <= n; ++k) {
    const BigInt term = (n - k + 1) * exact_div(factorial(n), factorial(k));
    s += k % 2 == 0 ? term : BigInt(-term);
  }
  return s;
}

BigInt avoid_alternating_shifted(int n) {
  if (n == 0) return 1;
  BigInt s = 0;
  for (int k = 0; k <= n - 1; ++k) {
    const BigInt term = (n - k) * exact_div(factorial(n - 1), factorial(k));
    s += k % 2 == 0 ? term : BigInt(-term);
  }
  return s;
}

BigInt avoid_two_term(int n) {
  BigInt prev = 0, cur = 1;  // s_{-1}, s_0
  for (int m = 1; m <= n; ++m) {
    BigInt next = m * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

BigInt avoid_gf(int n) {
  const auto s = gf_expand("19", n, GfMode::Avoidance);
  return to_integer(extract(s, n, 0));
}

using Evaluator = std::function<Vec(int)>;

Evaluator single(std::function<BigInt(int)> f) {
  return [f = std::move(f)](int n) { return Vec{f(n)}; };
}

const std::map<std::string, Evaluator>& evaluators() {
  static const std::map<std::string, Evaluator> table = {
      {"class1", dist_class1},
      {"class2", dist_class2},
      {"class2-printed", dist_class2_printed},
      {"class15", dist_class15},
      {"class25", dist_class25},
      {"class31", dist_class31},
      {"class32", dist_class32},
      {"class33", dist_class33},
      {"class37", dist_class37},
      {"class45", dist_class45},
      {"class53", dist_class53},
      {"class61", dist_class61},
      {"class68", dist_class68},
      {"class73", dist_class73},
      {"class74", dist_class74},
      {"class81", dist_class81},
      {"avoid-one", single([](int) { return BigInt(1); })},
      {"avoid-factorial-n-1", single([](int n) { return n == 0 ? BigInt(1) : factorial(n - 1); })},
      {"avoid-half-factorial", single([](int n) { return n < 2 ? BigInt(1) : exact_div(factorial(n), 2); })},
      {"avoid-harmonic-sum", single(avoid_harmonic_sum)},
      {"avoid-class62", single(avoid_class62)},
      {"avoid-class63", single([](int n) { return n < 2 ? BigInt(1) : exact_div(factorial(n), 2); })},
      {"avoid-alternating-literal", single(avoid_alternating_literal)},
      {"avoid-alternating-shifted", single(avoid_alternating_shifted)},
      {"avoid-two-term", single(avoid_two_term)},
      {"avoid-gf-one-plus-x", single(avoid_gf)},
  };
  return table;
}

using K = FormulaKind;

}  // namespace

BigInt stirling_first(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  std::vector<BigInt> row{1};  // c(0,.)
  for (int m = 1; m <= n; ++m) {
    std::vector<BigInt> next(static_cast<std::size_t>(m) + 1, 0);
    for (int j = 1; j <= m; ++j)
      next[static_cast<std::size_t>(j)] =
          row[static_cast<std::size_t>(j - 1)] + (j < m ? (m - 1) * row[static_cast<std::size_t>(j)] : BigInt(0));
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(k)];
}

Rational harmonic(int n) {
  Rational h = 0;
  for (int k = 1; k <= n; ++k) h += Rational(1, k);
  return h;
}

BigInt eulerian_snk(int n, int k) {
  if (n < 1 || k < 0 || k > n - 1) return 0;
  BigInt s = 0;
  for (int j = 0; j <= k + 1; ++j) {
    const BigInt term = binomial(n + 1, j) * boost::multiprecision::pow(BigInt(k + 1 - j), static_cast<unsigned>(n));
    s += j % 2 == 0 ? term : BigInt(-term);
  }
  return s;
}

std::string to_string(FormulaKind kind) {
  switch (kind) {
    case K::DistributionClosedForm: return "distribution-closed-form";
    case K::DistributionRecurrence: return "distribution-recurrence";
    case K::AvoidanceClosedForm: return "avoidance-closed-form";
    case K::AvoidanceRecurrence: return "avoidance-recurrence";
    case K::GeneratingFunction: return "gf";
  }
  return "?";
}

const std::vector<FormulaRef>& formula_registry() {
  static const std::vector<FormulaRef> registry = {
      {{1}, K::DistributionClosedForm, "class1", "class 1 theorem: sum (i-1)!(n-i-1)!", true, 1, ""},
      {{2}, K::DistributionClosedForm, "class2", "class 2 theorem, as derived in its proof: s_{n,1} = (n-1)!", true, 2,
       "the printed statement attaches q to n!-(n-1)!; see class2-printed"},
      {{2}, K::DistributionClosedForm, "class2-printed", "class 2 theorem as printed: (n-1)! + q(n!-(n-1)!)", false, 2,
       "kept for adjudication against brute force"},
      {{15}, K::DistributionRecurrence, "class15", "class 15 theorem: s_{n,k} = s_{n-1,k} + (n-1)s_{n-1,k-1} = c(n,n-k)",
       true, 0, ""},
      {{25}, K::DistributionClosedForm, "class25", "class 25 theorem: n!/((k+1)(k+2)), s_{n,n-1} = (n-1)!", true, 1, ""},
      {{31}, K::DistributionClosedForm, "class31", "class 31 theorem: sum i!(n-i-1)!", true, 1, ""},
      {{32}, K::DistributionClosedForm, "class32", "class 32 theorem: sum (n-1)!/i", true, 1, ""},
      {{33}, K::DistributionClosedForm, "class33", "class 33 theorem: s_{n,0} = s_{n,1} = n!/2", true, 0, ""},
      {{37}, K::DistributionRecurrence, "class37", "cite:KZ2019 class 37 recurrence", true, 0, ""},
      {{45}, K::DistributionClosedForm, "class45", "class 45 theorem: (n-1)! + q(n-1)(n-1)!", true, 1, ""},
      {{53}, K::DistributionClosedForm, "class53", "class 53 theorem: n!-(n-2)! + q(n-2)!", true, 0, ""},
      {{61}, K::DistributionRecurrence, "class61", "cite:KZ2019 class 61 recurrence", true, 0, ""},
      {{68}, K::DistributionRecurrence, "class68", "class 68 theorem: s_{n,k} = c(n,k+1)", true, 0, ""},
      {{73}, K::DistributionRecurrence, "class73", "class 73 theorem: refined recurrence by right-to-left maxima", true, 0,
       ""},
      {{74}, K::DistributionClosedForm, "class74", "cite:StanleyEC1 Eulerian numbers", true, 1, ""},
      {{81}, K::DistributionRecurrence, "class81", "cite:KZ2019 class 81 recurrence", true, 0, ""},
      {{15, 16, 17, 18, 38, 39, 49, 50, 51, 72, 73, 74, 75, 87, 94, 95, 102}, K::AvoidanceClosedForm, "avoid-one",
       "avoidance theorem: s_{n,0} = 1", true, 0, ""},
      {{4, 6, 7, 8, 9, 10, 11, 12, 42, 43, 45, 64, 65, 66, 68, 89, 90, 92, 93, 100, 101}, K::AvoidanceClosedForm,
       "avoid-factorial-n-1", "avoidance theorem: s_{n,0} = (n-1)!", true, 1, ""},
      {{25, 28, 33, 63, 85, 104}, K::AvoidanceClosedForm, "avoid-half-factorial", "avoidance theorem: s_{n,0} = n!/2",
       true, 2, ""},
      {{32, 62, 84}, K::AvoidanceClosedForm, "avoid-harmonic-sum",
       "avoidance theorem: s_{n,0} = n! - sum_{i=1}^{n-1} (n-1)!/i", true, 2, ""},
      {{62}, K::AvoidanceClosedForm, "avoid-class62", "class 62 theorem: (n-1)!(n - H_{n-1})", true, 1, ""},
      {{63}, K::AvoidanceClosedForm, "avoid-class63", "class 63 theorem: n!/2", true, 2, ""},
      {{24, 61, 86, 105}, K::AvoidanceClosedForm, "avoid-alternating-literal",
       "avoidance theorem as printed: sum_{k=0}^{n} (-1)^k (n-k+1) n!/k!", false, 1,
       "equals the index-shifted form at n+1"},
      {{24, 61, 86, 105}, K::AvoidanceClosedForm, "avoid-alternating-shifted",
       "avoidance theorem, index shifted: sum_{k=0}^{n-1} (-1)^k (n-k) (n-1)!/k!", true, 1, ""},
      {{48, 67}, K::AvoidanceRecurrence, "avoid-two-term", "avoidance theorem: s_n = n s_{n-1} - s_{n-2}", true, 0, ""},
      {{19, 21, 80, 97, 103}, K::GeneratingFunction, "avoid-gf-one-plus-x", "avoidance theorem: A(x) = (1+x)F/(1+xF)",
       true, 0, ""},
  };
  return registry;
}

const FormulaRef& formula_by_evaluator(const std::string& evaluator) {
  for (const auto& f : formula_registry())
    if (f.evaluator == evaluator) return f;
  throw NoFormulaError("unknown formula '" + evaluator + "'");
}

std::vector<BigInt> evaluate_formula(const std::string& evaluator, int n) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  const auto it = evaluators().find(evaluator);
  if (it == evaluators().end()) throw NoFormulaError("unknown formula '" + evaluator + "'");
  if (n == 0 && (formula_by_evaluator(evaluator).kind == K::DistributionClosedForm ||
                 formula_by_evaluator(evaluator).kind == K::DistributionRecurrence))
    return {1};
  return it->second(n);
}

namespace {

[[noreturn]] void no_formula(int class_id, const std::string& what) {
  std::string status = "unknown class";
  for (const auto& c : builtin_seed().classes)
    if (c.class_id == class_id) status = "tabulated status '" + c.status + "'";
  throw NoFormulaError("no " + what + " formula registered for class " + std::to_string(class_id) + " (" + status + ")");
}

const FormulaRef* find_primary(int class_id, bool distribution) {
  for (const auto& f : formula_registry()) {
    if (!f.primary) continue;
    const bool is_dist = f.kind == K::DistributionClosedForm || f.kind == K::DistributionRecurrence;
    if (is_dist != distribution) continue;
    if (std::find(f.class_ids.begin(), f.class_ids.end(), class_id) != f.class_ids.end()) return &f;
  }
  return nullptr;
}

}  // namespace

std::vector<BigInt> formula_distribution(int class_id, int n) {
  const FormulaRef* f = find_primary(class_id, true);
  if (f == nullptr) no_formula(class_id, "distribution");
  return evaluate_formula(f->evaluator, n);
}

BigInt formula_avoidance(int class_id, int n) {
  if (const FormulaRef* f = find_primary(class_id, false)) return evaluate_formula(f->evaluator, n).front();
  if (const FormulaRef* f = find_primary(class_id, true)) return evaluate_formula(f->evaluator, n).front();
  const std::string key = std::to_string(class_id);
  for (const auto& e : gf_registry())
    if (e.key == key) {
      if (n < e.valid_from) break;
      return to_integer(extract(gf_expand(key, n, GfMode::Avoidance), n, 0));
    }
  no_formula(class_id, "avoidance");
}

BigInt RefinedTable::at(int k, int l) const {
  if (k < 0 || l < 0 || k >= static_cast<int>(counts.size())) return 0;
  const auto& row = counts[static_cast<std::size_t>(k)];
  return l < static_cast<int>(row.size()) ? row[static_cast<std::size_t>(l)] : BigInt(0);
}

RefinedTable class73_refined(int n) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  RefinedTable t{0, {{1}}};  // s_{0,0,0} = 1
  for (int m = 1; m <= n; ++m) {
    RefinedTable next{m, std::vector<Vec>(static_cast<std::size_t>(m), Vec(static_cast<std::size_t>(m) + 1, 0))};
    for (int k = 0; k < m; ++k)
      for (int l = 1; l <= m; ++l)
        next.counts[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] =
            t.at(k, l - 1) + l * t.at(k - 1, l) + (m - 1 - l) * t.at(k, l);
    t = std::move(next);
  }
  return t;
}

std::vector<BigInt> class73_aggregate(int n) {
  if (n <= 1) return {1};
  const RefinedTable prev = class73_refined(n - 1);
  Vec row(static_cast<std::size_t>(n), 0);
  for (int k = 0; k < n; ++k)
    for (int i = 1; i <= n - 1; ++i)
      row[static_cast<std::size_t>(k)] += i * prev.at(k - 1, i) + (n - i) * prev.at(k, i);
  return trimmed(row);
}

std::vector<FormulaVerdict> verify_formulas(const std::vector<DistributionTable>& tables) {
  const auto& seed = builtin_seed();
  const int depth = tables.empty() ? 0 : tables.front().depth;
  std::vector<FormulaVerdict> out;
  for (const auto& f : formula_registry()) {
    FormulaVerdict v{f.evaluator, true, depth, ""};
    const bool dist = f.kind == K::DistributionClosedForm || f.kind == K::DistributionRecurrence;
    for (int n = f.valid_from; n <= depth && v.verified; ++n) {
      const Vec expected = evaluate_formula(f.evaluator, n);
      for (int cid : f.class_ids) {
        for (const auto& m : seed.by_id(cid).members) {
          const auto& row = table_for(tables, m).rows[static_cast<std::size_t>(n)];
          Vec observed;
          if (dist) {
            for (auto c : row) observed.emplace_back(c);
            observed = trimmed(observed);
          } else {
            observed = {BigInt(row[0])};
          }
          if (observed != expected) {
            v.verified = false;
            v.first_mismatch = "n=" + std::to_string(n) + " class " + std::to_string(cid) + " " + m.literal();
            break;
          }
        }
        if (!v.verified) break;
      }
    }
    out.push_back(v);
  }
  return out;
}

nlohmann::json registry_json(const std::vector<FormulaVerdict>& verdicts) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& f : formula_registry()) {
    nlohmann::json j{{"class_ids", f.class_ids}, {"kind", to_string(f.kind)}, {"evaluator", f.evaluator},
                     {"source", f.source},       {"primary", f.primary},      {"valid_from", f.valid_from},
                     {"note", f.note},           {"verified", nullptr}};
    for (const auto& v : verdicts)
      if (v.evaluator == f.evaluator) {
        j["verified"] = v.verified;
        j["checked_through"] = v.checked_through;
        if (!v.verified) j["first_mismatch"] = v.first_mismatch;
      }
    arr.push_back(j);
  }
  return {{"schema", "meshpat.formulas/1"}, {"formulas", arr}};
}

std::vector<GfVerdict> verify_gf(const std::vector<DistributionTable>& tables) {
  const auto& seed = builtin_seed();
  const int depth = tables.empty() ? 0 : tables.front().depth;
  std::vector<GfVerdict> out;
  for (const auto& e : gf_registry()) {
    // brute-force tables for the patterns this entry speaks about
    std::vector<DistributionTable> own;
    if (!e.pattern.empty()) {
      own.push_back(distribution(MeshPattern::parse(e.pattern), depth));
    } else {
      for (const auto& m : seed.by_id(std::stoi(e.key)).members) own.push_back(table_for(tables, m));
    }
    for (GfMode mode : {GfMode::Avoidance, GfMode::Distribution}) {
      if (mode == GfMode::Avoidance ? !e.has_avoidance : !e.has_distribution) continue;
      GfVerdict v{e.key, mode == GfMode::Avoidance ? "avoidance" : "distribution", true, depth, ""};
      const Series s = gf_expand(e.key, depth, mode);
      for (const auto& t : own) {
        for (int n = e.valid_from; n <= depth && v.verified; ++n) {
          const Row& row = t.rows[static_cast<std::size_t>(n)];
          int kmax = mode == GfMode::Avoidance ? 0 : std::max<int>(static_cast<int>(row.size()) - 1, s[n].degree());
          for (int k = 0; k <= kmax; ++k) {
            const std::uint64_t brute = k < static_cast<int>(row.size()) ? row[static_cast<std::size_t>(k)] : 0;
            if (extract(s, n, k) != Rational(brute)) {
              v.verified = false;
              v.first_mismatch = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " " + t.pattern.literal() +
                                 ": series " + to_string(extract(s, n, k)) + ", brute force " + std::to_string(brute);
              break;
            }
          }
        }
        if (!v.verified) break;
      }
      out.push_back(v);
    }
  }
  return out;
}

nlohmann::json gf_json(const std::vector<GfVerdict>& verdicts) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : verdicts) {
    const auto& e = gf_entry(v.key);
    nlohmann::json j{{"key", v.key},           {"mode", v.mode},         {"source", e.source},
                     {"valid_from", e.valid_from}, {"verified", v.verified}, {"checked_through", v.checked_through}};
    if (!v.verified) j["first_mismatch"] = v.first_mismatch;
    arr.push_back(j);
  }
  return {{"schema", "meshpat.gf/1"}, {"generating_functions", arr}};
}

}  // namespace meshpat
