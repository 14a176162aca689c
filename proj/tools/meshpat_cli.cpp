#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "meshpat/bijections.hpp"
#include "meshpat/catalog.hpp"
#include "meshpat/distribution.hpp"
#include "meshpat/errors.hpp"
#include "meshpat/formulas.hpp"
#include "meshpat/occurrence.hpp"
#include "meshpat/series.hpp"

using namespace meshpat;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kGuard = 3 };

struct Common {
  bool json = false;
  int threads = 1;
  std::uint64_t seed = 1;
  int max_depth = 9;
  ScanOptions scan() const { return {threads, max_depth}; }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_flag("--json", c.json, "machine-readable output");
  sub->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "seed for anything randomized");
  sub->add_option("--max-depth", c.max_depth, "resource guard on n")->check(CLI::NonNegativeNumber);
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// Full length-2 scan, served from $MESHPAT_CACHE_DIR when every row is there.
std::vector<DistributionTable> scan_all(int depth, const Common& c) {
  check_depth(depth, c.scan());
  auto cache = DistributionCache::from_env();
  if (cache) {
    auto got = cache->get_many(all_length2_patterns(), depth);
    if (std::all_of(got.begin(), got.end(), [](const auto& t) { return t.has_value(); })) {
      std::vector<DistributionTable> out;
      for (auto& t : got) out.push_back(std::move(*t));
      return out;
    }
  }
  auto tables = bulk_scan_length2(depth, c.scan());
  if (cache) cache->put_all(tables);
  return tables;
}

DistributionTable one_table(const MeshPattern& p, int depth, const Common& c) {
  check_depth(depth, c.scan());
  auto cache = DistributionCache::from_env();
  if (cache)
    if (auto t = cache->get(p, depth)) return *t;
  auto t = distribution(p, depth, c.scan());
  if (cache) cache->put(t);
  return t;
}

Row trim_row(Row r) {
  while (r.size() > 1 && r.back() == 0) r.pop_back();
  return r;
}

json counterexample_json(const Counterexample& ce) {
  return {{"input", ce.input.to_string()},   {"image", ce.image.to_string()},
          {"image_of_image", ce.image_of_image.to_string()},
          {"p1_before", ce.p1_before},       {"p2_before", ce.p2_before},
          {"p1_after", ce.p1_after},         {"p2_after", ce.p2_after},
          {"reason", ce.reason}};
}

json verdict_json(const BijectionVerdict& v) {
  json j{{"check", v.check}, {"depth", v.depth}, {"pass", v.pass}, {"checked", v.checked}};
  j["counterexample"] = v.counterexample ? counterexample_json(*v.counterexample) : json(nullptr);
  return j;
}

void print_verdict_text(const std::string& name, const BijectionVerdict& v) {
  std::cout << name << " " << v.check << " n<=" << v.depth << ": " << (v.pass ? "pass" : "FAIL") << " (" << v.checked
            << " permutations)\n";
  if (!v.counterexample) return;
  const auto& ce = *v.counterexample;
  std::cout << "  counterexample " << ce.input << " -> " << ce.image << " -> " << ce.image_of_image << " (" << ce.reason
            << "; counts p1,p2 before " << ce.p1_before << "," << ce.p2_before << " after " << ce.p1_after << ","
            << ce.p2_after << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"meshpat: mesh pattern distributions, classification and verification"};
  app.require_subcommand(1);
  Common c;

  std::string pattern_text, pattern2_text, perm_text, name, key, mode = "distribution";
  int depth = 7;
  int order = 9;
  bool inject_fault = false;
  std::optional<std::string> q_value;

  auto* count = app.add_subcommand("count", "occurrences of a pattern in a permutation");
  count->add_option("--pattern", pattern_text)->required();
  count->add_option("--perm", perm_text)->required();

  auto* dist = app.add_subcommand("distribution", "s_{n,k} for n <= depth");
  dist->add_option("--pattern", pattern_text)->required();
  dist->add_option("--depth", depth);

  auto* avoid = app.add_subcommand("avoidance", "s_{n,0} for n <= depth");
  avoid->add_option("--pattern", pattern_text)->required();
  avoid->add_option("--depth", depth);

  auto* joint = app.add_subcommand("joint", "joint distribution of two patterns");
  joint->add_option("--pattern", pattern_text)->required();
  joint->add_option("--pattern2", pattern2_text)->required();
  joint->add_option("--depth", depth);

  auto* classify_cmd = app.add_subcommand("classify", "partition the 1024 length-2 patterns by distribution");
  classify_cmd->add_option("--depth", depth);

  auto* wilf = app.add_subcommand("wilf", "avoidance classes and proven merges");
  wilf->add_option("--depth", depth);

  auto* orbit = app.add_subcommand("orbit", "symmetry orbit of a pattern");
  orbit->add_option("--pattern", pattern_text)->required();

  auto* vformulas = app.add_subcommand("verify-formulas", "closed forms and recurrences against brute force");
  vformulas->add_option("--depth", depth);

  auto* vgf = app.add_subcommand("verify-gf", "generating functions against brute force");
  vgf->add_option("--depth", depth);

  auto* vbij = app.add_subcommand("verify-bijections", "involution and occurrence-swap checks");
  vbij->add_option("--name", name, "one map; all maps when omitted");
  vbij->add_option("--depth", depth);
  vbij->add_flag("--inject-fault", inject_fault, "corrupt one image (chosen by --seed) to exercise the harness");

  auto* vconj = app.add_subcommand("verify-conjectures", "blocks of the split classes compared");
  vconj->add_option("--depth", depth);

  auto* series = app.add_subcommand("series", "expand a registered generating function");
  series->add_option("--key", key)->required();
  series->add_option("--order", order);
  series->add_option("--mode", mode)->check(CLI::IsMember({"distribution", "avoidance"}));
  series->add_option("--q", q_value, "substitute a rational value for q");

  auto* bij = app.add_subcommand("bijection", "apply one map to one permutation");
  bij->add_option("--name", name)->required();
  bij->add_option("--perm", perm_text)->required();

  auto* regen = app.add_subcommand("regen-appendix", "per-class distribution table as CSV");
  regen->add_option("--depth", depth);

  for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) add_common(sub, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*count) {
      const auto p = MeshPattern::parse(pattern_text);
      const auto pi = Permutation::parse(perm_text);
      const auto n = count_occurrences(p, pi);
      if (c.json)
        emit({{"schema", "meshpat.count/1"}, {"pattern", p.literal()}, {"perm", pi.to_string()}, {"count", n}});
      else
        std::cout << n << "\n";
      return kOk;
    }

    if (*dist || *avoid) {
      const auto p = MeshPattern::parse(pattern_text);
      const auto t = one_table(p, depth, c);
      if (*avoid) {
        const auto a = avoidance_of(t);
        if (c.json) {
          emit({{"schema", "meshpat.avoidance/1"}, {"pattern", p.literal()}, {"depth", depth}, {"values", a.values}});
        } else {
          for (std::size_t i = 0; i < a.values.size(); ++i) std::cout << (i ? " " : "") << a.values[i];
          std::cout << "\n";
        }
        return kOk;
      }
      if (c.json) {
        emit({{"schema", "meshpat.distribution/1"}, {"pattern", p.literal()}, {"depth", depth}, {"rows", t.rows}});
      } else {
        for (int n = 0; n <= depth; ++n) {
          std::cout << n << ":";
          for (auto v : trim_row(t.rows[n])) std::cout << " " << v;
          std::cout << "\n";
        }
      }
      return kOk;
    }

    if (*joint) {
      const auto p1 = MeshPattern::parse(pattern_text);
      const auto p2 = MeshPattern::parse(pattern2_text);
      const auto jt = joint_distribution(p1, p2, depth, c.scan());
      if (c.json) {
        emit({{"schema", "meshpat.joint/1"}, {"first", p1.literal()}, {"second", p2.literal()}, {"depth", depth},
              {"matrices", jt.matrices}});
      } else {
        for (int n = 0; n <= depth; ++n) {
          std::cout << "n=" << n << "\n";
          for (const auto& r : jt.matrices[n]) {
            for (std::size_t l = 0; l < r.size(); ++l) std::cout << (l ? " " : "  ") << r[l];
            std::cout << "\n";
          }
        }
      }
      return kOk;
    }

    if (*classify_cmd) {
      const auto tables = scan_all(depth, c);
      const auto report = classify(tables, &builtin_seed());
      if (c.json) {
        emit(to_json(report));
      } else {
        std::cout << "depth " << report.depth << "\ndistribution_classes " << report.distribution_classes
                  << "\navoidance_sequences " << report.avoidance_sequences << "\nproven_blocks "
                  << report.proven_blocks << "\n";
        for (const auto& d : report.discrepancies) std::cout << "discrepancy: " << d << "\n";
      }
      return kOk;
    }

    if (*wilf) {
      const auto tables = scan_all(depth, c);
      const auto w = wilf_classify(builtin_seed(), tables);
      if (c.json) {
        emit({{"schema", "meshpat.wilf/1"},
              {"depth", w.depth},
              {"observed_sequences", w.observed_sequences},
              {"proven_merge_count", w.proven_merge_count},
              {"with_sketched_count", w.with_sketched_count},
              {"proven_groups", w.proven_groups},
              {"violations", w.violations}});
      } else {
        std::cout << "depth " << w.depth << "\nobserved_sequences " << w.observed_sequences
                  << "\nproven_merge_count " << w.proven_merge_count << "\nwith_sketched_count "
                  << w.with_sketched_count << "\n";
        for (const auto& v : w.violations) std::cout << "violation: " << v << "\n";
      }
      return w.violations.empty() ? kOk : kFailed;
    }

    if (*orbit) {
      const auto p = MeshPattern::parse(pattern_text);
      const auto o = symmetry_orbit(p);
      std::vector<std::string> lits;
      for (const auto& q : o) lits.push_back(q.literal());
      if (c.json)
        emit({{"schema", "meshpat.orbit/1"}, {"pattern", p.literal()}, {"orbit", lits}});
      else
        for (const auto& l : lits) std::cout << l << "\n";
      return kOk;
    }

    if (*vformulas) {
      const auto tables = scan_all(depth, c);
      const auto verdicts = verify_formulas(tables);
      bool ok = true;
      for (const auto& v : verdicts)
        if (!v.verified && formula_by_evaluator(v.evaluator).primary) ok = false;
      if (c.json) {
        emit(registry_json(verdicts));
      } else {
        for (const auto& v : verdicts) {
          const auto& f = formula_by_evaluator(v.evaluator);
          std::cout << v.evaluator << (f.primary ? "" : " [variant]") << ": "
                    << (v.verified ? "ok" : "MISMATCH " + v.first_mismatch) << "\n";
        }
      }
      return ok ? kOk : kFailed;
    }

    if (*vgf) {
      const auto tables = scan_all(depth, c);
      const auto verdicts = verify_gf(tables);
      bool ok = std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.verified; });
      if (c.json) {
        emit(gf_json(verdicts));
      } else {
        for (const auto& v : verdicts)
          std::cout << v.key << " " << v.mode << ": " << (v.verified ? "ok" : "MISMATCH " + v.first_mismatch) << "\n";
      }
      return ok ? kOk : kFailed;
    }

    if (*vbij) {
      check_depth(depth, c.scan());
      std::vector<const BijectionSpec*> chosen;
      if (name.empty())
        for (const auto& b : bijection_registry()) chosen.push_back(&b);
      else
        chosen.push_back(&bijection_by_name(name));
      bool ok = true;
      json results = json::array();
      for (const auto* b : chosen) {
        PermutationMap f = b->map;
        if (inject_fault) f = with_seeded_fault(f, std::max(depth, 2), c.seed);
        const auto inv = verify_involution(f, depth, c.threads);
        const auto swap = verify_joint_swap(f, b->p1, b->p2, depth, c.threads);
        ok = ok && inv.pass && swap.pass;
        if (c.json) {
          results.push_back({{"name", b->name},
                             {"p1", b->p1.literal()},
                             {"p2", b->p2.literal()},
                             {"involution", verdict_json(inv)},
                             {"joint_swap", verdict_json(swap)}});
        } else {
          print_verdict_text(b->name, inv);
          print_verdict_text(b->name, swap);
        }
      }
      if (c.json)
        emit({{"schema", "meshpat.bijections/1"}, {"depth", depth}, {"fault_injected", inject_fault},
              {"results", results}});
      return ok ? kOk : kFailed;
    }

    if (*vconj) {
      const auto tables = scan_all(depth, c);
      bool ok = true;
      json arr = json::array();
      for (int cid : {54, 69, 71}) {
        const auto v = conjecture_check(builtin_seed(), cid, tables);
        ok = ok && v.equal;
        if (c.json)
          arr.push_back({{"class_id", cid}, {"depth", v.depth}, {"equal", v.equal},
                         {"first_difference", v.first_difference >= 0 ? json(v.first_difference) : json(nullptr)}});
        else
          std::cout << "class " << cid << " blocks n<=" << v.depth << ": " << (v.equal ? "PASS" : "FAIL") << "\n";
      }
      if (c.json) emit({{"schema", "meshpat.conjectures/1"}, {"depth", depth}, {"checks", arr}});
      return ok ? kOk : kFailed;
    }

    if (*series) {
      const GfMode m = mode == "avoidance" ? GfMode::Avoidance : GfMode::Distribution;
      Series s = gf_expand(key, order, m);
      if (q_value) s = specialize_q(s, parse_rational(*q_value));
      if (c.json) {
        json j = to_json(s);
        j["schema"] = "meshpat.series/1";
        j["key"] = key;
        j["mode"] = mode;
        emit(j);
      } else {
        for (int n = 0; n <= s.order(); ++n) {
          std::cout << n << ":";
          for (const auto& r : s[n].coeffs()) std::cout << " " << to_string(r);
          if (s[n].coeffs().empty()) std::cout << " 0";
          std::cout << "\n";
        }
      }
      return kOk;
    }

    if (*bij) {
      const auto& b = bijection_by_name(name);
      const auto pi = Permutation::parse(perm_text);
      const auto out = b.map(pi);
      const auto c1 = count_occurrences(b.p1, pi), c2 = count_occurrences(b.p2, pi);
      const auto d1 = count_occurrences(b.p1, out), d2 = count_occurrences(b.p2, out);
      if (c.json) {
        emit({{"schema", "meshpat.bijection/1"},
              {"name", b.name},
              {"input", pi.to_string()},
              {"output", out.to_string()},
              {"p1", b.p1.literal()},
              {"p2", b.p2.literal()},
              {"before", {{"p1", c1}, {"p2", c2}}},
              {"after", {{"p1", d1}, {"p2", d2}}}});
      } else {
        std::cout << "input  " << pi << "\noutput " << out << "\n"
                  << b.p1 << ": " << c1 << " -> " << d1 << "\n"
                  << b.p2 << ": " << c2 << " -> " << d2 << "\n";
      }
      return kOk;
    }

    if (*regen) {
      const auto tables = scan_all(depth, c);
      std::vector<const ClassRecord*> classes;
      for (const auto& r : builtin_seed().classes) classes.push_back(&r);
      std::sort(classes.begin(), classes.end(), [](auto* a, auto* b) { return a->class_id < b->class_id; });
      json arr = json::array();
      if (!c.json) std::cout << "class_id,n,k,count\n";
      for (const auto* r : classes) {
        const auto& t = table_for(tables, r->representatives.front());
        json rows = json::array();
        for (int n = 1; n <= depth; ++n) {
          const Row row = trim_row(t.rows[n]);
          rows.push_back(row);
          if (!c.json)
            for (std::size_t k = 0; k < row.size(); ++k)
              std::cout << r->class_id << "," << n << "," << k << "," << row[k] << "\n";
        }
        arr.push_back({{"class_id", r->class_id}, {"representative", r->representatives.front().literal()},
                       {"rows", rows}});
      }
      if (c.json) emit({{"schema", "meshpat.appendix/1"}, {"depth", depth}, {"classes", arr}});
      return kOk;
    }
  } catch (const ResourceGuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kGuard;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NoFormulaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
