#include "meshpat/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "meshpat/errors.hpp"

namespace meshpat {

std::string_view embedded_class_seed();  // generated from data/classes.json

namespace {

std::vector<MeshPattern> parse_list(const nlohmann::json& j) {
  std::vector<MeshPattern> out;
  for (const auto& lit : j) out.push_back(parse_pattern(lit.get<std::string>()));
  return out;
}

bool same_row_prefix(const DistributionTable& a, const DistributionTable& b, int& first_difference) {
  const std::size_t n = std::min(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < n; ++i)
    if (a.rows[i] != b.rows[i]) {
      first_difference = static_cast<int>(i);
      return false;
    }
  first_difference = -1;
  return true;
}

std::string join(const std::vector<int>& ids) {
  std::string s = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "," : "") + std::to_string(ids[i]);
  return s + "}";
}

std::string block_label(const ClassRecord& c, std::size_t b) {
  return c.proven_blocks.size() == 1 ? std::to_string(c.class_id)
                                     : std::to_string(c.class_id) + "." + std::to_string(b + 1);
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

const ClassRecord& ClassSeed::by_id(int class_id) const {
  for (const auto& c : classes)
    if (c.class_id == class_id) return c;
  throw LedgerError("no class with id " + std::to_string(class_id) + " in the seed");
}

std::vector<MeshPattern> orbit_closure(const std::vector<MeshPattern>& patterns) {
  std::set<MeshPattern> all;
  for (const auto& p : patterns)
    for (auto& q : symmetry_orbit(p)) all.insert(std::move(q));
  std::vector<MeshPattern> out(all.begin(), all.end());
  std::sort(out.begin(), out.end(), [](const MeshPattern& a, const MeshPattern& b) { return a.literal() < b.literal(); });
  return out;
}

const DistributionTable& table_for(const std::vector<DistributionTable>& tables, const MeshPattern& p) {
  const auto i = static_cast<std::size_t>(length2_index(p));
  if (tables.size() != 1024 || !(tables[i].pattern == p))
    throw std::invalid_argument("tables are not a full length-2 scan");
  return tables[i];
}

ClassSeed parse_class_seed(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw LedgerError(std::string("seed is not valid JSON: ") + e.what());
  }
  ClassSeed seed;
  try {
    seed.format = j.at("format").get<std::string>();
    std::map<std::string, int> owner;
    for (const auto& jc : j.at("classes")) {
      ClassRecord c;
      c.class_id = jc.at("class_id").get<int>();
      c.representatives = parse_list(jc.at("representatives"));
      for (const auto& cell : jc.at("cells")) c.cells.push_back(parse_list(cell));
      for (const auto& block : jc.at("proven_blocks")) c.proven_blocks.push_back(orbit_closure(parse_list(block)));
      c.conjectured = jc.value("conjectured", false);
      c.status = jc.value("status", "?");
      c.status_source = jc.value("status_source", "");
      c.proof = jc.value("proof", "");

      std::vector<MeshPattern> listed;
      for (const auto& cell : c.cells) listed.insert(listed.end(), cell.begin(), cell.end());
      c.members = orbit_closure(listed);

      std::vector<MeshPattern> from_blocks;
      for (const auto& b : c.proven_blocks) from_blocks.insert(from_blocks.end(), b.begin(), b.end());
      std::sort(from_blocks.begin(), from_blocks.end(),
                [](const MeshPattern& a, const MeshPattern& b) { return a.literal() < b.literal(); });
      if (from_blocks != c.members)
        throw LedgerError("class " + std::to_string(c.class_id) + ": proven blocks do not partition the members");
      if (c.conjectured && c.proven_blocks.size() != 2)
        throw LedgerError("class " + std::to_string(c.class_id) + ": conjectured classes need exactly two blocks");

      for (const auto& m : c.members) {
        const auto [it, fresh] = owner.emplace(m.literal(), c.class_id);
        if (!fresh)
          throw LedgerError("pattern " + m.literal() + " listed in classes " + std::to_string(it->second) + " and " +
                            std::to_string(c.class_id));
      }
      seed.classes.push_back(std::move(c));
    }
    if (j.contains("wilf_merges"))
      for (const auto& jm : j.at("wilf_merges"))
        {
        WilfMerge m{jm.at("members").get<std::vector<std::string>>(), jm.value("source", ""), jm.value("strength", "proved")};
        if (m.strength != "proved" && m.strength != "sketched")
          throw LedgerError("unknown wilf merge strength '" + m.strength + "'");
        seed.wilf_merges.push_back(std::move(m));
      }
    if (j.contains("shading_groups")) seed.shading_groups = j.at("shading_groups").get<std::vector<std::vector<int>>>();
  } catch (const nlohmann::json::exception& e) {
    throw LedgerError(std::string("malformed seed: ") + e.what());
  } catch (const ParseError& e) {
    throw LedgerError(std::string("bad pattern in seed: ") + e.what());
  }
  return seed;
}

ClassSeed load_class_seed(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LedgerError("cannot read seed file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_class_seed(ss.str());
}

const ClassSeed& builtin_seed() {
  static const ClassSeed seed = parse_class_seed(embedded_class_seed());
  return seed;
}

ClassificationReport classify(const std::vector<DistributionTable>& tables, const ClassSeed* seed) {
  ClassificationReport r;
  r.depth = tables.empty() ? 0 : tables.front().depth;
  std::map<std::string, std::size_t> index;
  std::set<std::string> avoid;
  for (const auto& t : tables) {
    auto sig = Signature::of(t);
    avoid.insert(Signature::of_avoidance(avoidance_of(t)).text());
    const auto [it, fresh] = index.emplace(sig.text(), r.classes.size());
    if (fresh) r.classes.push_back({t.pattern, {}, std::move(sig), std::nullopt});
    r.classes[it->second].members.push_back(t.pattern);
  }
  for (auto& c : r.classes) {
    std::sort(c.members.begin(), c.members.end(),
              [](const MeshPattern& a, const MeshPattern& b) { return a.literal() < b.literal(); });
    c.representative = c.members.front();
  }
  std::sort(r.classes.begin(), r.classes.end(), [](const SignatureClass& a, const SignatureClass& b) {
    return a.representative.literal() < b.representative.literal();
  });
  r.distribution_classes = static_cast<int>(r.classes.size());
  r.avoidance_sequences = static_cast<int>(avoid.size());

  if (seed != nullptr) {
    auto numbering = load_class_numbering(*seed, r.classes);
    for (const auto& [id, idx] : numbering.class_to_signature) {
      auto& slot = r.classes[idx].class_id;
      if (!slot || id < *slot) slot = id;
    }
    r.discrepancies = numbering.problems;
    for (auto idx : numbering.unassigned)
      r.discrepancies.push_back("signature class of " + r.classes[idx].representative.literal() + " has no class id");
    if (tables.size() == 1024) {
      auto proven = proven_merge_report(*seed, tables);
      r.proven_blocks = proven.block_count;
      r.discrepancies.insert(r.discrepancies.end(), proven.violations.begin(), proven.violations.end());
    }
  }
  return r;
}

ClassificationReport classify(int depth, const ScanOptions& opts, const ClassSeed* seed) {
  if (depth < 1) throw std::invalid_argument("classification depth must be at least 1");
  return classify(bulk_scan_length2(depth, opts), seed);
}

NumberingResult load_class_numbering(const ClassSeed& seed, const std::vector<SignatureClass>& classes) {
  NumberingResult out;
  std::map<std::string, std::size_t> where;
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (const auto& m : classes[i].members) where.emplace(m.literal(), i);
  std::map<std::size_t, std::vector<int>> taken;
  for (const auto& c : seed.classes) {
    std::optional<std::size_t> target;
    for (const auto& rep : c.representatives) {
      const auto it = where.find(rep.literal());
      if (it == where.end()) {
        out.problems.push_back("class " + std::to_string(c.class_id) + ": representative " + rep.literal() +
                               " not found");
        continue;
      }
      if (!target) target = it->second;
      else if (*target != it->second)
        out.problems.push_back("class " + std::to_string(c.class_id) + ": representatives fall in different signature classes");
    }
    if (!target) continue;
    out.class_to_signature[c.class_id] = *target;
    taken[*target].push_back(c.class_id);
  }
  for (const auto& [idx, ids] : taken)
    if (ids.size() > 1) out.problems.push_back("classes " + join(ids) + " share one signature class");
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (!taken.count(i)) out.unassigned.push_back(i);
  return out;
}

ProvenMergeReport proven_merge_report(const ClassSeed& seed, const std::vector<DistributionTable>& tables) {
  ProvenMergeReport r;
  std::size_t covered = 0;
  for (const auto& c : seed.classes) {
    r.block_count += static_cast<int>(c.proven_blocks.size());
    if (c.proven_blocks.size() > 1) r.split_classes.push_back(c.class_id);
    for (std::size_t b = 0; b < c.proven_blocks.size(); ++b) {
      const auto& block = c.proven_blocks[b];
      covered += block.size();
      const auto sig = Signature::of(table_for(tables, block.front()));
      for (const auto& m : block)
        if (!(Signature::of(table_for(tables, m)) == sig))
          r.violations.push_back("block " + block_label(c, b) + " is not signature-homogeneous: " +
                                 block.front().literal() + " vs " + m.literal());
    }
  }
  if (covered != 1024)
    r.violations.push_back("seed blocks cover " + std::to_string(covered) + " patterns instead of 1024");
  std::sort(r.split_classes.begin(), r.split_classes.end());
  return r;
}

WilfReport wilf_classify(const ClassSeed& seed, const std::vector<DistributionTable>& tables) {
  WilfReport r;
  r.depth = tables.empty() ? 0 : tables.front().depth;
  std::set<std::string> seqs;
  for (const auto& t : tables) seqs.insert(Signature::of_avoidance(avoidance_of(t)).text());
  r.observed_sequences = static_cast<int>(seqs.size());

  std::vector<std::string> labels;
  std::vector<const MeshPattern*> heads;
  std::map<std::string, std::size_t> node;
  std::map<int, std::vector<std::size_t>> nodes_of_class;
  for (const auto& c : seed.classes)
    for (std::size_t b = 0; b < c.proven_blocks.size(); ++b) {
      node[block_label(c, b)] = labels.size();
      nodes_of_class[c.class_id].push_back(labels.size());
      labels.push_back(block_label(c, b));
      heads.push_back(&c.proven_blocks[b].front());
    }

  auto avoid_sig = [&](std::size_t n) { return Signature::of_avoidance(avoidance_of(table_for(tables, *heads[n]))); };

  auto resolve = [&](const WilfMerge& merge) {
    std::vector<std::size_t> ids;
    for (const auto& m : merge.members) {
      if (const auto it = node.find(m); it != node.end()) {
        ids.push_back(it->second);
        continue;
      }
      int cid = 0;
      try {
        cid = std::stoi(m);
      } catch (const std::exception&) {
        throw LedgerError("bad wilf merge member '" + m + "'");
      }
      if (!nodes_of_class.count(cid) || std::to_string(cid) != m) throw LedgerError("bad wilf merge member '" + m + "'");
      for (auto n : nodes_of_class[cid]) ids.push_back(n);
    }
    return ids;
  };

  DisjointSets proved(labels.size()), all(labels.size());
  for (const auto& merge : seed.wilf_merges) {
    const auto ids = resolve(merge);
    if (ids.empty()) continue;
    const auto sig = avoid_sig(ids.front());
    for (auto n : ids) {
      if (!(avoid_sig(n) == sig))
        r.violations.push_back("merge [" + merge.source + "]: " + labels[n] + " and " + labels[ids.front()] +
                               " have different avoidance sequences");
      if (merge.strength == "proved") proved.unite(ids.front(), n);
      all.unite(ids.front(), n);
    }
  }

  std::map<std::size_t, std::vector<std::string>> comps;
  std::set<std::size_t> roots_all;
  for (std::size_t n = 0; n < labels.size(); ++n) {
    comps[proved.find(n)].push_back(labels[n]);
    roots_all.insert(all.find(n));
  }
  for (auto& [root, members] : comps) r.proven_groups.push_back(std::move(members));
  r.proven_merge_count = static_cast<int>(r.proven_groups.size());
  r.with_sketched_count = static_cast<int>(roots_all.size());
  return r;
}

std::vector<CoincidenceVerdict> verify_shading_coincidences(const ClassSeed& seed,
                                                            const std::vector<DistributionTable>& tables,
                                                            const std::vector<std::vector<int>>& groups) {
  std::vector<CoincidenceVerdict> out;
  for (const auto& g : groups) {
    CoincidenceVerdict v{g, true, ""};
    std::optional<AvoidanceSequence> first;
    for (int id : g)
      for (const auto& m : seed.by_id(id).members) {
        const auto a = avoidance_of(table_for(tables, m));
        if (!first) first = a;
        else if (a.values != first->values && v.equal) {
          v.equal = false;
          v.detail = m.literal() + " (class " + std::to_string(id) + ") differs from " + first->pattern.literal();
        }
      }
    out.push_back(std::move(v));
  }
  return out;
}

ConjectureVerdict conjecture_check(const ClassSeed& seed, int class_id, const std::vector<DistributionTable>& tables) {
  const auto& c = seed.by_id(class_id);
  if (c.proven_blocks.size() != 2)
    throw LedgerError("class " + std::to_string(class_id) + " does not have exactly two proven blocks");
  ConjectureVerdict v{class_id, tables.empty() ? 0 : tables.front().depth, true, -1};
  const auto& base = table_for(tables, c.proven_blocks[0].front());
  for (const auto& block : c.proven_blocks)
    for (const auto& m : block) {
      int diff = -1;
      if (!same_row_prefix(base, table_for(tables, m), diff)) {
        v.equal = false;
        if (v.first_difference < 0 || diff < v.first_difference) v.first_difference = diff;
      }
    }
  return v;
}

CellAudit audit_trivial_cells(const ClassSeed& seed, const std::vector<DistributionTable>& tables) {
  CellAudit audit;
  for (const auto& c : seed.classes)
    for (const auto& cell : c.cells) {
      ++audit.cells_checked;
      std::set<MeshPattern> listed(cell.begin(), cell.end());
      const auto sig = Signature::of(table_for(tables, cell.front()));
      for (const auto& m : cell) {
        std::set<MeshPattern> orbit12;
        for (const auto& q : symmetry_orbit(m))
          if (q.tau() == m.tau()) orbit12.insert(q);
        if (orbit12 != listed)
          audit.violations.push_back("class " + std::to_string(c.class_id) + ": cell of " + m.literal() +
                                     " is not its orbit");
        if (!(Signature::of(table_for(tables, m)) == sig))
          audit.violations.push_back("class " + std::to_string(c.class_id) + ": " + m.literal() +
                                     " differs in distribution from " + cell.front().literal());
      }
    }
  return audit;
}

nlohmann::json to_json(const ClassificationReport& report) {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& c : report.classes) {
    std::vector<std::string> members;
    for (const auto& m : c.members) members.push_back(m.literal());
    std::ostringstream digest;
    digest << std::hex << c.signature.digest();
    classes.push_back({{"representative", c.representative.literal()},
                       {"class_id", c.class_id ? nlohmann::json(*c.class_id) : nlohmann::json(nullptr)},
                       {"size", members.size()},
                       {"digest", digest.str()},
                       {"members", members}});
  }
  return {{"schema", "meshpat.classification/1"},
          {"depth", report.depth},
          {"distribution_classes", report.distribution_classes},
          {"avoidance_sequences", report.avoidance_sequences},
          {"proven_blocks", report.proven_blocks},
          {"classes", classes},
          {"discrepancies", report.discrepancies}};
}

}  // namespace meshpat
