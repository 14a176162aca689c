#include "meshpat/pattern.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <set>
#include <stdexcept>

#include "meshpat/errors.hpp"

namespace meshpat {

MeshPattern::MeshPattern(Permutation tau, std::vector<Box> shading)
    : tau_(std::move(tau)), shading_(std::move(shading)) {
  const int k = tau_.size();
  for (const Box& b : shading_)
    if (b.col < 0 || b.col > k || b.row < 0 || b.row > k)
      throw std::invalid_argument("box (" + std::to_string(b.col) + "," + std::to_string(b.row) +
                                  ") outside [0," + std::to_string(k) + "]^2");
  std::sort(shading_.begin(), shading_.end());
  shading_.erase(std::unique(shading_.begin(), shading_.end()), shading_.end());
}

MeshPattern MeshPattern::parse(std::string_view literal) {
  const auto colon = literal.find(':');
  if (colon == std::string_view::npos) throw ParseError("missing ':' in pattern literal", std::string(literal));
  const auto tau_text = literal.substr(0, colon);
  const auto box_text = literal.substr(colon + 1);

  std::vector<int> values;
  std::vector<bool> seen(10, false);
  for (char c : tau_text) {
    if (c < '1' || c > '9') throw ParseError("bad digit in tau", std::string(1, c));
    const int v = c - '0';
    if (seen[static_cast<std::size_t>(v)]) throw ParseError("repeated value in tau", std::string(1, c));
    seen[static_cast<std::size_t>(v)] = true;
    values.push_back(v);
  }
  const int k = static_cast<int>(values.size());
  for (int v : values)
    if (v > k) throw ParseError("tau is not a permutation of 1.." + std::to_string(k), std::to_string(v));

  std::vector<Box> boxes;
  if (!box_text.empty()) {
    std::size_t start = 0;
    while (true) {
      const auto end = std::min(box_text.find(',', start), box_text.size());
      const std::string token(box_text.substr(start, end - start));
      if (token.size() != 2 || !std::isdigit(static_cast<unsigned char>(token[0])) ||
          !std::isdigit(static_cast<unsigned char>(token[1])))
        throw ParseError("box token must be two digits", token);
      const Box b{token[0] - '0', token[1] - '0'};
      if (b.col > k || b.row > k) throw ParseError("box outside [0," + std::to_string(k) + "]^2", token);
      boxes.push_back(b);
      if (end == box_text.size()) break;
      start = end + 1;
    }
  }
  return MeshPattern(Permutation::unchecked(std::move(values)), std::move(boxes));
}

MeshPattern MeshPattern::from_mask(Permutation tau, BoxMask mask) {
  const int k = tau.size();
  std::vector<Box> boxes;
  for (int c = 0; c <= k; ++c)
    for (int r = 0; r <= k; ++r)
      if (mask >> box_bit(k, {c, r}) & 1u) boxes.push_back({c, r});
  return MeshPattern(std::move(tau), std::move(boxes));
}

bool MeshPattern::is_shaded(Box b) const { return std::binary_search(shading_.begin(), shading_.end(), b); }

BoxMask MeshPattern::mask() const {
  const int k = length();
  if ((k + 1) * (k + 1) > 64) throw std::length_error("pattern too long for a 64-bit box mask");
  BoxMask m = 0;
  for (const Box& b : shading_) m |= BoxMask{1} << box_bit(k, b);
  return m;
}

MeshPattern MeshPattern::with_box(Box b) const {
  auto boxes = shading_;
  boxes.push_back(b);
  return MeshPattern(tau_, std::move(boxes));
}

MeshPattern MeshPattern::complement() const {
  const int k = length();
  std::vector<Box> boxes;
  for (const Box& b : shading_) boxes.push_back({b.col, k - b.row});
  return MeshPattern(tau_.complement(), std::move(boxes));
}

MeshPattern MeshPattern::reverse() const {
  const int k = length();
  std::vector<Box> boxes;
  for (const Box& b : shading_) boxes.push_back({k - b.col, b.row});
  return MeshPattern(tau_.reverse(), std::move(boxes));
}

MeshPattern MeshPattern::inverse() const {
  std::vector<Box> boxes;
  for (const Box& b : shading_) boxes.push_back({b.row, b.col});
  return MeshPattern(tau_.inverse(), std::move(boxes));
}

std::string MeshPattern::literal() const {
  if (tau_.size() > 9) throw std::length_error("pattern literal needs k <= 9");
  std::string out = tau_.to_string();
  out += ':';
  for (std::size_t i = 0; i < shading_.size(); ++i) {
    if (i > 0) out += ',';
    out += static_cast<char>('0' + shading_[i].col);
    out += static_cast<char>('0' + shading_[i].row);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const MeshPattern& p) { return os << p.literal(); }

std::vector<MeshPattern> symmetry_orbit(const MeshPattern& p) {
  std::set<MeshPattern> seen{p};
  std::vector<MeshPattern> todo{p};
  while (!todo.empty()) {
    const MeshPattern q = todo.back();
    todo.pop_back();
    for (MeshPattern r : {q.complement(), q.reverse(), q.inverse()})
      if (seen.insert(r).second) todo.push_back(std::move(r));
  }
  std::vector<MeshPattern> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const MeshPattern& a, const MeshPattern& b) { return a.literal() < b.literal(); });
  return out;
}

const std::vector<MeshPattern>& all_length2_patterns() {
  static const std::vector<MeshPattern> patterns = [] {
    std::vector<MeshPattern> out;
    out.reserve(1024);
    for (const char* tau : {"12", "21"})
      for (BoxMask m = 0; m < 512; ++m) out.push_back(MeshPattern::from_mask(Permutation::parse(tau), m));
    return out;
  }();
  return patterns;
}

int length2_index(const MeshPattern& p) {
  if (p.length() != 2) throw std::invalid_argument("not a length-2 pattern: " + p.literal());
  return (p.tau()[0] == 2 ? 512 : 0) + static_cast<int>(p.mask());
}

}  // namespace meshpat
