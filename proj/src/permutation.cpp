#include "meshpat/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace meshpat {

Permutation::Permutation(std::vector<int> entries) : entries_(std::move(entries)) {
  const int n = size();
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int v : entries_) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("not a permutation of 1.." + std::to_string(n));
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return unchecked(std::move(v));
}

Permutation Permutation::decreasing(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n - i;
  return unchecked(std::move(v));
}

Permutation Permutation::unchecked(std::vector<int> entries) {
  Permutation p;
  p.entries_ = std::move(entries);
  return p;
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<int> values;
  if (text.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto end = std::min(text.find(',', start), text.size());
      const auto token = text.substr(start, end - start);
      if (token.empty() || !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw std::invalid_argument("bad permutation entry '" + std::string(token) + "'");
      values.push_back(std::stoi(std::string(token)));
      start = end + 1;
    }
  } else {
    for (char c : text) {
      if (c < '1' || c > '9') throw std::invalid_argument("bad permutation digit '" + std::string(1, c) + "'");
      values.push_back(c - '0');
    }
  }
  return Permutation(std::move(values));
}

int Permutation::position_of(int value) const {
  const auto it = std::find(entries_.begin(), entries_.end(), value);
  if (it == entries_.end()) throw std::out_of_range("value not in permutation");
  return static_cast<int>(it - entries_.begin());
}

Permutation Permutation::complement() const {
  std::vector<int> v(entries_);
  for (int& x : v) x = size() + 1 - x;
  return unchecked(std::move(v));
}

Permutation Permutation::reverse() const {
  return unchecked(std::vector<int>(entries_.rbegin(), entries_.rend()));
}

Permutation Permutation::inverse() const {
  std::vector<int> v(entries_.size());
  for (int i = 0; i < size(); ++i) v[static_cast<std::size_t>(entries_[static_cast<std::size_t>(i)] - 1)] = i + 1;
  return unchecked(std::move(v));
}

bool Permutation::next_lexicographic() {
  return std::next_permutation(entries_.begin(), entries_.end());
}

std::string Permutation::to_string() const {
  std::string out;
  const bool digits = size() <= 9;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!digits && i > 0) out += ',';
    out += std::to_string(entries_[i]);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Permutation& p) { return os << p.to_string(); }

RLDecomposition rl_decomposition(const Permutation& pi) {
  if (pi.empty()) throw std::invalid_argument("right-to-left decomposition of the empty permutation");
  RLDecomposition d;
  int best = 0;
  for (int pos = pi.size() - 1; pos >= 0; --pos) {
    if (pi[pos] > best) {
      best = pi[pos];
      d.maxima.push_back({pi[pos], pos});
    }
  }
  std::reverse(d.maxima.begin(), d.maxima.end());
  const std::size_t l = d.maxima.size();
  d.blocks.resize(l);
  for (std::size_t i = 0; i < l; ++i) {
    const int hi = d.maxima[i].value;
    const int lo = i + 1 < l ? d.maxima[i + 1].value : 0;
    for (int pos = 0; pos < d.maxima[i].position; ++pos)
      if (pi[pos] > lo && pi[pos] < hi) d.blocks[i].push_back(pos);
  }
  return d;
}

int count_rl_maxima(const Permutation& pi) {
  int best = 0, count = 0;
  for (int pos = pi.size() - 1; pos >= 0; --pos)
    if (pi[pos] > best) {
      best = pi[pos];
      ++count;
    }
  return count;
}

}  // namespace meshpat
