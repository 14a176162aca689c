#include "meshpat/series.hpp"

#include <algorithm>

#include "meshpat/errors.hpp"

namespace meshpat {

// ---- QPoly ----

QPoly::QPoly(Rational constant) {
  if (constant != 0) c_.push_back(std::move(constant));
}

QPoly QPoly::from_coeffs(std::vector<Rational> c) {
  QPoly p;
  p.c_ = std::move(c);
  p.trim();
  return p;
}

QPoly QPoly::q() { return from_coeffs({0, 1}); }

Rational QPoly::operator[](int k) const {
  return k >= 0 && k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)] : Rational(0);
}

Rational QPoly::evaluate(const Rational& at) const {
  Rational v = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * at + *it;
  return v;
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return QPoly::from_coeffs(std::move(c));
}

// ---- Series ----

Series::Series(int order) : order_(order), c_(static_cast<std::size_t>(std::max(order, 0)) + 1) {
  if (order < 0) throw SeriesError("negative truncation order");
}

Series Series::constant(const QPoly& c, int order) {
  Series s(order);
  s.c_[0] = c;
  return s;
}

Series Series::x(int order) {
  Series s(order);
  if (order >= 1) s.c_[1] = Rational(1);
  return s;
}

Series Series::from_coeffs(std::vector<QPoly> coeffs, int order) {
  Series s(order);
  for (std::size_t n = 0; n < coeffs.size() && n < s.c_.size(); ++n) s.c_[n] = std::move(coeffs[n]);
  return s;
}

void Series::require_same_order(const Series& o) const {
  if (o.order_ != order_)
    throw SeriesError("series orders differ: " + std::to_string(order_) + " vs " + std::to_string(o.order_));
}

Series& Series::operator+=(const Series& o) {
  require_same_order(o);
  for (std::size_t n = 0; n < c_.size(); ++n) c_[n] += o.c_[n];
  return *this;
}

Series& Series::operator-=(const Series& o) {
  require_same_order(o);
  for (std::size_t n = 0; n < c_.size(); ++n) c_[n] -= o.c_[n];
  return *this;
}

Series operator*(const Series& a, const Series& b) {
  a.require_same_order(b);
  Series out(a.order_);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < out.c_.size(); ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
  }
  return out;
}

Series operator*(const QPoly& a, Series b) {
  for (auto& c : b.c_) c = a * c;
  return b;
}

Series s_add(const Series& a, const Series& b) { return a + b; }
Series s_sub(const Series& a, const Series& b) { return a - b; }
Series s_mul(const Series& a, const Series& b) { return a * b; }

Series s_inv(const Series& s) {
  const QPoly& c0 = s[0];
  if (c0.degree() != 0) throw SeriesError("inverse needs a nonzero constant term free of q");
  const Rational inv0 = 1 / c0[0];
  Series out(s.order());
  out[0] = inv0;
  for (int n = 1; n <= s.order(); ++n) {
    QPoly acc;
    for (int i = 1; i <= n; ++i) acc += s[i] * out[n - i];
    out[n] = QPoly(-inv0) * acc;
  }
  return out;
}

Series series_F(int order) {
  Series s(order);
  for (int n = 0; n <= order; ++n) s[n] = Rational(factorial(n));
  return s;
}

Series series_factorial_harmonic(int order) {
  Series s(order);
  Rational h = 0;
  for (int n = 1; n <= order; ++n) {
    h += Rational(1, n);
    s[n] = Rational(factorial(n)) * h;
  }
  return s;
}

Series series_rising(int order) {
  Series s(order);
  QPoly prod(Rational(1));
  for (int n = 1; n <= order; ++n) {
    prod = prod * (QPoly::q() + QPoly(Rational(n - 1)));
    s[n] = prod;
  }
  return s;
}

Rational extract(const Series& s, int n, int k) {
  if (n < 0 || n > s.order())
    throw SeriesError("coefficient x^" + std::to_string(n) + " beyond order " + std::to_string(s.order()));
  return s[n][k];
}

Series specialize_q(const Series& s, const Rational& q) {
  Series out(s.order());
  for (int n = 0; n <= s.order(); ++n) out[n] = s[n].evaluate(q);
  return out;
}

bool is_integral(const Series& s, bool nonnegative) {
  for (const auto& c : s.coeffs())
    for (const auto& r : c.coeffs()) {
      if (boost::multiprecision::denominator(r) != 1) return false;
      if (nonnegative && r < 0) return false;
    }
  return true;
}

nlohmann::json to_json(const Series& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : s.coeffs()) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& r : c.coeffs()) row.push_back(to_string(r));
    coeffs.push_back(row);
  }
  return {{"order", s.order()}, {"coeffs", coeffs}};
}

// ---- registry ----

const std::vector<GfEntry>& gf_registry() {
  static const std::vector<GfEntry> entries = {
      {"1:01,10", "1:01,10", true, true, 0, "single-point pattern: A = F/(1+xF), F(x,q) = F/(1+x(1-q)F)"},
      {"33", "", false, true, 0, "class 33 theorem: (1-q)(1+x)/2 + (1+q)/2 F"},
      {"36", "", true, true, 0, "class 36 theorem: F/(1+(1-q)x(F-1))"},
      {"47", "", true, false, 0, "class 47 theorem: F/(1 + x sum n! H_n x^n)"},
      {"54", "", true, false, 2, "class 54 theorem: F - 1 - x - xF/(1+xF) sum n! H_n x^n (n >= 2)"},
      {"56", "", true, true, 0, "class 56 theorem [KZ2019]: (2F-1)/F, ((2-q)F+q-1)/((1-q)F+q)"},
      {"77", "", true, true, 0, "class 77 theorem: (1-x)F + xF/(1+x(1-q)F)"},
      {"78", "", true, true, 0, "class 78 theorem: (1-x)F + x + x sum (q)_n x^n"},
      {"80", "", true, true, 0, "class 80 theorem: (1+x(1-q))F/(1+x(1-q)F)"},
      {"19", "", true, false, 0, "avoidance theorem: (1+x)F/(1+xF)"},
      {"21", "", true, false, 0, "avoidance theorem: (1+x)F/(1+xF)"},
      {"97", "", true, false, 0, "avoidance theorem: (1+x)F/(1+xF)"},
      {"103", "", true, false, 0, "avoidance theorem: (1+x)F/(1+xF)"},
  };
  return entries;
}

const GfEntry& gf_entry(const std::string& key) {
  for (const auto& e : gf_registry())
    if (e.key == key) return e;
  throw NoFormulaError("no generating function registered for '" + key + "'");
}

namespace {

// F(x,q) pieces share these; one(order) etc keep the call sites close to the printed forms
Series one(int N) { return Series::constant(Rational(1), N); }
QPoly omq() { return QPoly(Rational(1)) - QPoly::q(); }  // 1 - q

Series distribution_gf(const std::string& key, int N) {
  const Series F = series_F(N), x = Series::x(N);
  if (key == "1:01,10") return F / (one(N) + omq() * (x * F));
  if (key == "33") {
    const QPoly half(Rational(1, 2));
    return (half * omq()) * (one(N) + x) + (half * (QPoly(Rational(1)) + QPoly::q())) * F;
  }
  if (key == "36") return F / (one(N) + omq() * (x * (F - one(N))));
  if (key == "56") {
    const QPoly q = QPoly::q();
    return ((QPoly(Rational(2)) - q) * F + Series::constant(q - QPoly(Rational(1)), N)) /
           (omq() * F + Series::constant(q, N));
  }
  if (key == "77") return (one(N) - x) * F + (x * F) / (one(N) + omq() * (x * F));
  if (key == "78") return (one(N) - x) * F + x + x * series_rising(N);
  if (key == "80") return ((one(N) + omq() * x) * F) / (one(N) + omq() * (x * F));
  throw NoFormulaError("no distribution generating function for '" + key + "'");
}

Series avoidance_gf(const std::string& key, int N) {
  const Series F = series_F(N), x = Series::x(N);
  if (key == "1:01,10") return F / (one(N) + x * F);
  if (key == "36") return F / (one(N) + x * (F - one(N)));
  if (key == "47") return F / (one(N) + x * series_factorial_harmonic(N));
  if (key == "54") return F - one(N) - x - ((x * F) / (one(N) + x * F)) * series_factorial_harmonic(N);
  if (key == "56") return (QPoly(Rational(2)) * F - one(N)) / F;
  if (key == "77") return (one(N) - x) * F + (x * F) / (one(N) + x * F);
  if (key == "78") return (one(N) - x) * F + x;
  if (key == "80" || key == "19" || key == "21" || key == "97" || key == "103")
    return ((one(N) + x) * F) / (one(N) + x * F);
  return specialize_q(distribution_gf(key, N), 0);
}

}  // namespace

Series gf_expand(const std::string& key, int order, GfMode mode) {
  const GfEntry& e = gf_entry(key);
  if (mode == GfMode::Distribution && !e.has_distribution)
    throw NoFormulaError("no distribution generating function for '" + key + "'");
  return mode == GfMode::Distribution ? distribution_gf(key, order) : avoidance_gf(key, order);
}

}  // namespace meshpat
