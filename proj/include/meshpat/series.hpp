#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "meshpat/numeric.hpp"

namespace meshpat {

/// Polynomial in q with exact rational coefficients; trailing zeros trimmed.
class QPoly {
 public:
  QPoly() = default;
  QPoly(Rational constant);  // NOLINT: implicit so integers promote naturally
  static QPoly from_coeffs(std::vector<Rational> c);
  static QPoly q();

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const noexcept { return c_.empty(); }
  Rational operator[](int k) const;
  const std::vector<Rational>& coeffs() const noexcept { return c_; }
  Rational evaluate(const Rational& at) const;

  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator-(const QPoly& a) { return QPoly{} - a; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend bool operator==(const QPoly&, const QPoly&) = default;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Power series in x truncated after x^order, with QPoly coefficients.
class Series {
 public:
  explicit Series(int order = 9);
  static Series constant(const QPoly& c, int order);
  static Series x(int order);
  static Series from_coeffs(std::vector<QPoly> coeffs, int order);

  int order() const noexcept { return order_; }
  const QPoly& operator[](int n) const { return c_.at(static_cast<std::size_t>(n)); }
  QPoly& operator[](int n) { return c_.at(static_cast<std::size_t>(n)); }
  const std::vector<QPoly>& coeffs() const noexcept { return c_; }

  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator*(const QPoly& a, Series b);
  friend bool operator==(const Series&, const Series&) = default;

 private:
  void require_same_order(const Series& o) const;
  int order_;
  std::vector<QPoly> c_;
};

Series s_add(const Series& a, const Series& b);
Series s_sub(const Series& a, const Series& b);
Series s_mul(const Series& a, const Series& b);
/// Throws SeriesError unless the constant term is a nonzero q-constant.
Series s_inv(const Series& s);
inline Series operator/(const Series& a, const Series& b) { return a * s_inv(b); }

/// sum n! x^n
Series series_F(int order);
/// sum_{n>=1} n! H_n x^n
Series series_factorial_harmonic(int order);
/// sum_{n>=1} q(q+1)...(q+n-1) x^n
Series series_rising(int order);

/// Coefficient of x^n q^k. Throws SeriesError if n > order.
Rational extract(const Series& s, int n, int k);

/// Substitutes a value for q in every coefficient.
Series specialize_q(const Series& s, const Rational& q);

/// Whether every coefficient is an integer (and, optionally, nonnegative).
bool is_integral(const Series& s, bool nonnegative = true);

/// {order, coeffs: [[ "p/q", ...], ...]}
nlohmann::json to_json(const Series& s);

enum class GfMode { Avoidance, Distribution };

struct GfEntry {
  std::string key;            // class id ("36") or a pattern literal ("1:01,10")
  std::string pattern;        // member used for brute-force comparison
  bool has_avoidance = false;
  bool has_distribution = false;
  int valid_from = 0;         // smallest n the expansion is claimed for
  std::string source;
};

const std::vector<GfEntry>& gf_registry();
const GfEntry& gf_entry(const std::string& key);

/// Expands the registered generating function exactly as stated. In Avoidance mode the
/// result has q-free coefficients; classes without an explicit A(x) use F(x,0).
/// Throws NoFormulaError for unknown keys or modes.
Series gf_expand(const std::string& key, int order, GfMode mode);

}  // namespace meshpat
