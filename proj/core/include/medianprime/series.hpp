#pragma once

// Exact truncated bivariate power series over Q[Lambda, Pi].
//
// Lambda stands for log 2 and Pi for pi^2; both are kept as formal symbols so
// that polynomial coefficients can be compared exactly. Series are in two
// small parameters sigma and tau and are truncated to a box
// [0, sigma_order] x [0, tau_order], optionally further cut by total degree.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace medianprime::series {

using Rational = mpq_class;

/// Parses "p/q" or "p".
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

/// Element of Q[Lambda, Pi]; zero coefficients are never stored.
class SymPoly {
 public:
  struct Monomial {
    int lambda = 0;
    int pi = 0;
    auto operator<=>(const Monomial&) const = default;
  };

  SymPoly() = default;
  SymPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  SymPoly(long c);             // NOLINT(google-explicit-constructor)

  static SymPoly monomial(const Rational& c, int lambda_deg, int pi_deg);
  static SymPoly lambda() { return monomial(1, 1, 0); }
  static SymPoly pi_squared() { return monomial(1, 0, 1); }

  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  /// True when the value lies in Q (no Lambda or Pi dependence).
  [[nodiscard]] bool is_rational() const;
  /// Coefficient of Lambda^a Pi^b (zero when absent).
  [[nodiscard]] Rational coeff(int lambda_deg, int pi_deg) const;
  [[nodiscard]] const std::map<Monomial, Rational>& terms() const { return terms_; }

  [[nodiscard]] double evaluate(double lambda_value, double pi_sq_value) const;
  /// Evaluates with Lambda = log 2 and Pi = pi^2.
  [[nodiscard]] double value() const;
  [[nodiscard]] std::string to_string() const;

  SymPoly& operator+=(const SymPoly& o);
  SymPoly& operator-=(const SymPoly& o);
  SymPoly& operator*=(const Rational& c);
  /// this += a * b, without materializing the product.
  void add_product(const SymPoly& a, const SymPoly& b);

  friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
  friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
  friend SymPoly operator-(SymPoly a) {
    a *= Rational(-1);
    return a;
  }
  friend SymPoly operator*(const SymPoly& a, const SymPoly& b);
  friend SymPoly operator*(SymPoly a, const Rational& c) { return a *= c; }
  friend SymPoly operator*(const Rational& c, SymPoly a) { return a *= c; }
  friend bool operator==(const SymPoly& a, const SymPoly& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

struct Truncation {
  int sigma_order = 0;  ///< highest sigma exponent kept
  int tau_order = 0;    ///< highest tau exponent kept
  int total_order = 0;  ///< highest total degree kept
  bool operator==(const Truncation&) const = default;

  static Truncation box(int sigma, int tau) { return {sigma, tau, sigma + tau}; }
  static Truncation total(int order) { return {order, order, order}; }
  [[nodiscard]] bool keeps(int m, int n) const {
    return m >= 0 && n >= 0 && m <= sigma_order && n <= tau_order && m + n <= total_order;
  }
};

/// Truncated power series sum c[m,n] sigma^m tau^n with SymPoly coefficients.
class BiSeries {
 public:
  explicit BiSeries(Truncation t);

  static BiSeries constant(Truncation t, const SymPoly& c);
  static BiSeries sigma(Truncation t);
  static BiSeries tau(Truncation t);

  [[nodiscard]] const Truncation& truncation() const { return trunc_; }
  [[nodiscard]] const SymPoly& at(int m, int n) const;
  /// Sets a coefficient; silently dropped when outside the truncation.
  void set(int m, int n, SymPoly c);
  [[nodiscard]] const SymPoly& constant_term() const { return at(0, 0); }
  [[nodiscard]] bool is_zero() const;

  BiSeries& operator+=(const BiSeries& o);
  BiSeries& operator-=(const BiSeries& o);
  BiSeries& operator*=(const SymPoly& c);

  friend BiSeries operator+(BiSeries a, const BiSeries& b) { return a += b; }
  friend BiSeries operator-(BiSeries a, const BiSeries& b) { return a -= b; }
  friend BiSeries operator-(BiSeries a) {
    a *= SymPoly(-1);
    return a;
  }
  friend BiSeries operator*(const BiSeries& a, const BiSeries& b);
  friend BiSeries operator*(BiSeries a, const SymPoly& c) { return a *= c; }
  friend BiSeries operator*(const SymPoly& c, BiSeries a) { return a *= c; }
  friend bool operator==(const BiSeries& a, const BiSeries& b) {
    return a.trunc_ == b.trunc_ && a.coeffs_ == b.coeffs_;
  }

 private:
  [[nodiscard]] std::size_t index(int m, int n) const {
    return static_cast<std::size_t>(m) * static_cast<std::size_t>(trunc_.tau_order + 1) +
           static_cast<std::size_t>(n);
  }
  void require_same(const BiSeries& o) const;

  Truncation trunc_;
  std::vector<SymPoly> coeffs_;
};

/// s^k for k >= 0.
BiSeries power(const BiSeries& s, int k);
/// Multiplicative inverse; the constant term must be a nonzero rational.
BiSeries inverse(const BiSeries& s);
/// u^(-k) for a unit u and k >= 1.
BiSeries pow_neg(const BiSeries& u, int k);
/// (1 + s)^a for s with zero constant term and rational exponent a.
BiSeries pow1p(const BiSeries& s, const Rational& a);
/// log(1 + s) for s with zero constant term.
BiSeries log1p(const BiSeries& s);
/// exp(s) for s with zero constant term.
BiSeries exp(const BiSeries& s);
/// sum_k g[k] s^k for s with zero constant term.
BiSeries compose(const std::vector<SymPoly>& g, const BiSeries& s);

}  // namespace medianprime::series
