#include "medianprime/specfun.hpp"

#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <vector>

#include "medianprime/errors.hpp"

namespace medianprime::specfun {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;

// Ei(v) = gamma + log|v| + sum v^n / (n n!)
double ei_series(double v) {
  double term = 1.0;
  double sum = 0.0;
  for (int n = 1; n < 500; ++n) {
    term *= v / n;
    const double add = term / n;
    sum += add;
    if (std::abs(add) <= 1e-17 * std::abs(sum)) break;
  }
  return kEulerGamma + std::log(std::abs(v)) + sum;
}

// e^v / v * sum k! / v^k, stopped at the smallest term.
double ei_asymptotic(double v) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = term * k / v;
    if (next >= term) break;
    term = next;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return std::exp(v) / v * sum;
}

// E1(x) for x > 1 by modified Lentz on the even continued fraction.
double e1_continued_fraction(double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x);
}

constexpr double kSeriesSwitch = 40.0;

}  // namespace

PrincipalValueReal ei(double v) {
  if (v == 0.0) throw DomainError("Ei has a pole at 0");
  if (!std::isfinite(v)) throw DomainError("Ei argument must be finite");
  PrincipalValueReal out;
  if (v < 0.0) {
    out.value = (-v <= 1.0) ? ei_series(v) : -e1_continued_fraction(-v);
    out.kind = PrincipalValueReal::Kind::ordinary;
  } else {
    out.value = (v <= kSeriesSwitch) ? ei_series(v) : ei_asymptotic(v);
    out.kind = PrincipalValueReal::Kind::cauchy_pv;
  }
  return out;
}

double ei_value(double v) { return ei(v).value; }

double li(double v) {
  if (!(v > 1.0)) throw DomainError("li requires v > 1");
  return ei_value(std::log(v));
}

double Li(double v) {
  if (!(v >= 2.0)) throw DomainError("Li requires v >= 2");
  if (v == 2.0) return 0.0;
  return li(v) - li(2.0);
}

// ---- Gamma --------------------------------------------------------------------

std::complex<double> gamma_complex(std::complex<double> z) {
  using C = std::complex<double>;
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw DomainError("Gamma has a pole at a nonpositive integer");
  if (z.real() < 0.5) {
    // reflection
    return std::numbers::pi / (std::sin(std::numbers::pi * z) * gamma_complex(1.0 - z));
  }
  static constexpr std::array<double, 9> p = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double g = 7.0;
  z -= 1.0;
  C x = p[0];
  for (int i = 1; i < 9; ++i) x += p[static_cast<std::size_t>(i)] / (z + static_cast<double>(i));
  const C t = z + g + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

double gamma_real(double x) {
  if (x <= 0.0 && x == std::floor(x)) throw DomainError("Gamma has a pole at a nonpositive integer");
  return std::tgamma(x);
}

// ---- zeta at even integers ------------------------------------------------------

mpq_class bernoulli(int n) {
  if (n < 0) throw DomainError("Bernoulli index must be nonnegative");
  static std::mutex mu;
  static std::vector<mpq_class> cache{mpq_class(1)};
  std::lock_guard<std::mutex> lock(mu);
  // sum_{k=0}^{m} C(m+1, k) B_k = 0
  while (static_cast<int>(cache.size()) <= n) {
    const unsigned long m = cache.size();
    mpq_class s = 0;
    mpz_class binom = 1;  // C(m+1, 0)
    for (unsigned long k = 0; k < m; ++k) {
      s += mpq_class(binom) * cache[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    mpq_class b = -s / mpq_class(m + 1);
    b.canonicalize();
    cache.push_back(b);
  }
  return cache[static_cast<std::size_t>(n)];
}

mpq_class zeta_even_ratio(int j) {
  if (j < 2 || j % 2 != 0) throw DomainError("zeta_even requires an even j >= 2");
  // zeta(2k) = (-1)^(k+1) B_2k (2 pi)^2k / (2 (2k)!)
  const int k = j / 2;
  mpz_class fact, two_pow;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(j));
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(j));
  mpq_class r = bernoulli(j) * mpq_class(two_pow) / (2 * mpq_class(fact));
  if (k % 2 == 0) r = -r;
  r.canonicalize();
  return r;
}

double zeta_even(int j) {
  if (j > 40) throw DomainError("zeta_even supports j <= 40");
  return zeta_even_ratio(j).get_d() * std::pow(std::numbers::pi, j);
}

// ---- generalized incomplete gamma ------------------------------------------------

namespace {

using Cplx = std::complex<double>;

/// Integral of exp(z u - e^u - shift) over the segment from u0 to u1.
Cplx segment_integral(Cplx z, Cplx shift, Cplx u0, Cplx u1) {
  const Cplx du = u1 - u0;
  if (std::abs(du) == 0.0) return 0.0;
  auto f = [&](double s) -> Cplx {
    const Cplx u = u0 + s * du;
    return std::exp(z * u - std::exp(u) - shift) * du;
  };
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, 1.0, 15, 1e-10, &err);
}

/// Integral over [a,b] of t^(z-1) e^(-t) dt divided by exp(shift). In u = log t
/// the path runs along Im u = arg z, which carries the saddle t = z with a
/// stationary phase; the two vertical legs close it to the real endpoints.
Cplx gen_inc_gamma_shifted(Cplx z, double a, double b, Cplx shift) {
  if (!(a > 0.0 && a < b)) throw DomainError("incomplete gamma requires 0 < a < b");
  const double theta = std::arg(z);
  const Cplx ua(std::log(a), 0.0);
  const Cplx ub(std::log(b), 0.0);
  const Cplx ua_up(std::log(a), theta);
  const Cplx ub_up(std::log(b), theta);
  // Split the horizontal leg at the saddle so the peak sits on a node boundary.
  const double x_star = std::log(std::abs(z));
  Cplx total = segment_integral(z, shift, ua, ua_up);
  if (x_star > ua.real() && x_star < ub.real()) {
    const Cplx mid(x_star, theta);
    total += segment_integral(z, shift, ua_up, mid);
    total += segment_integral(z, shift, mid, ub_up);
  } else {
    total += segment_integral(z, shift, ua_up, ub_up);
  }
  total += segment_integral(z, shift, ub_up, ub);
  return total;
}

Cplx saddle_exponent(Cplx z) { return (z - 0.5) * std::log(z) - z; }

}  // namespace

std::complex<double> gen_inc_gamma_numeric(std::complex<double> z, double a, double b) {
  return gen_inc_gamma_shifted(z, a, b, 0.0);
}

std::complex<double> gen_inc_gamma_numeric_scaled(std::complex<double> z, double a, double b) {
  // exp(z u - e^u) = t^z e^-t ; subtracting the saddle exponent keeps it O(1)
  return gen_inc_gamma_shifted(z, a, b, saddle_exponent(z));
}

std::complex<double> gen_inc_gamma_saddle(std::complex<double> z) {
  return std::sqrt(2.0 * std::numbers::pi) * std::exp(saddle_exponent(z));
}

// ---- log-integral expansions -------------------------------------------------------

ExpansionValue log_integral_tail(double v, int m, int J) {
  if (!(v >= 3.0) || m < 2 || J < 1) throw DomainError("log_integral_tail requires v >= 3, m >= 2, J >= 1");
  const double L = (m - 1) * std::log(v);
  double s = 0.0;
  double fact = 1.0;  // (j-1)!
  for (int j = 1; j <= J; ++j) {
    if (j > 1) fact *= (j - 1);
    s += (j % 2 ? 1.0 : -1.0) * fact / std::pow(L, j);
  }
  ExpansionValue out;
  out.expansion = s / std::pow(v, m - 1);
  out.exact = -ei_value(-L);
  return out;
}

ExpansionValue log_integral_head(double v, int n, int J) {
  if (!(v >= 3.0) || n < 0 || J < 1) throw DomainError("log_integral_head requires v >= 3, n >= 0, J >= 1");
  const double k = n + 1.0;
  const double L = k * std::log(v);
  double s = 0.0;
  double fact = 1.0;
  for (int j = 1; j <= J; ++j) {
    if (j > 1) fact *= (j - 1);
    s += fact / std::pow(L, j);
  }
  ExpansionValue out;
  out.expansion = std::pow(v, k) * s - std::pow(2.0, k) / (k * std::numbers::ln2);
  out.exact = ei_value(L) - ei_value(k * std::numbers::ln2);
  return out;
}

}  // namespace medianprime::specfun
