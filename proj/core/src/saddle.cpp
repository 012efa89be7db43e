#include "medianprime/saddle.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>

#include "medianprime/cascade.hpp"
#include "medianprime/primes.hpp"
#include "medianprime/products.hpp"
#include "medianprime/specfun.hpp"

namespace medianprime::saddle {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kQuadTol = 1e-12;

const std::vector<std::uint64_t>& psi_primes() {
  static const std::vector<std::uint64_t> ps = primes::base_primes(kPsiExactLimit, primes::table_path_from_env());
  return ps;
}

template <class F>
double integrate(F f, double a, double b) {
  if (!(b > a)) return 0.0;
  double err = 0.0;
  return gauss_kronrod<double, 31>::integrate(f, a, b, 15, kQuadTol, &err);
}

// int_{log lo}^{v} g(u) du over pieces split at log v.
template <class F>
double integrate_log_range(F g, double ulo, double uhi, double v) {
  double total = 0.0;
  std::vector<double> cuts{ulo};
  const double mid = std::log(std::max(v, 1.0));
  if (mid > ulo && mid < uhi) cuts.push_back(mid);
  for (double c = std::ceil(ulo / 64.0) * 64.0; c < uhi; c += 64.0)
    if (c > cuts.back()) cuts.push_back(c);
  cuts.push_back(uhi);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += integrate(g, cuts[i], cuts[i + 1]);
  return total;
}

// Sum over primes q < e^v (and q <= kPsiExactLimit) of f(q); reports whether the range was complete.
template <class F>
double prime_sum_below_exp(double v, F f, bool* complete) {
  const auto& ps = psi_primes();
  const long double bound = std::exp(static_cast<long double>(v));
  *complete = bound <= static_cast<long double>(kPsiExactLimit);
  double s = 0.0, c = 0.0;
  for (std::uint64_t q : ps) {
    if (static_cast<long double>(q) >= bound) break;
    const double t = f(static_cast<double>(q));
    const double y = t - c;
    const double u = s + y;
    c = (u - s) - y;
    s = u;
  }
  return s;
}

const series::PolyFamily& R_family() {
  static const series::PolyFamily R = series::cascade_R(series::kMaxCascadeDepth);
  return R;
}

const series::PolyFamily& P_family() {
  static const series::PolyFamily P = series::cascade_P(series::kMaxCascadeDepth);
  return P;
}

}  // namespace

double xi_of_x(double x) {
  if (!(x > std::exp(1.0))) throw DomainError("xi: x must exceed e");
  return std::log(std::log(x));
}

double shifted_reciprocal_sum(double v) {
  if (!(v > 0.0)) throw DomainError("psi: v must be positive");
  bool complete = false;
  double s = prime_sum_below_exp(v, [v](double q) { return 1.0 / (q - 1.0 + v); }, &complete);
  if (!complete) {
    const double ulo = std::log(static_cast<double>(kPsiExactLimit));
    s += integrate_log_range([v](double u) { return 1.0 / (u * (1.0 + (v - 1.0) * std::exp(-u))); }, ulo, v, v);
  }
  return s;
}

double psi(double xi, double v) {
  if (!(xi > 0.0)) throw DomainError("psi: xi must be positive");
  return xi / (v * v) - shifted_reciprocal_sum(v);
}

double psi_exact(double xi, double v) {
  if (!(xi > 0.0)) throw DomainError("psi: xi must be positive");
  if (!(v > 0.0)) throw DomainError("psi: v must be positive");
  bool complete = false;
  const double s = prime_sum_below_exp(v, [v](double q) { return 1.0 / (q - 1.0 + v); }, &complete);
  if (!complete) {
    std::ostringstream os;
    os << "psi_exact: primes below e^" << v << " ~ " << std::exp(v) << " needed, table covers "
       << kPsiExactLimit;
    throw BudgetExceeded(os.str());
  }
  return xi / (v * v) - s;
}

double log_F_omega_saddle(double v) {
  if (!(v > 0.0)) throw DomainError("log F: v must be positive");
  bool complete = false;
  double s = prime_sum_below_exp(v, [v](double q) { return std::log1p(v / (q - 1.0)); }, &complete);
  if (!complete) {
    const double ulo = std::log(static_cast<double>(kPsiExactLimit));
    // log(1 + w) e^u / u with w = v / (e^u - 1), written to survive e^u overflow
    const auto g = [v](double u) {
      const double w = v / std::expm1(u);
      const double ratio = w > 1e-12 ? std::log1p(w) / w : 1.0 - 0.5 * w;
      return v * ratio / (-std::expm1(-u) * u);
    };
    s += integrate_log_range(g, ulo, v, v);
  }
  return s;
}

SaddleState solve_rho(double xi, double tol, bool with_nu) {
  if (!(xi > 1.0)) throw DomainError("solve_rho: xi must exceed 1");
  if (!(tol > 0.0)) throw DomainError("solve_rho: tol must be positive");
  double lo = 0.5, hi = 2.0;
  if (xi >= 3.0) {
    lo = std::sqrt(xi / std::log(xi));
    hi = std::sqrt(5.0 * xi / std::log(xi));
  }
  double plo = psi(xi, lo), phi = psi(xi, hi);
  std::ostringstream samples;
  samples << "psi(" << lo << ")=" << plo << " psi(" << hi << ")=" << phi;
  for (int k = 0; k < 200 && plo <= 0.0; ++k) {
    hi = lo;
    phi = plo;
    lo *= 0.5;
    plo = psi(xi, lo);
  }
  for (int k = 0; k < 200 && phi > 0.0; ++k) {
    lo = hi;
    plo = phi;
    hi *= 2.0;
    phi = psi(xi, hi);
  }
  if (!(plo > 0.0) || phi > 0.0)
    throw DomainError("solve_rho: no sign change of psi for xi = " + std::to_string(xi) + "; sampled " +
                      samples.str());
  SaddleState s;
  s.xi = xi;
  int it = 0;
  while (hi - lo > tol * lo && it < 400) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (psi(xi, mid) > 0.0)
      lo = mid;
    else
      hi = mid;
    ++it;
  }
  s.rho = lo;
  s.bracket = {lo, hi};
  s.psi_at_rho = psi(xi, lo);
  s.iterations = it;
  s.mu = xi > 1.0 ? std::sqrt(2.0 * xi / std::log(xi)) : 0.0;
  if (with_nu) s.nu = solve_nu(xi, tol);
  return s;
}

double I_numeric(double v) {
  if (!(v >= 1.0)) throw DomainError("I_numeric: v must be >= 1");
  // t = e^u
  const auto g = [v](double u) { return 1.0 / (u * (1.0 + (v - 1.0) * std::exp(-u))); };
  return integrate_log_range(g, std::log(2.0), v, v);
}

double I_asymptotic(double v, int J) {
  if (!(v >= 3.0)) throw DomainError("I_asymptotic: v must be >= 3");
  if (J < 0) throw DomainError("I_asymptotic: J must be >= 0");
  const double L = std::log(v);
  double s = std::log(v / L);
  for (int j = 1; j <= J; ++j) s += series::alpha_coeff(2 * j).symbolic.value() / std::pow(L, 2 * j);
  return s;
}

double solve_nu(double xi, double tol) {
  if (!(tol > 0.0)) throw DomainError("solve_nu: tol must be positive");
  const auto g = [xi](double v) { return v * v * I_numeric(v) - xi; };
  double lo = 1.0, hi = 2.0;
  if (g(lo) >= 0.0) throw DomainError("solve_nu: xi too small, no root on [1, inf)");
  while (g(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e15) throw DomainError("solve_nu: root not bracketed");
  }
  for (int it = 0; it < 400 && hi - lo > tol * lo; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double rho_expansion(double xi, int J) {
  if (!(xi > std::exp(std::exp(1.0)) - 1e-12)) throw DomainError("rho_expansion: needs log log xi >= 1");
  if (J < 0 || J > series::kMaxCascadeDepth)
    throw DomainError("rho_expansion: J must lie in [0, " + std::to_string(series::kMaxCascadeDepth) + "]");
  const double L = std::log(xi);
  const double X = std::log(L);
  const auto& R = R_family();
  double s = 0.0;
  for (int j = 0; j <= J; ++j) s += R.evaluate(j, X) / std::pow(L, j);
  return std::sqrt(2.0 * xi / L) * s;
}

double logF_expansion(double v, int M, LogFCoefficients which) {
  if (!(v >= 3.0)) throw DomainError("logF_expansion: v must be >= 3");
  if (M < 0) throw DomainError("logF_expansion: M must be >= 0");
  const double L = std::log(v);
  double s = std::log(v / L);
  for (int m = 1; m <= M; ++m) {
    const double a = which == LogFCoefficients::CORRECTED ? series::logF_coeff(m).value() : series::fraka(m).value();
    s += a / std::pow(L, m);
  }
  return v * s;
}

MainTerm s_omega_main_term_xi(double xi) {
  MainTerm m;
  const SaddleState st = solve_rho(xi, 1e-12, false);
  m.xi = xi;
  m.rho = st.rho;
  m.log_F = log_F_omega_saddle(st.rho);
  m.log_ratio = m.log_F - m.rho + xi / m.rho - 0.5 * std::log(2.0 * xi);
  m.value = std::numeric_limits<double>::quiet_NaN();
  m.value_alt = m.value;
  return m;
}

MainTerm s_omega_main_term(double x) {
  const double xi = xi_of_x(x);
  MainTerm m = s_omega_main_term_xi(xi);
  m.below_x0 = x < kX0;
  const double lx = std::log(x);
  const double head = x * std::exp(m.log_F - m.rho) / std::sqrt(2.0 * xi);
  m.value = head / std::pow(lx, 1.0 - 1.0 / m.rho);
  m.value_alt = head * std::exp(xi / m.rho) / lx;
  return m;
}

double log_s_omega_expansion_xi(double xi, int J) {
  if (J < 0 || J > series::kMaxCascadeDepth)
    throw DomainError("log_s_omega_expansion: J must lie in [0, " + std::to_string(series::kMaxCascadeDepth) + "]");
  if (!(xi > std::exp(1.0))) throw DomainError("log_s_omega_expansion: needs log_4 x > 0");
  const double L = std::log(xi);
  const double X = std::log(L);
  const auto& P = P_family();
  double s = 0.0;
  for (int j = 0; j <= J; ++j) s += P.evaluate(j, X) / std::pow(L, j);
  return std::sqrt(2.0 * xi * L) * s;
}

double log_s_omega_expansion(double x, int J) { return log_s_omega_expansion_xi(xi_of_x(x), J); }

LocalScaling local_scaling_predict(double x, double h) {
  if (!(h > -1.0)) throw DomainError("local_scaling_predict: h must exceed -1");
  LocalScaling r;
  const double xi = xi_of_x(x);
  const double l3 = std::log(xi);
  r.outside_range = std::fabs(std::log1p(h)) > std::sqrt(xi) / std::pow(std::max(l3, 1e-300), 1.5);
  const MainTerm m = s_omega_main_term(x);
  r.predicted = std::exp(h * std::log(x)) * m.value / (1.0 + h);
  const double xi_h = xi + std::log1p(h);
  r.rho_shift = solve_rho(xi_h, 1e-13, false).rho - m.rho;
  return r;
}

double phi_k_asymp(double x, double y, int k) {
  if (k < 1) throw DomainError("phi_k_asymp: k must be >= 1");
  const double lx = std::log(x);
  if (!(y >= 3.0) || y > std::exp(std::pow(lx, 0.4))) throw DomainError("phi_k_asymp: need 3 <= y <= e^{(log x)^(2/5)}");
  const double xi = xi_of_x(x);
  const double r = (k - 1) / xi;
  if (!(r < 2.0)) throw DomainError("phi_k_asymp: (k-1)/xi must be < 2");
  const double g = products::g_small(y, r, products::ProductMode::OMEGA).real();
  const double log_term = std::log(x) + (k - 1) * std::log(xi) - std::log(lx) - std::lgamma(1.0 + r) - std::lgamma(k);
  return g * std::exp(log_term);
}

std::complex<double> rough_power_sum_asymp(double x, double y, std::complex<double> z) {
  const double lx = std::log(x);
  if (!(x > 1.0)) throw DomainError("rough_power_sum_asymp: x must exceed 1");
  if (!(y >= 2.0) || y > std::exp(std::pow(lx, 0.4)))
    throw DomainError("rough_power_sum_asymp: need 2 <= y <= e^{(log x)^(2/5)}");
  if (!(std::abs(z) < 2.0)) throw DomainError("rough_power_sum_asymp: |z| must be < 2");
  if (z == 0.0) return 0.0;
  const std::complex<double> g = products::g_small(y, z, products::ProductMode::BIGOMEGA);
  return x * g * std::exp((z - 1.0) * std::log(lx)) / specfun::gamma_complex(z);
}

double s_Omega_expansion(double x, const std::vector<double>& c) {
  if (!(x >= 3.0)) throw DomainError("s_Omega_expansion: x must be >= 3");
  if (c.empty()) throw DomainError("s_Omega_expansion: J must be >= 1");
  const double lx = std::log(x);
  double s = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double pj = static_cast<double>(primes::nth_prime(static_cast<int>(j) + 1));
    s += c[j] * x / std::pow(lx, 1.0 - 1.0 / pj);
  }
  return s;
}

double s_Omega_expansion(double x, int J, double tol) {
  if (J < 1) throw DomainError("s_Omega_expansion: J must be >= 1");
  std::vector<double> c;
  for (int j = 1; j <= J; ++j) c.push_back(products::constant_c(j, tol).value);
  return s_Omega_expansion(x, c);
}

}  // namespace medianprime::saddle
