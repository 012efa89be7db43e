#pragma once

// The saddle parameter rho_x and the asymptotic evaluators built on it.
// Everything accepts xi = log log x directly.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "medianprime/errors.hpp"

namespace medianprime::saddle {

/// Exact prime sums run over q <= kPsiExactLimit; beyond it psi and log F
/// switch to the prime-number-theorem integral (see psi).
constexpr std::uint64_t kPsiExactLimit = std::uint64_t{1} << 24;

/// xi = log log x, x > e.
double xi_of_x(double x);

/// xi / v^2 - sum_{q < e^v} 1 / (q - 1 + v). Primes below e^v are summed
/// exactly up to kPsiExactLimit; the range above it is replaced by
/// int dt / ((t - 1 + v) log t).
double psi(double xi, double v);
/// Same, exact prime sum only. Throws BudgetExceeded naming the table size
/// needed when e^v > kPsiExactLimit.
double psi_exact(double xi, double v);

/// sum_{q < e^v} 1/(q - 1 + v), hybrid as in psi.
double shifted_reciprocal_sum(double v);
/// log F_omega(e^v, v) = sum_{q < e^v} log(1 + v/(q - 1)), hybrid as in psi.
double log_F_omega_saddle(double v);

struct SaddleState {
  std::optional<double> x;
  double xi = 0.0;
  double rho = 0.0;
  double nu = 0.0;
  double mu = 0.0;
  double psi_at_rho = 0.0;
  std::pair<double, double> bracket;
  int iterations = 0;
};

/// Bisection on the sign of psi. The window [sqrt(xi/log xi), sqrt(5 xi/log xi)]
/// (or [1/2, 2] when xi < 3) is widened geometrically until psi changes sign.
/// rho is the left end of the final bracket. nu is filled by solve_nu.
SaddleState solve_rho(double xi, double tol = 1e-12, bool with_nu = true);

/// int_2^{e^v} dt / ((t - 1 + v) log t), v >= 1.
double I_numeric(double v);
/// log(v / log v) + sum_{j <= J} alpha_{2j} / (log v)^{2j}.
double I_asymptotic(double v, int J);

/// Root of v^2 I(v) = xi on [1, inf).
double solve_nu(double xi, double tol = 1e-12);

/// sqrt(2 xi / log xi) sum_{j <= J} R_j(log log xi) / (log xi)^j.
double rho_expansion(double xi, int J);

enum class LogFCoefficients {
  CORRECTED,   ///< gamma_m + beta_m: what the two prime ranges actually contribute
  WITH_FACTORIAL,  ///< fraka_m = m! + gamma_m + beta_m
};

/// v {log(v / log v) + sum_{m <= M} a_m / (log v)^m}.
double logF_expansion(double v, int M, LogFCoefficients which = LogFCoefficients::CORRECTED);

struct MainTerm {
  double xi = 0.0;
  double rho = 0.0;
  double log_F = 0.0;
  /// log(S / (x / log x)) = log F - rho + xi/rho - log(2 xi)/2
  double log_ratio = 0.0;
  /// the main term itself, from (log x)^(1 - 1/rho); NaN when x is synthetic
  double value = 0.0;
  /// same, from log x e^(-xi/rho)
  double value_alt = 0.0;
  bool below_x0 = false;
};

constexpr double kX0 = 1e7;

MainTerm s_omega_main_term(double x);
MainTerm s_omega_main_term_xi(double xi);

/// sqrt(2 xi log xi) sum_{j <= J} P_j(log log xi) / (log xi)^j, i.e. the
/// expansion of log(S / (x / log x)).
double log_s_omega_expansion_xi(double xi, int J);
double log_s_omega_expansion(double x, int J);

struct LocalScaling {
  double predicted = 0.0;  ///< x^h main(x) / (1 + h)
  double rho_shift = 0.0;  ///< rho_{x^{1+h}} - rho_x
  bool outside_range = false;
};
LocalScaling local_scaling_predict(double x, double h);

/// x g_omega(y, r) xi^(k-1) / (log x Gamma(1 + r) (k-1)!), r = (k-1)/xi.
double phi_k_asymp(double x, double y, int k);

/// x g_Omega(y, z) / (Gamma(z) (log x)^(1 - z)).
std::complex<double> rough_power_sum_asymp(double x, double y, std::complex<double> z);

/// sum_{j <= J} c_j x / (log x)^(1 - 1/p_j) with c_j supplied.
double s_Omega_expansion(double x, const std::vector<double>& c);
/// Same, c_j from constant_c(j, tol).
double s_Omega_expansion(double x, int J, double tol = 1e-6);

}  // namespace medianprime::saddle
