#pragma once

// Euler products over primes and the constants built from them.

#include <complex>
#include <cstdint>
#include <vector>

#include "medianprime/errors.hpp"

namespace medianprime::products {

enum class ProductMode { OMEGA, BIGOMEGA };

using cplx = std::complex<double>;

/// A truncated infinite product or sum with a certified bound on what was left out.
struct TailBound {
  cplx value;
  double abs_tail = 0.0;
  std::uint64_t prime_cutoff = 0;
};

/// Raised by script_G_Omega at z = 1/q.
class PoleError : public DomainError {
 public:
  PoleError(const std::string& what, std::uint64_t prime) : DomainError(what), prime_(prime) {}
  [[nodiscard]] std::uint64_t prime() const { return prime_; }

 private:
  std::uint64_t prime_;
};

/// prod_{q <= y} (1 + z/(q-1)) or prod_{q <= y, q != z} (1 - z/q). The
/// exclusion applies only when z is exactly a prime integer.
cplx F_finite(double y, cplx z, ProductMode mode);

constexpr double kDefaultProductTol = 1e-9;
constexpr std::uint64_t kMaxPrimeCutoff = 4'000'000'000ull;

/// Infinite product over all primes with the (1 - 1/q)^z compensators,
/// truncated at the first power-of-two cutoff whose certified tail is <= tol.
/// Throws BudgetExceeded naming the cutoff that would be needed.
TailBound script_F(cplx z, ProductMode mode, double tol = kDefaultProductTol,
                   std::uint64_t max_cutoff = kMaxPrimeCutoff);

/// g_Omega(y,z) = F(z) F_Omega(y,z) / (1 - z/y), g_omega(y,z) = F(z) / F_omega(y,z).
cplx g_small(double y, cplx z, ProductMode mode, double tol = kDefaultProductTol);

/// g_Omega(y,z) / (Gamma(1+z) F_Omega(y,1/z)), F_Omega taken without the
/// q != z exclusion so the poles at z = 1/q (q <= y) are visible.
cplx script_G_Omega(double y, cplx z, double tol = kDefaultProductTol);

/// Residue of script_G_Omega(p, .) at z = 1/p_j, with d/dz F_Omega(p, 1/z)
/// summed factor by factor.
double residue_G_Omega(std::uint64_t p, int j, double tol = kDefaultProductTol);

struct ConstantC {
  int j = 0;
  double value = 0.0;
  double abs_tail = 0.0;  ///< certified: prime-sum tail plus product error
  std::uint64_t prime_cutoff = 0;
  double half_cutoff_value = 0.0;  ///< same sum stopped at prime_cutoff / 2
  double half_cutoff_tail = 0.0;
  double script_F_value = 0.0;     ///< F_Omega(1/p_j)
};

/// c_j, summed over p <= cutoff in extended precision; the cutoff is doubled
/// until abs_tail <= tol, up to max_cutoff.
ConstantC constant_c(int j, double tol, std::uint64_t cutoff = 100'000'000ull,
                     std::uint64_t max_cutoff = kMaxPrimeCutoff);

/// 3 sum_{p_j <= p <= P} residue_G_Omega(p, j) / p^2, accumulated in one pass
/// over the primes, with the same certified tail as constant_c.
ConstantC residue_sum(int j, std::uint64_t P, double tol_F = kDefaultProductTol);

/// Coefficients of z^k (0 <= k <= k_max) in prod_{q <= p} (1 + z/(q-1)).
std::vector<double> lambda_omega_coeffs(std::uint64_t p, int k_max);

/// Bound on sum_{q > P} (log q)^a / q^2 for 0 <= a < 2 log P, given pi(P).
double prime_tail_log_power(double a, std::uint64_t P, std::uint64_t pi_P);

}  // namespace medianprime::products
