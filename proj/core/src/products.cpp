#include "medianprime/products.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "medianprime/primes.hpp"
#include "medianprime/specfun.hpp"

namespace medianprime::products {

namespace {

using lcplx = std::complex<long double>;

// pi(x) <= x/log x (1 + 1.2762/log x) for x > 1 (Dusart).
constexpr double kDusart = 1.2762;

bool is_prime_integer(cplx z, std::uint64_t* q) {
  if (z.imag() != 0.0 || z.real() < 2.0 || z.real() > 1e18) return false;
  const double r = z.real();
  if (std::floor(r) != r) return false;
  const auto n = static_cast<std::uint64_t>(r);
  if (!primes::is_prime(n)) return false;
  *q = n;
  return true;
}

std::uint64_t prime_limit(double y) {
  if (!(y >= 2.0)) throw DomainError("product: y must be >= 2");
  if (y > static_cast<double>(kMaxPrimeCutoff))
    throw BudgetExceeded("product: y = " + std::to_string(y) + " exceeds the prime budget");
  return static_cast<std::uint64_t>(std::floor(y));
}

// Sum of |log factor| bound constant K so that sum_{q>P} |L_q| <= K sum_{q>P} 1/q^2.
double log_factor_constant(double az, std::uint64_t P, ProductMode mode) {
  const double Pd = static_cast<double>(P);
  const double c1 = Pd / (Pd - 1.0);
  if (mode == ProductMode::OMEGA)
    return az * c1 + az * az * c1 * c1 / (2.0 * (1.0 - az / Pd)) + az * c1 / 2.0;
  return az * az / (2.0 * (1.0 - az / Pd)) + az * c1 / 2.0;
}

lcplx log_factor(lcplx z, long double q, ProductMode mode) {
  const long double l1 = std::log1p(-1.0L / q);
  if (mode == ProductMode::OMEGA) return std::log(1.0L + z / (q - 1.0L)) + z * l1;
  return -std::log(1.0L - z / q) + z * l1;
}

struct FCacheKey {
  double re, im;
  int mode;
  double tol;
  bool operator<(const FCacheKey& o) const {
    return std::tie(re, im, mode, tol) < std::tie(o.re, o.im, o.mode, o.tol);
  }
};

std::mutex g_cache_mutex;
std::map<FCacheKey, TailBound>& f_cache() {
  static std::map<FCacheKey, TailBound> cache;
  return cache;
}

// Running state of F_Omega(p, 1/pj) / F_Omega(p, pj) and the c_j partial sum.
struct CjStream {
  std::uint64_t pj;
  long double inv_pj;
  long double A = 1.0L;  // prod (1 - 1/(pj q))
  long double B = 1.0L;  // prod_{q != pj} (1 - pj/q)
  long double sum = 0.0L, comp = 0.0L;
  std::uint64_t count = 0;  // pi of last prime seen

  explicit CjStream(std::uint64_t p) : pj(p), inv_pj(1.0L / static_cast<long double>(p)) {}

  void add_term(long double t) {
    const long double s = sum + t;
    if (std::fabs(sum) >= std::fabs(t))
      comp += (sum - s) + t;
    else
      comp += (t - s) + sum;
    sum = s;
  }

  void push(std::uint64_t q) {
    ++count;
    const auto lq = static_cast<long double>(q);
    A *= 1.0L - inv_pj / lq;
    if (q != pj) B *= 1.0L - static_cast<long double>(pj) / lq;
    if (q >= pj) add_term(A / (B * lq * (lq - inv_pj)));
  }

  [[nodiscard]] long double ratio() const { return A / B; }
  [[nodiscard]] long double value() const { return sum + comp; }
};

// Bound on sum_{q > P} R(q) / (q (q - 1/pj)) given R(P) = F(P,1/pj)/F(P,pj).
double cj_sum_tail(long double R_P, std::uint64_t pj, std::uint64_t P, std::uint64_t pi_P) {
  const double pjd = static_cast<double>(pj);
  const double a = pjd - 1.0 / pjd;
  const double L = std::log(static_cast<double>(P));
  const double s2 = prime_tail_log_power(0.0, P, pi_P);
  const double b = pjd * pjd / (2.0 * (1.0 - pjd / static_cast<double>(P))) * s2;
  const double growth = std::exp(a / (L * L) + b) / std::pow(L, a);
  return static_cast<double>(std::fabs(R_P)) * growth * prime_tail_log_power(a, P, pi_P) /
         (1.0 - 1.0 / (pjd * static_cast<double>(P)));
}

}  // namespace

double prime_tail_log_power(double a, std::uint64_t P, std::uint64_t pi_P) {
  const double Pd = static_cast<double>(P);
  const double L = std::log(Pd);
  if (P < 286 || a < 0.0 || a >= 2.0 * L) throw DomainError("prime_tail_log_power: out of range");
  // Partial summation against pi(t) <= t/log t (1 + 1.2762/log t):
  // sum_{q>P} f(q) <= -pi(P) f(P) + int_P^inf pi(t) (-f'(t)) dt, f = (log t)^a / t^2.
  double integral = 2.0 * std::pow(L, a - 1.0) / Pd;
  if (a > 2.0) integral += (a - 2.0) * std::pow(L, a - 2.0) / (Pd * (1.0 - (a - 2.0) / L));
  const double bound = -static_cast<double>(pi_P) * std::pow(L, a) / (Pd * Pd) + (1.0 + kDusart / L) * integral;
  return std::max(bound, 0.0);
}

cplx F_finite(double y, cplx z, ProductMode mode) {
  const std::uint64_t Y = prime_limit(y);
  std::uint64_t skip = 0;
  const bool exclude = mode == ProductMode::BIGOMEGA && is_prime_integer(z, &skip);
  const lcplx zl(z);
  lcplx prod = 1.0L;
  primes::for_each_prime(2, Y, [&](std::uint64_t q) {
    const auto lq = static_cast<long double>(q);
    if (mode == ProductMode::OMEGA) {
      prod *= 1.0L + zl / (lq - 1.0L);
    } else if (!(exclude && q == skip)) {
      prod *= 1.0L - zl / lq;
    }
  });
  return cplx(prod);
}

TailBound script_F(cplx z, ProductMode mode, double tol, std::uint64_t max_cutoff) {
  if (!(std::abs(z) < 2.0)) throw DomainError("script_F: |z| must be < 2");
  if (!(tol > 0.0)) throw DomainError("script_F: tol must be positive");
  const FCacheKey key{z.real(), z.imag(), static_cast<int>(mode), tol};
  {
    std::lock_guard<std::mutex> lk(g_cache_mutex);
    auto it = f_cache().find(key);
    if (it != f_cache().end()) return it->second;
  }
  const double az = std::abs(z);
  const lcplx zl(z);
  lcplx log_sum = 0.0L;
  std::uint64_t pi = 0;
  std::uint64_t lo = 2;
  std::uint64_t P = 1024;
  TailBound out;
  while (true) {
    primes::for_each_prime(lo, P, [&](std::uint64_t q) {
      ++pi;
      log_sum += log_factor(zl, static_cast<long double>(q), mode);
    });
    const double T = log_factor_constant(az, P, mode) * prime_tail_log_power(0.0, P, pi);
    const cplx V(std::exp(log_sum));
    const double err = std::abs(V) * std::expm1(T);
    if (err <= tol) {
      out = {V, err, P};
      break;
    }
    if (2 * P > max_cutoff) {
      const double need = static_cast<double>(P) * err / tol;
      throw BudgetExceeded("script_F: tolerance " + std::to_string(tol) + " needs a prime cutoff near " +
                           std::to_string(static_cast<unsigned long long>(need)) + ", budget is " +
                           std::to_string(max_cutoff));
    }
    lo = P + 1;
    P *= 2;
  }
  std::lock_guard<std::mutex> lk(g_cache_mutex);
  f_cache()[key] = out;
  return out;
}

cplx g_small(double y, cplx z, ProductMode mode, double tol) {
  const cplx F = script_F(z, mode, tol).value;
  if (mode == ProductMode::OMEGA) return F / F_finite(y, z, mode);
  const cplx den = 1.0 - z / y;
  if (den == 0.0) throw PoleError("g_Omega: pole at z = y", static_cast<std::uint64_t>(y));
  return F * F_finite(y, z, mode) / den;
}

cplx script_G_Omega(double y, cplx z, double tol) {
  const std::uint64_t Y = prime_limit(y);
  if (z == 0.0 || !(std::abs(z) < 2.0)) throw DomainError("script_G_Omega: need 0 < |z| < 2");
  lcplx inv_prod = 1.0L;  // prod_{q <= y} (1 - 1/(z q)), no exclusion
  const lcplx zl(z);
  std::uint64_t pole = 0;
  primes::for_each_prime(2, Y, [&](std::uint64_t q) {
    if (z.imag() == 0.0 && std::fabs(z.real() * static_cast<double>(q) - 1.0) < 1e-14) pole = q;
    inv_prod *= 1.0L - 1.0L / (zl * static_cast<long double>(q));
  });
  if (pole != 0)
    throw PoleError("script_G_Omega: pole at z = 1/" + std::to_string(pole), pole);
  const cplx g = g_small(y, z, ProductMode::BIGOMEGA, tol);
  return g / (specfun::gamma_complex(1.0 + z) * cplx(inv_prod));
}

double residue_G_Omega(std::uint64_t p, int j, double tol) {
  if (j < 1) throw DomainError("residue_G_Omega: j must be >= 1");
  const std::uint64_t pj = primes::nth_prime(j);
  if (pj > p) throw DomainError("residue_G_Omega: p_j = " + std::to_string(pj) + " exceeds p, no pole");
  const long double z0 = 1.0L / static_cast<long double>(pj);
  // d/dz prod (1 - 1/(z q)) by the product rule, one factor at a time.
  long double F = 1.0L, D = 0.0L;
  long double Fz = 1.0L;  // F_Omega(p, 1/pj)
  primes::for_each_prime(2, p, [&](std::uint64_t q) {
    const auto lq = static_cast<long double>(q);
    const long double f = 1.0L - 1.0L / (z0 * lq);
    const long double df = 1.0L / (z0 * z0 * lq);
    D = D * f + F * df;
    F *= f;
    Fz *= 1.0L - z0 / lq;
  });
  const double Fs = script_F(static_cast<double>(z0), ProductMode::BIGOMEGA, tol).value.real();
  const long double g = static_cast<long double>(Fs) * Fz / (1.0L - z0 / static_cast<long double>(p));
  const double gam = specfun::gamma_real(1.0 + static_cast<double>(z0));
  return static_cast<double>(g / (static_cast<long double>(gam) * D));
}

namespace {

ConstantC finish_c(int j, const CjStream& s, std::uint64_t P, const TailBound& F, long double half_value,
                   double half_tail, long double prefactor_over_F) {
  const long double pre = prefactor_over_F * static_cast<long double>(F.value.real());
  const double sum_tail = cj_sum_tail(s.ratio(), s.pj, P, s.count);
  const long double S = s.value();
  ConstantC c;
  c.j = j;
  c.prime_cutoff = P;
  c.value = static_cast<double>(pre * S);
  c.abs_tail = static_cast<double>(std::fabs(pre)) * sum_tail +
               static_cast<double>(std::fabs(prefactor_over_F)) * F.abs_tail *
                   (static_cast<double>(std::fabs(S)) + sum_tail);
  c.half_cutoff_value = static_cast<double>(pre * half_value);
  c.half_cutoff_tail = static_cast<double>(std::fabs(pre)) * half_tail;
  c.script_F_value = F.value.real();
  return c;
}

}  // namespace

ConstantC constant_c(int j, double tol, std::uint64_t cutoff, std::uint64_t max_cutoff) {
  if (j < 1) throw DomainError("constant_c: j must be >= 1");
  if (!(tol > 0.0)) throw DomainError("constant_c: tol must be positive");
  if (cutoff < 1024) throw DomainError("constant_c: cutoff must be >= 1024");
  const std::uint64_t pj = primes::nth_prime(j);
  const double inv = 1.0 / static_cast<double>(pj);
  const long double pre_over_F = 3.0L / static_cast<long double>(specfun::gamma_real(inv));
  const TailBound F = script_F(inv, ProductMode::BIGOMEGA, std::min(tol, 1e-9) / 10.0, max_cutoff);

  CjStream s(pj);
  std::uint64_t lo = 2;
  std::uint64_t P = cutoff;
  while (true) {
    const std::uint64_t half = P / 2;
    primes::for_each_prime(lo, half, [&](std::uint64_t q) { s.push(q); });
    const long double half_value = s.value();
    const double half_tail = cj_sum_tail(s.ratio(), pj, half, s.count);
    primes::for_each_prime(half + 1, P, [&](std::uint64_t q) { s.push(q); });
    ConstantC c = finish_c(j, s, P, F, half_value, half_tail, pre_over_F);
    if (c.abs_tail <= tol) return c;
    if (2 * P > max_cutoff) {
      const double need = static_cast<double>(P) * c.abs_tail / tol;
      throw BudgetExceeded("constant_c: tolerance " + std::to_string(tol) + " needs a prime cutoff near " +
                           std::to_string(static_cast<unsigned long long>(need)) + ", budget is " +
                           std::to_string(max_cutoff));
    }
    lo = P + 1;
    P *= 2;
  }
}

ConstantC residue_sum(int j, std::uint64_t P, double tol_F) {
  if (j < 1) throw DomainError("residue_sum: j must be >= 1");
  if (P < 1024) throw DomainError("residue_sum: P must be >= 1024");
  const std::uint64_t pj = primes::nth_prime(j);
  const long double z0 = 1.0L / static_cast<long double>(pj);
  const TailBound F = script_F(static_cast<double>(z0), ProductMode::BIGOMEGA, tol_F);
  const long double gam = specfun::gamma_real(1.0 + static_cast<double>(z0));

  // Running F_Omega(p, 1/pj), prod (1 - 1/(z0 q)) and its z-derivative.
  long double Fz = 1.0L, G = 1.0L, D = 0.0L;
  long double sum = 0.0L, comp = 0.0L, half_sum = 0.0L;
  std::uint64_t pi = 0, pi_half = 0;
  long double R_half = 0.0L;
  const std::uint64_t half = P / 2;
  primes::for_each_prime(2, P, [&](std::uint64_t q) {
    ++pi;
    const auto lq = static_cast<long double>(q);
    const long double f = 1.0L - 1.0L / (z0 * lq);
    D = D * f + G / (z0 * z0 * lq);
    G *= f;
    Fz *= 1.0L - z0 / lq;
    if (q >= pj) {
      const long double res = static_cast<long double>(F.value.real()) * Fz / ((1.0L - z0 / lq) * gam * D);
      const long double t = 3.0L * res / (lq * lq);
      const long double s = sum + t;
      if (std::fabs(sum) >= std::fabs(t))
        comp += (sum - s) + t;
      else
        comp += (t - s) + sum;
      sum = s;
    }
    if (q <= half) {
      half_sum = sum + comp;
      pi_half = pi;
      R_half = Fz / (D * z0);
    }
  });
  // D = pj F_Omega(p, pj) once p >= pj, so R(p) = Fz / (z0 D).
  const long double R = Fz / (D * z0);
  const long double pre = 3.0L * static_cast<long double>(F.value.real()) / (gam * static_cast<long double>(pj));
  ConstantC c;
  c.j = j;
  c.prime_cutoff = P;
  c.value = static_cast<double>(sum + comp);
  const double sum_tail = cj_sum_tail(R, pj, P, pi);
  c.abs_tail = static_cast<double>(std::fabs(pre)) * sum_tail +
               static_cast<double>(std::fabs(pre / static_cast<long double>(F.value.real()))) * F.abs_tail *
                   (static_cast<double>(std::fabs((sum + comp) / pre)) + sum_tail);
  c.half_cutoff_value = static_cast<double>(half_sum);
  c.half_cutoff_tail = static_cast<double>(std::fabs(pre)) * cj_sum_tail(R_half, pj, half, pi_half);
  c.script_F_value = F.value.real();
  return c;
}

std::vector<double> lambda_omega_coeffs(std::uint64_t p, int k_max) {
  if (!primes::is_prime(p)) throw DomainError("lambda_omega_coeffs: p must be prime");
  if (k_max < 0) throw DomainError("lambda_omega_coeffs: k_max must be >= 0");
  std::vector<long double> c(static_cast<std::size_t>(k_max) + 1, 0.0L);
  c[0] = 1.0L;
  primes::for_each_prime(2, p, [&](std::uint64_t q) {
    const long double w = 1.0L / static_cast<long double>(q - 1);
    for (std::size_t k = c.size() - 1; k >= 1; --k) c[k] += w * c[k - 1];
  });
  return {c.begin(), c.end()};
}

}  // namespace medianprime::products
