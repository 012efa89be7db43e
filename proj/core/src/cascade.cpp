#include "medianprime/cascade.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "medianprime/errors.hpp"
#include "medianprime/specfun.hpp"

namespace medianprime::series {

namespace {

Rational factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

Rational binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(b);
}

/// Generalized binomial C(a, k) for integer a (possibly negative).
Rational binomial_gen(int a, int k) {
  Rational b = 1;
  for (int i = 0; i < k; ++i) {
    b *= (a - i);
    b /= (i + 1);
  }
  return b;
}

Rational pow2(int e) {
  Rational r = 1;
  if (e >= 0) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
    r = Rational(p);
  } else {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-e));
    r = Rational(1) / Rational(p);
  }
  return r;
}

/// zeta(2j) = ratio * Pi^j as a SymPoly; zeta(0) = -1/2.
SymPoly zeta_even_sym(int two_j) {
  if (two_j == 0) return SymPoly(Rational(-1, 2));
  return SymPoly::monomial(specfun::zeta_even_ratio(two_j), 0, two_j / 2);
}

void check_depth(int J) {
  if (J < 0 || J > kMaxCascadeDepth)
    throw DomainError("cascade depth must lie in [0, " + std::to_string(kMaxCascadeDepth) + "]");
}

using ZSeries = std::vector<BiSeries>;

ZSeries zmul(const ZSeries& a, const ZSeries& b, std::size_t len) {
  const Truncation t = a.front().truncation();
  ZSeries r(len, BiSeries(t));
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t k = 0; i + k < len && k < b.size(); ++k) {
      if (b[k].is_zero()) continue;
      r[i + k] += a[i] * b[k];
    }
  }
  return r;
}

}  // namespace

// ---- scalar coefficient families ------------------------------------------

double alternating_sum(const std::function<double(int)>& a, int terms) {
  double d = std::pow(3.0 + std::sqrt(8.0), terms);
  d = (d + 1.0 / d) / 2.0;
  double b = -1.0;
  double c = -d;
  double s = 0.0;
  for (int k = 0; k < terms; ++k) {
    c = b - c;
    s += c * a(k);
    b = (static_cast<double>(k) + terms) * (static_cast<double>(k) - terms) * b /
        ((k + 0.5) * (k + 1.0));
  }
  return s / d;
}

AlphaValue alpha_coeff(int j) {
  if (j < 1) throw DomainError("alpha_j requires j >= 1");
  AlphaValue out;
  if (j == 1) {
    out.exact = true;
    out.symbolic = SymPoly::monomial(2, 1, 0);
    out.numeric = 2.0 * std::numbers::ln2;
    return out;
  }
  if (j % 2 == 0) {
    Rational c = 2 * factorial(j - 1) * (1 - pow2(1 - j));
    out.exact = true;
    out.symbolic = zeta_even_sym(j) * c;
    out.numeric = out.symbolic.value();
    return out;
  }
  const double eta = alternating_sum([j](int k) { return std::pow(k + 1.0, -j); });
  out.numeric = 2.0 * std::tgamma(static_cast<double>(j)) * eta;
  return out;
}

SymPoly fraka(int m) {
  if (m < 1) throw DomainError("fraka_m requires m >= 1");
  SymPoly inner(1);
  for (int j = 0; 2 * j <= m; ++j) {
    Rational c = (1 - pow2(1 - 2 * j)) * 2 / m;
    inner += zeta_even_sym(2 * j) * c;
  }
  return inner * factorial(m);
}

SymPoly logF_coeff(int m) { return fraka(m) - SymPoly(factorial(m)); }

SymPoly fraka_1(int n) {
  if (n < 1) throw DomainError("fraka_1 requires n >= 1");
  if (n == 1) return SymPoly(Rational(-1, 2));
  SymPoly s = logF_coeff(n - 1);
  if (n % 2 == 1) s += alpha_coeff(n - 1).symbolic;
  return s * Rational(1, 2);
}

BetaGammaFraka beta_gamma_fraka(int m) {
  if (m < 1) throw DomainError("beta/gamma require m >= 1");
  BetaGammaFraka out;
  const double fm = std::tgamma(m + 1.0);
  const double sb = alternating_sum([m](int k) {
    const double n = k + 1.0;
    return 1.0 / (std::pow(n, m) * (n + 1.0));
  });
  out.beta = (m % 2 ? -1.0 : 1.0) * std::tgamma(static_cast<double>(m)) * sb;
  const double sg = alternating_sum([m](int k) {
    const double n = k + 1.0;
    return 1.0 / (n * std::pow(n + 1.0, m));
  });
  out.gamma = fm * (1.0 + sg / m);
  out.fraka = fraka(m);
  out.fraka_numeric = out.fraka.value();
  return out;
}

// ---- PolyFamily -------------------------------------------------------------

const SymPoly& PolyFamily::coeff(int j, int l) const {
  static const SymPoly zero;
  if (j < 0 || j > depth()) throw DomainError("polynomial index beyond computed cascade");
  const auto& p = polys[static_cast<std::size_t>(j)];
  if (l < 0 || l >= static_cast<int>(p.size())) return zero;
  return p[static_cast<std::size_t>(l)];
}

double PolyFamily::evaluate(int j, double X) const {
  if (j < 0 || j > depth()) throw DomainError("polynomial index beyond computed cascade");
  const auto& p = polys[static_cast<std::size_t>(j)];
  double s = 0.0;
  for (std::size_t l = p.size(); l-- > 0;) s = s * X + p[l].value();
  return s;
}

std::string PolyFamily::to_string(int j) const {
  const auto& p = polys.at(static_cast<std::size_t>(j));
  std::ostringstream os;
  bool first = true;
  for (std::size_t l = p.size(); l-- > 0;) {
    if (p[l].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << p[l].to_string() << ")";
    if (l >= 1) os << "*X";
    if (l >= 2) os << "^" << l;
  }
  if (first) os << "0";
  return os.str();
}

PolyFamily collect_in_X(const BiSeries& s, Family family, int J) {
  PolyFamily out;
  out.family = family;
  out.polys.assign(static_cast<std::size_t>(J) + 1, {});
  const SymPoly minus_lambda = -SymPoly::lambda();
  for (int j = 0; j <= J; ++j) {
    auto& poly = out.polys[static_cast<std::size_t>(j)];
    poly.assign(static_cast<std::size_t>(j) + 1, SymPoly());
    for (int n = 0; n <= j; ++n) {
      const SymPoly& c = s.at(j - n, n);
      if (c.is_zero()) continue;
      // (X - Lambda)^n = sum_l C(n,l) X^l (-Lambda)^(n-l)
      SymPoly ml_pow(1);
      for (int l = n; l >= 0; --l) {
        poly[static_cast<std::size_t>(l)] += c * ml_pow * binomial(n, l);
        ml_pow = ml_pow * minus_lambda;
      }
    }
  }
  return out;
}

// ---- cascades ---------------------------------------------------------------

RhoCascade rho_cascade(int J) {
  check_depth(J);
  const Truncation T = Truncation::total(J);
  const BiSeries one = BiSeries::constant(T, SymPoly(1));
  const BiSeries sigma = BiSeries::sigma(T);
  const BiSeries tau = BiSeries::tau(T);
  const BiSeries inv_omt = inverse(one - tau);

  std::vector<SymPoly> alpha_even(static_cast<std::size_t>(J / 2) + 1);
  for (int j = 1; 2 * j <= J; ++j) alpha_even[static_cast<std::size_t>(j)] = alpha_coeff(2 * j).symbolic;

  // w = -3 tau - 2 sigma log(1 - tau) + sum alpha_2j (2 sigma)^(2j+1) / (1 - tau)^(2j)
  BiSeries w = tau * SymPoly(-3) - sigma * log1p(-tau) * SymPoly(2);
  const BiSeries two_sigma = sigma * SymPoly(2);
  for (int j = 1; 2 * j + 1 <= J; ++j)
    w += power(two_sigma, 2 * j + 1) * power(inv_omt, 2 * j) * alpha_even[static_cast<std::size_t>(j)];

  // lambda(z) = z - log(1 + u z) + sum alpha_2j u^2j ((1 + u z)^(-2j) - 1), u = 2 sigma / (1 - tau)
  const BiSeries u = two_sigma * inv_omt;
  std::vector<BiSeries> u_pow{one};
  for (int k = 1; k <= 2 * J + 1; ++k) u_pow.push_back(u_pow.back() * u);
  const auto upow = [&](int k) -> const BiSeries& {
    return u_pow[static_cast<std::size_t>(std::min(k, 2 * J + 1))];
  };

  const std::size_t zlen = static_cast<std::size_t>(std::max(J, 1));
  ZSeries lambda(zlen + 1, BiSeries(T));
  for (int k = 1; k <= static_cast<int>(zlen); ++k) {
    BiSeries lk = upow(k) * SymPoly(Rational(k % 2 ? -1 : 1, k));
    if (k == 1) lk += one;
    for (int j = 1; 2 * j <= J; ++j)
      lk += upow(2 * j + k) * (alpha_even[static_cast<std::size_t>(j)] * binomial_gen(-2 * j, k));
    lambda[static_cast<std::size_t>(k)] = std::move(lk);
  }

  // Denominator e^(-2z) - 1 - 2 sigma lambda(z) divided by z.
  ZSeries q(zlen, BiSeries(T));
  for (std::size_t k = 0; k < zlen; ++k) {
    const int e = static_cast<int>(k) + 1;
    Rational c = pow2(e) / factorial(e);
    if (e % 2) c = -c;
    q[k] = BiSeries::constant(T, SymPoly(c)) - two_sigma * lambda[k + 1];
  }

  ZSeries f(zlen, BiSeries(T));
  f[0] = inverse(q[0]);
  for (std::size_t k = 1; k < zlen; ++k) {
    BiSeries acc(T);
    for (std::size_t i = 1; i <= k; ++i) acc += q[i] * f[k - i];
    f[k] = -(f[0] * acc);
  }

  // Lagrange inversion of w = h / f(h): h = sum_k (1/k) [z^(k-1)] f^k w^k.
  BiSeries h(T);
  ZSeries fk = f;
  BiSeries wk = w;
  for (int k = 1; k <= J; ++k) {
    if (k > 1) {
      fk = zmul(fk, f, zlen);
      wk = wk * w;
    }
    const BiSeries& ck = fk[static_cast<std::size_t>(k - 1)];
    h += ck * wk * SymPoly(Rational(1, k));
  }

  RhoCascade out{w, h, exp(h), PolyFamily{}};
  out.R = collect_in_X(out.exp_h, Family::R, J);
  return out;
}

PolyFamily cascade_R(int J) { return rho_cascade(J).R; }

PolyFamily cascade_P(int J) {
  check_depth(J);
  const RhoCascade rc = rho_cascade(J);
  const Truncation T = Truncation::total(J);
  const BiSeries sigma = BiSeries::sigma(T);
  const BiSeries tau = BiSeries::tau(T);
  const BiSeries two_sigma = sigma * SymPoly(2);

  // D = 2 sigma log rho = 1 - tau + 2 sigma h
  const BiSeries d_minus_1 = two_sigma * rc.h - tau;
  const BiSeries d = BiSeries::constant(T, SymPoly(1)) + d_minus_1;

  BiSeries s = d - tau * SymPoly(2) - two_sigma * log1p(d_minus_1);
  BiSeries two_sigma_n = two_sigma;
  for (int n = 1; n <= J; ++n) {
    s += two_sigma_n * pow1p(d_minus_1, Rational(1 - n)) * fraka_1(n);
    two_sigma_n = two_sigma_n * two_sigma;
  }
  return collect_in_X(rc.exp_h * s, Family::P, J);
}

std::vector<Rational> lagrange_An(int n_max) {
  if (n_max < 1) throw DomainError("lagrange_An requires n_max >= 1");
  const std::size_t N = static_cast<std::size_t>(n_max);
  std::vector<Rational> A(N + 1, Rational(0));
  A[0] = 1;
  A[1] = Rational(3, 2);
  for (std::size_t n = 2; n <= N; ++n) {
    // T(tau) = sum_{d<n} A_d tau^d; A_n itself cannot reach [tau^n] T^j for j >= 2.
    std::vector<Rational> t(n + 1, Rational(0));
    for (std::size_t d = 1; d < n; ++d) t[d] = A[d];
    std::vector<Rational> pw = t;
    Rational acc = 0;
    for (std::size_t j = 2; j <= n; ++j) {
      std::vector<Rational> next(n + 1, Rational(0));
      for (std::size_t a = 1; a <= n; ++a) {
        if (pw[a] == 0) continue;
        for (std::size_t b = 1; a + b <= n; ++b)
          if (t[b] != 0) next[a + b] += pw[a] * t[b];
      }
      pw = std::move(next);
      Rational term = pw[n] * static_cast<long>(j + 1);
      acc += (j % 2 ? -term : term);
    }
    A[n] = acc / 2;
  }
  return A;
}

Rational lagrange_An_closed(int n) {
  mpz_class three_n, four_n;
  mpz_ui_pow_ui(three_n.get_mpz_t(), 3, static_cast<unsigned long>(n));
  mpz_ui_pow_ui(four_n.get_mpz_t(), 4, static_cast<unsigned long>(n));
  Rational r = binomial(2 * n, n) * Rational(three_n) / Rational(four_n);
  r.canonicalize();
  return r;
}

}  // namespace medianprime::series
