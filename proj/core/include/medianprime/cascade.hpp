#pragma once

// Coefficient families and the polynomial cascades R_j (saddle point) and
// P_j (log of the reciprocal sum), built with exact series arithmetic.

#include <functional>
#include <string>
#include <vector>

#include "medianprime/series.hpp"

namespace medianprime::series {

constexpr int kMaxCascadeDepth = 6;

/// alpha_j = 2 (j-1)! (1 - 2^(1-j)) zeta(j). Exact for j = 1 and even j.
struct AlphaValue {
  bool exact = false;
  SymPoly symbolic;  ///< meaningful when exact
  double numeric = 0.0;
};
AlphaValue alpha_coeff(int j);

struct BetaGammaFraka {
  double beta = 0.0;
  double gamma = 0.0;
  SymPoly fraka;  ///< exact, in Q[Pi]
  double fraka_numeric = 0.0;
};
BetaGammaFraka beta_gamma_fraka(int m);

/// Closed form m! {1 + (2/m) sum_{0<=j<=m/2} (1 - 2^(1-2j)) zeta(2j)}.
SymPoly fraka(int m);
/// gamma_m + beta_m = fraka(m) - m!, the coefficient of v / (log v)^m in
/// log F(e^v, v) once the two prime ranges q <= v and v < q < e^v are added.
SymPoly logF_coeff(int m);
/// log F(e^v, v) + xi/v - v = 2 v log v {1 - log_2 v / log v + sum fraka_1(n) / (log v)^n}
/// at the saddle: fraka_1(1) = -1/2 and
/// fraka_1(n) = (logF_coeff(n-1) + [n odd] alpha_(n-1)) / 2 for n >= 2.
SymPoly fraka_1(int n);

/// sum_{k>=0} (-1)^k a(k) by Cohen-Villegas-Zagier acceleration; a must be
/// a totally monotone sequence (all series used here are).
double alternating_sum(const std::function<double(int)>& a, int terms = 48);

enum class Family { R, P };

/// polys[j][l] is the coefficient of X^l in the j-th polynomial.
struct PolyFamily {
  Family family = Family::R;
  std::vector<std::vector<SymPoly>> polys;

  [[nodiscard]] int depth() const { return static_cast<int>(polys.size()) - 1; }
  [[nodiscard]] const SymPoly& coeff(int j, int l) const;
  /// Evaluates polys[j] at X with Lambda = log 2 and Pi = pi^2.
  [[nodiscard]] double evaluate(int j, double X) const;
  [[nodiscard]] std::string to_string(int j) const;
};

/// Intermediate series of the R cascade, truncated at total degree J.
struct RhoCascade {
  BiSeries w;      ///< 2 sigma I(mu) - 1 in sigma, tau
  BiSeries h;      ///< log(nu / mu)
  BiSeries exp_h;  ///< e^h
  PolyFamily R;
};

RhoCascade rho_cascade(int J);
PolyFamily cascade_R(int J);
PolyFamily cascade_P(int J);

/// Collects sum c[m,n] sigma^m tau^n with tau = sigma (X - Lambda) into
/// polynomials in X, one per power of sigma.
PolyFamily collect_in_X(const BiSeries& s, Family family, int J);

/// A_1..A_{n_max} from the recurrence; element 0 is unused and set to 1.
std::vector<Rational> lagrange_An(int n_max);
/// (3/4)^n C(2n, n).
Rational lagrange_An_closed(int n);

}  // namespace medianprime::series
