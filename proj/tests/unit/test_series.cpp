#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "medianprime/cascade.hpp"
#include "medianprime/errors.hpp"
#include "medianprime/series.hpp"

namespace mp = medianprime;
namespace se = medianprime::series;
using se::Rational;
using se::SymPoly;

namespace {

const SymPoly L = SymPoly::lambda();
const SymPoly Pi = SymPoly::pi_squared();

SymPoly q(long p, long d = 1) { return SymPoly(Rational(p, d)); }

Rational binom(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

Rational leading_R(int j) {
  Rational r = binom(2 * j, j);
  for (int i = 0; i < j; ++i) r *= Rational(3, 4);
  return r;
}

void expect_family(const se::PolyFamily& f, int j, const std::vector<SymPoly>& want) {
  ASSERT_GE(f.depth(), j);
  ASSERT_EQ(static_cast<int>(f.polys[j].size()), static_cast<int>(want.size()));
  for (std::size_t l = 0; l < want.size(); ++l)
    EXPECT_EQ(f.coeff(j, static_cast<int>(l)), want[l]) << "j=" << j << " X^" << l << ": got "
                                                         << f.coeff(j, static_cast<int>(l)).to_string();
}

se::BiSeries sample(const se::Truncation& t) {
  // s = sigma/2 + Lambda tau - sigma tau / 3
  auto s = se::BiSeries::sigma(t) * SymPoly(Rational(1, 2)) + se::BiSeries::tau(t) * L;
  s.set(1, 1, q(-1, 3));
  return s;
}

}  // namespace

TEST(SymPoly, Arithmetic) {
  const SymPoly a = q(3, 2) * L + Pi;
  const SymPoly b = L - q(1);
  const SymPoly p = a * b;
  EXPECT_EQ(p.coeff(2, 0), Rational(3, 2));
  EXPECT_EQ(p.coeff(1, 0), Rational(-3, 2));
  EXPECT_EQ(p.coeff(1, 1), Rational(1));
  EXPECT_EQ(p.coeff(0, 1), Rational(-1));
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_TRUE(q(7, 3).is_rational());
  EXPECT_NEAR(p.value(), (1.5 * std::log(2.0) + M_PI * M_PI) * (std::log(2.0) - 1), 1e-14);
  EXPECT_EQ(se::parse_rational("-15/6"), Rational(-5, 2));
  EXPECT_EQ(se::to_string(Rational(-5, 2)), "-5/2");
}

TEST(BiSeries, InverseAndExpLog) {
  const auto t = se::Truncation::total(6);
  const auto s = sample(t);
  const auto one = se::BiSeries::constant(t, 1);
  EXPECT_EQ(se::inverse(one + s) * (one + s), one);
  EXPECT_EQ(se::exp(se::log1p(s)), one + s);
  const auto r = se::pow1p(s, Rational(1, 2));
  EXPECT_EQ(r * r, one + s);
  EXPECT_EQ(se::pow_neg(one + s, 2) * se::power(one + s, 2), one);
  EXPECT_THROW(se::inverse(s), mp::SeriesError);
  EXPECT_THROW(se::log1p(one + s), mp::SeriesError);
}

TEST(BiSeries, ComposeGeometric) {
  const auto t = se::Truncation::box(4, 3);
  const auto s = sample(t);
  const std::vector<SymPoly> g(12, SymPoly(1));
  const auto one = se::BiSeries::constant(t, 1);
  // Term-by-term: 1 + s + s^2 + ... up to the truncation.
  auto direct = one;
  for (int k = 1; k <= 7; ++k) direct += se::power(s, k);
  EXPECT_EQ(se::compose(g, s), direct);
  EXPECT_EQ(se::compose(g, s), se::inverse(one - s));
}

TEST(Coefficients, AlphaGammaFraka) {
  EXPECT_EQ(se::alpha_coeff(1).symbolic, q(2) * L);
  EXPECT_EQ(se::alpha_coeff(2).symbolic, q(1, 6) * Pi);
  EXPECT_EQ(se::alpha_coeff(4).symbolic, SymPoly::monomial(Rational(7, 60), 0, 2));
  EXPECT_FALSE(se::alpha_coeff(3).exact);
  // alpha_3 = 2 * 2! * (3/4) zeta(3)
  EXPECT_NEAR(se::alpha_coeff(3).numeric, 3.0 * 1.2020569031595942, 1e-13);
  EXPECT_EQ(se::fraka(1), q(2));
  EXPECT_NEAR(se::beta_gamma_fraka(1).gamma, 2 * std::log(2.0), 1e-12);
  double fact = 1;
  for (int m = 1; m <= 6; ++m) {
    fact *= m;
    const auto b = se::beta_gamma_fraka(m);
    EXPECT_NEAR(fact + b.gamma + b.beta, b.fraka.value(), 1e-12 * std::max(1.0, std::fabs(b.fraka.value()))) << m;
    EXPECT_EQ(se::logF_coeff(m), se::fraka(m) - q(static_cast<long>(fact)));
  }
  EXPECT_EQ(se::fraka_1(1), q(-1, 2));
}

TEST(Coefficients, AlternatingSum) {
  // sum (-1)^k / (k + 1) = log 2
  EXPECT_NEAR(se::alternating_sum([](int k) { return 1.0 / (k + 1); }), std::log(2.0), 1e-15);
}

TEST(Lagrange, RecurrenceMatchesClosedForm) {
  const auto A = se::lagrange_An(30);
  EXPECT_EQ(A[1], Rational(3, 2));
  EXPECT_EQ(A[2], Rational(27, 8));
  EXPECT_EQ(A[5], Rational(15309, 256));
  for (int n = 1; n <= 30; ++n) EXPECT_EQ(A[n], se::lagrange_An_closed(n)) << n;
}

TEST(Cascade, LowOrderRho) {
  const auto R = se::cascade_R(3);
  expect_family(R, 0, {q(1)});
  expect_family(R, 1, {q(-3, 2) * L, q(3, 2)});
  expect_family(R, 2, {q(27, 8) * L * L + q(5, 2) * L, -(q(27, 4) * L + q(5, 2)), q(27, 8)});
}

TEST(Cascade, LowOrderP) {
  const auto P = se::cascade_P(3);
  expect_family(P, 0, {q(1)});
  expect_family(P, 1, {q(3, 2) * L - q(1), q(-3, 2)});
  expect_family(P, 2, {-(q(9, 8) * L * L) - L + q(2), q(9, 4) * L + q(1), q(-9, 8)});
}

// Third-order polynomials as produced by an independent symbolic (sympy)
// solve of v^2 I(v) = xi and of the composed log S expansion. In Y = X - L:
// R_3 = 135/16 Y^3 - 14 Y^2 + 11/2 Y - 2 Pi/3,
// P_3 = -27/16 Y^3 + 25/8 Y^2 + 2 Y + 4 + 2 Pi/3.
TEST(Cascade, ThirdOrderRho) {
  expect_family(se::cascade_R(3), 3,
                {q(-2, 3) * Pi - q(11, 2) * L - q(14) * L * L - q(135, 16) * L * L * L,
                 q(11, 2) + q(28) * L + q(405, 16) * L * L, q(-14) - q(405, 16) * L, q(135, 16)});
}

TEST(Cascade, ThirdOrderP) {
  expect_family(se::cascade_P(3), 3,
                {q(4) + q(2, 3) * Pi - q(2) * L + q(25, 8) * L * L + q(27, 16) * L * L * L,
                 q(2) - q(25, 4) * L - q(81, 16) * L * L, q(25, 8) + q(81, 16) * L, q(-27, 16)});
}

TEST(Cascade, LeadingCoefficientsAndDegree) {
  const auto R = se::cascade_R(se::kMaxCascadeDepth);
  const auto P = se::cascade_P(se::kMaxCascadeDepth);
  for (int j = 0; j <= se::kMaxCascadeDepth; ++j) {
    EXPECT_EQ(static_cast<int>(R.polys[j].size()), j + 1);
    EXPECT_EQ(R.coeff(j, j), SymPoly(leading_R(j))) << j;
    EXPECT_EQ(P.coeff(j, j), SymPoly(Rational(leading_R(j) / Rational(1 - 2 * j)))) << j;
  }
}

TEST(Cascade, CoefficientsArePolynomialsInXMinusLambda) {
  // [Y^k] sum_l c_l (Y + L)^l has no Lambda once X = Y + L is substituted.
  for (const auto& fam : {se::cascade_R(5), se::cascade_P(5)})
    for (int j = 0; j <= 5; ++j)
      for (int k = 0; k <= j; ++k) {
        SymPoly c;
        for (int l = k; l <= j; ++l) {
          SymPoly term = fam.coeff(j, l) * binom(l, k);
          for (int i = 0; i < l - k; ++i) term = term * L;
          c += term;
        }
        for (const auto& [m, v] : c.terms()) EXPECT_EQ(m.lambda, 0) << "j=" << j << " k=" << k;
      }
}

TEST(Cascade, EvaluateMatchesSymbolic) {
  const auto R = se::cascade_R(3);
  const double X = 1.7, Lv = std::log(2.0);
  const double want = 27.0 / 8 * X * X - (27 * Lv / 4 + 2.5) * X + 27 * Lv * Lv / 8 + 2.5 * Lv;
  EXPECT_NEAR(R.evaluate(2, X), want, 1e-13);
  EXPECT_EQ(se::cascade_R(2).to_string(1), "(3/2)*X + (-3/2*L)");
}
