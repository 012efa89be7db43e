#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "medianprime/errors.hpp"
#include "medianprime/exact.hpp"
#include "medianprime/products.hpp"

namespace mp = medianprime;
using mp::exact::MiddleMode;

namespace {

// Independent oracle: plain trial division, primes listed with multiplicity.
std::vector<std::uint64_t> prime_list(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      out.push_back(d);
      n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t naive_middle(std::uint64_t n, MiddleMode mode) {
  auto ps = prime_list(n);
  if (mode == MiddleMode::OMEGA) ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps[(ps.size() + 1) / 2 - 1];
}

mp::exact::SieveConfig small_segments() {
  mp::exact::SieveConfig cfg;
  cfg.segment_size = 4096;
  return cfg;
}

}  // namespace

TEST(Factorize, Examples) {
  const auto f = mp::exact::factorize(9699690);
  const std::vector<std::pair<std::uint64_t, int>> want{{2, 1}, {3, 1}, {5, 1}, {7, 1},
                                                        {11, 1}, {13, 1}, {17, 1}, {19, 1}};
  EXPECT_EQ(f.factors, want);
  EXPECT_EQ(mp::exact::factorize(360).Omega(), 6);
  EXPECT_EQ(mp::exact::factorize(360).omega(), 3);
  EXPECT_TRUE(mp::exact::factorize(1).factors.empty());
  EXPECT_THROW(mp::exact::factorize(0), mp::DomainError);
  for (std::uint64_t n = 2; n < 5000; ++n) {
    const auto g = mp::exact::factorize(n);
    std::uint64_t prod = 1;
    for (auto [p, e] : g.factors)
      for (int i = 0; i < e; ++i) prod *= p;
    ASSERT_EQ(prod, n);
  }
}

TEST(MiddlePrime, Examples) {
  // 360 = 2^3 3^2 5: distinct (2,3,5) -> 3; with multiplicity (2,2,2,3,3,5) -> 2.
  EXPECT_EQ(mp::exact::middle_prime(mp::exact::factorize(360), MiddleMode::OMEGA), 3u);
  EXPECT_EQ(mp::exact::middle_prime(mp::exact::factorize(360), MiddleMode::BIGOMEGA), 2u);
  EXPECT_EQ(mp::exact::middle_prime(mp::exact::factorize(30), MiddleMode::OMEGA), 3u);
  EXPECT_THROW(mp::exact::middle_prime(mp::exact::factorize(1), MiddleMode::OMEGA), mp::DomainError);
  for (std::uint64_t n = 2; n < 3000; ++n)
    for (auto m : {MiddleMode::OMEGA, MiddleMode::BIGOMEGA})
      ASSERT_EQ(mp::exact::middle_prime(mp::exact::factorize(n), m), naive_middle(n, m)) << n;
}

TEST(ExactSum, HandValueAtTen) {
  for (auto m : {MiddleMode::OMEGA, MiddleMode::BIGOMEGA}) {
    const auto r = mp::exact::exact_sum(10, m);
    EXPECT_NEAR(r.total, 737.0 / 210.0, 1e-15);
    EXPECT_NEAR(r.odd_part + r.even_part, r.total, 1e-15);
  }
  EXPECT_EQ(mp::exact::local_law(10, 2, MiddleMode::OMEGA), 5u);
  EXPECT_EQ(mp::exact::local_law(10, 7, MiddleMode::OMEGA), 1u);
  EXPECT_THROW(mp::exact::local_law(10, 4, MiddleMode::OMEGA), mp::DomainError);
}

TEST(ExactSum, MatchesTrialDivisionOnGrid) {
  std::vector<double> xs;
  for (double x = 2; x <= 2000; x += 1) xs.push_back(x);
  for (double x = 2500; x <= 100000; x += 2500) xs.push_back(x);
  xs.push_back(12345.5);
  std::sort(xs.begin(), xs.end());
  for (auto m : {MiddleMode::OMEGA, MiddleMode::BIGOMEGA}) {
    const auto reps = mp::exact::exact_sum_grid(xs, m, small_segments());
    ASSERT_EQ(reps.size(), xs.size());
    long double acc = 0;
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      while (n + 1 <= static_cast<std::uint64_t>(xs[i])) {
        ++n;
        acc += 1.0L / naive_middle(n, m);
      }
      ASSERT_NEAR(reps[i].total, static_cast<double>(acc), 1e-12 * static_cast<double>(acc)) << xs[i];
    }
  }
}

TEST(ExactSum, LocalLawAndParity) {
  for (auto m : {MiddleMode::OMEGA, MiddleMode::BIGOMEGA}) {
    const double x = 54321;
    const auto r = mp::exact::exact_sum(x, m, small_segments());
    std::uint64_t count = 0;
    double weighted = 0;
    std::map<std::uint64_t, std::uint64_t> ref;
    long double odd = 0, even = 0;
    for (std::uint64_t n = 2; n <= 54321; ++n) {
      const auto p = naive_middle(n, m);
      ++ref[p];
      auto ps = prime_list(n);
      if (m == MiddleMode::OMEGA) ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
      (ps.size() % 2 ? odd : even) += 1.0L / p;
    }
    for (auto [p, c] : r.local_law) {
      count += c;
      weighted += static_cast<double>(c) / static_cast<double>(p);
      ASSERT_EQ(c, ref[p]) << p;
    }
    EXPECT_EQ(count, 54320u);
    EXPECT_EQ(r.local_law.size(), ref.size());
    EXPECT_NEAR(weighted, r.total, 1e-9 * r.total);
    EXPECT_NEAR(r.odd_part, static_cast<double>(odd), 1e-11 * r.total);
    EXPECT_NEAR(r.even_part, static_cast<double>(even), 1e-11 * r.total);
  }
}

TEST(ExactSum, ThreadsAndSegmentsDoNotChangeResult) {
  mp::exact::SieveConfig a, b;
  a.segment_size = 1 << 16;
  b.segment_size = 1 << 14;
  b.threads = 4;
  const auto ra = mp::exact::exact_sum(2e6, MiddleMode::BIGOMEGA, a);
  const auto rb = mp::exact::exact_sum(2e6, MiddleMode::BIGOMEGA, b);
  EXPECT_NEAR(ra.total, rb.total, 1e-13 * ra.total);
  EXPECT_EQ(ra.local_law, rb.local_law);
  const auto rc = mp::exact::exact_sum(2e6, MiddleMode::BIGOMEGA, b);
  EXPECT_EQ(rb.total, rc.total);  // same configuration, bitwise
}

TEST(ExactSum, CeilingRaisesBudget) {
  mp::exact::SieveConfig cfg;
  cfg.ceiling = 1000;
  EXPECT_THROW(mp::exact::exact_sum(1001, MiddleMode::OMEGA, cfg), mp::BudgetExceeded);
}

TEST(PhiK, HandExamples) {
  EXPECT_EQ(mp::exact::phi_k_exact(20, 2, 2), 1u);
  EXPECT_EQ(mp::exact::phi_k_exact(10, 2, 1), 4u);
  // y = 1: every n >= 2 is counted once.
  const auto g = mp::exact::phi_k_exact_grid({54321.0}, {1.0}, 8);
  EXPECT_EQ(std::accumulate(g[0][0].begin() + 1, g[0][0].end(), std::uint64_t{0}), 54320u);
}

TEST(PhiK, InclusionExclusionOracle) {
  // #{n <= x : P^-(n) > y}, summed over k, equals the Legendre count.
  const std::vector<double> xs{1000, 30000, 99999};
  const std::vector<double> ys{2, 3, 5, 7};
  const auto grid = mp::exact::phi_k_exact_grid(xs, ys, 12, small_segments());
  const std::vector<std::uint64_t> small{2, 3, 5, 7};
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j) {
      std::vector<std::uint64_t> ps;
      for (auto p : small)
        if (p <= ys[j]) ps.push_back(p);
      long long legendre = 0;
      const auto X = static_cast<long long>(xs[i]);
      for (unsigned mask = 0; mask < (1u << ps.size()); ++mask) {
        long long d = 1;
        int bits = 0;
        for (std::size_t b = 0; b < ps.size(); ++b)
          if (mask >> b & 1u) {
            d *= static_cast<long long>(ps[b]);
            ++bits;
          }
        legendre += (bits % 2 ? -1 : 1) * (X / d);
      }
      const std::uint64_t total = std::accumulate(grid[i][j].begin() + 1, grid[i][j].end(), std::uint64_t{0});
      EXPECT_EQ(static_cast<long long>(total), legendre - 1);  // n = 1 has k = 0
      std::vector<std::uint64_t> ref(13, 0);
      for (std::uint64_t n = 2; n <= static_cast<std::uint64_t>(X); ++n) {
        auto pl = prime_list(n);
        if (pl.front() <= ys[j]) continue;
        pl.erase(std::unique(pl.begin(), pl.end()), pl.end());
        ++ref[pl.size()];
      }
      for (int k = 1; k <= 12; ++k) ASSERT_EQ(grid[i][j][k], ref[k]) << xs[i] << " " << ys[j] << " " << k;
    }
}

TEST(RoughPowerSum, HandExamples) {
  EXPECT_NEAR(mp::exact::rough_power_sum_exact(20, 3, 1.0).real(), 10.0, 1e-12);
  EXPECT_NEAR(mp::exact::rough_power_sum_exact(10, 2, 2.0).real(), 33.0, 1e-12);
  EXPECT_EQ(mp::exact::rough_power_sum_exact(20, 3, 0.0), std::complex<double>(1.0));
}

TEST(RoughPowerSum, LegendreCountAtZEqualsOne) {
  for (double x : {97.0, 1000.0, 10000.0})
    for (std::uint64_t y : {2u, 3u, 5u, 7u, 11u}) {
      // m <= x with no prime factor below y, by inclusion-exclusion over the primes < y
      std::vector<long long> ps;
      for (long long p : {2, 3, 5, 7})
        if (p < static_cast<long long>(y)) ps.push_back(p);
      long long count = 0;
      for (unsigned mask = 0; mask < (1u << ps.size()); ++mask) {
        long long d = 1;
        int bits = 0;
        for (std::size_t b = 0; b < ps.size(); ++b)
          if (mask >> b & 1u) {
            d *= ps[b];
            ++bits;
          }
        count += (bits % 2 ? -1 : 1) * (static_cast<long long>(x) / d);
      }
      EXPECT_NEAR(mp::exact::rough_power_sum_exact(x, static_cast<double>(y), 1.0).real(), static_cast<double>(count),
                  1e-9)
          << x << " " << y;
    }
}

TEST(RoughPowerSum, MatchesNaive) {
  const std::complex<double> z(0.3, 0.7);
  const auto got = mp::exact::rough_power_sum_exact(20000, 5, z, small_segments());
  std::complex<double> ref = 1.0;
  for (std::uint64_t m = 2; m <= 20000; ++m) {
    const auto pl = prime_list(m);
    if (pl.front() < 5) continue;
    ref += std::pow(z, static_cast<int>(pl.size()));
  }
  EXPECT_NEAR(std::abs(got - ref), 0.0, 1e-10 * std::abs(ref));
}

TEST(LambdaOmega, FiniteGeometricSum) {
  // y = 2, xi = 2: Omega <= 3, so 1 + 1/2 + 1/4 + 1/8.
  const auto r = mp::exact::lambda_Omega_exact_xi(2.0, 2, 1.0);
  EXPECT_NEAR(r.value.real(), 15.0 / 8.0, 1e-15);
  EXPECT_EQ(r.cutoff_tail, 0.0);
  EXPECT_THROW(mp::exact::lambda_Omega_exact(100, 5, 1.0), mp::DomainError);  // y > log x
}

TEST(LambdaOmega, ApproachesEulerProduct) {
  // 1/F_Omega(3, 1) = 1/((1 - 1/2)(1 - 1/3)) = 3.
  const auto r = mp::exact::lambda_Omega_exact_xi(40, 3, 1.0);
  EXPECT_NEAR(r.value.real(), 3.0, 2 * (r.cutoff_tail + r.omega_cap_tail) + 1e-12);
  EXPECT_LT(std::abs(r.value.real() - 3.0), 1e-3);
  const auto r5 = mp::exact::lambda_Omega_exact_xi(40, 5, 2.0);
  const auto inv = 1.0 / mp::products::F_finite(5, 0.5, mp::products::ProductMode::BIGOMEGA);
  EXPECT_NEAR(std::abs(r5.value - inv), 0.0, 2 * (r5.cutoff_tail + r5.omega_cap_tail) + 1e-12);
}
