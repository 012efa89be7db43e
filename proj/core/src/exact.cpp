#include "medianprime/exact.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "medianprime/primes.hpp"

namespace medianprime::exact {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t floor_x(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + " must be finite");
  return static_cast<std::uint64_t>(std::floor(x));
}

// Checkpoints as integers, sorted; bucket b holds n in (cp[b-1], cp[b]].
std::vector<std::uint64_t> checkpoints_from(const std::vector<double>& xs) {
  std::vector<std::uint64_t> cps;
  for (double x : xs) cps.push_back(floor_x(x, "x"));
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  return cps;
}

std::size_t index_of(const std::vector<std::uint64_t>& cps, double x) {
  return static_cast<std::size_t>(std::lower_bound(cps.begin(), cps.end(), floor_x(x, "x")) - cps.begin());
}

class BucketCursor {
 public:
  explicit BucketCursor(const std::vector<std::uint64_t>* cps) : cps_(cps) {}
  std::size_t operator()(std::uint64_t n) {
    while (n > (*cps_)[b_]) ++b_;
    return b_;
  }

 private:
  const std::vector<std::uint64_t>* cps_;
  std::size_t b_ = 0;
};

struct MiddleSumVisitor {
  MiddleMode mode = MiddleMode::OMEGA;
  const std::vector<std::uint64_t>* cps = nullptr;
  std::vector<CompensatedSum> odd, even;
  bool law = false;
  std::uint64_t small_limit = 0;
  std::vector<std::uint64_t> small_counts;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> large;
  BucketCursor cursor{nullptr};

  MiddleSumVisitor(MiddleMode m, const std::vector<std::uint64_t>* c, bool with_law)
      : mode(m), cps(c), odd(c->size()), even(c->size()), law(with_law), cursor(c) {
    if (law) {
      small_limit = isqrt(c->back());
      small_counts.assign(small_limit + 1, 0);
    }
  }

  void operator()(const FactorView& v) {
    const std::size_t b = cursor(v.n);
    const std::uint64_t p = v.middle(mode);
    const int nu = mode == MiddleMode::OMEGA ? v.omega() : v.Omega();
    const double r = 1.0 / static_cast<double>(p);
    if (nu & 1)
      odd[b].add(r);
    else
      even[b].add(r);
    if (!law) return;
    if (p <= small_limit) {
      ++small_counts[p];
    } else if (!large.empty() && large.back().first == p) {
      ++large.back().second;
    } else {
      large.emplace_back(p, 1);
    }
  }

  void merge(const MiddleSumVisitor& o) {
    for (std::size_t b = 0; b < odd.size(); ++b) {
      odd[b].merge(o.odd[b]);
      even[b].merge(o.even[b]);
    }
    if (!law) return;
    for (std::size_t p = 0; p < small_counts.size(); ++p) small_counts[p] += o.small_counts[p];
    large.insert(large.end(), o.large.begin(), o.large.end());
  }
};

struct CountMiddleVisitor {
  MiddleMode mode;
  std::uint64_t p;
  std::uint64_t count = 0;
  void operator()(const FactorView& v) {
    if (v.middle(mode) == p) ++count;
  }
  void merge(const CountMiddleVisitor& o) { count += o.count; }
};

struct PhiKVisitor {
  const std::vector<std::uint64_t>* cps;
  std::vector<double> ys;
  int k_max;
  std::vector<std::uint64_t> counts;  // [bucket][y][k]
  BucketCursor cursor;

  PhiKVisitor(const std::vector<std::uint64_t>* c, std::vector<double> y, int k)
      : cps(c), ys(std::move(y)), k_max(k), counts(c->size() * ys.size() * (k + 1), 0), cursor(c) {}

  void operator()(const FactorView& v) {
    const std::size_t b = cursor(v.n);
    const int w = v.omega();
    if (w > k_max) return;
    const auto low = static_cast<double>(v.smallest_prime());
    for (std::size_t j = 0; j < ys.size(); ++j)
      if (low > ys[j]) ++counts[(b * ys.size() + j) * (k_max + 1) + w];
  }

  void merge(const PhiKVisitor& o) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
  }
};

struct RoughSumVisitor {
  const std::vector<std::uint64_t>* cps;
  std::vector<double> ys;
  std::size_t nz;
  const std::vector<std::complex<double>>* powers;  // [z][Omega], Omega <= 64
  std::vector<CompensatedSum> re, im;             // [bucket][y][z]
  BucketCursor cursor;

  RoughSumVisitor(const std::vector<std::uint64_t>* c, std::vector<double> y, std::size_t n_z,
                  const std::vector<std::complex<double>>* pw)
      : cps(c),
        ys(std::move(y)),
        nz(n_z),
        powers(pw),
        re(c->size() * ys.size() * n_z),
        im(c->size() * ys.size() * n_z),
        cursor(c) {}

  void operator()(const FactorView& v) {
    const std::size_t b = cursor(v.n);
    const int big = v.Omega();
    const auto low = static_cast<double>(v.smallest_prime());
    for (std::size_t j = 0; j < ys.size(); ++j) {
      if (low < ys[j]) continue;
      const std::size_t base = (b * ys.size() + j) * nz;
      for (std::size_t l = 0; l < nz; ++l) {
        const std::complex<double> t = (*powers)[l * 65 + static_cast<std::size_t>(big)];
        re[base + l].add(t.real());
        im[base + l].add(t.imag());
      }
    }
  }

  void merge(const RoughSumVisitor& o) {
    for (std::size_t i = 0; i < re.size(); ++i) {
      re[i].merge(o.re[i]);
      im[i].merge(o.im[i]);
    }
  }
};

}  // namespace

const char* to_string(MiddleMode m) { return m == MiddleMode::OMEGA ? "omega" : "Omega"; }

MiddleMode parse_mode(const std::string& s) {
  if (s == "omega" || s == "OMEGA") return MiddleMode::OMEGA;
  if (s == "Omega" || s == "BIGOMEGA" || s == "bigomega") return MiddleMode::BIGOMEGA;
  throw DomainError("unknown mode '" + s + "' (expected omega or Omega)");
}

int Factorization::Omega() const {
  int s = 0;
  for (const auto& f : factors) s += f.second;
  return s;
}

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw DomainError("factorize: n must be >= 1");
  Factorization f;
  f.n = n;
  auto take = [&](std::uint64_t p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) f.factors.emplace_back(p, e);
  };
  take(2);
  take(3);
  for (std::uint64_t d = 5; d * d <= n; d += 6) {
    take(d);
    take(d + 2);
  }
  if (n > 1) f.factors.emplace_back(n, 1);
  return f;
}

std::uint64_t middle_prime(const Factorization& f, MiddleMode mode) {
  if (f.factors.empty()) throw DomainError("middle_prime: n = 1 has no prime factor");
  if (mode == MiddleMode::OMEGA) return f.factors[static_cast<std::size_t>((f.omega() + 1) / 2 - 1)].first;
  int k = (f.Omega() + 1) / 2;
  for (const auto& [p, e] : f.factors) {
    k -= e;
    if (k <= 0) return p;
  }
  return f.factors.back().first;
}

std::uint64_t FactorView::middle(MiddleMode mode) const {
  if (mode == MiddleMode::OMEGA) return prime((omega() + 1) / 2 - 1);
  int k = (Omega() + 1) / 2;
  for (int i = 0; i < count; ++i) {
    k -= static_cast<int>(slots[i] & 63u);
    if (k <= 0) return slots[i] >> 6;
  }
  return cofactor;
}

std::vector<std::uint64_t> sieve_base(std::uint64_t N, const SieveConfig& cfg) {
  auto path = cfg.prime_table ? cfg.prime_table : primes::table_path_from_env();
  return primes::base_primes(isqrt(N), path);
}

namespace {

std::vector<ExactSumReport> run_middle(const std::vector<double>& xs, MiddleMode mode, const SieveConfig& cfg,
                                       bool with_law) {
  for (double x : xs)
    if (!(x >= 2.0)) throw DomainError("exact_sum: x must be >= 2");
  if (xs.empty()) return {};
  const auto cps = checkpoints_from(xs);
  MiddleSumVisitor proto(mode, &cps, with_law);
  MiddleSumVisitor res = scan(cps.back(), cfg, proto);

  std::vector<ExactSumReport> by_cp(cps.size());
  CompensatedSum odd, even;
  for (std::size_t b = 0; b < cps.size(); ++b) {
    odd.merge(res.odd[b]);
    even.merge(res.even[b]);
    by_cp[b].odd_part = odd.value();
    by_cp[b].even_part = even.value();
    by_cp[b].total = by_cp[b].odd_part + by_cp[b].even_part;
    by_cp[b].mode = mode;
  }
  if (with_law) {
    auto& law = by_cp.back().local_law;
    for (std::uint64_t p = 2; p < res.small_counts.size(); ++p)
      if (res.small_counts[p] > 0) law.emplace_back(p, res.small_counts[p]);
    law.insert(law.end(), res.large.begin(), res.large.end());
  }
  std::vector<ExactSumReport> out;
  for (double x : xs) {
    ExactSumReport r = by_cp[index_of(cps, x)];
    r.x = x;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

ExactSumReport exact_sum(double x, MiddleMode mode, const SieveConfig& cfg, bool with_local_law) {
  return run_middle({x}, mode, cfg, with_local_law).front();
}

std::vector<ExactSumReport> exact_sum_grid(const std::vector<double>& xs, MiddleMode mode, const SieveConfig& cfg) {
  return run_middle(xs, mode, cfg, false);
}

std::uint64_t local_law(double x, std::uint64_t p, MiddleMode mode, const SieveConfig& cfg) {
  if (!(x >= 2.0)) throw DomainError("local_law: x must be >= 2");
  if (!primes::is_prime(p)) throw DomainError("local_law: p must be prime");
  const std::uint64_t N = floor_x(x, "x");
  if (p > N) return 0;
  return scan(N, cfg, CountMiddleVisitor{mode, p}).count;
}

std::vector<std::vector<std::vector<std::uint64_t>>> phi_k_exact_grid(const std::vector<double>& xs,
                                                                      const std::vector<double>& ys, int k_max,
                                                                      const SieveConfig& cfg) {
  if (k_max < 0) throw DomainError("phi_k_exact: k must be >= 0");
  for (double x : xs)
    if (!(x >= 1.0)) throw DomainError("phi_k_exact: x must be >= 1");
  for (double y : ys)
    if (!(y >= 1.0)) throw DomainError("phi_k_exact: y must be >= 1");
  std::vector<std::vector<std::vector<std::uint64_t>>> out(
      xs.size(), std::vector<std::vector<std::uint64_t>>(ys.size(), std::vector<std::uint64_t>(k_max + 1, 0)));
  if (xs.empty() || ys.empty()) return out;
  const auto cps = checkpoints_from(xs);
  PhiKVisitor res = scan(cps.back(), cfg, PhiKVisitor(&cps, ys, k_max));
  const std::size_t K = static_cast<std::size_t>(k_max) + 1;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const std::size_t top = index_of(cps, xs[i]);
    for (std::size_t b = 0; b <= top; ++b)
      for (std::size_t j = 0; j < ys.size(); ++j)
        for (std::size_t k = 0; k < K; ++k) out[i][j][k] += res.counts[(b * ys.size() + j) * K + k];
  }
  return out;
}

std::uint64_t phi_k_exact(double x, double y, int k, const SieveConfig& cfg) {
  if (k < 1) throw DomainError("phi_k_exact: k must be >= 1");
  return phi_k_exact_grid({x}, {y}, k, cfg)[0][0][static_cast<std::size_t>(k)];
}

std::vector<std::vector<std::vector<std::complex<double>>>> rough_power_sum_exact_grid(
    const std::vector<double>& xs, const std::vector<double>& ys, const std::vector<std::complex<double>>& zs,
    const SieveConfig& cfg) {
  for (double x : xs)
    if (!(x >= 1.0)) throw DomainError("rough_power_sum_exact: x must be >= 1");
  for (double y : ys)
    if (!(y >= 2.0)) throw DomainError("rough_power_sum_exact: y must be >= 2");
  for (auto z : zs)
    if (!std::isfinite(std::abs(z))) throw DomainError("rough_power_sum_exact: z must be finite");
  std::vector<std::vector<std::vector<std::complex<double>>>> out(
      xs.size(), std::vector<std::vector<std::complex<double>>>(ys.size(), std::vector<std::complex<double>>(zs.size())));
  if (xs.empty() || ys.empty() || zs.empty()) return out;

  std::vector<std::complex<double>> powers(zs.size() * 65);
  for (std::size_t l = 0; l < zs.size(); ++l) {
    std::complex<double> p = 1.0;
    for (std::size_t k = 0; k <= 64; ++k) {
      powers[l * 65 + k] = p;
      p *= zs[l];
    }
  }
  const auto cps = checkpoints_from(xs);
  RoughSumVisitor res = scan(cps.back(), cfg, RoughSumVisitor(&cps, ys, zs.size(), &powers));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const std::size_t top = index_of(cps, xs[i]);
    for (std::size_t j = 0; j < ys.size(); ++j)
      for (std::size_t l = 0; l < zs.size(); ++l) {
        CompensatedSum re, im;
        re.add(1.0);  // m = 1
        for (std::size_t b = 0; b <= top; ++b) {
          re.merge(res.re[(b * ys.size() + j) * zs.size() + l]);
          im.merge(res.im[(b * ys.size() + j) * zs.size() + l]);
        }
        out[i][j][l] = {re.value(), im.value()};
      }
  }
  return out;
}

std::complex<double> rough_power_sum_exact(double x, double y, std::complex<double> z, const SieveConfig& cfg) {
  return rough_power_sum_exact_grid({x}, {y}, {z}, cfg)[0][0][0];
}

LambdaOmegaResult lambda_Omega_exact_xi(double xi, double y, std::complex<double> z, double m_cut) {
  if (!(y >= 2.0)) throw DomainError("lambda_Omega_exact: y must be >= 2");
  if (!(std::abs(z) > 0.5)) throw DomainError("lambda_Omega_exact: |z| must exceed 1/2");
  if (!(xi > 0.0)) throw DomainError("lambda_Omega_exact: xi must be positive");
  if (!(m_cut >= 1.0) || m_cut > 1.8e19) throw DomainError("lambda_Omega_exact: m_cut out of range");

  const auto ps = primes::sieve_primes(static_cast<std::uint64_t>(std::floor(y)));
  const int cap = static_cast<int>(std::floor(1.5 * xi));
  const auto M = static_cast<std::uint64_t>(m_cut);

  std::vector<std::pair<std::uint64_t, int>> terms;
  bool cut = false;
  auto dfs = [&](auto&& self, std::size_t i, std::uint64_t m, int om) -> void {
    terms.emplace_back(m, om);
    if (om >= cap) return;
    for (std::size_t j = i; j < ps.size(); ++j) {
      if (m > M / ps[j]) {
        cut = true;
        return;
      }
      self(self, j, m * ps[j], om + 1);
    }
  };
  dfs(dfs, 0, 1, 0);

  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  const std::complex<long double> zinv = 1.0L / std::complex<long double>(z);
  std::vector<std::complex<long double>> zp(static_cast<std::size_t>(cap) + 1);
  zp[0] = 1.0L;
  for (std::size_t k = 1; k < zp.size(); ++k) zp[k] = zp[k - 1] * zinv;
  std::complex<long double> acc = 0.0L;
  for (const auto& [m, om] : terms) acc += zp[static_cast<std::size_t>(om)] / static_cast<long double>(m);

  LambdaOmegaResult r;
  r.value = std::complex<double>(acc);
  r.omega_cap = cap;
  r.terms = terms.size();
  const double az = std::abs(z);

  // Rankin: sum_{m > M} |z|^-Omega / m <= M^-d prod (1 - q^(d-1)/|z|)^-1
  if (cut) {
    const double lq_min = std::log(static_cast<double>(ps.front()));
    const double lq_max = std::log(static_cast<double>(ps.back()));
    const double d_max = az < 1.0 ? 1.0 + std::log(az) / lq_min : 1.0 + std::log(az) / lq_max;
    double best = std::numeric_limits<double>::infinity();
    for (int s = 1; s < 4000; ++s) {
      const double d = d_max * s / 4000.0;
      double lb = -d * std::log(m_cut);
      for (auto q : ps) lb -= std::log1p(-std::pow(static_cast<double>(q), d - 1.0) / az);
      best = std::min(best, lb);
    }
    r.cutoff_tail = std::exp(best);
  }
  // Omega cap: sum_{Omega > K} |z|^-Omega / m <= t^-(K+1) prod (1 - t/(|z| q))^-1, 1 <= t < 2|z|
  {
    double best = std::numeric_limits<double>::infinity();
    const double t_hi = 2.0 * az;
    for (int s = 0; s < 4000; ++s) {
      const double t = 1.0 + (t_hi - 1.0) * s / 4000.0;
      double lb = -(cap + 1) * std::log(t);
      for (auto q : ps) lb -= std::log1p(-t / (az * static_cast<double>(q)));
      best = std::min(best, lb);
    }
    r.omega_cap_tail = std::exp(best);
  }
  return r;
}

LambdaOmegaResult lambda_Omega_exact(double x, double y, std::complex<double> z, double m_cut) {
  if (!(x > std::exp(1.0))) throw DomainError("lambda_Omega_exact: x must exceed e");
  if (y > std::log(x)) throw DomainError("lambda_Omega_exact: y must be <= log x");
  return lambda_Omega_exact_xi(std::log(std::log(x)), y, z, m_cut);
}

}  // namespace medianprime::exact
