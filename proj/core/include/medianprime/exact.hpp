#pragma once

// Exact enumeration over n <= x by segmented factorization.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "medianprime/errors.hpp"

namespace medianprime::exact {

enum class MiddleMode { OMEGA, BIGOMEGA };

const char* to_string(MiddleMode m);
MiddleMode parse_mode(const std::string& s);

struct Factorization {
  std::uint64_t n = 1;
  std::vector<std::pair<std::uint64_t, int>> factors;  ///< (prime, exponent), primes increasing

  [[nodiscard]] int omega() const { return static_cast<int>(factors.size()); }
  [[nodiscard]] int Omega() const;
};

/// Trial division; n >= 1.
Factorization factorize(std::uint64_t n);

/// q_{ceil(omega/2)} or Q_{ceil(Omega/2)}; n >= 2.
std::uint64_t middle_prime(const Factorization& f, MiddleMode mode);

/// Neumaier-compensated sum.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  void merge(const CompensatedSum& o) {
    add(o.sum);
    add(o.comp);
  }
  [[nodiscard]] double value() const { return sum + comp; }
};

struct SieveConfig {
  std::uint64_t segment_size = std::uint64_t{1} << 22;
  unsigned threads = 1;
  std::optional<std::filesystem::path> prime_table;
  std::uint64_t ceiling = 10'000'000'000ull;  ///< enumeration limit
};

/// One factorized integer 2 <= n <= N. Small primes (<= sqrt of the tile end)
/// sit in packed slots (p << 6 | e); any remaining factor is a single prime.
struct FactorView {
  std::uint64_t n = 0;
  const std::uint32_t* slots = nullptr;
  int count = 0;
  std::uint64_t cofactor = 1;

  [[nodiscard]] int omega() const { return count + (cofactor > 1 ? 1 : 0); }
  [[nodiscard]] int Omega() const {
    int s = cofactor > 1 ? 1 : 0;
    for (int i = 0; i < count; ++i) s += static_cast<int>(slots[i] & 63u);
    return s;
  }
  [[nodiscard]] std::uint64_t prime(int i) const { return i < count ? (slots[i] >> 6) : cofactor; }
  [[nodiscard]] int exponent(int i) const { return i < count ? static_cast<int>(slots[i] & 63u) : 1; }
  [[nodiscard]] std::uint64_t smallest_prime() const { return count > 0 ? (slots[0] >> 6) : cofactor; }
  [[nodiscard]] std::uint64_t middle(MiddleMode mode) const;
};

constexpr int kMaxSlots = 15;

/// Factorizes consecutive integers tile by tile without trial division.
class TileFactorizer {
 public:
  explicit TileFactorizer(const std::vector<std::uint64_t>* base) : base_(base) {}

  template <class F>
  void run(std::uint64_t lo, std::uint64_t hi, F&& visit);

 private:
  static constexpr std::uint64_t kTile = std::uint64_t{1} << 15;
  const std::vector<std::uint64_t>* base_;
  std::vector<std::uint32_t> slots_ = std::vector<std::uint32_t>(kTile * kMaxSlots);
  std::vector<std::uint8_t> counts_ = std::vector<std::uint8_t>(kTile);
  std::vector<std::uint64_t> prod_ = std::vector<std::uint64_t>(kTile);
};

/// Runs `proto`-shaped visitors over 2 <= n <= N segment by segment and merges
/// the partial visitors in ascending segment order. The visitor needs
/// operator()(const FactorView&) and merge(const Visitor&).
template <class Visitor>
Visitor scan(std::uint64_t N, const SieveConfig& cfg, const Visitor& proto);

// ---- reports ------------------------------------------------------------------

struct ExactSumReport {
  double x = 0.0;
  MiddleMode mode = MiddleMode::OMEGA;
  double total = 0.0;      ///< odd_part + even_part
  double odd_part = 0.0;   ///< n with nu(n) odd
  double even_part = 0.0;  ///< n with nu(n) even
  std::vector<std::pair<std::uint64_t, std::uint64_t>> local_law;  ///< (p, M(x,p)), p increasing
};

ExactSumReport exact_sum(double x, MiddleMode mode, const SieveConfig& cfg = {}, bool with_local_law = true);
/// One pass up to max(xs); reports carry no local law.
std::vector<ExactSumReport> exact_sum_grid(const std::vector<double>& xs, MiddleMode mode,
                                           const SieveConfig& cfg = {});

std::uint64_t local_law(double x, std::uint64_t p, MiddleMode mode, const SieveConfig& cfg = {});

/// #{n <= x : P^-(n) > y, omega(n) = k}.
std::uint64_t phi_k_exact(double x, double y, int k, const SieveConfig& cfg = {});
/// counts[i][j][k] for xs[i], ys[j], 0 <= k <= k_max.
std::vector<std::vector<std::vector<std::uint64_t>>> phi_k_exact_grid(const std::vector<double>& xs,
                                                                      const std::vector<double>& ys, int k_max,
                                                                      const SieveConfig& cfg = {});

/// sum_{m <= x, P^-(m) >= y} z^Omega(m), m = 1 included. Any finite z; the
/// asymptotic counterpart needs |z| < 2.
std::complex<double> rough_power_sum_exact(double x, double y, std::complex<double> z, const SieveConfig& cfg = {});
/// values[i][j][l] for xs[i], ys[j], zs[l].
std::vector<std::vector<std::vector<std::complex<double>>>> rough_power_sum_exact_grid(
    const std::vector<double>& xs, const std::vector<double>& ys, const std::vector<std::complex<double>>& zs,
    const SieveConfig& cfg = {});

struct LambdaOmegaResult {
  std::complex<double> value;
  double cutoff_tail = 0.0;  ///< bound on the omitted m > m_cut terms (0 when nothing was cut)
  double omega_cap_tail = 0.0;  ///< bound on sum over Omega(m) > cap, i.e. distance to the uncapped series
  int omega_cap = 0;
  std::uint64_t terms = 0;
};

/// sum over y-smooth m with Omega(m) <= 3 xi / 2 of z^-Omega(m) / m, m <= m_cut.
LambdaOmegaResult lambda_Omega_exact_xi(double xi, double y, std::complex<double> z, double m_cut = 1e12);
/// Same with xi = log log x.
LambdaOmegaResult lambda_Omega_exact(double x, double y, std::complex<double> z, double m_cut = 1e12);

// ---------------------------------------------------------------------------
// template implementations

std::vector<std::uint64_t> sieve_base(std::uint64_t N, const SieveConfig& cfg);

template <class F>
void TileFactorizer::run(std::uint64_t lo, std::uint64_t hi, F&& visit) {
  const auto& base = *base_;
  for (std::uint64_t tlo = lo; tlo <= hi;) {
    const std::uint64_t thi = (hi - tlo >= kTile) ? tlo + kTile - 1 : hi;
    const std::size_t len = static_cast<std::size_t>(thi - tlo + 1);
    std::fill_n(counts_.begin(), len, std::uint8_t{0});
    std::fill_n(prod_.begin(), len, std::uint64_t{1});
    for (std::uint64_t p : base) {
      if (p * p > thi) break;
      const std::uint32_t tag = static_cast<std::uint32_t>(p << 6);
      for (std::uint64_t m = (tlo + p - 1) / p * p; m <= thi; m += p) {
        const std::size_t i = static_cast<std::size_t>(m - tlo);
        slots_[i * kMaxSlots + counts_[i]++] = tag | 1u;
        prod_[i] *= p;
      }
      for (std::uint64_t pk = p * p; pk <= thi; pk *= p) {
        for (std::uint64_t m = (tlo + pk - 1) / pk * pk; m <= thi; m += pk) {
          const std::size_t i = static_cast<std::size_t>(m - tlo);
          ++slots_[i * kMaxSlots + counts_[i] - 1];
          prod_[i] *= p;
        }
        if (pk > thi / p) break;
      }
    }
    FactorView v;
    for (std::size_t i = 0; i < len; ++i) {
      v.n = tlo + i;
      v.slots = &slots_[i * kMaxSlots];
      v.count = counts_[i];
      v.cofactor = v.n / prod_[i];
      visit(static_cast<const FactorView&>(v));
    }
    if (thi == hi) break;
    tlo = thi + 1;
  }
}

template <class Visitor>
Visitor scan(std::uint64_t N, const SieveConfig& cfg, const Visitor& proto) {
  if (N > cfg.ceiling) throw BudgetExceeded("x exceeds the enumeration ceiling");
  Visitor total = proto;
  if (N < 2) return total;
  const std::vector<std::uint64_t> base = sieve_base(N, cfg);
  const std::uint64_t seg = std::max<std::uint64_t>(cfg.segment_size, 1024);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> segments;
  for (std::uint64_t lo = 2; lo <= N;) {
    const std::uint64_t hi = (N - lo >= seg) ? lo + seg - 1 : N;
    segments.emplace_back(lo, hi);
    if (hi == N) break;
    lo = hi + 1;
  }
  const unsigned workers = std::max(1u, cfg.threads);
  auto process = [&](std::size_t idx, Visitor& out) {
    TileFactorizer tf(&base);
    tf.run(segments[idx].first, segments[idx].second, [&out](const FactorView& v) { out(v); });
  };
  for (std::size_t first = 0; first < segments.size(); first += workers) {
    const std::size_t last = std::min(segments.size(), first + workers);
    std::vector<Visitor> parts(last - first, proto);
    if (workers == 1) {
      process(first, parts[0]);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t s = first; s < last; ++s) pool.emplace_back(process, s, std::ref(parts[s - first]));
      for (auto& t : pool) t.join();
    }
    for (auto& p : parts) total.merge(p);
  }
  return total;
}

}  // namespace medianprime::exact
