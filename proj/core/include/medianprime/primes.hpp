#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace medianprime::primes {

/// All primes <= limit (plain sieve of Eratosthenes, odd-only bitmap).
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit);

/// Calls f(p) for every prime lo <= p <= hi in increasing order, using a
/// segmented sieve; memory stays O(sqrt(hi) + segment).
template <class F>
void for_each_prime(std::uint64_t lo, std::uint64_t hi, F&& f);

/// j-th prime, 1-based (p_1 = 2).
std::uint64_t nth_prime(int j);

bool is_prime(std::uint64_t n);

/// Binary cache of base primes: 8-byte magic "MPPRIMES" then little-endian
/// uint64 primes in increasing order. The file covers every prime up to its
/// last entry.
class PrimeTable {
 public:
  PrimeTable() = default;
  explicit PrimeTable(std::vector<std::uint64_t> primes) : primes_(std::move(primes)) {}

  static PrimeTable build(std::uint64_t limit);
  static PrimeTable load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  [[nodiscard]] const std::vector<std::uint64_t>& primes() const { return primes_; }
  [[nodiscard]] std::uint64_t covered_limit() const { return primes_.empty() ? 1 : primes_.back(); }

 private:
  std::vector<std::uint64_t> primes_;
};

/// Path from MEDIANPRIME_PRIME_TABLE when set and non-empty.
std::optional<std::filesystem::path> table_path_from_env();

/// Primes <= limit, read from the table at `path` when it covers the limit,
/// otherwise sieved.
std::vector<std::uint64_t> base_primes(std::uint64_t limit,
                                       const std::optional<std::filesystem::path>& path = std::nullopt);

// ---------------------------------------------------------------------------

namespace detail {
void sieve_segment(std::uint64_t lo, std::uint64_t hi, const std::vector<std::uint64_t>& base,
                   std::vector<std::uint8_t>& composite);
}

template <class F>
void for_each_prime(std::uint64_t lo, std::uint64_t hi, F&& f) {
  if (hi < 2 || lo > hi) return;
  if (lo < 2) lo = 2;
  std::uint64_t r = 1;
  while ((r + 1) * (r + 1) <= hi) ++r;
  const std::vector<std::uint64_t> base = sieve_primes(r);
  constexpr std::uint64_t kSegment = 1u << 20;
  std::vector<std::uint8_t> composite;
  for (std::uint64_t seg = lo; seg <= hi;) {
    const std::uint64_t end = (hi - seg >= kSegment) ? seg + kSegment - 1 : hi;
    detail::sieve_segment(seg, end, base, composite);
    for (std::uint64_t i = 0; i <= end - seg; ++i)
      if (!composite[i]) f(seg + i);
    if (end == hi) break;
    seg = end + 1;
  }
}

}  // namespace medianprime::primes
