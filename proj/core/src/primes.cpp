#include "medianprime/primes.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <cstring>
#include <fstream>

#include "medianprime/errors.hpp"

namespace medianprime::primes {

namespace {
constexpr std::array<char, 8> kMagic = {'M', 'P', 'P', 'R', 'I', 'M', 'E', 'S'};
}

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  out.push_back(2);
  // index i stands for 2i + 1
  const std::uint64_t half = (limit - 1) / 2;
  std::vector<bool> composite(half + 1, false);
  for (std::uint64_t i = 1; i <= half; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    out.push_back(p);
    for (std::uint64_t j = (p * p - 1) / 2; j <= half; j += p) composite[j] = true;
  }
  return out;
}

namespace detail {

void sieve_segment(std::uint64_t lo, std::uint64_t hi, const std::vector<std::uint64_t>& base,
                   std::vector<std::uint8_t>& composite) {
  composite.assign(hi - lo + 1, 0);
  for (std::uint64_t p : base) {
    if (p * p > hi) break;
    std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
    for (std::uint64_t m = start; m <= hi; m += p) composite[m - lo] = 1;
  }
}

}  // namespace detail

std::uint64_t nth_prime(int j) {
  if (j < 1) throw DomainError("prime index must be >= 1");
  std::uint64_t limit = 64;
  while (true) {
    auto ps = sieve_primes(limit);
    if (static_cast<int>(ps.size()) >= j) return ps[static_cast<std::size_t>(j - 1)];
    limit *= 2;
  }
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
    if (n % p == 0) return n == p;
  }
  for (std::uint64_t d = 11; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

PrimeTable PrimeTable::build(std::uint64_t limit) { return PrimeTable(sieve_primes(limit)); }

PrimeTable PrimeTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open prime table " + path.string());
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw DomainError("bad prime table header in " + path.string());
  std::vector<std::uint64_t> primes;
  std::array<unsigned char, 8> buf{};
  while (in.read(reinterpret_cast<char*>(buf.data()), buf.size())) {
    std::uint64_t v = 0;
    for (int b = 7; b >= 0; --b) v = (v << 8) | buf[static_cast<std::size_t>(b)];
    if (!primes.empty() && v <= primes.back())
      throw DomainError("prime table not strictly increasing: " + path.string());
    primes.push_back(v);
  }
  if (in.gcount() != 0) throw DomainError("truncated prime table " + path.string());
  return PrimeTable(std::move(primes));
}

void PrimeTable::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError("cannot write prime table " + path.string());
  out.write(kMagic.data(), kMagic.size());
  std::array<unsigned char, 8> buf{};
  for (std::uint64_t v : primes_) {
    for (std::size_t b = 0; b < 8; ++b) buf[b] = static_cast<unsigned char>(v >> (8 * b));
    out.write(reinterpret_cast<const char*>(buf.data()), buf.size());
  }
  if (!out) throw DomainError("write failed for prime table " + path.string());
}

std::optional<std::filesystem::path> table_path_from_env() {
  const char* v = std::getenv("MEDIANPRIME_PRIME_TABLE");
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::filesystem::path(v);
}

std::vector<std::uint64_t> base_primes(std::uint64_t limit, const std::optional<std::filesystem::path>& path) {
  if (path && std::filesystem::exists(*path)) {
    PrimeTable t = PrimeTable::load(*path);
    if (t.covered_limit() >= limit) {
      auto ps = t.primes();
      ps.erase(std::upper_bound(ps.begin(), ps.end(), limit), ps.end());
      return ps;
    }
  }
  return sieve_primes(limit);
}

}  // namespace medianprime::primes
