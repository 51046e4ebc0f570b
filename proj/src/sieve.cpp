#include "smoothtable/sieve.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "smoothtable/errors.hpp"

namespace smoothtable {

SpfTable::SpfTable(std::uint64_t limit) : limit_(limit) {
  if (limit < 2 || limit > kSieveCeiling) {
    throw ConfigError(fmt::format("sieve limit {} outside [2, {}]", limit, kSieveCeiling));
  }
  // Linear sieve: every composite is struck exactly once by its smallest prime.
  spf_.assign(limit + 1, 0);
  spf_[1] = 1;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    const std::uint32_t s = spf_[i];
    for (std::uint32_t p : primes_) {
      if (p > s || i * p > limit) break;
      spf_[i * p] = p;
    }
  }
}

void SpfTable::check_range(std::uint64_t n, const char* what) const {
  if (n > limit_) {
    throw RangeError(fmt::format("{}: {} exceeds sieve limit {}", what, n, limit_));
  }
}

std::uint32_t SpfTable::spf(std::uint64_t n) const {
  check_range(n, "spf");
  if (n == 0) throw RangeError("spf: 0 has no smallest prime factor");
  return spf_[n];
}

std::span<const std::uint32_t> SpfTable::primes_up_to(std::uint64_t bound) const {
  check_range(bound, "primes_up_to");
  auto end = std::upper_bound(primes_.begin(), primes_.end(), bound);
  return {primes_.data(), static_cast<std::size_t>(end - primes_.begin())};
}

std::uint64_t SpfTable::prime_count(std::uint64_t x) const { return primes_up_to(x).size(); }

bool SpfTable::is_prime(std::uint64_t n) const {
  check_range(n, "is_prime");
  return n >= 2 && spf_[n] == n;
}

SpfTable build_spf(std::uint64_t limit) { return SpfTable(limit); }

Factorization factorize(std::uint64_t n, const SpfTable& table) {
  if (n == 0) throw RangeError("factorize: n must be positive");
  if (n > table.limit()) {
    throw RangeError(fmt::format("factorize: {} exceeds sieve limit {}", n, table.limit()));
  }
  Factorization f;
  while (n > 1) {
    const std::uint32_t p = table.spf(n);
    std::uint32_t v = 0;
    while (n % p == 0) {
      n /= p;
      ++v;
    }
    f.push_back({p, v});
  }
  return f;
}

std::uint64_t prime_count(std::uint64_t x, const SpfTable& table) { return table.prime_count(x); }

BigInt multiply_out(const Factorization& f) {
  BigInt r = 1;
  for (const auto& [p, v] : f) r *= pow_big(to_big(p), v);
  return r;
}

std::uint64_t multiply_out_u64(const Factorization& f) {
  std::uint64_t r = 1;
  for (const auto& [p, v] : f) {
    for (std::uint32_t i = 0; i < v; ++i) {
      if (__builtin_mul_overflow(r, p, &r)) throw RangeError("factorization value overflows 64 bits");
    }
  }
  return r;
}

}  // namespace smoothtable
