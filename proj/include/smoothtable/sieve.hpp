#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "smoothtable/bigint.hpp"

namespace smoothtable {

// Largest supported sieve size; sqrt(x) <= 2^31 keeps pairwise products in 64 bits.
inline constexpr std::uint64_t kSieveCeiling = std::uint64_t{1} << 31;

struct PrimePower {
  std::uint64_t prime;
  std::uint32_t exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Ascending primes with positive exponents; empty means 1.
using Factorization = std::vector<PrimePower>;

// Smallest-prime-factor table over [0, limit]. Immutable once built.
class SpfTable {
 public:
  explicit SpfTable(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }

  // spf(1) == 1, matching P(1) = 1.
  std::uint32_t spf(std::uint64_t n) const;

  std::span<const std::uint32_t> primes() const { return primes_; }

  // Ascending primes p <= bound; bound may exceed limit only if every prime
  // up to bound is already in the table, so callers pass min(bound, limit).
  std::span<const std::uint32_t> primes_up_to(std::uint64_t bound) const;

  std::uint64_t prime_count(std::uint64_t x) const;

  bool is_prime(std::uint64_t n) const;

 private:
  void check_range(std::uint64_t n, const char* what) const;

  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

SpfTable build_spf(std::uint64_t limit);

Factorization factorize(std::uint64_t n, const SpfTable& table);

std::uint64_t prime_count(std::uint64_t x, const SpfTable& table);

// Product of the prime powers. multiply_out_u64 throws RangeError on overflow.
BigInt multiply_out(const Factorization& f);
std::uint64_t multiply_out_u64(const Factorization& f);

}  // namespace smoothtable
