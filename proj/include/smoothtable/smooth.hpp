#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "smoothtable/sieve.hpp"

namespace smoothtable {

struct SmoothMember {
  std::uint64_t n;
  Factorization factors;
};

// S(x, y) with factorizations, ascending by n. members.size() == Psi(x, y).
struct SmoothSet {
  std::uint64_t x;
  std::uint64_t y;
  std::vector<SmoothMember> members;

  std::size_t size() const { return members.size(); }
};

// Primes needed to enumerate S(x, y); y is clipped to x since larger primes never occur.
std::span<const std::uint32_t> smooth_primes(std::uint64_t x, std::uint64_t y, const SpfTable& table);

// Depth-first walk over S(x, y) by ascending prime products. The visitor gets
// (n, factorization) for every member, including n = 1 with an empty list.
// Visit order is the DFS order, not numeric order.
template <class Visitor>
void for_each_smooth(std::uint64_t x, std::uint64_t y, const SpfTable& table, Visitor&& visit) {
  if (x == 0) return;
  const auto primes = smooth_primes(x, y, table);
  Factorization stack;
  auto walk = [&](auto&& self, std::uint64_t n, std::size_t start) -> void {
    visit(n, static_cast<const Factorization&>(stack));
    const std::uint64_t room = x / n;
    for (std::size_t i = start; i < primes.size() && primes[i] <= room; ++i) {
      const std::uint64_t p = primes[i];
      std::uint64_t m = n;
      stack.push_back({p, 0});
      while (m <= x / p) {
        m *= p;
        ++stack.back().exponent;
        self(self, m, i + 1);
      }
      stack.pop_back();
    }
  };
  walk(walk, 1, 0);
}

std::uint64_t largest_prime_factor(std::uint64_t n, const SpfTable& table);

SmoothSet enumerate_smooth(std::uint64_t x, std::uint64_t y, const SpfTable& table);

// Sorted member values of S(x, y) without factorizations.
std::vector<std::uint64_t> smooth_values(std::uint64_t x, std::uint64_t y, const SpfTable& table);

std::uint64_t psi_exact(std::uint64_t x, std::uint64_t y, const SpfTable& table);

// #{n <= x : every prime factor p of n has z <= p <= y}; n = 1 counts.
std::uint64_t theta_exact(std::uint64_t x, std::uint64_t y, std::uint64_t z, const SpfTable& table);

// Omega_z: exponents summed over primes p <= z.
std::uint32_t omega_truncated(const Factorization& f, std::uint64_t z);
std::uint32_t omega_truncated(std::uint64_t n, std::uint64_t z, const SpfTable& table);

// omega: number of distinct prime factors.
inline std::uint32_t omega_distinct(const Factorization& f) {
  return static_cast<std::uint32_t>(f.size());
}

// Entry k holds pi_k(x) = #{n <= x : omega(n) = k}.
std::vector<std::uint64_t> omega_histogram(std::uint64_t x, const SpfTable& table);
std::uint64_t count_by_omega(std::uint64_t x, std::uint32_t k, const SpfTable& table);

// Entry k holds N_k(x, y, z) = #{n in S(x, y) : Omega_z(n) = k}.
std::vector<std::uint64_t> nk_histogram(std::uint64_t x, std::uint64_t y, std::uint64_t z,
                                        const SpfTable& table);
std::uint64_t nk_exact(std::uint64_t x, std::uint64_t y, std::uint64_t z, std::uint32_t k,
                       const SpfTable& table);

// tau(n; a, b): divisors d of n with a < d <= b.
std::uint64_t divisor_count_in(const Factorization& f, long double a, long double b);
std::uint64_t divisor_count_in(std::uint64_t n, long double a, long double b, const SpfTable& table);

}  // namespace smoothtable
