#include "smoothtable/smooth.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "smoothtable/errors.hpp"

namespace smoothtable {

namespace {

// Number of m <= bound built from primes[start..] (m = 1 included).
// Once p^2 > bound only m = 1 or m = p remain for each later prime p.
std::uint64_t count_from(std::span<const std::uint32_t> primes, std::uint64_t bound, std::size_t start) {
  std::uint64_t total = 1;
  for (std::size_t i = start; i < primes.size(); ++i) {
    const std::uint64_t p = primes[i];
    if (p > bound) break;
    if (p > bound / p) {
      const auto last = std::upper_bound(primes.begin() + i, primes.end(), bound);
      total += static_cast<std::uint64_t>(last - (primes.begin() + i));
      break;
    }
    total += count_from(primes, bound / p, i);
  }
  return total;
}

void add_at(std::vector<std::uint64_t>& hist, std::size_t k, std::uint64_t count) {
  if (hist.size() <= k) hist.resize(k + 1, 0);
  hist[k] += count;
}

// N_k histogram walk: primes <= z add one to Omega_z, larger ones add nothing.
void nk_from(std::span<const std::uint32_t> primes, std::size_t small_end, std::uint64_t bound,
             std::size_t start, std::uint32_t omega, std::vector<std::uint64_t>& hist) {
  add_at(hist, omega, 1);
  for (std::size_t i = start; i < primes.size(); ++i) {
    const std::uint64_t p = primes[i];
    if (p > bound) break;
    if (p > bound / p) {
      const std::size_t last =
          static_cast<std::size_t>(std::upper_bound(primes.begin() + i, primes.end(), bound) - primes.begin());
      const std::size_t small_hi = std::clamp(small_end, i, last);
      if (small_hi > i) add_at(hist, omega + 1, small_hi - i);
      if (last > small_hi) add_at(hist, omega, last - small_hi);
      break;
    }
    nk_from(primes, small_end, bound / p, i, omega + (i < small_end ? 1 : 0), hist);
  }
}

void check_order(std::uint64_t x, std::uint64_t y, std::uint64_t z, const char* what) {
  if (!(x >= y && y >= z && z >= 2)) {
    throw ArgumentError(fmt::format("{}: requires x >= y >= z >= 2 (got x={}, y={}, z={})", what, x, y, z));
  }
}

}  // namespace

std::span<const std::uint32_t> smooth_primes(std::uint64_t x, std::uint64_t y, const SpfTable& table) {
  const std::uint64_t bound = std::min(x, y);
  if (bound < 2) return {};
  if (bound > table.limit()) {
    throw RangeError(fmt::format("smoothness bound {} exceeds sieve limit {}", bound, table.limit()));
  }
  return table.primes_up_to(bound);
}

std::uint64_t largest_prime_factor(std::uint64_t n, const SpfTable& table) {
  if (n == 0) throw RangeError("largest_prime_factor: n must be positive");
  const Factorization f = factorize(n, table);
  return f.empty() ? 1 : f.back().prime;
}

SmoothSet enumerate_smooth(std::uint64_t x, std::uint64_t y, const SpfTable& table) {
  if (x < 1 || y < 1) throw ArgumentError("enumerate_smooth: x and y must be positive");
  SmoothSet set{x, y, {}};
  for_each_smooth(x, y, table, [&](std::uint64_t n, const Factorization& f) {
    set.members.push_back({n, f});
  });
  std::sort(set.members.begin(), set.members.end(),
            [](const SmoothMember& a, const SmoothMember& b) { return a.n < b.n; });
  return set;
}

std::vector<std::uint64_t> smooth_values(std::uint64_t x, std::uint64_t y, const SpfTable& table) {
  std::vector<std::uint64_t> out;
  for_each_smooth(x, y, table, [&](std::uint64_t n, const Factorization&) { out.push_back(n); });
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t psi_exact(std::uint64_t x, std::uint64_t y, const SpfTable& table) {
  if (x < 1 || y < 1) throw ArgumentError("psi_exact: x and y must be positive");
  return count_from(smooth_primes(x, y, table), x, 0);
}

std::uint64_t theta_exact(std::uint64_t x, std::uint64_t y, std::uint64_t z, const SpfTable& table) {
  check_order(x, y, z, "theta_exact");
  const auto primes = smooth_primes(x, y, table);
  const auto first = std::lower_bound(primes.begin(), primes.end(), z);
  return count_from(primes.subspan(static_cast<std::size_t>(first - primes.begin())), x, 0);
}

std::uint32_t omega_truncated(const Factorization& f, std::uint64_t z) {
  std::uint32_t total = 0;
  for (const auto& [p, v] : f) {
    if (p > z) break;
    total += v;
  }
  return total;
}

std::uint32_t omega_truncated(std::uint64_t n, std::uint64_t z, const SpfTable& table) {
  if (z < 2) throw ArgumentError("omega_truncated: z must be at least 2");
  return omega_truncated(factorize(n, table), z);
}

std::vector<std::uint64_t> omega_histogram(std::uint64_t x, const SpfTable& table) {
  if (x < 1) throw ArgumentError("omega_histogram: x must be positive");
  if (x > table.limit()) {
    throw RangeError(fmt::format("omega_histogram: {} exceeds sieve limit {}", x, table.limit()));
  }
  // omega(n) = omega(n / spf^v) + 1, filled in increasing n.
  std::vector<std::uint8_t> omega(x + 1, 0);
  std::vector<std::uint64_t> hist(1, 1);
  for (std::uint64_t n = 2; n <= x; ++n) {
    const std::uint32_t p = table.spf(n);
    std::uint64_t m = n / p;
    while (m % p == 0) m /= p;
    omega[n] = static_cast<std::uint8_t>(omega[m] + 1);
    add_at(hist, omega[n], 1);
  }
  return hist;
}

std::uint64_t count_by_omega(std::uint64_t x, std::uint32_t k, const SpfTable& table) {
  const auto hist = omega_histogram(x, table);
  return k < hist.size() ? hist[k] : 0;
}

std::vector<std::uint64_t> nk_histogram(std::uint64_t x, std::uint64_t y, std::uint64_t z,
                                        const SpfTable& table) {
  check_order(x, y, z, "nk_exact");
  const auto primes = smooth_primes(x, y, table);
  const auto small_end =
      static_cast<std::size_t>(std::upper_bound(primes.begin(), primes.end(), z) - primes.begin());
  std::vector<std::uint64_t> hist;
  nk_from(primes, small_end, x, 0, 0, hist);
  return hist;
}

std::uint64_t nk_exact(std::uint64_t x, std::uint64_t y, std::uint64_t z, std::uint32_t k,
                       const SpfTable& table) {
  const auto hist = nk_histogram(x, y, z, table);
  return k < hist.size() ? hist[k] : 0;
}

std::uint64_t divisor_count_in(const Factorization& f, long double a, long double b) {
  if (!(a < b)) throw ArgumentError("divisor_count_in: requires a < b");
  std::uint64_t count = 0;
  auto walk = [&](auto&& self, std::size_t i, std::uint64_t d) -> void {
    if (i == f.size()) {
      const auto v = static_cast<long double>(d);
      if (v > a && v <= b) ++count;
      return;
    }
    std::uint64_t q = d;
    for (std::uint32_t e = 0; e <= f[i].exponent; ++e) {
      self(self, i + 1, q);
      if (e < f[i].exponent) q *= f[i].prime;
    }
  };
  walk(walk, 0, 1);
  return count;
}

std::uint64_t divisor_count_in(std::uint64_t n, long double a, long double b, const SpfTable& table) {
  if (n < 1) throw ArgumentError("divisor_count_in: n must be positive");
  return divisor_count_in(factorize(n, table), a, b);
}

}  // namespace smoothtable
