#pragma once

// Brute-force reference implementations. Everything here is trial division and
// direct enumeration, independent of the sieve and DFS code under test.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_set>
#include <utility>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

inline std::vector<std::pair<u64, unsigned>> factor(u64 n) {
  std::vector<std::pair<u64, unsigned>> f;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

inline bool is_prime(u64 n) { return n >= 2 && factor(n).size() == 1 && factor(n)[0].second == 1; }

inline u64 largest_prime(u64 n) { return n == 1 ? 1 : factor(n).back().first; }

inline u64 smallest_prime(u64 n) { return n == 1 ? 1 : factor(n).front().first; }

// Precomputed trial-division factorizations of 1..limit.
class Table {
 public:
  explicit Table(u64 limit) : f_(limit + 1) {
    for (u64 n = 1; n <= limit; ++n) f_[n] = factor(n);
  }
  const std::vector<std::pair<u64, unsigned>>& operator[](u64 n) const { return f_[n]; }
  u64 P(u64 n) const { return n == 1 ? 1 : f_[n].back().first; }
  u64 p(u64 n) const { return n == 1 ? 1 : f_[n].front().first; }

 private:
  std::vector<std::vector<std::pair<u64, unsigned>>> f_;
};

inline u64 pi(u64 x) {
  u64 c = 0;
  for (u64 n = 2; n <= x; ++n) c += is_prime(n);
  return c;
}

inline u64 psi(const Table& t, u64 x, u64 y) {
  u64 c = 0;
  for (u64 n = 1; n <= x; ++n) c += t.P(n) <= y;
  return c;
}

inline u64 theta(const Table& t, u64 x, u64 y, u64 z) {
  u64 c = 0;
  for (u64 n = 1; n <= x; ++n) c += (n == 1) || (t.P(n) <= y && t.p(n) >= z);
  return c;
}

inline unsigned omega_z(const Table& t, u64 n, u64 z) {
  unsigned c = 0;
  for (auto [p, e] : t[n]) {
    if (p <= z) c += e;
  }
  return c;
}

inline u64 nk(const Table& t, u64 x, u64 y, u64 z, unsigned k) {
  u64 c = 0;
  for (u64 n = 1; n <= x; ++n) c += t.P(n) <= y && omega_z(t, n, z) == k;
  return c;
}

inline u64 pik(const Table& t, u64 x, unsigned k) {
  u64 c = 0;
  for (u64 n = 1; n <= x; ++n) c += t[n].size() == k;
  return c;
}

inline u64 tau(u64 n, long double a, long double b) {
  u64 c = 0;
  for (u64 d = 1; d <= n; ++d) c += n % d == 0 && a < d && d <= b;
  return c;
}

inline u64 isqrt(u64 x) {
  u64 r = 0;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

inline u64 table_census(u64 x, bool coprime = false) {
  const u64 r = isqrt(x);
  std::unordered_set<u64> seen;
  for (u64 a = 1; a <= r; ++a) {
    for (u64 b = 1; b <= r; ++b) {
      if (!coprime || std::gcd(a, b) == 1) seen.insert(a * b);
    }
  }
  return seen.size();
}

inline u64 smooth_census(u64 x, u64 y) {
  const u64 r = isqrt(x);
  std::vector<u64> s;
  for (u64 n = 1; n <= r; ++n) {
    if (largest_prime(n) <= y) s.push_back(n);
  }
  std::unordered_set<u64> seen;
  for (u64 a : s) {
    for (u64 b : s) seen.insert(a * b);
  }
  return seen.size();
}

}  // namespace oracle
