#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "smoothtable/bigint.hpp"
#include "smoothtable/params.hpp"
#include "smoothtable/sieve.hpp"

namespace smoothtable {

// Index into {1..N, inf}.
struct IntervalIndex {
  int i = 0;  // 1-based narrow index; ignored for the tail
  bool tail = false;

  static IntervalIndex narrow(int i) { return {i, false}; }
  static IntervalIndex infinity() { return {0, true}; }
};

// Distinct primes p | n with p in the closed interval.
std::uint32_t omega_in_interval(const Factorization& f, const PrimeInterval& J);
std::uint32_t omega_in_interval(std::uint64_t n, double lo, double hi, const SpfTable& table);

// mu_J(x, y) = (1/Psi) sum_{n in S(x,y)} omega_J(n), exact.
Rational mu_exact(std::uint64_t x, std::uint64_t y, const PrimeInterval& J, const SpfTable& table);
Rational mu_exact(std::uint64_t x, std::uint64_t y, double lo, double hi, const SpfTable& table);

// The same mean by swapping the sums: sum_{p in J} Psi(x/p, y) / Psi(x, y).
Rational mu_by_primes(std::uint64_t x, std::uint64_t y, const PrimeInterval& J, const SpfTable& table);

// Population variance (1/Psi) sum (omega_J(n) - mu)^2, exact.
Rational sigma2_exact(std::uint64_t x, std::uint64_t y, const PrimeInterval& J, const SpfTable& table);
Rational sigma2_exact(std::uint64_t x, std::uint64_t y, double lo, double hi, const SpfTable& table);

struct IntervalStats {
  IntervalIndex index;
  PrimeInterval interval;
  Rational mu;
  Rational sigma2;
  // Fraction with omega <= mu/2, and 4 sigma^2 / mu^2. Absent when mu = 0.
  std::optional<Rational> cheb_lhs;
  std::optional<Rational> cheb_rhs;
  double mu_estimate;

  bool degenerate() const { return !cheb_lhs.has_value(); }
};

struct ChebyshevReport {
  std::uint64_t population;
  std::vector<IntervalStats> intervals;  // J_1..J_N then J_inf
  // Fraction of S(x, y) with omega_i > mu_i / 2 on every non-degenerate interval,
  // and the union lower bound 1 - sum cheb_rhs it must respect.
  Rational all_good_fraction;
  Rational union_bound;
};

ChebyshevReport chebyshev_check(std::uint64_t x, std::uint64_t y, const IntervalFamily& family,
                                const SpfTable& table);

struct MuShift {
  Rational mu;       // mu_J(x, y)
  Rational mu_q;     // mu_J(x/q, y)
  double ratio;      // |mu_q - mu| u / mu
  double alpha_gap;  // (alpha - alpha_q) log y log x / log q; NaN when degenerate
  bool degenerate;   // floor(x/q) < 2 leaves S(x/q, y) = {1}
};

MuShift mu_shift_check(std::uint64_t x, std::uint64_t y, std::uint64_t q, const PrimeInterval& J,
                       const SpfTable& table);

// kappa Y^{1 - 2^{-i}} / log y, exponent 1 for the tail.
double mu_estimate(const Theorem1Params& params, IntervalIndex index);

}  // namespace smoothtable
