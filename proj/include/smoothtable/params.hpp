#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "smoothtable/bigint.hpp"
#include "smoothtable/sieve.hpp"

namespace smoothtable {

// Parameters of the interval construction. Logs are natural; log_2 and log_3
// are iterated logarithms.
struct Theorem1Params {
  std::uint64_t y;
  double log_x;
  double u;
  double eta;    // 1 / log_3 y
  int N;         // floor((log_2 y - log eta) / log 2 + 2)
  double kappa;  // eta / (2N)
  double alpha;  // saddle point alpha(x, y)
  double Y;      // y^{1 - alpha}

  // 4N <= u, needed by the divisor construction.
  bool construction_range() const { return 4.0 * N <= u; }
  // (1 - eta) x > 0 only when eta < 1, i.e. y > e^{e^e}.
  bool eta_below_one() const { return eta < 1.0; }
};

Theorem1Params theorem1_params(std::uint64_t x, std::uint64_t y, const SpfTable& table);
Theorem1Params theorem1_params(const BigInt& x, std::uint64_t y, const SpfTable& table);

// Closed real interval [lo, hi] together with the integers it contains.
struct PrimeInterval {
  double lo;
  double hi;
  std::uint64_t first;  // ceil(lo)
  std::uint64_t last;   // floor(hi)

  bool contains(std::uint64_t p) const { return p >= first && p <= last; }
};

PrimeInterval make_interval(double lo, double hi);

// J_1..J_N and J_inf = [(1 - kappa) y, y].
struct IntervalFamily {
  Theorem1Params params;
  std::vector<PrimeInterval> narrow;
  PrimeInterval tail;
};

// Upper ends y^{1 - 2^{-i}} are resolved exactly: last = max{p : p^{2^i} <= y^{2^i - 1}}.
IntervalFamily interval_family(std::uint64_t y, const Theorem1Params& params);

struct Theorem2Params {
  double lambda;
  double u;
  double log_log_z;             // (log 2 / lambda) u
  std::optional<std::uint64_t> z;  // materialized only when z <= 2^63
  double H;                     // (1 - lambda) / log 2
  std::int64_t L_cap;           // floor(H log_2 z)
  double G;                     // 1 + H log H - H
};

inline constexpr double kLambdaLow = 1.0 - 2.0 * 0.69314718055994530942;
inline constexpr double kLambdaHigh = 1.0 - 0.69314718055994530942;

// lambda must lie in (0, 1 - log 2): lambda <= 0 leaves log log z undefined or negative.
Theorem2Params theorem2_params(std::uint64_t x, std::uint64_t y, double lambda);

// G(H) = 1 + H log H - H.
double growth_exponent(double H);

// L = (1 - log 2) / log 2.
inline constexpr double kDichotomySlope = (1.0 - 0.69314718055994530942) / 0.69314718055994530942;

// u - L log_2 y; positive means the conjectured A ~ Psi regime.
double dichotomy_threshold(std::uint64_t x, std::uint64_t y);

}  // namespace smoothtable
