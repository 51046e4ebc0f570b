#include "smoothtable/params.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "smoothtable/asymptotics.hpp"
#include "smoothtable/errors.hpp"

namespace smoothtable {

namespace {

Theorem1Params from_log_x(double log_x, std::uint64_t y, const SpfTable& table) {
  if (y < 3) throw DomainError("theorem1_params: requires y >= 3");
  const double ly = std::log(static_cast<double>(y));
  if (log_x < ly) throw ArgumentError("theorem1_params: requires x >= y");
  const double log3 = iterated_log(static_cast<double>(y), 3);
  if (!(log3 > 0.0)) {
    throw DomainError(fmt::format("theorem1_params: eta = 1/log_3 y needs log_3 y > 0, i.e. y > e^e (got y={})", y));
  }
  Theorem1Params p{};
  p.y = y;
  p.log_x = log_x;
  p.u = log_x / ly;
  p.eta = 1.0 / log3;
  p.N = static_cast<int>(std::floor((std::log(ly) - std::log(p.eta)) / std::log(2.0) + 2.0));
  if (p.N < 1) throw DomainError(fmt::format("theorem1_params: N = {} < 1 for y={}", p.N, y));
  p.kappa = p.eta / (2.0 * p.N);
  if (!(p.kappa < 1.0)) {
    throw DomainError(fmt::format("theorem1_params: kappa = {} >= 1 leaves empty intervals for y={}", p.kappa, y));
  }
  p.alpha = saddle_alpha_log(log_x, y, table).alpha;
  p.Y = std::pow(static_cast<double>(y), 1.0 - p.alpha);
  return p;
}

// Largest integer v with v^{2^i} <= y^{2^i - 1}.
std::uint64_t exact_upper(std::uint64_t y, int i) {
  const unsigned long e = 1ul << i;
  const BigInt rhs = pow_big(to_big(y), e - 1);
  auto v = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<long double>(y), 1.0L - 1.0L / e)));
  while (v > 0 && pow_big(to_big(v), e) > rhs) --v;
  while (pow_big(to_big(v + 1), e) <= rhs) ++v;
  return v;
}

}  // namespace

Theorem1Params theorem1_params(std::uint64_t x, std::uint64_t y, const SpfTable& table) {
  return from_log_x(std::log(static_cast<double>(x)), y, table);
}

Theorem1Params theorem1_params(const BigInt& x, std::uint64_t y, const SpfTable& table) {
  if (sgn(x) <= 0) throw ArgumentError("theorem1_params: x must be positive");
  return from_log_x(static_cast<double>(log_big(x)), y, table);
}

PrimeInterval make_interval(double lo, double hi) {
  if (!(lo <= hi)) throw ArgumentError(fmt::format("interval: requires lo <= hi (got [{}, {}])", lo, hi));
  const double first = std::ceil(std::max(lo, 0.0));
  const double last = std::floor(std::max(hi, 0.0));
  return {lo, hi, static_cast<std::uint64_t>(first), static_cast<std::uint64_t>(last)};
}

IntervalFamily interval_family(std::uint64_t y, const Theorem1Params& params) {
  if (params.y != y) {
    throw ArgumentError(fmt::format("interval_family: params computed for y={}, not {}", params.y, y));
  }
  IntervalFamily family{params, {}, {}};
  const long double shrink = 1.0L - params.kappa;
  for (int i = 1; i <= params.N; ++i) {
    const long double hi = std::pow(static_cast<long double>(y), 1.0L - std::ldexp(1.0L, -i));
    const long double lo = shrink * hi;
    PrimeInterval J{static_cast<double>(lo), static_cast<double>(hi),
                    static_cast<std::uint64_t>(std::ceil(lo)), exact_upper(y, i)};
    family.narrow.push_back(J);
  }
  const long double tail_lo = shrink * static_cast<long double>(y);
  family.tail = {static_cast<double>(tail_lo), static_cast<double>(y),
                 static_cast<std::uint64_t>(std::ceil(tail_lo)), y};
  return family;
}

Theorem2Params theorem2_params(std::uint64_t x, std::uint64_t y, double lambda) {
  if (!(lambda > kLambdaLow && lambda < kLambdaHigh)) {
    throw ArgumentError(fmt::format("theorem2_params: lambda={} outside (1 - 2 log 2, 1 - log 2)", lambda));
  }
  if (!(lambda > 0.0)) {
    throw ArgumentError(fmt::format("theorem2_params: lambda={} leaves log log z undefined or negative", lambda));
  }
  if (!(x >= y && y >= 2)) throw ArgumentError("theorem2_params: requires x >= y >= 2");
  Theorem2Params p{};
  p.lambda = lambda;
  p.u = std::log(static_cast<double>(x)) / std::log(static_cast<double>(y));
  p.log_log_z = std::log(2.0) / lambda * p.u;
  const double log_z = std::exp(p.log_log_z);
  if (log_z <= 63.0 * std::log(2.0)) {
    p.z = static_cast<std::uint64_t>(std::floor(std::exp(log_z)));
  }
  p.H = (1.0 - lambda) / std::log(2.0);
  p.L_cap = static_cast<std::int64_t>(std::floor(p.H * p.log_log_z));
  p.G = growth_exponent(p.H);
  return p;
}

double growth_exponent(double H) {
  if (!(H > 0.0)) throw ArgumentError("growth_exponent: H must be positive");
  return 1.0 + H * std::log(H) - H;
}

double dichotomy_threshold(std::uint64_t x, std::uint64_t y) {
  if (y < 3) throw DomainError("dichotomy_threshold: log_2 y > 0 requires y >= 3");
  if (x < 1) throw ArgumentError("dichotomy_threshold: x must be positive");
  const double ly = std::log(static_cast<double>(y));
  const double u = std::log(static_cast<double>(x)) / ly;
  return u - kDichotomySlope * std::log(ly);
}

}  // namespace smoothtable
