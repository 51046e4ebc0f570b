#include "smoothtable/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include <fmt/format.h>

#include "smoothtable/errors.hpp"

namespace smoothtable {

namespace {

// On (k-1, k] write rho(u) = sum_i c_i z^i with z = k - u. The delay equation gives
// c_{i+1} = (d_i + i c_i) / (k (i + 1)) from the previous interval's coefficients d,
// and u rho(u) = int_{u-1}^{u} rho at u = k fixes c_0 = sum_{i>=1} c_i / ((i + 1)(k - 1)).
// Every term is positive, so the values keep full relative precision.
class RhoTable {
 public:
  static constexpr int kTerms = 90;
  static constexpr int kMaxK = 200;  // rho(200) is far below the double range

  RhoTable() : coeffs_(kMaxK + 1, std::vector<long double>(kTerms, 0.0L)) {
    coeffs_[1][0] = 1.0L;
    for (int k = 2; k <= kMaxK; ++k) {
      const auto& d = coeffs_[k - 1];
      auto& c = coeffs_[k];
      const long double kk = k;
      long double tail = 0.0L;
      for (int i = 0; i + 1 < kTerms; ++i) {
        c[i + 1] = (d[i] + i * c[i]) / (kk * (i + 1));
        tail += c[i + 1] / (i + 2);
      }
      c[0] = tail / (kk - 1);
    }
  }

  double operator()(double u) const {
    if (u <= 1.0) return 1.0;
    if (u > kMaxK) return 0.0;
    const int k = static_cast<int>(std::ceil(u));
    const long double z = static_cast<long double>(k) - u;
    const auto& c = coeffs_[k];
    long double v = 0.0L;
    for (int i = kTerms - 1; i >= 0; --i) v = v * z + c[i];
    return static_cast<double>(v);
  }

 private:
  std::vector<std::vector<long double>> coeffs_;
};

const RhoTable& rho_table() {
  static const RhoTable table;
  return table;
}

// Positive root of g(xi) = xi - log(1 + t xi); g is convex with g(0) = 0.
double xi_root(double t) {
  auto g = [t](double v) { return v - std::log1p(t * v); };
  auto dg = [t](double v) { return 1.0 - t / (1.0 + t * v); };

  double lo = std::min(1e-9, 0.5 * (t - 1.0));
  while (g(lo) >= 0.0 && lo > 1e-300) lo *= 0.5;
  const double tlogt = t * std::log(t);
  double hi = tlogt > 1.0 ? std::max(10.0, 2.0 * std::log(tlogt) + 10.0) : 10.0;
  while (g(hi) <= 0.0) hi *= 2.0;

  double v = tlogt > 1.0 ? std::clamp(std::log(tlogt), lo, hi) : 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double gv = g(v);
    if (gv == 0.0) return v;
    (gv < 0.0 ? lo : hi) = v;
    double next = v - gv / dg(v);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - v) <= 4e-16 * std::abs(next)) return next;
    v = next;
  }
  return v;
}

// Sum over p <= y of log p / (p^alpha - 1) and its alpha-derivative.
struct SaddleSum {
  long double value;
  long double slope;
};

SaddleSum saddle_sum(const std::vector<long double>& logs, long double alpha, bool with_slope) {
  SaddleSum s{0.0L, 0.0L};
  for (long double lp : logs) {
    const long double em = std::expm1(alpha * lp);
    s.value += lp / em;
    if (with_slope) s.slope -= lp * lp * (em + 1.0L) / (em * em);
  }
  return s;
}

}  // namespace

double iterated_log(double v, int k) {
  for (int i = 0; i < k; ++i) v = std::log(v);
  return v;
}

double dickman_rho(double u) {
  if (!(u >= 0.0)) throw ArgumentError(fmt::format("dickman_rho: u must be nonnegative (got {})", u));
  return rho_table()(u);
}

double xi_solve(double t) {
  if (!(t > 1.0)) throw DomainError(fmt::format("xi_solve: t must exceed 1 (got {})", t));
  return xi_root(t);
}

RhoXiEval rho_xi(double u) { return {u, dickman_rho(u), u > 1.0 ? xi_solve(u) : 0.0}; }

SaddleResult saddle_alpha(std::uint64_t x, std::uint64_t y, const SpfTable& table) {
  if (!(x >= y && y >= 2)) {
    throw ArgumentError(fmt::format("saddle_alpha: requires x >= y >= 2 (got x={}, y={})", x, y));
  }
  return saddle_alpha_log(std::log(static_cast<double>(x)), y, table);
}

SaddleResult saddle_alpha_log(double log_x, std::uint64_t y, const SpfTable& table) {
  if (!(log_x > 0.0) || y < 2) throw ArgumentError("saddle_alpha: requires log x > 0 and y >= 2");
  if (y > table.limit()) {
    throw RangeError(fmt::format("saddle_alpha: y={} exceeds sieve limit {}", y, table.limit()));
  }
  std::vector<long double> logs;
  for (std::uint32_t p : table.primes_up_to(y)) logs.push_back(std::log(static_cast<long double>(p)));
  const long double target = log_x;
  auto f = [&](long double a) { return saddle_sum(logs, a, false).value - target; };

  // f decreases from +inf at 0+ to -log x as alpha grows.
  long double lo = 1e-12L;
  long double hi = 1.0L;
  int iterations = 0;
  while (f(hi) > 0.0L) {
    lo = hi;
    hi *= 2.0L;
    if (++iterations > 200) throw SolverError("saddle_alpha: failed to bracket the root");
  }
  while (hi - lo > 0.05L * hi) {
    const long double mid = 0.5L * (lo + hi);
    (f(mid) > 0.0L ? lo : hi) = mid;
    ++iterations;
  }
  // Safeguarded Newton inside [lo, hi].
  long double a = 0.5L * (lo + hi);
  SaddleSum s = saddle_sum(logs, a, true);
  long double r = s.value - target;
  for (int i = 0; i < 100 && std::abs(r) > 1e-13L; ++i) {
    (r > 0.0L ? lo : hi) = a;
    long double next = a - r / s.slope;
    if (!(next > lo && next < hi)) next = 0.5L * (lo + hi);
    ++iterations;
    if (next == a) break;
    a = next;
    s = saddle_sum(logs, a, true);
    r = s.value - target;
  }
  if (std::abs(r) > kSaddleTolerance) {
    throw SolverError(fmt::format("saddle_alpha: residual {} above tolerance at alpha={} (log x={}, y={})",
                                  static_cast<double>(r), static_cast<double>(a), log_x, y));
  }
  return {static_cast<double>(a), static_cast<double>(r), iterations};
}

std::string_view to_string(AlphaRegime r) {
  switch (r) {
    case AlphaRegime::general: return "general";
    case AlphaRegime::large_y: return "large_y";
    case AlphaRegime::small_y: return "small_y";
  }
  return "general";
}

AlphaRegime parse_alpha_regime(std::string_view s) {
  if (s == "general") return AlphaRegime::general;
  if (s == "large_y") return AlphaRegime::large_y;
  if (s == "small_y") return AlphaRegime::small_y;
  throw ArgumentError(fmt::format("unknown alpha regime '{}'", s));
}

double alpha_asymptotic(std::uint64_t x, std::uint64_t y, AlphaRegime regime, double eps) {
  if (!(x >= y && y >= 2)) {
    throw ArgumentError(fmt::format("alpha_asymptotic: requires x >= y >= 2 (got x={}, y={})", x, y));
  }
  const double lx = std::log(static_cast<double>(x));
  const double ly = std::log(static_cast<double>(y));
  switch (regime) {
    case AlphaRegime::general:
      return std::log1p(static_cast<double>(y) / lx) / ly;
    case AlphaRegime::large_y: {
      if (!(lx > 1.0) || ly < (1.0 + eps) * std::log(lx)) {
        throw ArgumentError(fmt::format("alpha_asymptotic: large_y needs y >= (log x)^(1+{})", eps));
      }
      const double u = lx / ly;
      const double xi = u > 1.0 ? xi_solve(u) : 0.0;
      return 1.0 - xi / ly;
    }
    case AlphaRegime::small_y:
      if (static_cast<double>(y) > lx * lx) {
        throw ArgumentError("alpha_asymptotic: small_y needs y <= (log x)^2");
      }
      return std::log1p(static_cast<double>(y) / lx) / ly;
  }
  return 0.0;
}

PsiApprox psi_hildebrand(std::uint64_t x, std::uint64_t y, double eps) {
  if (y < 2 || x < 1) throw ArgumentError("psi_hildebrand: requires x >= 1 and y >= 2");
  const double xd = static_cast<double>(x);
  const double lx = std::log(xd);
  const double u = lx / std::log(static_cast<double>(y));
  bool in_range = x >= 3 && u >= 1.0;
  if (in_range) {
    const double llx = std::log(lx);
    in_range = llx > 0.0 && u <= lx / std::pow(llx, 5.0 / 3.0 + eps);
  }
  return {xd * dickman_rho(std::max(u, 0.0)), in_range};
}

PsiApprox psi_ennola(std::uint64_t x, std::uint64_t y, const SpfTable& table) {
  if (y < 2 || x < 2) throw ArgumentError("psi_ennola: requires x >= 2 and y >= 2");
  if (y > table.limit()) {
    throw RangeError(fmt::format("psi_ennola: y={} exceeds sieve limit {}", y, table.limit()));
  }
  const auto primes = table.primes_up_to(y);
  const long double lx = std::log(static_cast<long double>(x));
  long double log_value = -std::lgamma(static_cast<long double>(primes.size()) + 1.0L);
  for (std::uint32_t p : primes) log_value += std::log(lx / std::log(static_cast<long double>(p)));
  const double llx = std::log(static_cast<double>(lx));
  const bool in_range = llx > 0.0 && static_cast<double>(y) <= llx * llx;
  return {static_cast<double>(std::exp(log_value)), in_range};
}

double local_ratio(std::uint64_t d, double alpha) {
  if (d < 1) throw ArgumentError("local_ratio: d must be positive");
  return std::pow(static_cast<double>(d), -alpha);
}

double prime_alpha_sum(std::uint64_t z, double alpha, const SpfTable& table) {
  if (z < 2) throw ArgumentError("prime_alpha_sum: z must be at least 2");
  if (z > table.limit()) {
    throw RangeError(fmt::format("prime_alpha_sum: z={} exceeds sieve limit {}", z, table.limit()));
  }
  long double s = 0.0L;
  for (std::uint32_t p : table.primes_up_to(z)) s += std::pow(static_cast<long double>(p), -alpha);
  return static_cast<double>(s);
}

}  // namespace smoothtable
