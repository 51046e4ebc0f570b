#include "smoothtable/interval_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "smoothtable/asymptotics.hpp"
#include "smoothtable/errors.hpp"
#include "smoothtable/smooth.hpp"

namespace smoothtable {

namespace {

// Histogram of omega_J over S(x, y): entry k counts members with omega_J = k.
std::vector<std::uint64_t> omega_counts(std::uint64_t x, std::uint64_t y, const PrimeInterval& J,
                                        const SpfTable& table) {
  std::vector<std::uint64_t> counts(1, 0);
  for_each_smooth(x, y, table, [&](std::uint64_t, const Factorization& f) {
    const std::uint32_t w = omega_in_interval(f, J);
    if (counts.size() <= w) counts.resize(w + 1, 0);
    ++counts[w];
  });
  return counts;
}

std::uint64_t total(const std::vector<std::uint64_t>& counts) {
  std::uint64_t s = 0;
  for (auto c : counts) s += c;
  return s;
}

Rational mean_of(const std::vector<std::uint64_t>& counts) {
  BigInt sum = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) sum += to_big(counts[k]) * static_cast<unsigned long>(k);
  Rational mu(sum, to_big(total(counts)));
  mu.canonicalize();
  return mu;
}

Rational variance_of(const std::vector<std::uint64_t>& counts, const Rational& mu) {
  Rational acc = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) continue;
    const Rational dev = Rational(static_cast<unsigned long>(k)) - mu;
    acc += Rational(to_big(counts[k])) * dev * dev;
  }
  acc /= Rational(to_big(total(counts)));
  acc.canonicalize();
  return acc;
}

}  // namespace

std::uint32_t omega_in_interval(const Factorization& f, const PrimeInterval& J) {
  std::uint32_t w = 0;
  for (const auto& pp : f) {
    if (pp.prime > J.last) break;
    if (J.contains(pp.prime)) ++w;
  }
  return w;
}

std::uint32_t omega_in_interval(std::uint64_t n, double lo, double hi, const SpfTable& table) {
  return omega_in_interval(factorize(n, table), make_interval(lo, hi));
}

Rational mu_exact(std::uint64_t x, std::uint64_t y, const PrimeInterval& J, const SpfTable& table) {
  if (x < 1 || y < 1) throw ArgumentError("mu_exact: x and y must be positive");
  return mean_of(omega_counts(x, y, J, table));
}

Rational mu_exact(std::uint64_t x, std::uint64_t y, double lo, double hi, const SpfTable& table) {
  return mu_exact(x, y, make_interval(lo, hi), table);
}

Rational mu_by_primes(std::uint64_t x, std::uint64_t y, const PrimeInterval& J, const SpfTable& table) {
  const std::uint64_t psi = psi_exact(x, y, table);
  BigInt sum = 0;
  for (std::uint32_t p : smooth_primes(x, y, table)) {
    if (p > J.last) break;
    if (J.contains(p)) sum += to_big(psi_exact(x / p, y, table));
  }
  Rational mu(sum, to_big(psi));
  mu.canonicalize();
  return mu;
}

Rational sigma2_exact(std::uint64_t x, std::uint64_t y, const PrimeInterval& J, const SpfTable& table) {
  if (x < 1 || y < 1) throw ArgumentError("sigma2_exact: x and y must be positive");
  const auto counts = omega_counts(x, y, J, table);
  return variance_of(counts, mean_of(counts));
}

Rational sigma2_exact(std::uint64_t x, std::uint64_t y, double lo, double hi, const SpfTable& table) {
  return sigma2_exact(x, y, make_interval(lo, hi), table);
}

ChebyshevReport chebyshev_check(std::uint64_t x, std::uint64_t y, const IntervalFamily& family,
                                const SpfTable& table) {
  std::vector<PrimeInterval> intervals = family.narrow;
  intervals.push_back(family.tail);
  const std::size_t width = intervals.size();

  // omega_i(n) for every member, row-major by member.
  std::vector<std::uint8_t> omegas;
  std::vector<std::vector<std::uint64_t>> counts(width, std::vector<std::uint64_t>(1, 0));
  for_each_smooth(x, y, table, [&](std::uint64_t, const Factorization& f) {
    for (std::size_t i = 0; i < width; ++i) {
      const std::uint32_t w = omega_in_interval(f, intervals[i]);
      omegas.push_back(static_cast<std::uint8_t>(w));
      if (counts[i].size() <= w) counts[i].resize(w + 1, 0);
      ++counts[i][w];
    }
  });
  const std::uint64_t population = omegas.size() / width;

  ChebyshevReport report{population, {}, 0, 1};
  std::vector<Rational> half_mu(width);
  std::vector<bool> active(width, false);
  for (std::size_t i = 0; i < width; ++i) {
    const IntervalIndex index = i + 1 < width ? IntervalIndex::narrow(static_cast<int>(i + 1))
                                              : IntervalIndex::infinity();
    IntervalStats s{index, intervals[i], mean_of(counts[i]), 0, std::nullopt, std::nullopt,
                    mu_estimate(family.params, index)};
    s.sigma2 = variance_of(counts[i], s.mu);
    if (sgn(s.mu) > 0) {
      half_mu[i] = s.mu / 2;
      active[i] = true;
      std::uint64_t low = 0;
      for (std::size_t k = 0; k < counts[i].size(); ++k) {
        if (Rational(static_cast<unsigned long>(k)) <= half_mu[i]) low += counts[i][k];
      }
      Rational lhs(to_big(low), to_big(population));
      lhs.canonicalize();
      Rational rhs = 4 * s.sigma2 / (s.mu * s.mu);
      rhs.canonicalize();
      s.cheb_lhs = lhs;
      s.cheb_rhs = rhs;
      report.union_bound -= rhs;
    }
    report.intervals.push_back(std::move(s));
  }

  std::uint64_t good = 0;
  for (std::uint64_t m = 0; m < population; ++m) {
    bool all = true;
    for (std::size_t i = 0; i < width && all; ++i) {
      if (active[i]) all = Rational(static_cast<unsigned long>(omegas[m * width + i])) > half_mu[i];
    }
    if (all) ++good;
  }
  report.all_good_fraction = Rational(to_big(good), to_big(population));
  report.all_good_fraction.canonicalize();
  return report;
}

MuShift mu_shift_check(std::uint64_t x, std::uint64_t y, std::uint64_t q, const PrimeInterval& J,
                       const SpfTable& table) {
  if (q < 2 || q > y || q > table.limit() || !table.is_prime(q)) {
    throw PreconditionError(fmt::format("mu_shift_check: q={} must be a prime <= y={}", q, y));
  }
  MuShift out{};
  out.mu = mu_exact(x, y, J, table);
  if (sgn(out.mu) == 0) throw DomainError("mu_shift_check: mu_J(x, y) = 0, ratio undefined");
  const std::uint64_t xq = x / q;
  out.mu_q = mu_exact(xq, y, J, table);
  const double u = std::log(static_cast<double>(x)) / std::log(static_cast<double>(y));
  const double mu = out.mu.get_d();
  out.ratio = std::abs(out.mu_q.get_d() - mu) * u / mu;
  out.degenerate = xq < 2;
  out.alpha_gap = std::numeric_limits<double>::quiet_NaN();
  if (!out.degenerate && x >= y) {
    const double lx = std::log(static_cast<double>(x));
    const double a = saddle_alpha_log(lx, y, table).alpha;
    const double aq = saddle_alpha_log(std::log(static_cast<double>(xq)), y, table).alpha;
    out.alpha_gap = (a - aq) * std::log(static_cast<double>(y)) * lx / std::log(static_cast<double>(q));
  }
  return out;
}

double mu_estimate(const Theorem1Params& params, IntervalIndex index) {
  const double exponent = index.tail ? 1.0 : 1.0 - std::ldexp(1.0, -index.i);
  return params.kappa * std::pow(params.Y, exponent) / std::log(static_cast<double>(params.y));
}

}  // namespace smoothtable
