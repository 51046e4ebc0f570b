#include "smoothtable/census.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "smoothtable/errors.hpp"
#include "smoothtable/params.hpp"
#include "smoothtable/smooth.hpp"

namespace smoothtable {

namespace {

constexpr std::uint64_t kBitsetCeiling = std::uint64_t{1} << 33;

std::uint64_t isqrt_u64(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(x)));
  while (static_cast<unsigned __int128>(r) * r > x) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= x) ++r;
  return r;
}

void check_pairs(std::uint64_t count, const ResourceLimits& limits, const char* what) {
  const auto pairs = static_cast<unsigned __int128>(count) * (count + 1) / 2;
  if (pairs > limits.max_pairs) {
    throw ResourceError(fmt::format("{}: {} factor candidates give more than {} pairs; reduce x or y", what,
                                    count, limits.max_pairs));
  }
}

// Pairs i <= j with v_i v_j <= t, by a two-pointer sweep over sorted v.
std::uint64_t pairs_at_most(std::span<const std::uint64_t> v, std::uint64_t t) {
  std::uint64_t count = 0;
  std::size_t j = v.size();
  for (std::size_t i = 0; i < v.size(); ++i) {
    while (j > i && v[j - 1] > t / v[i]) --j;
    if (j <= i) break;
    count += j - i;
  }
  return count;
}

constexpr std::uint64_t kChunkProducts = std::uint64_t{1} << 24;

// Products above 2^33 are deduplicated in value windows (lo, hi] holding about
// kChunkProducts pairs each, so the buffer never grows past that.
std::uint64_t count_sparse(std::span<const std::uint64_t> v, std::uint64_t bound) {
  std::uint64_t total = 0;
  std::vector<std::uint64_t> buffer;
  std::uint64_t lo = 0;
  std::uint64_t below = 0;
  const std::uint64_t all = pairs_at_most(v, bound);
  while (below < all) {
    std::uint64_t hi = bound;
    if (all - below > kChunkProducts) {
      std::uint64_t a = lo + 1, b = bound;
      while (a < b) {
        const std::uint64_t mid = a + (b - a + 1) / 2;
        if (pairs_at_most(v, mid) - below <= kChunkProducts) {
          a = mid;
        } else {
          b = mid - 1;
        }
      }
      hi = a;
    }
    buffer.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::uint64_t a = v[i];
      if (a > hi / a) break;
      auto first = std::upper_bound(v.begin() + i, v.end(), lo / a);
      const auto last = std::upper_bound(first, v.end(), hi / a);
      for (; first != last; ++first) buffer.push_back(a * *first);
    }
    std::sort(buffer.begin(), buffer.end());
    total += static_cast<std::uint64_t>(std::unique(buffer.begin(), buffer.end()) - buffer.begin());
    below += buffer.size();
    lo = hi;
  }
  return total;
}

std::uint64_t count_dense(std::span<const std::uint64_t> v, std::uint64_t bound) {
  std::vector<std::uint64_t> bits(bound / 64 + 1, 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i; j < v.size() && v[j] <= bound / v[i]; ++j) {
      const std::uint64_t p = v[i] * v[j];
      bits[p >> 6] |= std::uint64_t{1} << (p & 63);
    }
  }
  std::uint64_t total = 0;
  for (auto word : bits) total += static_cast<std::uint64_t>(std::popcount(word));
  return total;
}

std::uint64_t count_products(std::span<const std::uint64_t> v, std::uint64_t bound) {
  if (v.empty()) return 0;
  return bound <= kBitsetCeiling ? count_dense(v, bound) : count_sparse(v, bound);
}

std::vector<std::uint64_t> convolve(const std::vector<std::uint64_t>& a) {
  if (a.empty()) return {};
  std::vector<std::uint64_t> out(2 * a.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) out[i + j] += a[i] * a[j];
  }
  return out;
}

std::vector<std::uint64_t> sorted_unique(std::span<const std::uint64_t> v) {
  std::vector<std::uint64_t> out(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::uint64_t count_distinct_products(std::span<const std::uint64_t> values, std::uint64_t bound,
                                      const ResourceLimits& limits) {
  check_pairs(values.size(), limits, "count_distinct_products");
  if (!std::is_sorted(values.begin(), values.end()) || (!values.empty() && values.front() == 0)) {
    throw ArgumentError("count_distinct_products: values must be positive and sorted");
  }
  return count_products(values, bound);
}

std::uint64_t table_census(std::uint64_t x, const ResourceLimits& limits) {
  if (x < 1) throw ArgumentError("table_census: x must be positive");
  const std::uint64_t r = isqrt_u64(x);
  check_pairs(r, limits, "table_census");
  std::vector<std::uint64_t> values(r);
  std::iota(values.begin(), values.end(), std::uint64_t{1});
  return count_products(values, x);
}

std::uint64_t coprime_census(std::uint64_t x, const ResourceLimits& limits) {
  if (x < 1) throw ArgumentError("coprime_census: x must be positive");
  const std::uint64_t r = isqrt_u64(x);
  check_pairs(r, limits, "coprime_census");
  if (x > kBitsetCeiling) throw ResourceError("coprime_census: x above 2^33 is not supported");
  std::vector<std::uint64_t> bits(x / 64 + 1, 0);
  for (std::uint64_t a = 1; a <= r; ++a) {
    for (std::uint64_t b = a; b <= r; ++b) {
      if (std::gcd(a, b) == 1) bits[(a * b) >> 6] |= std::uint64_t{1} << ((a * b) & 63);
    }
  }
  std::uint64_t total = 0;
  for (auto word : bits) total += static_cast<std::uint64_t>(std::popcount(word));
  return total;
}

std::uint64_t smooth_census(std::uint64_t x, std::uint64_t y, const SpfTable& table,
                            const ResourceLimits& limits) {
  if (x < 1 || y < 1) throw ArgumentError("smooth_census: x and y must be positive");
  const std::uint64_t r = isqrt_u64(x);
  const std::uint64_t members = psi_exact(r, y, table);
  check_pairs(members, limits, "smooth_census");
  const auto values = smooth_values(r, y, table);
  return count_distinct_products(values, x, limits);
}

double erdos_delta() { return 1.0 - (1.0 + std::log(std::log(2.0))) / std::log(2.0); }

ErdosBound erdos_bound_eval(std::uint64_t x, const ResourceLimits& limits) {
  if (x < 16) throw ArgumentError("erdos_bound_eval: requires x >= 16");
  const double lx = std::log(static_cast<double>(x));
  ErdosBound out{};
  out.delta = erdos_delta();
  out.bound = static_cast<double>(x) / (std::pow(lx, out.delta) * std::sqrt(std::log(lx)));
  out.a_x = table_census(x, limits);
  out.ratio = static_cast<double>(out.a_x) / out.bound;
  return out;
}

HardyRamanujanReport hardy_ramanujan_check(std::uint64_t x, const SpfTable& table) {
  if (x < 3) throw ArgumentError("hardy_ramanujan_check: requires x >= 3");
  const auto hist = omega_histogram(x, table);
  const double xd = static_cast<double>(x);
  const double lx = std::log(xd);
  const double l2x = std::log(lx);

  HardyRamanujanReport report{x, 0.0, 0.0, {}, true};
  report.c = static_cast<double>(hist[1]) * lx / xd;
  const double scale = report.c * xd / lx;
  // For k >= 2: (log_2 x + C)^{k-1} >= pi_k (k-1)! / scale.
  double C = -l2x;
  for (std::size_t k = 2; k < hist.size(); ++k) {
    if (hist[k] == 0) continue;
    const double km1 = static_cast<double>(k - 1);
    const double log_need = std::log(static_cast<double>(hist[k])) + std::lgamma(km1 + 1.0) - std::log(scale);
    C = std::max(C, std::exp(log_need / km1) - l2x);
  }
  report.C = C + 1e-12 * std::max(1.0, std::abs(C));
  for (std::size_t k = 1; k <= hist.size(); ++k) {
    const double km1 = static_cast<double>(k - 1);
    const std::uint64_t count = k < hist.size() ? hist[k] : 0;
    const double bound = scale * std::exp(km1 * std::log(l2x + report.C) - std::lgamma(km1 + 1.0));
    report.rows.push_back({static_cast<std::uint32_t>(k), count, bound});
    if (static_cast<double>(count) > bound * (1.0 + 1e-12)) report.holds = false;
  }
  return report;
}

SplitBound theorem2_split_bound(std::uint64_t x, std::uint64_t y, std::uint64_t z, const SpfTable& table,
                                const ResourceLimits& limits) {
  if (!(x >= y && y >= z && z >= 2)) {
    throw ArgumentError(fmt::format("split-bound: requires x >= y >= z >= 2 (got x={}, y={}, z={})", x, y, z));
  }
  const std::uint64_t r = isqrt_u64(x);
  if (r < 2) throw ArgumentError("split-bound: requires x >= 4");
  SplitBound out{};
  out.nk_x = nk_histogram(x, y, z, table);
  // Members of S(r, y) only carry primes <= r, so clipping y and z to r leaves Omega_z unchanged.
  const std::uint64_t yr = std::min(y, r);
  out.nk_root = nk_histogram(r, yr, std::min(z, yr), table);
  const auto pairs = convolve(out.nk_root);
  for (std::size_t k = 0; k < out.nk_x.size(); ++k) {
    out.bound += std::min(out.nk_x[k], k < pairs.size() ? pairs[k] : 0);
  }
  out.a_xy = smooth_census(x, y, table, limits);
  return out;
}

HeuristicReport heuristic_expected_tau(std::uint64_t x, std::uint64_t y, double eta, const SpfTable& table) {
  if (!(eta > 0.0 && eta < 1.0)) throw ArgumentError("heuristic: eta must lie in (0, 1)");
  if (!(x >= y && y >= 3)) throw ArgumentError("heuristic: requires x >= y >= 3");
  const long double root = std::sqrt(static_cast<long double>(x));
  // 1 - eta is taken in double so eta = 0.1 gives the window (0.9 sqrt x, sqrt x] as written.
  const double keep = 1.0 - eta;
  const long double lo = keep * root;
  const auto population_bound = static_cast<std::uint64_t>(std::floor(keep * static_cast<double>(x)));

  HeuristicReport out{};
  const double ly = std::log(static_cast<double>(y));
  const double lx = std::log(static_cast<double>(x));
  const double k_star = lx / ly + std::log(ly);
  out.predicted = std::exp2(k_star) / ly;
  out.predicted_eta_form = std::exp2(k_star) * -std::log1p(-eta) / (0.5 * lx);

  std::vector<std::uint64_t> members;
  std::vector<std::uint64_t> tau_sum;
  std::uint64_t total_tau = 0;
  if (population_bound >= 1) {
    for_each_smooth(population_bound, y, table, [&](std::uint64_t, const Factorization& f) {
      const std::uint64_t t = divisor_count_in(f, lo, root);
      const std::size_t k = f.size();
      if (members.size() <= k) {
        members.resize(k + 1, 0);
        tau_sum.resize(k + 1, 0);
      }
      ++members[k];
      tau_sum[k] += t;
      total_tau += t;
      ++out.population;
    });
  }
  out.empirical = out.population ? static_cast<double>(total_tau) / static_cast<double>(out.population) : 0.0;
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (members[k] == 0) continue;
    out.by_omega.push_back({static_cast<std::uint32_t>(k), members[k],
                            static_cast<double>(tau_sum[k]) / static_cast<double>(members[k]),
                            std::exp2(static_cast<double>(k)) * -std::log1p(-eta) / (0.5 * lx)});
  }
  return out;
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::conj_1: return "conj_1";
    case Regime::conj_2: return "conj_2";
    case Regime::boundary: return "boundary";
  }
  return "boundary";
}

Regime classify_threshold(double threshold) {
  if (std::abs(threshold) <= 1e-12) return Regime::boundary;
  return threshold > 0.0 ? Regime::conj_1 : Regime::conj_2;
}

CensusRow census_row(std::uint64_t x, std::uint64_t y, const SpfTable& table, const ResourceLimits& limits) {
  CensusRow row{};
  row.x = x;
  row.y = y;
  row.u = std::log(static_cast<double>(x)) / std::log(static_cast<double>(y));
  row.threshold = dichotomy_threshold(x, y);
  row.regime = classify_threshold(row.threshold);
  try {
    row.a_xy = smooth_census(x, y, table, limits);
    row.psi = psi_exact(x, y, table);
    row.psi_lower = x / y >= 1 ? psi_exact(x / y, y, table) : 0;
    row.ratio = static_cast<double>(row.a_xy) / static_cast<double>(row.psi);
  } catch (const ResourceError& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<CensusRow> dichotomy_scan(std::span<const std::uint64_t> xs, std::span<const std::uint64_t> ys,
                                      const SpfTable& table, const ResourceLimits& limits, unsigned threads) {
  const auto xv = sorted_unique(xs);
  const auto yv = sorted_unique(ys);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> cells;
  for (auto x : xv) {
    for (auto y : yv) {
      if (x >= y) cells.emplace_back(x, y);
    }
  }
  std::vector<CensusRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size() && !failed; i = next++) {
      try {
        rows[i] = census_row(cells[i].first, cells[i].second, table, limits);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cells.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string to_csv(std::span<const CensusRow> rows) {
  std::string out = "x,y,u,psi,a_xy,ratio,threshold,regime\n";
  for (const auto& r : rows) {
    if (r.error) {
      out += fmt::format("{},{},{:.6g},,,,{:.6g},{}\n", r.x, r.y, r.u, r.threshold, to_string(r.regime));
    } else {
      out += fmt::format("{},{},{:.6g},{},{},{:.6g},{:.6g},{}\n", r.x, r.y, r.u, r.psi, r.a_xy, r.ratio,
                         r.threshold, to_string(r.regime));
    }
  }
  return out;
}

}  // namespace smoothtable
