// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>

#include <fmt/format.h>

#include "oracles.hpp"
#include "smoothtable/asymptotics.hpp"
#include "smoothtable/census.hpp"
#include "smoothtable/interval_stats.hpp"
#include "smoothtable/params.hpp"
#include "smoothtable/smooth.hpp"
#include "smoothtable/witness.hpp"
#include "synthetic.hpp"

using namespace smoothtable;

namespace {

constexpr int kOracleConfigs = 200;
constexpr std::uint64_t kOracleMaxX = 100000;
constexpr double kOracleSeconds = 60.0;
constexpr double kRhoTol = 1e-6;
constexpr double kDelayResidualTol = 1e-6;
constexpr double kXiTol = 1e-10;
constexpr double kSaddleTol = 1e-9;
constexpr double kHildebrandLow = 0.5;
constexpr double kHildebrandHigh = 2.0;
constexpr double kWitnessSeconds = 10.0;
constexpr int kTheorem1Instances = 100;
constexpr double kErdosSeconds = 300.0;

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  const SpfTable table(kOracleMaxX);
  const oracle::Table ref(kOracleMaxX);
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::uint64_t> pick_x(2, kOracleMaxX);
  int mismatches = 0;
  std::string first;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok && mismatches++ == 0) first = what;
  };

  expect(psi_exact(100, 5, table) == 34, "psi(100,5)");
  expect(theta_exact(30, 10, 3, table) == 9, "theta(30,10,3)");
  expect(nk_exact(20, 10, 3, 1, table) == 5, "N_1(20,10,3)");
  expect(table_census(16) == 9, "A(16)");
  expect(coprime_census(16) == 6, "A*(16)");
  expect(smooth_census(100, 3, table) == 19, "A(100,3)");

  for (int c = 0; c < kOracleConfigs; ++c) {
    const std::uint64_t x = pick_x(rng);
    const std::uint64_t y = std::uniform_int_distribution<std::uint64_t>(2, x)(rng);
    const std::uint64_t z = std::uniform_int_distribution<std::uint64_t>(2, y)(rng);
    const auto k = static_cast<unsigned>(std::uniform_int_distribution<int>(0, 4)(rng));
    const auto tag = fmt::format("x={} y={} z={} k={}", x, y, z, k);
    expect(psi_exact(x, y, table) == oracle::psi(ref, x, y), "psi " + tag);
    expect(theta_exact(x, y, z, table) == oracle::theta(ref, x, y, z), "theta " + tag);
    expect(nk_exact(x, y, z, k, table) == oracle::nk(ref, x, y, z, k), "nk " + tag);
    expect(count_by_omega(x, k, table) == oracle::pik(ref, x, k), "pik " + tag);
    expect(smooth_census(x, y, table) == oracle::smooth_census(x, y), "A(x,y) " + tag);
    expect(table_census(x) == oracle::table_census(x), "A(x) " + tag);
    expect(coprime_census(x) == oracle::table_census(x, true), "A*(x) " + tag);
  }
  const double t = seconds_since(t0);
  const bool pass = mismatches == 0 && t < kOracleSeconds;
  return {pass, mismatches ? fmt::format("{} mismatches, first: {}", mismatches, first)
                           : fmt::format("{} random configs + pinned values, {:.1f}s", kOracleConfigs, t)};
}

Outcome special_functions() {
  std::vector<std::string> failures;
  if (dickman_rho(0.5) != 1.0) failures.push_back("rho(0.5)");
  if (std::abs(dickman_rho(2.0) - (1.0 - std::log(2.0))) > kRhoTol) failures.push_back("rho(2)");
  double worst = 0.0;
  const double h = 1e-4;
  // Sample points sit midway between grid steps, away from the integer kinks of rho''.
  for (double u = 1.005; u <= 20.0; u += 0.01) {
    const double deriv = (dickman_rho(u + h) - dickman_rho(u - h)) / (2 * h);
    worst = std::max(worst, std::abs(u * deriv + dickman_rho(u - 1.0)));
  }
  if (worst > kDelayResidualTol) failures.push_back(fmt::format("delay residual {:.2e}", worst));
  if (std::abs(xi_solve(std::exp(1.0) - 1.0) - 1.0) > kXiTol) failures.push_back("xi(e-1)");
  if (std::abs(xi_solve((std::exp(2.0) - 1.0) / 2.0) - 2.0) > kXiTol) failures.push_back("xi((e^2-1)/2)");

  const SpfTable table(10000);
  const std::vector<std::uint64_t> xs{10000, 1000000, 100000000, 10000000000ull, 1000000000000ull};
  const std::vector<std::uint64_t> ys{10, 100, 1000, 10000};
  std::vector<std::vector<double>> alpha(xs.size(), std::vector<double>(ys.size()));
  double worst_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      const auto s = saddle_alpha(xs[i], ys[j], table);
      worst_res = std::max(worst_res, std::abs(s.residual));
      alpha[i][j] = s.alpha;
    }
  }
  if (worst_res > kSaddleTol) failures.push_back(fmt::format("saddle residual {:.2e}", worst_res));
  int bad_pairs = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      if (i + 1 < xs.size() && !(alpha[i + 1][j] < alpha[i][j])) ++bad_pairs;
      if (j + 1 < ys.size() && !(alpha[i][j + 1] > alpha[i][j])) ++bad_pairs;
    }
  }
  if (bad_pairs) failures.push_back(fmt::format("{} non-monotone alpha pairs", bad_pairs));
  if (!failures.empty()) return {false, fmt::format("{}", fmt::join(failures, "; "))};
  return {true, fmt::format("delay residual {:.1e}, saddle residual {:.1e}, 20-point grid monotone", worst,
                            worst_res)};
}

Outcome hildebrand_ratio() {
  const SpfTable table(500);
  std::vector<std::string> cells;
  bool pass = true;
  for (std::uint64_t x : {100000ull, 1000000ull}) {
    for (std::uint64_t y : {50ull, 100ull, 500ull}) {
      const double r = double(psi_exact(x, y, table)) / psi_hildebrand(x, y).value;
      const bool ok = r >= kHildebrandLow && r <= kHildebrandHigh;
      pass &= ok;
      cells.push_back(fmt::format("({},{})={:.3f}{}", x, y, r, ok ? "" : "!"));
    }
  }
  return {pass, fmt::format("{}", fmt::join(cells, " "))};
}

Outcome sandwich() {
  const SpfTable table(100);
  const std::vector<std::uint64_t> xs{100000, 1000000, 10000000, 1000000000, 1000000000000ull};
  const std::vector<std::uint64_t> ys{5, 10, 20};
  auto rows = dichotomy_scan(xs, ys, table, {}, 1);
  const std::vector<std::uint64_t> xs_wide{100000, 1000000, 10000000, 100000000};
  const std::vector<std::uint64_t> ys_wide{50, 100};
  for (auto& r : dichotomy_scan(xs_wide, ys_wide, table, {}, 1)) rows.push_back(std::move(r));
  int broken = 0;
  std::vector<double> trend;
  for (const auto& r : rows) {
    if (!r.sandwich_holds()) ++broken;
    if (r.y == 5 && (r.x == 1000000 || r.x == 1000000000 || r.x == 1000000000000ull)) trend.push_back(r.ratio);
  }
  const bool monotone = trend.size() == 3 && trend[0] <= trend[1] && trend[1] <= trend[2];
  return {broken == 0 && monotone,
          fmt::format("{} rows, {} sandwich violations; y=5 ratios {:.6f} {:.6f} {:.6f}", rows.size(), broken,
                      trend.size() > 0 ? trend[0] : NAN, trend.size() > 1 ? trend[1] : NAN,
                      trend.size() > 2 ? trend[2] : NAN)};
}

Outcome witness_completeness() {
  const auto t0 = Clock::now();
  const std::uint64_t x = 1000000, y = 20;
  const SpfTable table(y);
  std::uint64_t total = 0, valid = 0;
  for (std::uint64_t n : smooth_values(x / y, y, table)) {
    ++total;
    try {
      const auto w = witness_small_y(n, x, y, table);
      const bool ok = w.d * w.cofactor == to_big(n) && w.d <= 1000 && w.cofactor <= 1000 && w.all_certified();
      valid += ok;
    } catch (const std::exception&) {
    }
  }
  const double t = seconds_since(t0);
  return {valid == total && t < kWitnessSeconds, fmt::format("{}/{} certified, {:.2f}s", valid, total, t)};
}

Outcome theorem1_construction() {
  const std::uint64_t y = 10000000;
  const SpfTable table(y);
  const auto p0 = theorem1_params(pow_big(BigInt(10), 200), y, table);
  const auto fam = interval_family(y, p0);
  const std::vector<std::string> required{"sqrt(n)/y^N<=d_l",
                                          "d_l<=sqrt(n)/y^(N-1)",
                                          "(1-kappa)^N*y^(N-k/2^N)<=D_k",
                                          "D_k<=y^(N-k/2^N)",
                                          "exp(-eta/2)*sqrt(n)<=d",
                                          "d<=exp(eta/2)*sqrt(n)",
                                          "d<=sqrt(x)",
                                          "cofactor<=sqrt(x)",
                                          "product"};
  std::mt19937_64 rng(31337);
  int passed = 0;
  std::string first;
  for (int i = 0; i < kTheorem1Instances; ++i) {
    const auto inst = synthetic::make_instance(table, y, fam, rng);
    try {
      const auto params = theorem1_params(inst.x, y, table);
      if (!params.construction_range()) throw std::runtime_error("4N > u");
      if (inst.n * 1'000'000'000 > inst.x * static_cast<unsigned long>((1.0 - params.eta) * 1e9)) {
        throw std::runtime_error("n > (1 - eta) x");
      }
      const auto w = witness_theorem1(inst.factors, inst.x, y, params, interval_family(y, params));
      bool ok = w.d * w.cofactor == inst.n;
      for (const auto& name : required) {
        const auto* c = w.find(name);
        if (!c || !c->holds) {
          ok = false;
          if (first.empty()) first = name;
        }
      }
      passed += ok;
    } catch (const std::exception& e) {
      if (first.empty()) first = e.what();
    }
  }
  return {passed == kTheorem1Instances,
          fmt::format("{}/{} instances fully certified (y=10^7, N={}){}", passed, kTheorem1Instances, p0.N,
                      first.empty() ? "" : ", first failure: " + first)};
}

Outcome exact_inequalities() {
  const SpfTable table(1000);
  std::vector<std::string> failures;
  int intervals = 0;
  for (auto [x, y] : {std::pair{10000ull, 50ull}, std::pair{100000ull, 100ull}}) {
    const auto p = theorem1_params(x, y, table);
    const auto fam = interval_family(y, p);
    const auto rep = chebyshev_check(x, y, fam, table);
    for (const auto& s : rep.intervals) {
      if (s.degenerate()) continue;
      ++intervals;
      if (!(*s.cheb_lhs <= *s.cheb_rhs)) failures.push_back(fmt::format("chebyshev ({},{})", x, y));
      if (mu_exact(x, y, s.interval, table) != mu_by_primes(x, y, s.interval, table)) {
        failures.push_back(fmt::format("double counting ({},{})", x, y));
      }
    }
  }
  const auto split = theorem2_split_bound(1000000, 1000, 10, table);
  if (split.bound < split.a_xy) failures.push_back("split bound");
  std::uint64_t sum = 0;
  for (std::uint64_t d = 1; d * d <= 10000; ++d) sum += coprime_census(10000 / (d * d));
  const std::uint64_t a = table_census(10000);
  if (a > sum) failures.push_back("A(x) <= sum A*(x/d^2)");
  if (!failures.empty()) return {false, fmt::format("{}", fmt::join(failures, "; "))};
  return {true, fmt::format("{} Chebyshev/identity intervals; split {} >= {}; A(10^4)={} <= {}", intervals,
                            split.bound, split.a_xy, a, sum)};
}

Outcome erdos_trend() {
  const auto t0 = Clock::now();
  std::vector<double> ratios;
  bool strict = true;
  std::uint64_t x = 100;
  for (int k = 2; k <= 7; ++k, x *= 10) {
    ratios.push_back(double(table_census(x)) / double(x));
    if (ratios.size() > 1 && !(ratios.back() < ratios[ratios.size() - 2])) strict = false;
  }
  const double t = seconds_since(t0);
  std::vector<std::string> shown;
  for (double r : ratios) shown.push_back(fmt::format("{:.5f}", r));
  return {strict && t < kErdosSeconds, fmt::format("A(10^k)/10^k = {}, {:.1f}s", fmt::join(shown, " "), t)};
}

Outcome determinism() {
  const SpfTable table(100);
  const std::vector<std::uint64_t> xs{100000, 1000000, 100000000, 1000000000, 1000000000000ull};
  const std::vector<std::uint64_t> ys{5, 10, 20, 100};
  const auto single = to_csv(dichotomy_scan(xs, ys, table, {}, 1));
  const unsigned n = std::max(4u, std::thread::hardware_concurrency());
  const auto multi = to_csv(dichotomy_scan(xs, ys, table, {}, n));
  return {single == multi, fmt::format("1 vs {} threads, {} bytes", n, single.size())};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 oracle equivalence", oracle_equivalence},
      {"2 special functions", special_functions},
      {"3 hildebrand ratio in [0.5, 2]", hildebrand_ratio},
      {"4 sandwich exactness and y=5 trend", sandwich},
      {"5 small-y witness completeness", witness_completeness},
      {"6 interval construction certificates", theorem1_construction},
      {"7 exact inequalities", exact_inequalities},
      {"8 table census trend", erdos_trend},
      {"9 scan determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
