#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smoothtable/sieve.hpp"

namespace smoothtable {

struct ResourceLimits {
  std::uint64_t max_pairs = 1'000'000'000;  // unordered pairs a <= b per census
};

// Number of distinct products a*b with a <= b drawn from sorted `values`, all products <= bound.
// A bitset over [1, bound] is used when bound <= 2^33, sort + unique otherwise.
std::uint64_t count_distinct_products(std::span<const std::uint64_t> values, std::uint64_t bound,
                                      const ResourceLimits& limits = {});

// A(x) = #{ab : a, b <= sqrt(x)}.
std::uint64_t table_census(std::uint64_t x, const ResourceLimits& limits = {});

// A*(x) = #{ab : a, b <= sqrt(x), gcd(a, b) = 1}.
std::uint64_t coprime_census(std::uint64_t x, const ResourceLimits& limits = {});

// A(x, y) = |S(sqrt x, y) . S(sqrt x, y)|.
std::uint64_t smooth_census(std::uint64_t x, std::uint64_t y, const SpfTable& table,
                            const ResourceLimits& limits = {});

// delta = 1 - (1 + log log 2) / log 2.
double erdos_delta();

struct ErdosBound {
  double delta;
  double bound;  // x / ((log x)^delta sqrt(log_2 x))
  std::uint64_t a_x;
  double ratio;  // A(x) / bound
};

ErdosBound erdos_bound_eval(std::uint64_t x, const ResourceLimits& limits = {});

struct HardyRamanujanRow {
  std::uint32_t k;
  std::uint64_t count;  // pi_k(x)
  double bound;         // (c x / log x) (log_2 x + C)^{k-1} / (k-1)!
};

// c is forced by k = 1 (c = pi(x) log x / x); C is the least value making every
// k >= 2 row hold with that c.
struct HardyRamanujanReport {
  std::uint64_t x;
  double c;
  double C;
  std::vector<HardyRamanujanRow> rows;
  bool holds;
};

HardyRamanujanReport hardy_ramanujan_check(std::uint64_t x, const SpfTable& table);

struct SplitBound {
  std::uint64_t bound;
  std::uint64_t a_xy;
  std::vector<std::uint64_t> nk_x;     // N_k(x, y, z)
  std::vector<std::uint64_t> nk_root;  // N_k(sqrt x, y, z)
};

// sum_k min{N_k(x), sum_{j=0}^{k} N_j(sqrt x) N_{k-j}(sqrt x)} >= A(x, y).
SplitBound theorem2_split_bound(std::uint64_t x, std::uint64_t y, std::uint64_t z, const SpfTable& table,
                                const ResourceLimits& limits = {});

struct OmegaStratum {
  std::uint32_t k;  // omega(n)
  std::uint64_t members;
  double mean_tau;
  double predicted;  // 2^k log(1/(1 - eta)) / log sqrt(x)
};

struct HeuristicReport {
  double predicted;           // 2^{u + log_2 y} / log y
  double predicted_eta_form;  // 2^{u + log_2 y} log(1/(1 - eta)) / log sqrt(x)
  double empirical;           // mean tau(n; (1 - eta) sqrt x, sqrt x) over S((1 - eta) x, y)
  std::uint64_t population;
  std::vector<OmegaStratum> by_omega;
};

HeuristicReport heuristic_expected_tau(std::uint64_t x, std::uint64_t y, double eta, const SpfTable& table);

enum class Regime { conj_1, conj_2, boundary };

std::string_view to_string(Regime r);
Regime classify_threshold(double threshold);

struct CensusRow {
  std::uint64_t x;
  std::uint64_t y;
  double u;
  std::uint64_t psi;
  std::uint64_t psi_lower;  // Psi(floor(x/y), y)
  std::uint64_t a_xy;
  double ratio;
  double threshold;
  Regime regime;
  std::optional<std::string> error;  // set when a guard stopped this cell

  bool sandwich_holds() const { return !error && psi_lower <= a_xy && a_xy <= psi; }
};

CensusRow census_row(std::uint64_t x, std::uint64_t y, const SpfTable& table, const ResourceLimits& limits = {});

// One row per (x, y) with x >= y, sorted by (x, y). Cells run on up to `threads`
// workers; results do not depend on the thread count.
std::vector<CensusRow> dichotomy_scan(std::span<const std::uint64_t> xs, std::span<const std::uint64_t> ys,
                                      const SpfTable& table, const ResourceLimits& limits = {},
                                      unsigned threads = 1);

// Header x,y,u,psi,a_xy,ratio,threshold,regime; reals to 6 significant digits.
std::string to_csv(std::span<const CensusRow> rows);

}  // namespace smoothtable
