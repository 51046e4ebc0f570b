#pragma once

#include <cstdint>
#include <string_view>

#include "smoothtable/sieve.hpp"

namespace smoothtable {

// k-fold iterated natural logarithm: log_1 v = log v, log_k v = log(log_{k-1} v).
double iterated_log(double v, int k);

// Dickman rho: 1 on [0, 1], u rho'(u) = -rho(u - 1) beyond.
double dickman_rho(double u);

// xi(t) for t > 1: the positive root of e^xi = 1 + t xi.
double xi_solve(double t);

struct RhoXiEval {
  double u;
  double rho;
  double xi;  // 0 for u <= 1, where no positive root exists
};

RhoXiEval rho_xi(double u);

struct SaddleResult {
  double alpha;
  double residual;  // sum_{p<=y} log p / (p^alpha - 1) - log x
  int iterations;
};

inline constexpr double kSaddleTolerance = 1e-9;

SaddleResult saddle_alpha(std::uint64_t x, std::uint64_t y, const SpfTable& table);

// Same root with log x supplied directly, for x beyond 64 bits.
SaddleResult saddle_alpha_log(double log_x, std::uint64_t y, const SpfTable& table);

enum class AlphaRegime { general, large_y, small_y };

std::string_view to_string(AlphaRegime r);
AlphaRegime parse_alpha_regime(std::string_view s);

// Leading term of the asymptotic estimates for alpha; error terms are dropped.
// large_y needs y >= (log x)^{1+eps}; small_y needs 2 <= y <= (log x)^2.
double alpha_asymptotic(std::uint64_t x, std::uint64_t y, AlphaRegime regime, double eps = 0.1);

struct PsiApprox {
  double value;
  bool in_range;  // false when the formula is used outside its stated range
};

// x rho(u); in range when x >= 3 and 1 <= u <= log x / (log_2 x)^{5/3 + eps}.
PsiApprox psi_hildebrand(std::uint64_t x, std::uint64_t y, double eps = 0.1);

// (1 / pi(y)!) prod_{p <= y} log x / log p; in range when 2 <= y <= (log_2 x)^2.
PsiApprox psi_ennola(std::uint64_t x, std::uint64_t y, const SpfTable& table);

// d^{-alpha}: predicted Psi(x/d, y) / Psi(x, y).
double local_ratio(std::uint64_t d, double alpha);

double prime_alpha_sum(std::uint64_t z, double alpha, const SpfTable& table);

}  // namespace smoothtable
