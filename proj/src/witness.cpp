#include "smoothtable/witness.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "smoothtable/errors.hpp"

namespace smoothtable {

namespace {

// Slack for bounds compared through logarithms: a certificate only holds if
// it clears the evaluation error of the long double logs by this margin.
constexpr long double kLogMargin = 1e-12L;

std::string fmt_log(long double v) { return fmt::format("exp({:.17g})", static_cast<double>(v)); }

Certificate exact_le(std::string name, const BigInt& lhs, const BigInt& rhs) {
  return {std::move(name), cmp(lhs, rhs) <= 0, to_string(lhs), to_string(rhs)};
}

// lhs <= rhs where both are given as natural logs.
Certificate log_le(std::string name, long double log_lhs, long double log_rhs) {
  return {std::move(name), log_lhs + kLogMargin <= log_rhs, fmt_log(log_lhs), fmt_log(log_rhs)};
}

BigInt isqrt(const BigInt& v) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

void add_bounds_on_x(DivisorWitness& w) {
  const BigInt root = isqrt(w.x);
  w.certificates.push_back({"product", w.d * w.cofactor == w.n, to_string(w.d * w.cofactor), to_string(w.n)});
  // d <= sqrt(x) iff d <= floor(sqrt(x)) for integers.
  w.certificates.push_back(exact_le("d<=sqrt(x)", w.d, root));
  w.certificates.push_back(exact_le("cofactor<=sqrt(x)", w.cofactor, root));
}

Factorization factor_smooth_u64(std::uint64_t n, std::uint64_t y, const SpfTable& table) {
  if (n <= table.limit()) {
    Factorization f = factorize(n, table);
    if (!f.empty() && f.back().prime > y) {
      throw PreconditionError(fmt::format("n={} is not {}-smooth", n, y));
    }
    return f;
  }
  auto f = factor_smooth(to_big(n), y, table);
  if (!f) throw PreconditionError(fmt::format("n={} is not {}-smooth", n, y));
  return *f;
}

}  // namespace

std::string_view to_string(WitnessMethod m) {
  switch (m) {
    case WitnessMethod::trivial: return "trivial";
    case WitnessMethod::small_y: return "small_y";
    case WitnessMethod::theorem1: return "theorem1";
  }
  return "trivial";
}

bool DivisorWitness::all_certified() const {
  return std::all_of(certificates.begin(), certificates.end(), [](const Certificate& c) { return c.holds; });
}

const Certificate* DivisorWitness::find(std::string_view name) const {
  for (const auto& c : certificates) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::optional<Factorization> factor_smooth(const BigInt& n, std::uint64_t y, const SpfTable& table) {
  if (sgn(n) <= 0) throw ArgumentError("factor_smooth: n must be positive");
  if (y > table.limit()) {
    throw RangeError(fmt::format("factor_smooth: y={} exceeds sieve limit {}", y, table.limit()));
  }
  BigInt rest = n;
  Factorization f;
  for (std::uint32_t p : table.primes_up_to(y)) {
    if (rest == 1) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p) == 0) continue;
    std::uint32_t v = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++v;
    }
    f.push_back({p, v});
  }
  if (rest != 1) return std::nullopt;
  return f;
}

DivisorWitness witness_small_y(std::uint64_t n, std::uint64_t x, std::uint64_t y, const SpfTable& table) {
  if (y < 2 || n < 1) throw PreconditionError("witness_small_y: requires n >= 1 and y >= 2");
  if (n > x / y) {
    throw PreconditionError(fmt::format("witness_small_y: n={} exceeds x/y={}", n, x / y));
  }
  const Factorization f = factor_smooth_u64(n, y, table);

  DivisorWitness w{to_big(n), to_big(x), y, 0, 0, WitnessMethod::trivial, {}};
  const BigInt bn = w.n;
  if (bn * bn <= w.x) {
    w.d = bn;
    w.cofactor = 1;
    add_bounds_on_x(w);
    return w;
  }

  // Prefix products n_0 = 1, n_{j+1} = n_j p_{j+1}; stop at the first n_{s+1} >= sqrt(x).
  w.method = WitnessMethod::small_y;
  BigInt prefix = 1;
  for (const auto& [p, v] : f) {
    bool done = false;
    for (std::uint32_t e = 0; e < v; ++e) {
      const BigInt next = prefix * to_big(p);
      if (next * next >= w.x) {
        done = true;
        break;
      }
      prefix = next;
    }
    if (done) break;
  }
  w.d = prefix;
  w.cofactor = bn / prefix;
  add_bounds_on_x(w);
  // sqrt(x)/y <= d  iff  x <= d^2 y^2.
  const BigInt dy = w.d * to_big(y);
  w.certificates.push_back(exact_le("sqrt(x)/y<=d", w.x, dy * dy));
  if (!w.all_certified()) {
    throw SolverError(fmt::format("witness_small_y: construction failed certification for n={}", n));
  }
  return w;
}

std::optional<PrimeSelection> select_interval_primes(const Factorization& n, const IntervalFamily& family) {
  const auto N = family.narrow.size();
  std::vector<std::uint32_t> remaining;
  remaining.reserve(n.size());
  for (const auto& pp : n) remaining.push_back(pp.exponent);

  PrimeSelection sel;
  for (const auto& J : family.narrow) {
    bool found = false;
    for (std::size_t k = 0; k < n.size() && n[k].prime <= J.last; ++k) {
      if (remaining[k] > 0 && J.contains(n[k].prime)) {
        --remaining[k];
        sel.narrow_primes.push_back(n[k].prime);
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  for (std::size_t k = 0; k < n.size() && sel.tail_primes.size() < N; ++k) {
    if (remaining[k] > 0 && family.tail.contains(n[k].prime)) {
      --remaining[k];
      sel.tail_primes.push_back(n[k].prime);
    }
  }
  if (sel.tail_primes.size() < N) return std::nullopt;
  return sel;
}

BigInt build_dj(const PrimeSelection& sel, std::uint64_t j, int N) {
  if (N < 1 || N > 62) throw ArgumentError(fmt::format("build_dj: N={} out of range", N));
  if (sel.narrow_primes.size() != static_cast<std::size_t>(N) ||
      sel.tail_primes.size() != static_cast<std::size_t>(N)) {
    throw ArgumentError("build_dj: selection does not hold N narrow and N tail primes");
  }
  if (j >= (std::uint64_t{1} << N)) {
    throw ArgumentError(fmt::format("build_dj: j={} outside [0, 2^{})", j, N));
  }
  BigInt D = 1;
  int ones = 0;
  for (int i = 1; i <= N; ++i) {
    if ((j >> (N - i)) & 1u) {
      D *= to_big(sel.narrow_primes[i - 1]);
      ++ones;
    }
  }
  for (int i = 0; i < N - ones; ++i) D *= to_big(sel.tail_primes[i]);
  return D;
}

DivisorWitness witness_theorem1(const Factorization& f, const BigInt& x, std::uint64_t y,
                                const Theorem1Params& params, const IntervalFamily& family) {
  if (params.y != y || family.params.y != y) {
    throw ArgumentError("witness_theorem1: params and family must be computed for the same y");
  }
  if (!params.construction_range()) {
    throw RangeError(fmt::format("witness_theorem1: 4N = {} exceeds u = {}", 4 * params.N, params.u));
  }
  if (!params.eta_below_one()) {
    throw PreconditionError(fmt::format("witness_theorem1: eta = {} >= 1 leaves S((1 - eta)x, y) empty",
                                        params.eta));
  }
  if (!f.empty() && f.back().prime > y) throw PreconditionError("witness_theorem1: n is not y-smooth");
  const BigInt n = multiply_out(f);
  const long double log_n = log_big(n);
  const long double log_x = log_big(x);
  if (log_n > log_x + std::log1p(-static_cast<long double>(params.eta))) {
    throw PreconditionError("witness_theorem1: n exceeds (1 - eta) x");
  }

  const auto sel = select_interval_primes(f, family);
  if (!sel) throw WitnessUnavailable("witness_theorem1: n lacks the required primes in J_1..J_N, J_inf");
  const int N = params.N;
  const BigInt by = to_big(y);

  // m = n / prod p_i q_i as a multiset of primes in ascending order.
  std::map<std::uint64_t, std::uint32_t> m_factors;
  for (const auto& pp : f) m_factors[pp.prime] = pp.exponent;
  for (auto p : sel->narrow_primes) --m_factors[p];
  for (auto q : sel->tail_primes) --m_factors[q];

  // Smallest prefix d_l with d_l >= sqrt(n) / y^N, i.e. d_l^2 y^{2N} >= n.
  const BigInt y2N = pow_big(by, 2ul * N);
  BigInt dl = 1;
  bool reached = dl * dl * y2N >= n;
  for (auto it = m_factors.begin(); it != m_factors.end() && !reached; ++it) {
    for (std::uint32_t e = 0; e < it->second && !reached; ++e) {
      dl *= to_big(it->first);
      reached = dl * dl * y2N >= n;
    }
  }
  if (!reached) throw WitnessUnavailable("witness_theorem1: cofactor m stays below sqrt(n)/y^N");

  DivisorWitness w{n, x, y, 0, 0, WitnessMethod::theorem1, {}};
  w.certificates.push_back(exact_le("sqrt(n)/y^N<=d_l", n, dl * dl * y2N));
  w.certificates.push_back(exact_le("d_l<=sqrt(n)/y^(N-1)", dl * dl * pow_big(by, 2ul * N - 2), n));

  // Window k: sqrt(n) y^{k/2^N - N} <= d_l <= sqrt(n) y^{(k+1)/2^N - N}; raised to the
  // power 2^{N+1} both sides become integers. Ties go to the lower k.
  const unsigned long scale = 1ul << N;
  const BigInt lhs_dl = pow_big(dl, 2 * scale) * pow_big(by, 2ul * N * scale);
  const BigInt n_pow = pow_big(n, scale);
  const BigInt y_sq = by * by;
  std::uint64_t k = 0;
  BigInt upper = n_pow * y_sq;  // n^{2^N} y^{2(k+1)}
  while (k + 1 < scale && lhs_dl > upper) {
    upper *= y_sq;
    ++k;
  }
  const BigInt lower = upper / y_sq;
  w.certificates.push_back(exact_le("window_lower<=d_l", lower, lhs_dl));
  w.certificates.push_back(exact_le("d_l<=window_upper", lhs_dl, upper));

  const BigInt Dk = build_dj(*sel, k, N);
  const long double ly = std::log(static_cast<long double>(y));
  const long double exponent = static_cast<long double>(N) - static_cast<long double>(k) / scale;
  w.certificates.push_back(log_le("(1-kappa)^N*y^(N-k/2^N)<=D_k",
                                  N * std::log1p(-static_cast<long double>(params.kappa)) + exponent * ly,
                                  log_big(Dk)));
  w.certificates.push_back(exact_le("D_k<=y^(N-k/2^N)", pow_big(Dk, scale), pow_big(by, N * scale - k)));

  w.d = dl * Dk;
  w.cofactor = n / w.d;
  const long double half_eta = static_cast<long double>(params.eta) / 2;
  const long double log_d = log_big(w.d);
  w.certificates.push_back(log_le("exp(-eta/2)*sqrt(n)<=d", log_n / 2 - half_eta, log_d));
  w.certificates.push_back(log_le("d<=exp(eta/2)*sqrt(n)", log_d, log_n / 2 + half_eta));
  add_bounds_on_x(w);

  const BigInt root = isqrt(x);
  if (w.d > root || w.cofactor > root || w.d * w.cofactor != n) {
    throw WitnessUnavailable("witness_theorem1: split does not fit under sqrt(x)");
  }
  return w;
}

DivisorWitness witness_theorem1(const BigInt& n, const BigInt& x, std::uint64_t y, const Theorem1Params& params,
                                const IntervalFamily& family, const SpfTable& table) {
  auto f = factor_smooth(n, y, table);
  if (!f) throw PreconditionError("witness_theorem1: n is not y-smooth");
  return witness_theorem1(*f, x, y, params, family);
}

nlohmann::ordered_json to_json(const DivisorWitness& w) {
  nlohmann::ordered_json certs = nlohmann::ordered_json::object();
  for (const auto& c : w.certificates) {
    certs[c.name] = {{"holds", c.holds}, {"lhs", c.lhs}, {"rhs", c.rhs}};
  }
  return {{"n", to_string(w.n)},
          {"x", to_string(w.x)},
          {"y", std::to_string(w.y)},
          {"method", std::string(to_string(w.method))},
          {"d", to_string(w.d)},
          {"cofactor", to_string(w.cofactor)},
          {"certificates", certs}};
}

}  // namespace smoothtable
