#include <doctest.h>

#include <random>

#include "smoothtable/errors.hpp"
#include "smoothtable/smooth.hpp"
#include "smoothtable/witness.hpp"
#include "synthetic.hpp"

using namespace smoothtable;

namespace {

const SpfTable& table() {
  static const SpfTable t(10000000);
  return t;
}

void check_invariants(const DivisorWitness& w) {
  REQUIRE(w.d * w.cofactor == w.n);
  REQUIRE(w.n % w.d == 0);
  REQUIRE(w.d * w.d <= w.x);
  REQUIRE(w.cofactor * w.cofactor <= w.x);
  REQUIRE(w.all_certified());
}

}  // namespace

TEST_CASE("small y greedy prefix") {
  const auto w = witness_small_y(960, 10000, 10, table());
  CHECK(w.method == WitnessMethod::small_y);
  CHECK(w.d == 64);
  CHECK(w.cofactor == 15);
  check_invariants(w);
  CHECK(w.find("sqrt(x)/y<=d")->holds);
  CHECK(w.find("missing") == nullptr);
}

TEST_CASE("small y trivial cases") {
  const auto w = witness_small_y(90, 10000, 10, table());
  CHECK(w.method == WitnessMethod::trivial);
  CHECK(w.d == 90);
  CHECK(w.cofactor == 1);
  const auto p = witness_small_y(7, 10000, 10, table());
  CHECK(p.d == 7);
  CHECK(p.cofactor == 1);
}

TEST_CASE("small y preconditions") {
  CHECK_THROWS_AS(witness_small_y(1001, 10000, 10, table()), PreconditionError);
  CHECK_THROWS_AS(witness_small_y(0, 10000, 10, table()), PreconditionError);
  CHECK_THROWS_AS(witness_small_y(11 * 13, 100000, 10, table()), PreconditionError);
}

TEST_CASE("small y covers S(x/y, y)") {
  for (auto [x, y] : {std::pair{100000ull, 7ull}, std::pair{1000000ull, 20ull}, std::pair{10000000ull, 50ull}}) {
    for (std::uint64_t n : smooth_values(x / y, y, table())) check_invariants(witness_small_y(n, x, y, table()));
  }
}

TEST_CASE("json shape") {
  const auto j = to_json(witness_small_y(960, 10000, 10, table()));
  CHECK(j["n"] == "960");
  CHECK(j["d"] == "64");
  CHECK(j["cofactor"] == "15");
  CHECK(j["method"] == "small_y");
  CHECK(j["certificates"]["product"]["holds"] == true);
}

TEST_CASE("build_dj") {
  PrimeSelection sel{{11, 13, 17}, {101, 103, 107}};
  CHECK(build_dj(sel, 0, 3) == 101 * 103 * 107);
  CHECK(build_dj(sel, 5, 3) == 11 * 17 * 101);
  CHECK(build_dj(sel, 7, 3) == 11 * 13 * 17);
  CHECK_THROWS_AS(build_dj(sel, 8, 3), ArgumentError);
  CHECK_THROWS_AS(build_dj(sel, 0, 2), ArgumentError);
}

TEST_CASE("theorem1 selection and construction") {
  const std::uint64_t y = 10000000;
  const auto p0 = theorem1_params(pow_big(BigInt(10), 200), y, table());
  const auto fam = interval_family(y, p0);
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = synthetic::make_instance(table(), y, fam, rng);
    const auto sel = select_interval_primes(inst.factors, fam);
    REQUIRE(sel.has_value());
    CHECK(sel->narrow_primes == inst.planted_narrow);
    CHECK(sel->tail_primes == inst.planted_tail);

    // Every D_j sits in its bracket (1 - kappa)^N y^{N - j/2^N} <= D_j <= y^{N - j/2^N}.
    const int N = p0.N;
    const long double ly = std::log(static_cast<long double>(y));
    for (std::uint64_t j = 0; j < (1ull << N); ++j) {
      const BigInt D = build_dj(*sel, j, N);
      const unsigned long scale = 1ul << N;
      REQUIRE(pow_big(D, scale) <= pow_big(to_big(y), N * scale - j));
      const long double lower = N * std::log1p(-static_cast<long double>(p0.kappa)) +
                                (N - static_cast<long double>(j) / scale) * ly;
      REQUIRE(log_big(D) >= lower);
    }

    const auto params = theorem1_params(inst.x, y, table());
    REQUIRE(params.construction_range());
    const auto w = witness_theorem1(inst.n, inst.x, y, params, interval_family(y, params), table());
    CHECK(w.method == WitnessMethod::theorem1);
    check_invariants(w);
  }
}

TEST_CASE("theorem1 rejections") {
  const std::uint64_t y = 10000000;
  const auto big = theorem1_params(pow_big(BigInt(10), 200), y, table());
  const auto fam = interval_family(y, big);
  // No prime in J_1.
  const Factorization bare{{2, 500}};
  CHECK_THROWS_AS(witness_theorem1(bare, pow_big(BigInt(10), 400), y, big, fam), WitnessUnavailable);
  // u below 4N.
  const auto small = theorem1_params(pow_big(BigInt(10), 60), y, table());
  CHECK_THROWS_AS(witness_theorem1(bare, pow_big(BigInt(10), 60), y, small, interval_family(y, small)), RangeError);
  // eta >= 1.
  const auto wide = theorem1_params(pow_big(BigInt(10), 200), 100, SpfTable(100));
  CHECK_THROWS_AS(witness_theorem1(bare, pow_big(BigInt(10), 200), 100, wide, interval_family(100, wide)),
                  PreconditionError);
  // n above (1 - eta) x.
  std::mt19937_64 rng(5);
  const auto inst = synthetic::make_instance(table(), y, fam, rng);
  const auto params = theorem1_params(inst.n, y, table());
  CHECK_THROWS_AS(witness_theorem1(inst.factors, inst.n, y, params, interval_family(y, params)),
                  PreconditionError);
}
