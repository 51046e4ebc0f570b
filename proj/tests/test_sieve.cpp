#include <doctest.h>

#include "oracles.hpp"
#include "smoothtable/errors.hpp"
#include "smoothtable/sieve.hpp"

using namespace smoothtable;

TEST_CASE("spf entries") {
  const SpfTable t(100);
  CHECK(t.spf(12) == 2);
  CHECK(t.spf(1) == 1);
  CHECK(t.spf(97) == 97);
}

TEST_CASE("spf agrees with trial division") {
  const SpfTable t(20000);
  for (std::uint64_t n = 2; n <= 20000; ++n) REQUIRE(t.spf(n) == oracle::smallest_prime(n));
}

TEST_CASE("sieve limits") {
  CHECK_THROWS_AS(SpfTable(1), ConfigError);
  CHECK_THROWS_AS(SpfTable(kSieveCeiling + 1), ConfigError);
  const SpfTable t(50);
  CHECK_THROWS_AS(t.spf(51), RangeError);
  CHECK_THROWS_AS(t.primes_up_to(51), RangeError);
}

TEST_CASE("factorize") {
  const SpfTable t(1000);
  CHECK(factorize(12, t) == Factorization{{2, 2}, {3, 1}});
  CHECK(factorize(1, t).empty());
  CHECK(factorize(360, t) == Factorization{{2, 3}, {3, 2}, {5, 1}});
  CHECK_THROWS_AS(factorize(0, t), RangeError);
  CHECK_THROWS_AS(factorize(1001, t), RangeError);
}

TEST_CASE("factorize round trip and ordering") {
  const SpfTable t(50000);
  for (std::uint64_t n = 1; n <= 50000; ++n) {
    const auto f = factorize(n, t);
    REQUIRE(multiply_out_u64(f) == n);
    REQUIRE(multiply_out(f) == to_big(n));
    for (std::size_t i = 0; i < f.size(); ++i) {
      REQUIRE(t.is_prime(f[i].prime));
      REQUIRE(f[i].exponent >= 1);
      if (i) REQUIRE(f[i - 1].prime < f[i].prime);
    }
  }
}

TEST_CASE("prime counts") {
  const SpfTable t(1000);
  CHECK(prime_count(10, t) == 4);
  CHECK(prime_count(2, t) == 1);
  CHECK(prime_count(100, t) == 25);
  CHECK(prime_count(100, t) == oracle::pi(100));
  CHECK(prime_count(1000, t) == oracle::pi(1000));
  CHECK(prime_count(1, t) == 0);
}

TEST_CASE("multiply_out_u64 overflow") {
  const Factorization big{{2, 64}};
  CHECK_THROWS(multiply_out_u64(big));
  CHECK(multiply_out(big) == pow_big(BigInt(2), 64));
}
