#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "smoothtable/bigint.hpp"
#include "smoothtable/params.hpp"
#include "smoothtable/sieve.hpp"

namespace smoothtable {

// p_i in J_i and distinct q_1..q_N in J_inf, all dividing n with multiplicity respected.
struct PrimeSelection {
  std::vector<std::uint64_t> narrow_primes;
  std::vector<std::uint64_t> tail_primes;
};

enum class WitnessMethod { trivial, small_y, theorem1 };

std::string_view to_string(WitnessMethod m);

// One bound the construction promises, evaluated on the actual numbers.
struct Certificate {
  std::string name;
  bool holds;
  std::string lhs;
  std::string rhs;
};

// n = d * cofactor with d, cofactor <= sqrt(x).
struct DivisorWitness {
  BigInt n;
  BigInt x;
  std::uint64_t y;
  BigInt d;
  BigInt cofactor;
  WitnessMethod method;
  std::vector<Certificate> certificates;

  bool all_certified() const;
  const Certificate* find(std::string_view name) const;
};

// Factorization of a y-smooth n by trial division over primes <= y; nullopt if n is not y-smooth.
std::optional<Factorization> factor_smooth(const BigInt& n, std::uint64_t y, const SpfTable& table);

// Greedy prefix split of n in S(x/y, y): the last prefix product of its
// ascending prime factors that stays below sqrt(x).
DivisorWitness witness_small_y(std::uint64_t n, std::uint64_t x, std::uint64_t y, const SpfTable& table);

// Absence means n lacks a prime in some J_i or has fewer than N distinct tail primes.
std::optional<PrimeSelection> select_interval_primes(const Factorization& n, const IntervalFamily& family);

// D_j = prod p_i^{a_i} * q_1..q_{a_0}, where a_i is bit N - i of j and a_0 = N - sum a_i.
BigInt build_dj(const PrimeSelection& sel, std::uint64_t j, int N);

DivisorWitness witness_theorem1(const Factorization& n, const BigInt& x, std::uint64_t y,
                                const Theorem1Params& params, const IntervalFamily& family);
DivisorWitness witness_theorem1(const BigInt& n, const BigInt& x, std::uint64_t y, const Theorem1Params& params,
                                const IntervalFamily& family, const SpfTable& table);

// {n, x, y, method, d, cofactor, certificates: {name: {holds, lhs, rhs}}}; integers as decimal strings.
nlohmann::ordered_json to_json(const DivisorWitness& w);

}  // namespace smoothtable
