#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace smoothtable {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt to_big(std::uint64_t v) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return r;
}

inline bool fits_u64(const BigInt& v) {
  return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const BigInt& v) {
  std::uint64_t r = 0;
  mpz_export(&r, nullptr, -1, sizeof(r), 0, 0, v.get_mpz_t());
  return r;
}

// Natural log of a positive big integer, accurate to a few ulps of long double.
inline long double log_big(const BigInt& v) {
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log(static_cast<long double>(mant)) +
         static_cast<long double>(exp2) * 0.693147180559945309417232121458176568L;
}

inline BigInt pow_big(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline std::string to_string(const BigInt& v) { return v.get_str(10); }

}  // namespace smoothtable
