#pragma once
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

namespace equilab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt big_gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }
inline BigInt big_abs(const BigInt& a) { return boost::multiprecision::abs(a); }

// gcd of a coefficient vector (0 for the all-zero vector).
inline BigInt content_of(const std::vector<BigInt>& v) {
  BigInt g = 0;
  for (const auto& c : v) {
    g = big_gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

inline long bit_length(const BigInt& a) {
  return a == 0 ? 0 : static_cast<long>(boost::multiprecision::msb(big_abs(a))) + 1;
}

// Round-to-double that survives values far outside double range by returning
// mantissa * 2^exp with |mantissa| in [0.5, 1).
inline void to_double_frexp(const BigInt& a, double& mantissa, long& exp2) {
  if (a == 0) { mantissa = 0.0; exp2 = 0; return; }
  long bits = bit_length(a);
  // keep 64 bits of precision
  long shift = bits - 64;
  BigInt t = a;
  if (shift > 0) t >>= shift; else shift = 0;
  mantissa = static_cast<double>(t.convert_to<std::int64_t>());
  exp2 = shift;
  int e = 0;
  mantissa = std::frexp(mantissa, &e);
  exp2 += e;
}

// log|a| (natural); -inf for 0.
inline double log_abs(const BigInt& a) {
  if (a == 0) return -std::numeric_limits<double>::infinity();
  double m; long e;
  to_double_frexp(a, m, e);
  return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
}

// Exact-to-double conversion with scaling: value = mantissa * 2^(exp2).
// Safe for coefficients of period polynomials (bit lengths in the thousands).
inline double to_double_scaled(const BigInt& a, long scale_exp2) {
  if (a == 0) return 0.0;
  double m; long e;
  to_double_frexp(a, m, e);
  return std::ldexp(m, static_cast<int>(e - scale_exp2));
}

}  // namespace equilab
