// Shared numeric types, checked machine arithmetic and the error hierarchy.

#ifndef CUSPK_COMMON_HPP
#define CUSPK_COMMON_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cuspk {

using Int = std::int64_t;
using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Thrown when a machine-integer operation would overflow. Parameters
/// (a, b, m, weights) live in 64-bit integers; every product and sum on
/// them goes through the checked helpers below.
class ArithmeticOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

class PreconditionViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A closed-form statement that is a proven theorem failed to reproduce.
class TheoremViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ResourceBound : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline Int checked_add(Int x, Int y) {
  Int r;
  if (__builtin_add_overflow(x, y, &r)) throw ArithmeticOverflow("integer overflow in addition");
  return r;
}

inline Int checked_sub(Int x, Int y) {
  Int r;
  if (__builtin_sub_overflow(x, y, &r)) throw ArithmeticOverflow("integer overflow in subtraction");
  return r;
}

inline Int checked_mul(Int x, Int y) {
  Int r;
  if (__builtin_mul_overflow(x, y, &r)) throw ArithmeticOverflow("integer overflow in multiplication");
  return r;
}

/// Floor division for any signs; y != 0.
inline Int floor_div(Int x, Int y) {
  Int q = x / y;
  if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
  return q;
}

inline Int ceil_div(Int x, Int y) { return -floor_div(-x, y); }

/// Representative of x modulo m in [0, m).
inline Int mod_floor(Int x, Int m) {
  Int r = x % m;
  return r < 0 ? r + m : r;
}

/// Extended Euclid: returns g = gcd(x, y) >= 0 with s*x + t*y = g.
inline Int ext_gcd(Int x, Int y, Int& s, Int& t) {
  Int s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (y != 0) {
    Int q = floor_div(x, y);
    Int r = x - q * y;
    x = y;
    y = r;
    Int ns = s0 - q * s1;
    s0 = s1;
    s1 = ns;
    Int nt = t0 - q * t1;
    t0 = t1;
    t1 = nt;
  }
  if (x < 0) {
    x = -x;
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
  return x;
}

inline Int gcd(Int x, Int y) { return std::gcd(x, y); }

inline bool is_prime(Int p) {
  if (p < 2) return false;
  for (Int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline BigInt big_pow(const BigInt& base, unsigned long e) {
  return boost::multiprecision::pow(base, static_cast<unsigned>(e));
}

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace cuspk

#endif  // CUSPK_COMMON_HPP
