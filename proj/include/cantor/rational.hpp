#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "cantor/error.hpp"

namespace cantor {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Int ipow(const Int& base, const Int& exp) {
  if (exp < 0) raise(ErrorCode::BadArgument, "negative integer power");
  Int r = 1, b = base, e = exp;
  while (e > 0) {
    if (bit_test(e, 0)) r *= b;
    e >>= 1;
    if (e > 0) b *= b;
  }
  return r;
}

/// Number of bits of |n|; bits(0) = 0.
inline std::size_t bit_length(const Int& n) {
  if (n == 0) return 0;
  return boost::multiprecision::msb(boost::multiprecision::abs(n)) + 1;
}

inline bool is_pow2(const Int& n) { return n > 0 && (n & (n - 1)) == 0; }

std::string int_str(const Int& v);
Int parse_int(const std::string& s);

/// "p/q" or "p"; exact.
std::string rat_str(const Rat& r);
Rat parse_rat(const std::string& s);

}  // namespace cantor
