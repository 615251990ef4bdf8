#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "digitspace/errors.hpp"

namespace digitspace {

using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                           boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

// 2^k for any integer k, as an exact rational.
inline Rat pow2(long k) {
  Int one = 1;
  if (k >= 0) return Rat(one << k);
  return Rat(one, one << (-k));
}

inline Int floor_rat(const Rat& x) {
  Int n = numerator(x), d = denominator(x);  // d > 0 in canonical form
  Int q = n / d, r = n % d;
  if (r != 0 && n < 0) --q;
  return q;
}

inline Int ceil_rat(const Rat& x) { return -floor_rat(-x); }

inline bool is_dyadic(const Rat& x) {
  Int d = denominator(x);
  return (d & (d - 1)) == 0;
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

// Parses "p", "p/q" or "m*2^e".  Throws parse_error on malformed input.
Rat parse_rat(const std::string& s);

std::string show_rat(const Rat& x);

}  // namespace digitspace
