#pragma once

#include <compare>
#include <ostream>
#include <string>
#include <vector>

#include "digitspace/rat.hpp"

namespace digitspace {

// Exact binary rational m * 2^e in canonical form: the mantissa is odd or
// zero, and zero carries exponent 0.  Dyadics are the basic elements handed
// out by Cauchy oracles; the rest of the library computes on Rat.
class Dyadic {
 public:
  Dyadic() : m_(0), e_(0) {}
  Dyadic(Int mantissa, long exponent) : m_(std::move(mantissa)), e_(exponent) {
    normalize();
  }
  explicit Dyadic(long v) : m_(v), e_(0) { normalize(); }

  const Int& mantissa() const { return m_; }
  long exponent() const { return e_; }

  Rat to_rat() const {
    if (e_ >= 0) return Rat(m_ * (Int(1) << e_));
    return Rat(m_, Int(1) << (-e_));
  }

  // Exact conversion; throws domain_error if x is not a binary rational.
  static Dyadic from_rat(const Rat& x);

  // Nearest multiple of 2^-k; |result - x| <= 2^-(k+1).  Ties round up.
  static Dyadic round_to_grid(const Rat& x, long k);

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.m_ == b.m_ && a.e_ == b.e_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    Rat l = a.to_rat(), r = b.to_rat();
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string str() const;  // "m*2^e"
  friend std::ostream& operator<<(std::ostream& os, const Dyadic& d) {
    return os << d.str();
  }

 private:
  void normalize();

  Int m_;
  long e_;
};

inline std::vector<Rat> to_rats(const std::vector<Dyadic>& v) {
  std::vector<Rat> out;
  out.reserve(v.size());
  for (const auto& d : v) out.push_back(d.to_rat());
  return out;
}

}  // namespace digitspace
