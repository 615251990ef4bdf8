#pragma once

#include <cstdint>
#include <vector>

#include "digitspace/hyper.hpp"
#include "digitspace/ids.hpp"
#include "digitspace/space.hpp"
#include "digitspace/tree.hpp"

namespace dstest {

using namespace digitspace;

inline std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  h *= 0xff51afd7ed558ccdull;
  h ^= h >> 33;
  return h;
}

// Deterministic infinite tree over a space's alphabet: the digit at each
// node is a hash of the seed and the path, so memoized forcing is stable.
inline LazyTreePtr random_tree(const DigitSpace& s, std::uint64_t seed) {
  const auto& digits = s.digits();
  const Digit& d = digits[mix(seed, 0) % digits.size()];
  auto gen = [&s, seed, &d]() {
    std::vector<LazyTreePtr> kids;
    kids.reserve(d.arity);
    for (unsigned i = 0; i < d.arity; ++i) kids.push_back(random_tree(s, mix(seed, i + 1)));
    return kids;
  };
  return make_tree(d.id, std::move(gen));
}

// Random infinite hyper tree with canonical labels.
inline LazyTreePtr random_hyper_tree(const HyperSpace& h, std::uint64_t seed) {
  const auto& sets = h.digit_sets();
  const auto& set = sets[mix(seed, 1) % sets.size()];
  auto gen = [&h, seed, n = set.size()]() {
    std::vector<LazyTreePtr> kids;
    kids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) kids.push_back(random_hyper_tree(h, mix(seed, i + 2)));
    return kids;
  };
  return make_tree(make_hyper_id(set), std::move(gen));
}

// Random tree over the lifted-digit hyperspace alphabet [K(d),...]: a code
// for a compact set of singleton-coded compacts.
inline LazyTreePtr random_lifted_tree(const HyperSpace& h, std::uint64_t seed) {
  const auto& sets = h.digit_sets();
  const auto& set = sets[mix(seed, 3) % sets.size()];
  std::vector<DigitId> lifted;
  lifted.reserve(set.size());
  for (const auto& id : set) lifted.push_back(make_lifted_id(id));
  auto gen = [&h, seed, n = set.size()]() {
    std::vector<LazyTreePtr> kids;
    kids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) kids.push_back(random_lifted_tree(h, mix(seed, i + 4)));
    return kids;
  };
  return make_tree(make_hyper_id(lifted), std::move(gen));
}

// Stream (all digits unary) from a digit list, repeating the last digit.
inline LazyTreePtr stream_of(const DigitSpace& s, std::vector<DigitId> ids) {
  struct Rec {
    static LazyTreePtr go(const DigitSpace& s, const std::vector<DigitId>& ids,
                          std::size_t at) {
      const DigitId& id = ids[std::min(at, ids.size() - 1)];
      if (s.digit(id).arity != 1) throw arity_error("stream_of needs unary digits");
      auto gen = [&s, ids, at]() { return std::vector<LazyTreePtr>{go(s, ids, at + 1)}; };
      return make_tree(id, std::move(gen));
    }
  };
  return Rec::go(s, ids, 0);
}

inline Rat random_dyadic_in(const Interval& iv, std::uint64_t seed, long k = 6) {
  Int lo = ceil_rat(iv.lo * pow2(k));
  Int hi = floor_rat(iv.hi * pow2(k));
  Int span = hi - lo + 1;
  Int pick = lo + Int(mix(seed, 17) % 1000000) % span;
  return Rat(pick) * pow2(-k);
}

// [0,1] with one binary digit: lo(x)=x/2, hi(x)=x/2+1/2, mid(x,y)=(x+y)/4+1/4.
inline DigitSpace binary_mix_space() {
  Box full{Interval(Rat(0), Rat(1))};
  std::vector<Rat> base{Rat(0)};
  std::vector<Digit> digits;
  digits.push_back(make_digit("lo", 1, AffineMap(1, 1, {Rat(1, 2)}, {Rat(0)}), full, base));
  digits.push_back(make_digit("hi", 1, AffineMap(1, 1, {Rat(1, 2)}, {Rat(1, 2)}), full, base));
  digits.push_back(
      make_digit("mid", 2, AffineMap(1, 2, {Rat(1, 4), Rat(1, 4)}, {Rat(1, 4)}), full, base));
  return DigitSpace(full, Rat(1), Rat(1, 2), Rat(1, 8), base, std::move(digits));
}

// [-1,1] with five thirds-contractions x/3 + c, exercising non-dyadic
// coefficients; q = 1/3, M = 2.
inline DigitSpace thirds_space() {
  Box full{Interval(Rat(-1), Rat(1))};
  std::vector<Rat> base{Rat(0)};
  std::vector<Digit> digits;
  for (int c = -2; c <= 2; ++c) {
    digits.push_back(make_digit("t" + std::to_string(c), 1,
                                AffineMap(1, 1, {Rat(1, 3)}, {Rat(c, 3)}), full, base));
  }
  return DigitSpace(full, Rat(2), Rat(1, 3), Rat(1, 12), base, std::move(digits));
}

}  // namespace dstest
