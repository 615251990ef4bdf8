#pragma once

#include <algorithm>
#include <vector>

#include "digitspace/errors.hpp"
#include "digitspace/rat.hpp"

namespace digitspace {

// Closed rational interval [lo, hi].
struct Interval {
  Rat lo, hi;

  Interval() : lo(0), hi(0) {}
  Interval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw domain_error("interval: lo > hi");
  }
  static Interval point(const Rat& x) { return Interval(x, x); }

  Rat width() const { return hi - lo; }
  Rat midpoint() const { return (lo + hi) / 2; }

  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }

  // Distance from a point to the interval (0 inside).
  Rat dist(const Rat& x) const {
    if (x < lo) return lo - x;
    if (x > hi) return x - hi;
    return Rat(0);
  }

  Rat clamp(const Rat& x) const { return std::max(lo, std::min(hi, x)); }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

inline Interval hull(const Interval& a, const Interval& b) {
  return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

// Axis-aligned rational box, one interval per dimension.  All metric
// computations use the maximum metric.
using Box = std::vector<Interval>;

inline Rat box_width(const Box& b) {
  Rat w(0);
  for (const auto& iv : b) w = std::max(w, iv.width());
  return w;
}

inline bool box_contains(const Box& outer, const Box& inner) {
  if (outer.size() != inner.size()) throw arity_error("box dimension mismatch");
  for (std::size_t i = 0; i < outer.size(); ++i)
    if (!outer[i].contains(inner[i])) return false;
  return true;
}

inline bool box_contains_point(const Box& b, const std::vector<Rat>& p) {
  if (b.size() != p.size()) throw arity_error("box dimension mismatch");
  for (std::size_t i = 0; i < b.size(); ++i)
    if (!b[i].contains(p[i])) return false;
  return true;
}

inline bool box_intersects(const Box& a, const Box& b) {
  if (a.size() != b.size()) throw arity_error("box dimension mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].intersects(b[i])) return false;
  return true;
}

inline Box point_box(const std::vector<Rat>& p) {
  Box b;
  b.reserve(p.size());
  for (const auto& x : p) b.push_back(Interval::point(x));
  return b;
}

inline std::vector<Rat> box_midpoint(const Box& b) {
  std::vector<Rat> p;
  p.reserve(b.size());
  for (const auto& iv : b) p.push_back(iv.midpoint());
  return p;
}

// Max-metric distance from a point to a box (0 inside).
inline Rat box_dist_point(const Box& b, const std::vector<Rat>& p) {
  if (b.size() != p.size()) throw arity_error("box dimension mismatch");
  Rat d(0);
  for (std::size_t i = 0; i < b.size(); ++i) d = std::max(d, b[i].dist(p[i]));
  return d;
}

// Max-metric distance between points.
inline Rat point_dist(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  if (a.size() != b.size()) throw arity_error("point dimension mismatch");
  Rat d(0);
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, rat_abs(a[i] - b[i]));
  return d;
}

// n-fold concatenation of a box with itself (the seed for f_T over X^n).
inline Box box_power(const Box& b, std::size_t n) {
  Box out;
  out.reserve(b.size() * n);
  for (std::size_t i = 0; i < n; ++i) out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline Box box_concat(const Box& a, const Box& b) {
  Box out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Decides target ⊆ ∪ boxes exactly.  The grid induced by all box faces
// refines every box, so a cell is covered iff its midpoint is.
bool boxes_cover(const Box& target, const std::vector<Box>& boxes);

// Box dilated by r in every direction (closed max-metric ball around it).
inline Box box_dilate(const Box& b, const Rat& r) {
  Box out;
  out.reserve(b.size());
  for (const auto& iv : b) out.push_back(Interval(iv.lo - r, iv.hi + r));
  return out;
}

}  // namespace digitspace
