#include "digitspace/coding.hpp"

#include <algorithm>

namespace digitspace {

namespace {

// Smallest k >= 0 with factor * 2^-k < bound (factor >= 0, bound > 0).
long shrink_exponent(const Rat& factor, const Rat& bound) {
  long k = 0;
  Rat v = factor;
  while (!(v < bound)) {
    v /= 2;
    ++k;
  }
  return k;
}

// A dyadic point inside [lo, hi] as close to the midpoint as the coarsest
// admissible grid allows.
Dyadic dyadic_in_interval(const Interval& iv) {
  if (iv.width() == 0) return Dyadic::from_rat(iv.lo);  // only exact points qualify
  long k = 0;
  for (;;) {
    Int lo_grid = ceil_rat(iv.lo * pow2(k));
    Int hi_grid = floor_rat(iv.hi * pow2(k));
    if (lo_grid <= hi_grid) {
      Int mid = floor_rat(iv.midpoint() * pow2(k) + Rat(1, 2));
      mid = std::max(lo_grid, std::min(hi_grid, mid));
      return Dyadic(mid, -k);
    }
    ++k;
  }
}

}  // namespace

unsigned tree_arity(const DigitSpace& s, const FinTree& t) {
  if (t.children.empty()) return s.digit(t.label).arity;
  const Digit& d = s.digit(t.label);
  if (t.children.size() != d.arity)
    throw arity_error("tree node '" + t.label + "' has wrong child count");
  unsigned sum = 0;
  for (const auto& c : t.children) sum += tree_arity(s, c);
  return sum;
}

Box finite_map_enclosure(const DigitSpace& s, const FinTree& t, const Box& seed) {
  const std::size_t dim = s.dim();
  if (seed.size() != static_cast<std::size_t>(tree_arity(s, t)) * dim)
    throw arity_error("finite_map_enclosure: seed dimension mismatch");
  if (!box_contains(box_power(s.full_box(), seed.size() / dim), seed))
    throw domain_error("finite_map_enclosure: seed leaves the space");
  struct Rec {
    const DigitSpace& s;
    std::size_t dim;
    Box go(const FinTree& t, const Box& seed, std::size_t off, std::size_t len) const {
      const Digit& d = s.digit(t.label);
      if (t.children.empty())
        return d.action.apply(Box(seed.begin() + off, seed.begin() + off + len));
      Box args;
      args.reserve(d.arity * dim);
      std::size_t cursor = off;
      for (const auto& c : t.children) {
        std::size_t clen = static_cast<std::size_t>(tree_arity(s, c)) * dim;
        Box sub = go(c, seed, cursor, clen);
        args.insert(args.end(), sub.begin(), sub.end());
        cursor += clen;
      }
      return d.action.apply(args);
    }
  };
  return Rec{s, dim}.go(t, seed, 0, seed.size());
}

namespace {

// Same fold as finite_map_enclosure over the height-n prefix with full-box
// seeds, without materializing the prefix.
Box lazy_enclosure(const DigitSpace& s, const LazyTree& t, unsigned n) {
  const Digit& d = s.digit(t.root());
  if (n == 0) return d.range;
  const auto& kids = t.subtrees();
  if (kids.size() != d.arity)
    throw arity_error("tree node '" + t.root() + "' has wrong child count");
  Box args;
  args.reserve(d.arity * s.dim());
  for (const auto& k : kids) {
    Box sub = lazy_enclosure(s, *k, n - 1);
    args.insert(args.end(), sub.begin(), sub.end());
  }
  return d.action.apply(args);
}

}  // namespace

Box value_enclosure(const DigitSpace& s, const LazyTree& t, unsigned n) {
  StepBudget scope(StepBudget::default_limit());
  return lazy_enclosure(s, t, n);
}

CauchyOracle tree_to_cauchy(const DigitSpace& s, LazyTreePtr t) {
  CauchyOracle o;
  o.dim = s.dim();
  o.query = [&s, t](unsigned n) {
    unsigned depth = contraction_depth(s, n + 1);
    Box enc = value_enclosure(s, *t, depth);
    std::vector<Dyadic> u;
    u.reserve(enc.size());
    for (const auto& iv : enc) u.push_back(dyadic_in_interval(iv));
    return u;
  };
  return o;
}

namespace {

struct CauchyToTree {
  const DigitSpace& s;

  LazyTreePtr node(CauchyOracle o) const {
    const Rat& eps = s.well_covering_number();
    // 2^-m < eps/2, so the answer is within eps/2 of the point.
    unsigned m = static_cast<unsigned>(shrink_exponent(Rat(1), eps / 2));
    std::vector<Rat> approx = to_rats(o.query(m));
    if (approx.size() != s.dim()) throw oracle_error("oracle answered with wrong dimension");
    if (box_dist_point(s.full_box(), approx) > eps / 2)
      throw oracle_error("oracle answer is too far from the space");
    const Digit& d = pick_digit(s, approx);
    auto oracle = std::make_shared<CauchyOracle>(std::move(o));
    auto self = *this;
    auto gen = [self, oracle, &d]() {
      std::vector<LazyTreePtr> kids;
      kids.reserve(d.arity);
      for (unsigned k = 0; k < d.arity; ++k)
        kids.push_back(self.node(self.component_oracle(*oracle, d, k)));
      return kids;
    };
    return make_tree(d.id, std::move(gen));
  }

  // Oracle for component k of the digit's preimage point.  The right
  // inverse is affine with Lipschitz constant L, so querying the parent at
  // precision k(n) with L * 2^-k(n) < 2^-(n+1) and rounding to the
  // 2^-(n+2) grid stays below 2^-n.
  CauchyOracle component_oracle(const CauchyOracle& parent, const Digit& d,
                                unsigned comp) const {
    const std::size_t dim = s.dim();
    Rat lip = d.inverse.lipschitz();
    CauchyOracle child;
    child.dim = dim;
    child.query = [parent, &d, comp, lip, dim](unsigned n) {
      long k = shrink_exponent(lip, pow2(-static_cast<long>(n) - 1));
      if (k <= static_cast<long>(n)) k = n + 1;
      std::vector<Rat> u = to_rats(parent.query(static_cast<unsigned>(k)));
      if (box_dist_point(d.range, u) > pow2(-k))
        throw oracle_error("oracle contradicts committed digit '" + d.id + "'");
      std::vector<Rat> pre = d.inverse.apply(u);
      std::vector<Dyadic> out;
      out.reserve(dim);
      for (std::size_t i = 0; i < dim; ++i)
        out.push_back(Dyadic::round_to_grid(pre[comp * dim + i], n + 2));
      return out;
    };
    return child;
  }
};

}  // namespace

LazyTreePtr cauchy_to_tree(const DigitSpace& s, CauchyOracle oracle) {
  return CauchyToTree{s}.node(std::move(oracle));
}

namespace {

// One refinement step: approximate v in Q^arity with e(v') within theta of
// v, keeping v' inside the space.
std::vector<Rat> approximate_preimage(const DigitSpace& s, const Digit& e,
                                      const std::vector<Rat>& v, const Rat& theta) {
  std::vector<Rat> w = right_inverse_point(s, e, v);
  // Round to a dyadic grid fine enough that the digit's contraction keeps
  // the error within theta, and fine enough that each full-box interval
  // contains a grid point.
  Rat mesh = theta / std::max(s.factor(), Rat(1, 2));
  long k = 0;
  while (!(pow2(-k) <= mesh)) ++k;
  for (const auto& iv : s.full_box())
    while (!(pow2(-k) <= iv.width())) ++k;
  const Box dom = box_power(s.full_box(), e.arity);
  for (std::size_t i = 0; i < w.size(); ++i) {
    Int lo_grid = ceil_rat(dom[i].lo * pow2(k));
    Int hi_grid = floor_rat(dom[i].hi * pow2(k));
    Int g = floor_rat(w[i] * pow2(k) + Rat(1, 2));
    g = std::max(lo_grid, std::min(hi_grid, g));
    w[i] = Rat(g) * pow2(-k);
  }
  return w;
}

}  // namespace

FinTree basic_to_tree(const DigitSpace& s, const std::vector<Rat>& u, unsigned n) {
  if (!box_contains_point(s.full_box(), u))
    throw domain_error("basic_to_tree: point outside the space");
  const unsigned j_n = contraction_depth(s, n);
  const unsigned j_n1 = contraction_depth(s, n + 1);

  struct Rec {
    const DigitSpace& s;
    unsigned j_n1;
    FinTree go(unsigned k, const std::vector<Rat>& v) const {
      const Digit& e = pick_digit(s, v);
      if (k == 0) return FinTree{e.id, {}};
      Rat qk(1);
      for (unsigned i = 0; i < k; ++i) qk *= s.factor();
      Rat theta = qk * s.bound();
      if (j_n1 > 0) theta /= Rat(j_n1);
      std::vector<Rat> w = approximate_preimage(s, e, v, theta);
      FinTree out{e.id, {}};
      out.children.reserve(e.arity);
      const std::size_t dim = s.dim();
      for (unsigned c = 0; c < e.arity; ++c) {
        std::vector<Rat> slice(w.begin() + c * dim, w.begin() + (c + 1) * dim);
        out.children.push_back(go(k - 1, slice));
      }
      return out;
    }
  };

  FinTree result = Rec{s, j_n1}.go(j_n, u);
  std::vector<Rat> val = dense_base_point(s, result);
  if (!(point_dist(u, val) < pow2(-static_cast<long>(n))))
    throw domain_error("basic_to_tree: refinement missed the 2^-n bound");
  return result;
}

std::vector<Rat> dense_base_point(const DigitSpace& s, const FinTree& t) {
  const Digit& d = s.digit(t.label);
  if (t.children.empty()) {
    std::vector<Rat> args;
    args.reserve(d.arity * s.dim());
    for (unsigned i = 0; i < d.arity; ++i)
      args.insert(args.end(), s.base_point().begin(), s.base_point().end());
    return d.action.apply(args);
  }
  if (t.children.size() != d.arity)
    throw arity_error("tree node '" + t.label + "' has wrong child count");
  std::vector<Rat> args;
  args.reserve(d.arity * s.dim());
  for (const auto& c : t.children) {
    std::vector<Rat> sub = dense_base_point(s, c);
    args.insert(args.end(), sub.begin(), sub.end());
  }
  return d.action.apply(args);
}

CauchyOracle exact_point_oracle(std::vector<Rat> x) {
  CauchyOracle o;
  o.dim = x.size();
  o.query = [x = std::move(x)](unsigned n) {
    std::vector<Dyadic> out;
    out.reserve(x.size());
    for (const auto& xi : x) out.push_back(Dyadic::round_to_grid(xi, n + 1));
    return out;
  };
  return o;
}

}  // namespace digitspace
