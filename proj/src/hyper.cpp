#include "digitspace/hyper.hpp"

#include <algorithm>
#include <map>

#include "digitspace/ids.hpp"

namespace digitspace {

HyperSpace::HyperSpace(DigitSpace base) : base_(std::move(base)) {
  for (const auto& d : base_.digits())
    if (d.arity != 1)
      throw unsupported_error("hyperspace needs a unary-digit base (digit '" + d.id + "')");
  const std::size_t m = base_.digits().size();
  if (m > 16) throw unsupported_error("hyperspace over more than 16 digits");
  for (std::size_t mask = 1; mask < (std::size_t(1) << m); ++mask) {
    std::vector<DigitId> set;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::size_t(1) << i)) set.push_back(base_.digits()[i].id);
    sets_.push_back(std::move(set));
  }
}

Alphabet HyperSpace::alphabet() const {
  Alphabet a;
  a.digits.reserve(sets_.size());
  for (const auto& set : sets_)
    a.digits.push_back({make_hyper_id(set), static_cast<unsigned>(set.size())});
  return a;
}

Alphabet hyper_alphabet(const std::vector<DigitId>& base_ids) {
  if (base_ids.empty()) throw domain_error("hyper alphabet over no digits");
  if (base_ids.size() > 20) throw unsupported_error("hyper alphabet too large to enumerate");
  Alphabet a;
  for (std::size_t mask = 1; mask < (std::size_t(1) << base_ids.size()); ++mask) {
    std::vector<DigitId> set;
    for (std::size_t i = 0; i < base_ids.size(); ++i)
      if (mask & (std::size_t(1) << i)) set.push_back(base_ids[i]);
    a.digits.push_back({make_hyper_id(set), static_cast<unsigned>(set.size())});
  }
  return a;
}

CompactApprox make_compact_approx(std::vector<Box> boxes, unsigned depth) {
  if (boxes.empty()) throw domain_error("compact approximation must be nonempty");
  std::vector<Box> dedup;
  for (auto& b : boxes)
    if (std::find(dedup.begin(), dedup.end(), b) == dedup.end()) dedup.push_back(std::move(b));
  return CompactApprox{std::move(dedup), depth};
}

namespace {

std::vector<DigitId> node_parts(const LazyTree& t) {
  auto parts = split_hyper_id(t.root());
  if (!parts) throw form_error("label '" + t.root() + "' is not a hyper digit");
  return *parts;
}

void append_unique(std::vector<FinTree>& out, FinTree t) {
  if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(std::move(t));
}

}  // namespace

std::vector<FinTree> derived_trees(const HyperSpace& h, const LazyTree& t, unsigned n) {
  std::vector<DigitId> parts = node_parts(t);
  for (const auto& p : parts)
    if (!h.base().has_digit(p))
      throw form_error("hyper component '" + p + "' is not a base digit");
  std::vector<FinTree> out;
  if (n == 0) {
    for (const auto& p : parts) append_unique(out, FinTree{p, {}});
    return out;
  }
  const auto& kids = t.subtrees();
  if (kids.size() != parts.size())
    throw arity_error("hyper node '" + t.root() + "' has wrong child count");
  for (std::size_t k = 0; k < parts.size(); ++k) {
    for (auto& sub : derived_trees(h, *kids[k], n - 1))
      append_unique(out, FinTree{parts[k], {std::move(sub)}});
  }
  return out;
}

CompactApprox compact_enclosure(const HyperSpace& h, const LazyTree& t, unsigned n) {
  std::vector<Box> boxes;
  const Box seed = h.base().full_box();
  for (const auto& s : derived_trees(h, t, n))
    boxes.push_back(finite_map_enclosure(h.base(), s, seed));
  return make_compact_approx(std::move(boxes), n);
}

namespace {

// Fast exact path for one-dimensional families.
Rat directed_hausdorff_1d(const std::vector<Box>& from, const std::vector<Box>& to) {
  std::vector<Interval> merged;
  {
    std::vector<Interval> sorted;
    sorted.reserve(to.size());
    for (const auto& b : to) sorted.push_back(b[0]);
    std::sort(sorted.begin(), sorted.end(),
              [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    for (const auto& iv : sorted) {
      if (!merged.empty() && iv.lo <= merged.back().hi) {
        if (iv.hi > merged.back().hi) merged.back().hi = iv.hi;
      } else {
        merged.push_back(iv);
      }
    }
  }
  auto dist_to_union = [&merged](const Rat& x) {
    Rat best = merged.front().dist(x);
    for (const auto& iv : merged) best = std::min(best, iv.dist(x));
    return best;
  };
  Rat worst(0);
  for (const auto& b : from) {
    const Interval& a = b[0];
    worst = std::max(worst, dist_to_union(a.lo));
    worst = std::max(worst, dist_to_union(a.hi));
    // Interior maxima sit at midpoints of gaps between consecutive merged
    // intervals.
    for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
      Rat mid = (merged[i].hi + merged[i + 1].lo) / 2;
      if (a.contains(mid)) worst = std::max(worst, dist_to_union(mid));
    }
  }
  return worst;
}

}  // namespace

Rat directed_hausdorff(const std::vector<Box>& from, const std::vector<Box>& to) {
  if (from.empty() || to.empty()) throw domain_error("hausdorff of an empty family");
  const std::size_t dim = from.front().size();
  for (const auto& b : from)
    if (b.size() != dim) throw arity_error("box dimension mismatch");
  for (const auto& b : to)
    if (b.size() != dim) throw arity_error("box dimension mismatch");
  if (dim == 1) return directed_hausdorff_1d(from, to);

  // sup_{x in from} d(x, union(to)) = least r with from ⊆ union of r-dilated
  // boxes.  The cover predicate flips only where a dilated face meets a
  // target face or two dilated faces meet, so the threshold is among these
  // candidates.
  std::vector<Rat> candidates{Rat(0)};
  for (const auto& a : from)
    for (const auto& b : to)
      for (std::size_t i = 0; i < dim; ++i) {
        candidates.push_back(rat_abs(a[i].lo - b[i].lo));
        candidates.push_back(rat_abs(a[i].lo - b[i].hi));
        candidates.push_back(rat_abs(a[i].hi - b[i].lo));
        candidates.push_back(rat_abs(a[i].hi - b[i].hi));
      }
  for (const auto& b1 : to)
    for (const auto& b2 : to)
      for (std::size_t i = 0; i < dim; ++i) {
        Rat gap = (b2[i].lo - b1[i].hi) / 2;
        if (gap > 0) candidates.push_back(gap);
      }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  auto covered_at = [&to](const Box& a, const Rat& r) {
    std::vector<Box> dilated;
    dilated.reserve(to.size());
    for (const auto& b : to) dilated.push_back(box_dilate(b, r));
    return boxes_cover(a, dilated);
  };
  Rat worst(0);
  for (const auto& a : from) {
    std::size_t lo = 0, hi = candidates.size() - 1;
    if (covered_at(a, candidates[lo])) {
      worst = std::max(worst, candidates[lo]);
      continue;
    }
    while (lo + 1 < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (covered_at(a, candidates[mid]))
        hi = mid;
      else
        lo = mid;
    }
    worst = std::max(worst, candidates[hi]);
  }
  return worst;
}

Rat hausdorff_distance(const CompactApprox& a, const CompactApprox& b) {
  return std::max(directed_hausdorff(a.boxes, b.boxes),
                  directed_hausdorff(b.boxes, a.boxes));
}

std::pair<std::vector<DigitId>, std::vector<LazyTreePtr>> union_merge_node(
    const std::vector<DigitId>& label_a, const std::vector<LazyTreePtr>& kids_a,
    const std::vector<DigitId>& label_b, const std::vector<LazyTreePtr>& kids_b) {
  if (label_a.size() != kids_a.size() || label_b.size() != kids_b.size())
    throw arity_error("union_merge_node: label/children size mismatch");
  std::vector<DigitId> merged;
  for (const auto& id : label_a)
    if (std::find(merged.begin(), merged.end(), id) == merged.end()) merged.push_back(id);
  for (const auto& id : label_b)
    if (std::find(merged.begin(), merged.end(), id) == merged.end()) merged.push_back(id);
  std::vector<LazyTreePtr> kids;
  kids.reserve(merged.size());
  for (const auto& id : merged) {
    std::vector<LazyTreePtr> gather;
    for (std::size_t i = 0; i < label_a.size(); ++i)
      if (label_a[i] == id) gather.push_back(kids_a[i]);
    for (std::size_t i = 0; i < label_b.size(); ++i)
      if (label_b[i] == id) gather.push_back(kids_b[i]);
    LazyTreePtr acc = gather.front();
    for (std::size_t i = 1; i < gather.size(); ++i) acc = union_hyper_trees(acc, gather[i]);
    kids.push_back(std::move(acc));
  }
  return {std::move(merged), std::move(kids)};
}

LazyTreePtr union_hyper_trees(LazyTreePtr a, LazyTreePtr b) {
  std::vector<DigitId> pa = node_parts(*a);
  std::vector<DigitId> pb = node_parts(*b);
  std::vector<DigitId> merged;
  for (const auto& id : pa)
    if (std::find(merged.begin(), merged.end(), id) == merged.end()) merged.push_back(id);
  for (const auto& id : pb)
    if (std::find(merged.begin(), merged.end(), id) == merged.end()) merged.push_back(id);
  auto gen = [a, b, pa, pb]() {
    auto [label, kids] = union_merge_node(pa, a->subtrees(), pb, b->subtrees());
    return kids;
  };
  return make_tree(make_hyper_id(merged), std::move(gen));
}

LazyTreePtr michael_flatten(LazyTreePtr t) {
  std::vector<DigitId> parts = node_parts(*t);
  std::vector<DigitId> stripped;
  stripped.reserve(parts.size());
  for (const auto& p : parts) {
    auto inner = split_lifted_id(p);
    if (!inner) throw form_error("label component '" + p + "' is not in lifted form");
    stripped.push_back(*inner);
  }
  auto gen = [t]() {
    std::vector<LazyTreePtr> kids;
    for (const auto& sub : t->subtrees()) kids.push_back(michael_flatten(sub));
    return kids;
  };
  return make_tree(make_hyper_id(stripped), std::move(gen));
}

std::pair<std::vector<DigitId>, std::vector<LazyTreePtr>> michael_rewrite(
    const HyperSpace& h, const std::vector<std::vector<DigitId>>& label,
    const std::vector<LazyTreePtr>& children) {
  if (label.empty() || label.size() != children.size())
    throw form_error("michael_rewrite: label/children mismatch");
  std::vector<DigitId> base_ids;
  for (const auto& d : h.base().digits()) base_ids.push_back(d.id);
  std::vector<DigitId> lifted_ids;
  for (const auto& id : base_ids) lifted_ids.push_back(make_lifted_id(id));

  // Distinct base digits occurring in the label, in first-occurrence order.
  std::vector<DigitId> es;
  for (const auto& comp : label) {
    if (comp.empty()) throw form_error("michael_rewrite: empty hyper component");
    for (const auto& d : comp) {
      if (!h.base().has_digit(d))
        throw form_error("michael_rewrite: '" + d + "' is not a base digit");
      if (std::find(es.begin(), es.end(), d) == es.end()) es.push_back(d);
    }
  }

  // Projections of each child onto its component slots, lifted to compact
  // sets; cached per (child, width, slot).
  std::map<std::pair<std::size_t, std::size_t>, LazyTreePtr> proj_cache;
  auto projected = [&](std::size_t kappa, std::size_t sigma) -> LazyTreePtr {
    const std::size_t r = label[kappa].size();
    if (r == 1) return children[kappa];
    auto key = std::make_pair(kappa, sigma);
    auto it = proj_cache.find(key);
    if (it != proj_cache.end()) return it->second;
    // Tuple alphabet of the r-fold product of lifted digits.
    std::vector<DigitId> tuple_ids;
    std::vector<std::size_t> idx(r, 0);
    for (;;) {
      std::vector<DigitId> parts;
      for (std::size_t i = 0; i < r; ++i) parts.push_back(lifted_ids[idx[i]]);
      tuple_ids.push_back(make_tuple_id(parts));
      std::size_t i = r;
      for (; i > 0; --i) {
        if (++idx[i - 1] < lifted_ids.size()) break;
        idx[i - 1] = 0;
      }
      if (i == 0) break;
    }
    Alphabet tuple_alpha;
    for (const auto& id : tuple_ids) tuple_alpha.digits.push_back({id, 1});
    FunPtr proj = relabel_fun(tuple_alpha, [sigma](DigitId id) {
      auto parts = split_tuple_id(id);
      if (!parts) throw form_error("michael_rewrite: expected a tuple label, got '" + id + "'");
      return (*parts)[sigma];
    });
    FunPtr lifted = lift_compact(hyper_alphabet(tuple_ids), proj);
    LazyTreePtr out = apply(lifted, {children[kappa]});
    proj_cache.emplace(key, out);
    return out;
  };

  std::vector<LazyTreePtr> ms;
  ms.reserve(es.size());
  for (const auto& e : es) {
    LazyTreePtr acc;
    for (std::size_t kappa = 0; kappa < label.size(); ++kappa)
      for (std::size_t sigma = 0; sigma < label[kappa].size(); ++sigma)
        if (label[kappa][sigma] == e) {
          LazyTreePtr p = projected(kappa, sigma);
          acc = acc ? union_hyper_trees(acc, p) : p;
        }
    ms.push_back(std::move(acc));
  }

  std::vector<DigitId> lifted_label;
  lifted_label.reserve(es.size());
  for (const auto& e : es) lifted_label.push_back(make_lifted_id(e));
  return {std::move(lifted_label), std::move(ms)};
}

namespace {

Box clipped_ball_box(const Box& full, const std::vector<Rat>& center, const Rat& radius) {
  Box b;
  b.reserve(full.size());
  for (std::size_t i = 0; i < full.size(); ++i) {
    Rat lo = std::max(full[i].lo, center[i] - radius);
    Rat hi = std::min(full[i].hi, center[i] + radius);
    if (lo > hi) throw domain_error("ball does not meet the space");
    b.push_back(Interval(lo, hi));
  }
  return b;
}

}  // namespace

bool hyper_ball_clauses(const HyperSpace& h, const std::vector<std::vector<Rat>>& centers,
                        const std::vector<DigitId>& parts, const Rat& theta) {
  if (centers.empty() || parts.empty()) throw domain_error("empty ball criterion input");
  for (const auto& u : centers) {
    bool some = false;
    for (const auto& p : parts)
      if (covers_ball(h.base(), h.base().digit(p), u, theta)) {
        some = true;
        break;
      }
    if (!some) return false;
  }
  for (const auto& p : parts) {
    bool some = false;
    for (const auto& u : centers)
      if (covers_ball(h.base(), h.base().digit(p), u, theta)) {
        some = true;
        break;
      }
    if (!some) return false;
  }
  return true;
}

bool hyper_ball_contained(const HyperSpace& h, const std::vector<std::vector<Rat>>& centers,
                          const std::vector<DigitId>& parts, const Rat& theta) {
  if (centers.empty() || parts.empty()) throw domain_error("empty ball criterion input");
  if (theta <= 0) throw domain_error("ball radius must be positive");
  std::vector<Box> ranges;
  ranges.reserve(parts.size());
  for (const auto& p : parts) ranges.push_back(h.base().digit(p).range);
  for (const auto& u : centers) {
    Box ball = clipped_ball_box(h.base().full_box(), u, theta);
    if (!boxes_cover(ball, ranges)) return false;
  }
  for (const auto& p : parts) {
    bool some = false;
    for (const auto& u : centers)
      if (covers_ball(h.base(), h.base().digit(p), u, theta)) {
        some = true;
        break;
      }
    if (!some) return false;
  }
  return true;
}

}  // namespace digitspace
