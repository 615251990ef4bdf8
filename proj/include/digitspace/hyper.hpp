#pragma once

#include <utility>

#include "digitspace/coding.hpp"
#include "digitspace/functree.hpp"
#include "digitspace/space.hpp"
#include "digitspace/tree.hpp"

namespace digitspace {

// Hyperspace of non-empty compact subsets of a unary-digit base space.
// Hyper digits [d1,...,dr] send (K_1,...,K_r) to the union of the d_k[K_k];
// they are identified up to the set of components.  The canonical
// enumeration lists the nonempty subsets of the base digits in binary mask
// order with components in declaration order; trees produced by transducer
// operations may carry other component orders (or repeats), which the
// positional semantics handles unchanged.
class HyperSpace {
 public:
  explicit HyperSpace(DigitSpace base);

  const DigitSpace& base() const { return base_; }
  const std::vector<std::vector<DigitId>>& digit_sets() const { return sets_; }

  // Hyper digits as a symbolic alphabet (for transducers).
  Alphabet alphabet() const;

 private:
  DigitSpace base_;
  std::vector<std::vector<DigitId>> sets_;
};

inline HyperSpace hyper_space(DigitSpace base) { return HyperSpace(std::move(base)); }

// Finite set of boxes approximating a compact set at some depth.
// Deduplicated but never merged, so exact box-list comparisons stay
// meaningful.
struct CompactApprox {
  std::vector<Box> boxes;
  unsigned depth = 0;
};

CompactApprox make_compact_approx(std::vector<Box> boxes, unsigned depth);

// All height-n prefixes of derived trees: ordinary base-digit trees
// threading one component choice per hyper node.
std::vector<FinTree> derived_trees(const HyperSpace& h, const LazyTree& t, unsigned n);
inline std::vector<FinTree> derived_trees(const HyperSpace& h, const LazyTreePtr& t,
                                          unsigned n) {
  return derived_trees(h, *t, n);
}

// Enclosure boxes of all derived trees at depth n; Hausdorff error from
// val(T) is at most q^n * M.
CompactApprox compact_enclosure(const HyperSpace& h, const LazyTree& t, unsigned n);
inline CompactApprox compact_enclosure(const HyperSpace& h, const LazyTreePtr& t,
                                       unsigned n) {
  return compact_enclosure(h, *t, n);
}

// Exact Hausdorff distance between the unions of two box families under the
// maximum metric.
Rat hausdorff_distance(const CompactApprox& a, const CompactApprox& b);
Rat directed_hausdorff(const std::vector<Box>& from, const std::vector<Box>& to);

// Union of two hyper-coded compacts: merge the component lists, recursively
// uniting children of shared components.
LazyTreePtr union_hyper_trees(LazyTreePtr a, LazyTreePtr b);
std::pair<std::vector<DigitId>, std::vector<LazyTreePtr>> union_merge_node(
    const std::vector<DigitId>& label_a, const std::vector<LazyTreePtr>& kids_a,
    const std::vector<DigitId>& label_b, const std::vector<LazyTreePtr>& kids_b);

// Relabels [K(d1),...,K(ds)] nodes to [d1,...,ds]: the union of a compact
// set of singleton-coded compacts, per Michael's theorem.
LazyTreePtr michael_flatten(LazyTreePtr t);

// General union node: rewrites one level of a compact-set-of-compact-sets
// digit [[d...],...,[d...]] into lifted form.  Children under a width-r
// component must be coded over the hyper alphabet of the r-fold product of
// lifted digits (tuple labels); their projections are computed through the
// transducer machinery and merged per occurrence.
std::pair<std::vector<DigitId>, std::vector<LazyTreePtr>> michael_rewrite(
    const HyperSpace& h, const std::vector<std::vector<DigitId>>& label,
    const std::vector<LazyTreePtr>& children);

// Classical syntactic ball criterion: every center ball fits in some
// component's range and every component covers some center ball.
bool hyper_ball_clauses(const HyperSpace& h, const std::vector<std::vector<Rat>>& centers,
                        const std::vector<DigitId>& parts, const Rat& theta);

// Exact decision of  ball_H(U, theta) ⊆ range([parts]): every center ball
// must be covered by the union of the component ranges, and every component
// must fully cover some center ball.
bool hyper_ball_contained(const HyperSpace& h, const std::vector<std::vector<Rat>>& centers,
                          const std::vector<DigitId>& parts, const Rat& theta);

// Nonempty subsets of the given ids in mask order (the canonical hyper
// alphabet over any unary base alphabet).
Alphabet hyper_alphabet(const std::vector<DigitId>& base_ids);

}  // namespace digitspace
