#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "digitspace/errors.hpp"
#include "digitspace/rat.hpp"

namespace digitspace {

using DigitId = std::string;

// Finite tree with all leaves at equal depth; internal child counts must
// match the label arity of whatever alphabet the tree is read against.
struct FinTree {
  DigitId label;
  std::vector<FinTree> children;

  friend bool operator==(const FinTree&, const FinTree&) = default;
};

// Height with the equal-leaf-depth invariant checked; throws form_error.
unsigned height_of(const FinTree& t);

// Immediate prefix relation between trees of heights n and n+1.
bool is_immediate_prefix(const FinTree& s, const FinTree& t);

class LazyTree;
using LazyTreePtr = std::shared_ptr<const LazyTree>;

// Infinite tree with a strict root and lazily produced, memoized subtrees.
// Forcing is atomic (call_once); a generator that throws is retried on the
// next access.  Forcing ticks the active step budget.
class LazyTree {
 public:
  using Gen = std::function<std::vector<LazyTreePtr>()>;

  LazyTree(DigitId root, Gen gen) : root_(std::move(root)), gen_(std::move(gen)) {}
  LazyTree(DigitId root, std::vector<LazyTreePtr> kids)
      : root_(std::move(root)), kids_(std::move(kids)) {}

  const DigitId& root() const { return root_; }
  const std::vector<LazyTreePtr>& subtrees() const;

 private:
  DigitId root_;
  mutable std::once_flag once_;
  mutable Gen gen_;
  mutable std::vector<LazyTreePtr> kids_;
};

inline LazyTreePtr make_tree(DigitId root, LazyTree::Gen gen) {
  return std::make_shared<LazyTree>(std::move(root), std::move(gen));
}
inline LazyTreePtr make_tree(DigitId root, std::vector<LazyTreePtr> kids) {
  return std::make_shared<LazyTree>(std::move(root), std::move(kids));
}

// Scoped forcing-step budget.  prefix() opens one per call when none is
// active; corecursive blowups then surface as productivity_error instead of
// hanging.
class StepBudget {
 public:
  explicit StepBudget(std::uint64_t limit);
  ~StepBudget();
  StepBudget(const StepBudget&) = delete;
  StepBudget& operator=(const StepBudget&) = delete;

  static void tick();
  static std::uint64_t default_limit();  // DIGITSPACE_STEP_BUDGET or 10^6

 private:
  std::uint64_t saved_limit_, saved_used_;
  bool saved_active_;
};

// A coherent sequence of growing finite trees; producer(n) has height n and
// producer(n) must be an immediate prefix of producer(n+1).  Coherence is
// checked lazily as the reconstructed tree is forced.
struct PrefixChain {
  std::function<FinTree(unsigned)> producer;
};

// Height-n initial segment of an infinite tree.
FinTree prefix(const LazyTree& t, unsigned n);
inline FinTree prefix(const LazyTreePtr& t, unsigned n) { return prefix(*t, n); }

// 2^-m for the least level m <= max_depth where the prefixes differ, or 0
// when they agree to max_depth (an over-approximation of the tree metric).
Rat tree_distance(const LazyTree& t, const LazyTree& u, unsigned max_depth);
inline Rat tree_distance(const LazyTreePtr& t, const LazyTreePtr& u, unsigned max_depth) {
  return tree_distance(*t, *u, max_depth);
}

bool bisim_to_depth(const LazyTree& t, const LazyTree& u, unsigned n);
inline bool bisim_to_depth(const LazyTreePtr& t, const LazyTreePtr& u, unsigned n) {
  return bisim_to_depth(*t, *u, n);
}

// Rebuilds the infinite tree from a coherent chain; prefix(result, n) equals
// producer(n) for every n.  Violations raise coherence_error when forced.
LazyTreePtr from_prefix_chain(PrefixChain chain);

// Constant tree d, d, d, ... (arity from the given child count).
LazyTreePtr constant_tree(const DigitId& id, unsigned arity);

}  // namespace digitspace
