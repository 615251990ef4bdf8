#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <variant>
#include <vector>

#include "digitspace/space.hpp"
#include "digitspace/tree.hpp"

namespace digitspace {

// Symbolic digit alphabet: ids with arities, in a fixed enumeration order.
// Transducers branch over whole alphabets, so constructors take one.
struct Alphabet {
  std::vector<std::pair<DigitId, unsigned>> digits;

  unsigned arity_of(const DigitId& id) const;
  bool contains(const DigitId& id) const;
  bool all_unary() const;
};

Alphabet alphabet_of(const DigitSpace& s);

class FunTree;
using FunPtr = std::shared_ptr<const FunTree>;

struct FunWrite {
  DigitId digit;
  std::vector<FunPtr> children;
};

// Branches on the root digit of input `slot` (1-based); taking branch d
// splices the input's subtrees in place, growing the arity by ar(d) - 1.
struct FunRead {
  std::size_t slot;
  std::vector<std::pair<DigitId, FunPtr>> branches;
};

using FunNode = std::variant<FunWrite, FunRead>;

// Read/write transducer tree coding a uniformly continuous map.  Nodes are
// produced lazily and memoized, so corecursive constructors and symbolic
// composition are cheap until observed.
class FunTree {
 public:
  using Gen = std::function<FunNode()>;

  FunTree(unsigned arity, Gen gen) : arity_(arity), gen_(std::move(gen)) {}
  FunTree(unsigned arity, FunNode node)
      : arity_(arity), node_(std::make_unique<FunNode>(std::move(node))) {}

  unsigned arity() const { return arity_; }
  const FunNode& node() const;

 private:
  unsigned arity_;
  mutable std::once_flag once_;
  mutable Gen gen_;
  mutable std::unique_ptr<FunNode> node_;
};

inline FunPtr make_fun(unsigned arity, FunTree::Gen gen) {
  return std::make_shared<FunTree>(arity, std::move(gen));
}
inline FunPtr make_fun(unsigned arity, FunNode node) {
  return std::make_shared<FunTree>(arity, std::move(node));
}

// DIGITSPACE_READ_FUEL or 64: admissible consecutive reads per path.
unsigned default_read_fuel();

// Runs the transducer on input trees.  Reads resolve strictly up to the
// first write (bounded by the fuel), everything below stays lazy.
LazyTreePtr apply(FunPtr f, std::vector<LazyTreePtr> inputs, unsigned read_fuel = 0);

// Symbolic composition f after (g_1 x ... x g_k); normalizes on demand.
FunPtr compose(FunPtr f, std::vector<FunPtr> gs, unsigned read_fuel = 0);

// Identity transducer: copy the single input.
FunPtr id_fun(const Alphabet& a);

// Projection X^n -> X onto component i (1-based).
FunPtr project_fun(const Alphabet& a, unsigned n, unsigned i);

// Diagonal X -> X^n (uniform-arity alphabets only); output digits are the
// n-fold tuples <d,...,d>.
FunPtr diag_fun(const Alphabet& a, unsigned n);

// Node-for-node relabelling; the relabelled digit must keep its arity.
FunPtr relabel_fun(const Alphabet& in, std::function<DigitId(DigitId)> rename);

// f x g on disjoint argument blocks; f's reads are driven first.  Only
// write arity 1 is representable in this node format (see union_fun).
FunPtr pair_fun(FunPtr f, FunPtr g);

// x -> {x} into the hyperspace alphabet; base must be unary.
FunPtr singleton_fun(const Alphabet& base);

// (f u g)(x, y) = f(x) u g(y) for compact-valued f, g (hyper write labels).
// Heads writing the same single digit are merged; otherwise the labels are
// concatenated (components may repeat, the set semantics is unaffected).
FunPtr union_fun(FunPtr f, FunPtr g);

// K(f) for unary f between unary-digit alphabets: maps a hyper-coded
// compact through f pointwise.  hyper_in enumerates the input hyper digits.
FunPtr lift_compact(const Alphabet& hyper_in, FunPtr f);

}  // namespace digitspace
