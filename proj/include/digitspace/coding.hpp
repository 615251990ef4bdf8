#pragma once

#include <functional>

#include "digitspace/dyadic.hpp"
#include "digitspace/space.hpp"
#include "digitspace/tree.hpp"

namespace digitspace {

// Regular Cauchy data: query(n) answers a dyadic tuple within 2^-n of the
// represented point.  Queries must be mutually consistent; they need not be
// idempotent.
struct CauchyOracle {
  std::size_t dim = 1;
  std::function<std::vector<Dyadic>(unsigned)> query;
};

// Arity of a finite tree read against a space's alphabet: leaf labels
// contribute their digit arity, internal nodes the sum over children.
unsigned tree_arity(const DigitSpace& s, const FinTree& t);

// Exact enclosure of the image of seed under the map the finite tree
// denotes.  seed must have tree_arity * dim coordinates inside the space.
Box finite_map_enclosure(const DigitSpace& s, const FinTree& t, const Box& seed);

// Enclosure of val(T) at depth n: the height-n prefix applied to full
// powers of the space.  Nested in n, width <= q^n * M.
Box value_enclosure(const DigitSpace& s, const LazyTree& t, unsigned n);
inline Box value_enclosure(const DigitSpace& s, const LazyTreePtr& t, unsigned n) {
  return value_enclosure(s, *t, n);
}

// Tree-to-Cauchy direction: the answer at n is a dyadic point of the
// enclosure at depth j(n+1), hence within 2^-n of val(T).
CauchyOracle tree_to_cauchy(const DigitSpace& s, LazyTreePtr t);

// Cauchy-to-tree direction.  Corecursively queries the oracle just beyond
// half the well-covering number, picks a digit, and threads the oracle
// through the digit's affine right inverse; the inverse's Lipschitz
// constant gives the exact precision transport.  Inconsistent oracles
// raise oracle_error when detected.
LazyTreePtr cauchy_to_tree(const DigitSpace& s, CauchyOracle oracle);

// Finite tree S with rho(u, f_S(z^arity)) < 2^-n, by the recursive
// refinement procedure with recursion depth j(n) and per-step slack
// q^k * M / j(n+1).  The bound is re-checked exactly on the result.
FinTree basic_to_tree(const DigitSpace& s, const std::vector<Rat>& u, unsigned n);

// f_S(z, ..., z) computed exactly.
std::vector<Rat> dense_base_point(const DigitSpace& s, const FinTree& t);

// Oracle for an exact rational point (dyadic rounding per query).
CauchyOracle exact_point_oracle(std::vector<Rat> x);

}  // namespace digitspace
