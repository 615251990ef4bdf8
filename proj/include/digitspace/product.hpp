#pragma once

#include "digitspace/space.hpp"
#include "digitspace/tree.hpp"

namespace digitspace {

// Product of digit spaces under the maximum metric.  Factor digits are
// padded to the common arity first; the product digits are all tuples of
// padded factor digits, acting coordinatewise, enumerated lexicographically
// in factor order under tuple ids <d1,...,dn>.
struct ProductSpace {
  std::vector<DigitSpace> factors;   // as given
  std::vector<DigitSpace> padded;    // digits padded to common_arity
  unsigned common_arity;             // s_D
  std::vector<std::size_t> offsets;  // coordinate offset of each factor
  DigitSpace space;                  // the product as a digit space
};

ProductSpace product_space(std::vector<DigitSpace> factors);

// Digit that ignores trailing argument blocks beyond the original arity.
// The right inverse fills ignored blocks with the fill point (typically the
// space's base point).
Digit pad_arity(const Digit& d, unsigned s, const std::vector<Rat>& fill);

// Component i of a product-coded tuple, corecursively.  The result ranges
// over the padded factor alphabet.
LazyTreePtr project_tree(const ProductSpace& p, std::size_t i, LazyTreePtr t);

// Tuple of factor-coded points as a product tree.  Inputs must range over
// the padded factor alphabets (every node with common_arity children).
LazyTreePtr tuple_tree(const ProductSpace& p, std::vector<LazyTreePtr> parts);

}  // namespace digitspace
