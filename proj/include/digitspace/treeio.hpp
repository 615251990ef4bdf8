#pragma once

#include <string>

#include "digitspace/functree.hpp"
#include "digitspace/space.hpp"
#include "digitspace/tree.hpp"

namespace digitspace {

// Finite trees as nested (digitId child child ...) s-expressions; a leaf is
// (id) or a bare id.
FinTree parse_fin_tree(const std::string& text);
std::string show_fin_tree(const FinTree& t);

// Infinite trees: either a plain finite s-expression (usable down to its
// leaves, deeper forcing raises productivity_error) or cyclic definitions
//   (letrec ((name expr) ...) body)
// where bound names may appear as subtrees.
LazyTreePtr parse_lazy_tree(const std::string& text);

// Arity of a possibly composite digit id over a base space: tuples take the
// maximum component arity, hyper lists their length, lifted digits 1.
unsigned id_arity(const DigitSpace& base, const DigitId& id);

// Transducers:
//   (W e c1 ... ck) | (R i (d1 -> t1) ... (dm -> tm)) | name
// optionally wrapped in (letrec ((name arity expr) ...) body); arities of
// letrec bindings are declared, everything else is inferred bottom-up
// against the base space's digit arities.
FunPtr parse_fun_tree(const std::string& text, const DigitSpace& base);

}  // namespace digitspace
