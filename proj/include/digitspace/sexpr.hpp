#pragma once

#include <string>
#include <vector>

namespace digitspace {

// Minimal s-expression reader.  Atoms may carry balanced <>, [] and ()
// groups (digit ids like [K(-1),K(1)] or <0,1>); a '(' only opens a list at
// atom boundaries.
struct SExpr {
  bool is_atom = false;
  std::string atom;
  std::vector<SExpr> items;
};

SExpr parse_sexpr(const std::string& text);

}  // namespace digitspace
