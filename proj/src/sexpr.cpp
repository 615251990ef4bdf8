#include "digitspace/sexpr.hpp"

#include <cctype>

#include "digitspace/errors.hpp"

namespace digitspace {

namespace {

struct Parser {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && (std::isspace(static_cast<unsigned char>(s[pos])) || s[pos] == ';')) {
      if (s[pos] == ';') {  // comment to end of line
        while (pos < s.size() && s[pos] != '\n') ++pos;
      } else {
        ++pos;
      }
    }
  }

  std::string atom() {
    std::string out;
    int depth = 0;
    while (pos < s.size()) {
      char c = s[pos];
      if (depth == 0 &&
          (std::isspace(static_cast<unsigned char>(c)) || c == ')' ||
           (c == '(' && out.empty())))
        break;
      if (c == '<' || c == '[' || c == '(') ++depth;
      if (c == ']' || c == ')') {
        if (depth == 0) break;
        --depth;
      }
      if (c == '>' && depth > 0) --depth;  // a depth-0 '>' is plain (the -> arrow)
      out += c;
      ++pos;
    }
    if (out.empty()) throw parse_error("empty atom in s-expression");
    if (depth != 0) throw parse_error("unbalanced brackets in atom '" + out + "'");
    return out;
  }

  SExpr expr() {
    skip_ws();
    if (pos >= s.size()) throw parse_error("unexpected end of s-expression");
    if (s[pos] == '(') {
      ++pos;
      SExpr out;
      for (;;) {
        skip_ws();
        if (pos >= s.size()) throw parse_error("unclosed '(' in s-expression");
        if (s[pos] == ')') {
          ++pos;
          return out;
        }
        out.items.push_back(expr());
      }
    }
    if (s[pos] == ')') throw parse_error("unexpected ')'");
    SExpr out;
    out.is_atom = true;
    out.atom = atom();
    return out;
  }
};

}  // namespace

SExpr parse_sexpr(const std::string& text) {
  Parser p{text};
  SExpr e = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) throw parse_error("trailing input after s-expression");
  return e;
}

}  // namespace digitspace
