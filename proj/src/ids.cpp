#include "digitspace/ids.hpp"

#include "digitspace/errors.hpp"

namespace digitspace {

namespace {

std::string join(const std::vector<std::string>& parts, char open, char close) {
  std::string out(1, open);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  out += close;
  return out;
}

// Splits "odelim p1,p2,...,pn cdelim" at depth-0 commas.
std::optional<std::vector<std::string>> split(const std::string& id, char open, char close) {
  if (id.size() < 2 || id.front() != open || id.back() != close) return std::nullopt;
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (std::size_t i = 1; i + 1 < id.size(); ++i) {
    char c = id[i];
    if (c == '<' || c == '[' || c == '(') ++depth;
    if (c == '>' || c == ']' || c == ')') --depth;
    if (depth < 0) return std::nullopt;
    if (c == ',' && depth == 0) {
      if (cur.empty()) return std::nullopt;
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (cur.empty() || depth != 0) return std::nullopt;
  parts.push_back(cur);
  return parts;
}

}  // namespace

std::string make_tuple_id(const std::vector<std::string>& parts) {
  if (parts.empty()) throw form_error("tuple id needs at least one component");
  return join(parts, '<', '>');
}

std::string make_hyper_id(const std::vector<std::string>& parts) {
  if (parts.empty()) throw form_error("hyper id needs at least one component");
  return join(parts, '[', ']');
}

std::string make_lifted_id(const std::string& part) { return "K(" + part + ")"; }

std::optional<std::vector<std::string>> split_tuple_id(const std::string& id) {
  return split(id, '<', '>');
}

std::optional<std::vector<std::string>> split_hyper_id(const std::string& id) {
  return split(id, '[', ']');
}

std::optional<std::string> split_lifted_id(const std::string& id) {
  if (id.size() < 4 || id.compare(0, 2, "K(") != 0 || id.back() != ')') return std::nullopt;
  std::string inner = id.substr(2, id.size() - 3);
  int depth = 0;
  for (char c : inner) {
    if (c == '<' || c == '[' || c == '(') ++depth;
    if (c == '>' || c == ']' || c == ')') --depth;
    if (depth < 0) return std::nullopt;
  }
  if (depth != 0 || inner.empty()) return std::nullopt;
  return inner;
}

}  // namespace digitspace
