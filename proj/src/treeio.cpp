#include "digitspace/treeio.hpp"

#include <map>
#include <memory>
#include <sstream>

#include "digitspace/ids.hpp"
#include "digitspace/sexpr.hpp"

namespace digitspace {

namespace {

FinTree fin_from_sexpr(const SExpr& e) {
  if (e.is_atom) return FinTree{e.atom, {}};
  if (e.items.empty() || !e.items[0].is_atom)
    throw parse_error("tree node must start with a digit id");
  FinTree out{e.items[0].atom, {}};
  out.children.reserve(e.items.size() - 1);
  for (std::size_t i = 1; i < e.items.size(); ++i)
    out.children.push_back(fin_from_sexpr(e.items[i]));
  return out;
}

}  // namespace

FinTree parse_fin_tree(const std::string& text) { return fin_from_sexpr(parse_sexpr(text)); }

std::string show_fin_tree(const FinTree& t) {
  std::ostringstream os;
  struct Rec {
    std::ostringstream& os;
    void go(const FinTree& t) {
      os << '(' << t.label;
      for (const auto& c : t.children) {
        os << ' ';
        go(c);
      }
      os << ')';
    }
  };
  Rec{os}.go(t);
  return os.str();
}

namespace {

using TreeEnv = std::map<std::string, std::shared_ptr<LazyTreePtr>>;

LazyTreePtr lazy_from_sexpr(const std::shared_ptr<const SExpr>& e,
                            const std::shared_ptr<const TreeEnv>& env);

LazyTreePtr lazy_child(const SExpr& e, const std::shared_ptr<const TreeEnv>& env) {
  if (e.is_atom) {
    if (env) {
      auto it = env->find(e.atom);
      if (it != env->end()) return *it->second;
    }
    // A bare leaf: no subtrees are defined below it.
    DigitId id = e.atom;
    return make_tree(id, LazyTree::Gen([id]() -> std::vector<LazyTreePtr> {
                       throw productivity_error("finite tree exhausted below leaf '" + id + "'");
                     }));
  }
  auto copy = std::make_shared<const SExpr>(e);
  return lazy_from_sexpr(copy, env);
}

LazyTreePtr lazy_from_sexpr(const std::shared_ptr<const SExpr>& e,
                            const std::shared_ptr<const TreeEnv>& env) {
  if (e->is_atom) return lazy_child(*e, env);
  if (e->items.empty() || !e->items[0].is_atom)
    throw parse_error("tree node must start with a digit id");
  DigitId id = e->items[0].atom;
  if (e->items.size() == 1) {
    // (id) is a leaf, never a reference.
    return make_tree(id, LazyTree::Gen([id]() -> std::vector<LazyTreePtr> {
                       throw productivity_error("finite tree exhausted below leaf '" + id + "'");
                     }));
  }
  auto gen = [e, env]() {
    std::vector<LazyTreePtr> kids;
    kids.reserve(e->items.size() - 1);
    for (std::size_t i = 1; i < e->items.size(); ++i)
      kids.push_back(lazy_child(e->items[i], env));
    return kids;
  };
  return make_tree(std::move(id), std::move(gen));
}

}  // namespace

LazyTreePtr parse_lazy_tree(const std::string& text) {
  SExpr top = parse_sexpr(text);
  if (!top.is_atom && !top.items.empty() && top.items[0].is_atom &&
      top.items[0].atom == "letrec") {
    if (top.items.size() != 3 || top.items[1].is_atom)
      throw parse_error("letrec needs a binding list and a body");
    auto env = std::make_shared<TreeEnv>();
    for (const auto& b : top.items[1].items) {
      if (b.is_atom || b.items.size() != 2 || !b.items[0].is_atom)
        throw parse_error("letrec binding must be (name expr)");
      (*env)[b.items[0].atom] = std::make_shared<LazyTreePtr>();
    }
    auto const_env = std::static_pointer_cast<const TreeEnv>(env);
    for (const auto& b : top.items[1].items) {
      auto expr = std::make_shared<const SExpr>(b.items[1]);
      *(*env)[b.items[0].atom] = lazy_from_sexpr(expr, const_env);
    }
    auto body = std::make_shared<const SExpr>(top.items[2]);
    return lazy_from_sexpr(body, const_env);
  }
  auto expr = std::make_shared<const SExpr>(std::move(top));
  return lazy_from_sexpr(expr, nullptr);
}

unsigned id_arity(const DigitSpace& base, const DigitId& id) {
  if (auto parts = split_hyper_id(id)) return static_cast<unsigned>(parts->size());
  if (split_lifted_id(id)) return 1;
  if (auto parts = split_tuple_id(id)) {
    unsigned a = 0;
    for (const auto& p : *parts) a = std::max(a, id_arity(base, p));
    return a;
  }
  return base.digit(id).arity;
}

namespace {

struct FunEnv {
  std::map<std::string, std::pair<unsigned, std::shared_ptr<FunPtr>>> bindings;
};

FunPtr fun_from_sexpr(const SExpr& e, const DigitSpace& base,
                      const std::shared_ptr<const FunEnv>& env);

// Bottom-up arity inference: a write sums its children, a read undoes the
// splice of the digit it branches on.
unsigned fun_arity(const SExpr& e, const DigitSpace& base,
                   const std::shared_ptr<const FunEnv>& env) {
  if (e.is_atom) {
    if (env) {
      auto it = env->bindings.find(e.atom);
      if (it != env->bindings.end()) return it->second.first;
    }
    throw parse_error("unknown transducer reference '" + e.atom + "'");
  }
  if (e.items.empty() || !e.items[0].is_atom) throw parse_error("malformed transducer node");
  const std::string& head = e.items[0].atom;
  if (head == "W") {
    if (e.items.size() < 2 || !e.items[1].is_atom)
      throw parse_error("(W e c...) needs a digit id");
    unsigned sum = 0;
    for (std::size_t i = 2; i < e.items.size(); ++i) sum += fun_arity(e.items[i], base, env);
    return sum;
  }
  if (head == "R") {
    if (e.items.size() < 3 || !e.items[1].is_atom)
      throw parse_error("(R i (d -> t)...) needs a slot and branches");
    const SExpr& br = e.items[2];
    if (br.is_atom || br.items.size() != 3 || !br.items[0].is_atom ||
        !br.items[1].is_atom || br.items[1].atom != "->")
      throw parse_error("transducer branch must be (d -> t)");
    unsigned branch_ar = fun_arity(br.items[2], base, env);
    unsigned d_ar = id_arity(base, br.items[0].atom);
    if (branch_ar + 1 < d_ar) throw parse_error("branch arity below the spliced digit arity");
    return branch_ar + 1 - d_ar;
  }
  throw parse_error("transducer node must be W or R, got '" + head + "'");
}

FunPtr fun_from_sexpr(const SExpr& e, const DigitSpace& base,
                      const std::shared_ptr<const FunEnv>& env) {
  if (e.is_atom) {
    if (env) {
      auto it = env->bindings.find(e.atom);
      if (it != env->bindings.end()) {
        unsigned arity = it->second.first;
        auto holder = it->second.second;
        return make_fun(arity, FunTree::Gen([holder]() -> FunNode {
                          if (!*holder) throw parse_error("unresolved transducer reference");
                          return (*holder)->node();
                        }));
      }
    }
    throw parse_error("unknown transducer reference '" + e.atom + "'");
  }
  if (e.items.empty() || !e.items[0].is_atom) throw parse_error("malformed transducer node");
  const std::string& head = e.items[0].atom;
  if (head == "W") {
    if (e.items.size() < 2 || !e.items[1].is_atom)
      throw parse_error("(W e c...) needs a digit id");
    FunWrite w{e.items[1].atom, {}};
    for (std::size_t i = 2; i < e.items.size(); ++i)
      w.children.push_back(fun_from_sexpr(e.items[i], base, env));
    unsigned sum = 0;
    for (const auto& c : w.children) sum += c->arity();
    return make_fun(sum, FunNode(std::move(w)));
  }
  if (head == "R") {
    unsigned slot = 0;
    try {
      slot = static_cast<unsigned>(std::stoul(e.items[1].atom));
    } catch (const std::exception&) {
      throw parse_error("read slot must be a number, got '" + e.items[1].atom + "'");
    }
    FunRead r{slot, {}};
    unsigned arity = fun_arity(e, base, env);
    for (std::size_t i = 2; i < e.items.size(); ++i) {
      const SExpr& br = e.items[i];
      if (br.is_atom || br.items.size() != 3 || !br.items[0].is_atom ||
          !br.items[1].is_atom || br.items[1].atom != "->")
        throw parse_error("transducer branch must be (d -> t)");
      r.branches.push_back({br.items[0].atom, fun_from_sexpr(br.items[2], base, env)});
    }
    return make_fun(arity, FunNode(std::move(r)));
  }
  throw parse_error("transducer node must be W or R, got '" + head + "'");
}

}  // namespace

FunPtr parse_fun_tree(const std::string& text, const DigitSpace& base) {
  SExpr top = parse_sexpr(text);
  if (!top.is_atom && !top.items.empty() && top.items[0].is_atom &&
      top.items[0].atom == "letrec") {
    if (top.items.size() != 3 || top.items[1].is_atom)
      throw parse_error("letrec needs a binding list and a body");
    auto env = std::make_shared<FunEnv>();
    for (const auto& b : top.items[1].items) {
      if (b.is_atom || b.items.size() != 3 || !b.items[0].is_atom || !b.items[1].is_atom)
        throw parse_error("letrec transducer binding must be (name arity expr)");
      unsigned arity = 0;
      try {
        arity = static_cast<unsigned>(std::stoul(b.items[1].atom));
      } catch (const std::exception&) {
        throw parse_error("letrec binding arity must be a number");
      }
      env->bindings[b.items[0].atom] = {arity, std::make_shared<FunPtr>()};
    }
    auto const_env = std::static_pointer_cast<const FunEnv>(env);
    for (const auto& b : top.items[1].items)
      *env->bindings[b.items[0].atom].second = fun_from_sexpr(b.items[2], base, const_env);
    return fun_from_sexpr(top.items[2], base, const_env);
  }
  return fun_from_sexpr(top, base, nullptr);
}

}  // namespace digitspace
