#include "digitspace/functree.hpp"

#include <cstdlib>
#include <map>

#include "digitspace/ids.hpp"

namespace digitspace {

unsigned Alphabet::arity_of(const DigitId& id) const {
  for (const auto& [d, ar] : digits)
    if (d == id) return ar;
  throw form_error("digit '" + id + "' not in alphabet");
}

bool Alphabet::contains(const DigitId& id) const {
  for (const auto& [d, ar] : digits)
    if (d == id) return true;
  return false;
}

bool Alphabet::all_unary() const {
  for (const auto& [d, ar] : digits)
    if (ar != 1) return false;
  return true;
}

Alphabet alphabet_of(const DigitSpace& s) {
  Alphabet a;
  a.digits.reserve(s.digits().size());
  for (const auto& d : s.digits()) a.digits.push_back({d.id, d.arity});
  return a;
}

const FunNode& FunTree::node() const {
  StepBudget::tick();
  std::call_once(once_, [this] {
    if (gen_) {
      node_ = std::make_unique<FunNode>(gen_());
      gen_ = nullptr;
    }
  });
  return *node_;
}

unsigned default_read_fuel() {
  if (const char* env = std::getenv("DIGITSPACE_READ_FUEL")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return 64;
}

namespace {

const FunPtr& branch_for(const FunRead& r, const DigitId& d) {
  for (const auto& [id, t] : r.branches)
    if (id == d) return t;
  throw form_error("transducer has no branch for digit '" + d + "'");
}

unsigned children_arity_sum(const std::vector<FunPtr>& cs) {
  unsigned sum = 0;
  for (const auto& c : cs) sum += c->arity();
  return sum;
}

}  // namespace

LazyTreePtr apply(FunPtr f, std::vector<LazyTreePtr> args, unsigned read_fuel) {
  if (read_fuel == 0) read_fuel = default_read_fuel();
  if (args.size() != f->arity()) throw arity_error("apply: argument count mismatch");
  unsigned reads = 0;
  for (;;) {
    StepBudget::tick();
    const FunNode& n = f->node();
    if (const auto* w = std::get_if<FunWrite>(&n)) {
      if (children_arity_sum(w->children) != args.size())
        throw arity_error("apply: write node partitions the wrong argument count");
      auto children = w->children;
      auto shared = std::make_shared<std::vector<LazyTreePtr>>(std::move(args));
      auto gen = [children, shared, read_fuel]() {
        std::vector<LazyTreePtr> kids;
        kids.reserve(children.size());
        std::size_t off = 0;
        for (const auto& c : children) {
          std::vector<LazyTreePtr> slice(shared->begin() + off,
                                         shared->begin() + off + c->arity());
          off += c->arity();
          kids.push_back(apply(c, std::move(slice), read_fuel));
        }
        return kids;
      };
      return make_tree(w->digit, std::move(gen));
    }
    const auto& r = std::get<FunRead>(n);
    if (r.slot < 1 || r.slot > args.size())
      throw arity_error("apply: read slot out of range");
    const LazyTreePtr& input = args[r.slot - 1];
    const FunPtr& next = branch_for(r, input->root());
    const auto& subs = input->subtrees();
    std::vector<LazyTreePtr> spliced;
    spliced.reserve(args.size() + subs.size() - 1);
    spliced.insert(spliced.end(), args.begin(), args.begin() + (r.slot - 1));
    spliced.insert(spliced.end(), subs.begin(), subs.end());
    spliced.insert(spliced.end(), args.begin() + r.slot, args.end());
    args = std::move(spliced);
    f = next;
    if (++reads > read_fuel)
      throw productivity_error("apply: read fuel exhausted without a write");
  }
}

FunPtr compose(FunPtr f, std::vector<FunPtr> gs, unsigned read_fuel) {
  if (read_fuel == 0) read_fuel = default_read_fuel();
  if (gs.size() != f->arity()) throw arity_error("compose: argument count mismatch");
  unsigned arity = 0;
  for (const auto& g : gs) arity += g->arity();
  auto shared = std::make_shared<std::vector<FunPtr>>(std::move(gs));
  auto gen = [f, shared, read_fuel]() -> FunNode {
    FunPtr cur = f;
    std::vector<FunPtr> args = *shared;
    unsigned reads = 0;
    for (;;) {
      StepBudget::tick();
      const FunNode& n = cur->node();
      if (const auto* w = std::get_if<FunWrite>(&n)) {
        if (children_arity_sum(w->children) != args.size())
          throw arity_error("compose: write node partitions the wrong argument count");
        FunWrite out{w->digit, {}};
        out.children.reserve(w->children.size());
        std::size_t off = 0;
        for (const auto& c : w->children) {
          std::vector<FunPtr> slice(args.begin() + off, args.begin() + off + c->arity());
          off += c->arity();
          out.children.push_back(compose(c, std::move(slice), read_fuel));
        }
        return out;
      }
      const auto& r = std::get<FunRead>(n);
      if (r.slot < 1 || r.slot > args.size())
        throw arity_error("compose: read slot out of range");
      const FunPtr& gi = args[r.slot - 1];
      const FunNode& gn = gi->node();
      if (const auto* gw = std::get_if<FunWrite>(&gn)) {
        // Descend f's branch for the digit g writes; g's children replace g.
        const FunPtr& next = branch_for(r, gw->digit);
        std::vector<FunPtr> spliced;
        spliced.reserve(args.size() + gw->children.size() - 1);
        spliced.insert(spliced.end(), args.begin(), args.begin() + (r.slot - 1));
        spliced.insert(spliced.end(), gw->children.begin(), gw->children.end());
        spliced.insert(spliced.end(), args.begin() + r.slot, args.end());
        args = std::move(spliced);
        cur = next;
        if (++reads > read_fuel)
          throw productivity_error("compose: read fuel exhausted without a write");
        continue;
      }
      // g reads: surface the read at the global slot index.
      const auto& gr = std::get<FunRead>(gn);
      std::size_t global = gr.slot;
      for (std::size_t k = 0; k + 1 < r.slot; ++k) global += args[k]->arity();
      FunRead out{global, {}};
      out.branches.reserve(gr.branches.size());
      for (const auto& [d, branch] : gr.branches) {
        std::vector<FunPtr> next_args = args;
        next_args[r.slot - 1] = branch;
        out.branches.push_back({d, compose(cur, std::move(next_args), read_fuel)});
      }
      return out;
    }
  };
  return make_fun(arity, std::move(gen));
}

FunPtr id_fun(const Alphabet& a) {
  auto self = std::make_shared<FunPtr>();
  auto gen = [a, self]() -> FunNode {
    FunRead r{1, {}};
    r.branches.reserve(a.digits.size());
    for (const auto& [d, ar] : a.digits) {
      FunWrite w{d, std::vector<FunPtr>(ar, *self)};
      r.branches.push_back({d, make_fun(ar, FunNode(std::move(w)))});
    }
    return r;
  };
  *self = make_fun(1, std::move(gen));
  return *self;
}

namespace {

struct ProjFamily {
  Alphabet a;
  std::map<std::pair<unsigned, unsigned>, FunPtr> memo;
  std::mutex mu;
};

FunPtr proj_member(const std::shared_ptr<ProjFamily>& fam, unsigned n, unsigned i) {
  if (i < 1 || i > n) throw arity_error("projection index out of range");
  {
    std::lock_guard<std::mutex> lock(fam->mu);
    auto it = fam->memo.find({n, i});
    if (it != fam->memo.end()) return it->second;
  }
  auto gen = [fam, n, i]() -> FunNode {
    FunRead r{i, {}};
    r.branches.reserve(fam->a.digits.size());
    for (const auto& [d, ar] : fam->a.digits) {
      // After the splice the copied subtrees occupy slots i..i+ar-1.
      // Blocks must be contiguous, so the first child swallows the leading
      // slots and copies its last one, the final child swallows the
      // trailing slots and copies its first one.
      FunWrite w{d, {}};
      w.children.reserve(ar);
      if (ar == 1) {
        w.children.push_back(proj_member(fam, n, i));
      } else {
        w.children.push_back(proj_member(fam, i, i));
        for (unsigned k = 2; k < ar; ++k) w.children.push_back(proj_member(fam, 1, 1));
        w.children.push_back(proj_member(fam, n - i + 1, 1));
      }
      r.branches.push_back({d, make_fun(n + ar - 1, FunNode(std::move(w)))});
    }
    return r;
  };
  FunPtr p = make_fun(n, std::move(gen));
  std::lock_guard<std::mutex> lock(fam->mu);
  auto [it, inserted] = fam->memo.insert({{n, i}, p});
  return it->second;
}

}  // namespace

FunPtr project_fun(const Alphabet& a, unsigned n, unsigned i) {
  auto fam = std::make_shared<ProjFamily>();
  fam->a = a;
  return proj_member(fam, n, i);
}

FunPtr diag_fun(const Alphabet& a, unsigned n) {
  if (n == 0) throw arity_error("diag: need at least one copy");
  unsigned s = 0;
  for (const auto& [d, ar] : a.digits) {
    if (s == 0) s = ar;
    if (ar != s) throw unsupported_error("diag: alphabet must have uniform arity (pad first)");
  }
  auto self = std::make_shared<FunPtr>();
  auto gen = [a, n, s, self]() -> FunNode {
    FunRead r{1, {}};
    r.branches.reserve(a.digits.size());
    for (const auto& [d, ar] : a.digits) {
      FunWrite w{make_tuple_id(std::vector<std::string>(n, d)),
                 std::vector<FunPtr>(ar, *self)};
      r.branches.push_back({d, make_fun(ar, FunNode(std::move(w)))});
    }
    return r;
  };
  *self = make_fun(1, std::move(gen));
  return *self;
}

FunPtr relabel_fun(const Alphabet& in, std::function<DigitId(DigitId)> rename) {
  auto self = std::make_shared<FunPtr>();
  auto gen = [in, rename, self]() -> FunNode {
    FunRead r{1, {}};
    r.branches.reserve(in.digits.size());
    for (const auto& [d, ar] : in.digits) {
      FunWrite w{rename(d), std::vector<FunPtr>(ar, *self)};
      r.branches.push_back({d, make_fun(ar, FunNode(std::move(w)))});
    }
    return r;
  };
  *self = make_fun(1, std::move(gen));
  return *self;
}

FunPtr pair_fun(FunPtr f, FunPtr g) {
  const unsigned arity = f->arity() + g->arity();
  auto gen = [f, g]() -> FunNode {
    const FunNode& fn = f->node();
    if (const auto* fr = std::get_if<FunRead>(&fn)) {
      FunRead out{fr->slot, {}};
      out.branches.reserve(fr->branches.size());
      for (const auto& [d, br] : fr->branches) out.branches.push_back({d, pair_fun(br, g)});
      return out;
    }
    const FunNode& gn = g->node();
    if (const auto* gr = std::get_if<FunRead>(&gn)) {
      FunRead out{f->arity() + gr->slot, {}};
      out.branches.reserve(gr->branches.size());
      for (const auto& [d, br] : gr->branches) out.branches.push_back({d, pair_fun(f, br)});
      return out;
    }
    const auto& fw = std::get<FunWrite>(fn);
    const auto& gw = std::get<FunWrite>(gn);
    if (fw.children.size() != 1 || gw.children.size() != 1)
      throw unsupported_error(
          "pair: write arity above 1 would interleave argument blocks; "
          "this node format cannot express the required reshuffle");
    FunWrite out{make_tuple_id({fw.digit, gw.digit}),
                 {pair_fun(fw.children[0], gw.children[0])}};
    return out;
  };
  return make_fun(arity, std::move(gen));
}

FunPtr singleton_fun(const Alphabet& base) {
  if (!base.all_unary()) throw unsupported_error("singleton map needs a unary alphabet");
  return relabel_fun(base, [](DigitId d) { return make_hyper_id({std::move(d)}); });
}

FunPtr union_fun(FunPtr f, FunPtr g) {
  const unsigned arity = f->arity() + g->arity();
  auto gen = [f, g]() -> FunNode {
    const FunNode& fn = f->node();
    if (const auto* fr = std::get_if<FunRead>(&fn)) {
      FunRead out{fr->slot, {}};
      for (const auto& [d, br] : fr->branches) out.branches.push_back({d, union_fun(br, g)});
      return out;
    }
    const FunNode& gn = g->node();
    if (const auto* gr = std::get_if<FunRead>(&gn)) {
      FunRead out{f->arity() + gr->slot, {}};
      for (const auto& [d, br] : gr->branches) out.branches.push_back({d, union_fun(f, br)});
      return out;
    }
    const auto& fw = std::get<FunWrite>(fn);
    const auto& gw = std::get<FunWrite>(gn);
    auto fparts = split_hyper_id(fw.digit);
    auto gparts = split_hyper_id(gw.digit);
    if (!fparts || !gparts)
      throw form_error("union: both sides must write hyper digits");
    if (fparts->size() == 1 && gparts->size() == 1 && (*fparts)[0] == (*gparts)[0]) {
      FunWrite out{fw.digit, {union_fun(fw.children[0], gw.children[0])}};
      return out;
    }
    std::vector<std::string> parts = *fparts;
    parts.insert(parts.end(), gparts->begin(), gparts->end());
    FunWrite out{make_hyper_id(parts), {}};
    out.children.reserve(fw.children.size() + gw.children.size());
    out.children.insert(out.children.end(), fw.children.begin(), fw.children.end());
    out.children.insert(out.children.end(), gw.children.begin(), gw.children.end());
    return out;
  };
  return make_fun(arity, std::move(gen));
}

namespace {

// State of the compact lifting: one unary residual per live slot, kept in
// slot order.
FunPtr lift_node(const std::shared_ptr<const Alphabet>& hyper_in,
                 std::vector<FunPtr> state) {
  const unsigned arity = static_cast<unsigned>(state.size());
  auto st = std::make_shared<std::vector<FunPtr>>(std::move(state));
  auto gen = [hyper_in, st]() -> FunNode {
    // Leftmost reading slot, if any.
    for (std::size_t i = 0; i < st->size(); ++i) {
      const FunNode& n = (*st)[i]->node();
      const auto* r = std::get_if<FunRead>(&n);
      if (!r) continue;
      if (r->slot != 1)
        throw form_error("lift: residual transducer must be unary");
      FunRead out{i + 1, {}};
      out.branches.reserve(hyper_in->digits.size());
      for (const auto& [hid, har] : hyper_in->digits) {
        auto parts = split_hyper_id(hid);
        if (!parts || parts->size() != har)
          throw form_error("lift: malformed hyper digit '" + hid + "'");
        std::vector<FunPtr> next(st->begin(), st->begin() + i);
        for (const auto& p : *parts) next.push_back(branch_for(*r, p));
        next.insert(next.end(), st->begin() + i + 1, st->end());
        out.branches.push_back({hid, lift_node(hyper_in, std::move(next))});
      }
      return out;
    }
    // All residuals write: emit one hyper digit listing the written base
    // digits in slot order (components may repeat; set semantics).
    std::vector<std::string> heads;
    std::vector<FunPtr> children;
    heads.reserve(st->size());
    children.reserve(st->size());
    for (const auto& h : *st) {
      const auto& w = std::get<FunWrite>(h->node());
      if (w.children.size() != 1)
        throw unsupported_error("lift: output digits must be unary");
      heads.push_back(w.digit);
      children.push_back(lift_node(hyper_in, {w.children[0]}));
    }
    return FunWrite{make_hyper_id(heads), std::move(children)};
  };
  return make_fun(arity, std::move(gen));
}

}  // namespace

FunPtr lift_compact(const Alphabet& hyper_in, FunPtr f) {
  if (f->arity() != 1) throw unsupported_error("lift: only unary maps can be lifted");
  auto shared = std::make_shared<const Alphabet>(hyper_in);
  return lift_node(shared, {std::move(f)});
}

}  // namespace digitspace
