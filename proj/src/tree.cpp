#include "digitspace/tree.hpp"

#include <cstdlib>
#include <optional>

namespace digitspace {

namespace {

struct BudgetState {
  std::uint64_t limit = 0;
  std::uint64_t used = 0;
  bool active = false;
};

thread_local BudgetState budget_state;

}  // namespace

StepBudget::StepBudget(std::uint64_t limit)
    : saved_limit_(budget_state.limit),
      saved_used_(budget_state.used),
      saved_active_(budget_state.active) {
  budget_state = {limit, 0, true};
}

StepBudget::~StepBudget() {
  budget_state = {saved_limit_, saved_used_, saved_active_};
}

void StepBudget::tick() {
  if (!budget_state.active) return;
  if (++budget_state.used > budget_state.limit)
    throw productivity_error("step budget exhausted while forcing a lazy tree");
}

std::uint64_t StepBudget::default_limit() {
  if (const char* env = std::getenv("DIGITSPACE_STEP_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 1000000;
}

const std::vector<LazyTreePtr>& LazyTree::subtrees() const {
  StepBudget::tick();
  std::call_once(once_, [this] {
    if (gen_) {
      kids_ = gen_();
      gen_ = nullptr;
    }
  });
  return kids_;
}

unsigned height_of(const FinTree& t) {
  if (t.children.empty()) return 0;
  unsigned h = height_of(t.children.front());
  for (std::size_t i = 1; i < t.children.size(); ++i)
    if (height_of(t.children[i]) != h)
      throw form_error("finite tree has leaves at unequal depths");
  return h + 1;
}

bool is_immediate_prefix(const FinTree& s, const FinTree& t) {
  if (height_of(s) + 1 != height_of(t))
    throw arity_error("is_immediate_prefix: heights must differ by one");
  struct Rec {
    static bool go(const FinTree& a, const FinTree& b) {
      if (a.label != b.label) return false;
      if (a.children.empty()) return true;
      if (a.children.size() != b.children.size()) return false;
      for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!go(a.children[i], b.children[i])) return false;
      return true;
    }
  };
  return Rec::go(s, t);
}

namespace {

FinTree prefix_rec(const LazyTree& t, unsigned n) {
  FinTree out{t.root(), {}};
  if (n == 0) return out;
  const auto& kids = t.subtrees();
  out.children.reserve(kids.size());
  for (const auto& k : kids) out.children.push_back(prefix_rec(*k, n - 1));
  return out;
}

// Least level <= depth_left at which the two trees differ.
std::optional<unsigned> first_diff(const LazyTree& t, const LazyTree& u,
                                   unsigned depth_left) {
  if (t.root() != u.root()) return 0u;
  if (depth_left == 0) return std::nullopt;
  const auto& tk = t.subtrees();
  const auto& uk = u.subtrees();
  if (tk.size() != uk.size())
    throw arity_error("tree comparison: equal labels with different child counts");
  std::optional<unsigned> best;
  for (std::size_t i = 0; i < tk.size(); ++i) {
    auto d = first_diff(*tk[i], *uk[i], depth_left - 1);
    if (d && (!best || *d < *best)) best = d;
    if (best && *best == 0) break;
  }
  if (best) return *best + 1;
  return std::nullopt;
}

}  // namespace

FinTree prefix(const LazyTree& t, unsigned n) {
  StepBudget scope(StepBudget::default_limit());
  return prefix_rec(t, n);
}

Rat tree_distance(const LazyTree& t, const LazyTree& u, unsigned max_depth) {
  StepBudget scope(StepBudget::default_limit());
  auto d = first_diff(t, u, max_depth);
  if (!d) return Rat(0);
  return pow2(-static_cast<long>(*d));
}

bool bisim_to_depth(const LazyTree& t, const LazyTree& u, unsigned n) {
  StepBudget scope(StepBudget::default_limit());
  return !first_diff(t, u, n).has_value();
}

namespace {

using ChainFn = std::function<FinTree(unsigned)>;

LazyTreePtr chain_node(const std::shared_ptr<const ChainFn>& chain) {
  FinTree t0 = (*chain)(0);
  if (!t0.children.empty())
    throw coherence_error("prefix chain: producer(0) must be a height-0 tree");
  DigitId root = t0.label;
  auto gen = [chain, root]() -> std::vector<LazyTreePtr> {
    FinTree t1 = (*chain)(1);
    if (t1.label != root)
      throw coherence_error("prefix chain: root label changed between levels");
    const std::size_t arity = t1.children.size();
    std::vector<LazyTreePtr> kids;
    kids.reserve(arity);
    for (std::size_t i = 0; i < arity; ++i) {
      auto sub = std::make_shared<const ChainFn>([chain, root, arity, i](unsigned n) {
        FinTree t = (*chain)(n + 1);
        if (t.label != root || t.children.size() != arity)
          throw coherence_error("prefix chain: level disagrees with committed node");
        return t.children[i];
      });
      kids.push_back(chain_node(sub));
    }
    return kids;
  };
  return make_tree(std::move(root), std::move(gen));
}

}  // namespace

LazyTreePtr from_prefix_chain(PrefixChain chain) {
  auto fn = std::make_shared<const ChainFn>(std::move(chain.producer));
  return chain_node(fn);
}

LazyTreePtr constant_tree(const DigitId& id, unsigned arity) {
  auto self = std::make_shared<LazyTreePtr>();
  auto gen = [self, arity]() { return std::vector<LazyTreePtr>(arity, *self); };
  *self = make_tree(id, std::move(gen));
  return *self;
}

}  // namespace digitspace
