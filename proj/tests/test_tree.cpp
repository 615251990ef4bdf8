#include <doctest.h>

#include <atomic>
#include <thread>

#include "digitspace/tree.hpp"
#include "testutil.hpp"

using namespace digitspace;

TEST_CASE("prefix of constant streams and trees") {
  auto ones = constant_tree("1", 1);
  FinTree p0 = prefix(ones, 0);
  CHECK(p0 == FinTree{"1", {}});
  FinTree p2 = prefix(ones, 2);
  CHECK(p2 == FinTree{"1", {FinTree{"1", {FinTree{"1", {}}}}}});

  auto node = constant_tree("b", 2);
  FinTree q1 = prefix(node, 1);
  CHECK(q1.label == "b");
  REQUIRE(q1.children.size() == 2);
  CHECK(q1.children[0] == FinTree{"b", {}});
}

TEST_CASE("immediate prefix relation") {
  FinTree leaf0{"0", {}};
  FinTree chain01{"0", {FinTree{"1", {}}}};
  FinTree chain10{"1", {FinTree{"0", {}}}};
  CHECK(is_immediate_prefix(leaf0, chain01));
  CHECK_FALSE(is_immediate_prefix(leaf0, chain10));
  CHECK_THROWS_AS(is_immediate_prefix(leaf0, leaf0), arity_error);

  DigitSpace sd = signed_digit_space();
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    auto t = dstest::random_tree(sd, seed);
    for (unsigned n = 0; n < 6; ++n) CHECK(is_immediate_prefix(prefix(t, n), prefix(t, n + 1)));
  }
}

TEST_CASE("tree distance") {
  DigitSpace sd = signed_digit_space();
  auto ones = dstest::stream_of(sd, {"1"});
  auto one_zero = dstest::stream_of(sd, {"1", "0", "0"});
  auto zeros = dstest::stream_of(sd, {"0"});
  CHECK(tree_distance(ones, ones, 20) == 0);
  CHECK(tree_distance(ones, one_zero, 20) == Rat(1, 2));
  CHECK(tree_distance(ones, zeros, 20) == 1);
  CHECK(bisim_to_depth(ones, one_zero, 0));
  CHECK_FALSE(bisim_to_depth(ones, one_zero, 1));

  // Ultrametric inequality on random triples at bounded depth.
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto t = dstest::random_tree(sd, dstest::mix(seed, 1));
    auto u = dstest::random_tree(sd, dstest::mix(seed, 2));
    auto v = dstest::random_tree(sd, dstest::mix(seed, 3));
    Rat tu = tree_distance(t, u, 12), tv = tree_distance(t, v, 12),
        vu = tree_distance(v, u, 12);
    CHECK(tu <= std::max(tv, vu));
  }
}

TEST_CASE("from_prefix_chain rebuilds the tree") {
  DigitSpace sd = signed_digit_space();

  PrefixChain constant{[](unsigned n) {
    FinTree t{"0", {}};
    for (unsigned i = 0; i < n; ++i) t = FinTree{"0", {t}};
    return t;
  }};
  auto rebuilt = from_prefix_chain(constant);
  CHECK(bisim_to_depth(rebuilt, constant_tree("0", 1), 16));

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto t = dstest::random_tree(sd, dstest::mix(seed, 11));
    auto chained = from_prefix_chain(PrefixChain{[t](unsigned n) { return prefix(t, n); }});
    CHECK(bisim_to_depth(chained, t, 12));
    for (unsigned n = 0; n <= 8; ++n) CHECK(prefix(chained, n) == prefix(t, n));
  }
}

TEST_CASE("incoherent chains are rejected when forced") {
  PrefixChain flip{[](unsigned n) {
    // Root label flips from level 2 on.
    FinTree t{n >= 2 ? "1" : "0", {}};
    for (unsigned i = 0; i < n; ++i) t = FinTree{t.label, {t}};
    return t;
  }};
  auto bad = from_prefix_chain(flip);
  CHECK_THROWS_AS(prefix(bad, 3), coherence_error);
}

TEST_CASE("forcing is memoized and stable under concurrency") {
  auto counter = std::make_shared<std::atomic<int>>(0);
  auto inner = constant_tree("0", 1);
  auto t = make_tree("0", LazyTree::Gen([counter, inner]() {
                       ++*counter;
                       return std::vector<LazyTreePtr>{inner};
                     }));
  std::vector<std::thread> workers;
  std::vector<const std::vector<LazyTreePtr>*> seen(8, nullptr);
  for (int i = 0; i < 8; ++i)
    workers.emplace_back([&, i] { seen[i] = &t->subtrees(); });
  for (auto& w : workers) w.join();
  CHECK(counter->load() == 1);
  for (int i = 1; i < 8; ++i) CHECK(seen[i] == seen[0]);
  t->subtrees();
  CHECK(counter->load() == 1);
}

TEST_CASE("step budget catches non-productive forcing") {
  auto bomb = make_tree("0", LazyTree::Gen([]() -> std::vector<LazyTreePtr> {
                          for (;;) StepBudget::tick();
                        }));
  CHECK_THROWS_AS(prefix(bomb, 1), productivity_error);
}
