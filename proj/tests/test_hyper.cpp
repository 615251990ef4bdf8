#include <doctest.h>

#include <algorithm>

#include "digitspace/hyper.hpp"
#include "digitspace/ids.hpp"
#include "testutil.hpp"

using namespace digitspace;
using dstest::mix;
using dstest::random_hyper_tree;

namespace {

Box iv(const Rat& lo, const Rat& hi) { return Box{Interval(lo, hi)}; }

// Independent enumeration of derived-tree enclosures: walk every component
// choice per level, folding the digit actions directly.
void brute_boxes(const HyperSpace& h, const LazyTree& t, unsigned n,
                 std::vector<DigitId>& word, std::vector<Box>& out) {
  auto parts = split_hyper_id(t.root());
  REQUIRE(parts.has_value());
  for (std::size_t k = 0; k < parts->size(); ++k) {
    word.push_back((*parts)[k]);
    if (n == 0) {
      Box box = h.base().full_box();
      for (auto it = word.rbegin(); it != word.rend(); ++it)
        box = h.base().digit(*it).action.apply(box);
      out.push_back(std::move(box));
    } else {
      brute_boxes(h, *t.subtrees()[k], n - 1, word, out);
    }
    word.pop_back();
  }
}

bool same_box_set(std::vector<Box> a, std::vector<Box> b) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a)
    if (std::find(b.begin(), b.end(), x) == b.end()) return false;
  return true;
}

}  // namespace

TEST_CASE("hyper space enumeration") {
  HyperSpace h = hyper_space(signed_digit_space());
  CHECK(h.digit_sets().size() == 7);
  CHECK(h.alphabet().arity_of("[-1,1]") == 2);
  CHECK(h.alphabet().arity_of("[-1,0,1]") == 3);

  Box full{Interval(Rat(0), Rat(1))};
  std::vector<Rat> base{Rat(0)};
  std::vector<Digit> one;
  one.push_back(make_digit("d", 1, AffineMap(1, 1, {Rat(1, 2)}, {Rat(1, 4)}), full, base));
  // Range [1/4, 3/4] does not cover [0,1]; covering spaces with a single
  // digit must map onto the whole space.
  CHECK_THROWS_AS(DigitSpace(full, Rat(1), Rat(1, 2), Rat(1, 8), base, std::move(one)),
                  domain_error);

  CHECK_THROWS_AS(hyper_space(dstest::binary_mix_space()), unsupported_error);
}

TEST_CASE("compact enclosure of constant hyper trees") {
  HyperSpace h = hyper_space(signed_digit_space());

  CompactApprox single = compact_enclosure(h, constant_tree("[0]", 1), 6);
  REQUIRE(single.boxes.size() == 1);
  CHECK(single.boxes[0][0].contains(Rat(0)));
  CHECK(box_width(single.boxes[0]) <= pow2(-5));

  // Depth 3 composes four two-way choices: sixteen width-1/8 tiles.
  CompactApprox tiles = compact_enclosure(h, constant_tree("[-1,1]", 2), 3);
  CHECK(tiles.boxes.size() == 16);
  for (const auto& b : tiles.boxes) CHECK(box_width(b) == Rat(1, 8));
  CHECK(boxes_cover(h.base().full_box(), tiles.boxes));

  // The fixed point of K = av_-1[K] u av_1[K] is the whole interval.
  CompactApprox ref = make_compact_approx({iv(Rat(-1), Rat(1))}, 0);
  for (unsigned n = 0; n <= 10; ++n) {
    CompactApprox a = compact_enclosure(h, constant_tree("[-1,1]", 2), n);
    CHECK(hausdorff_distance(a, ref) <= pow2(1 - static_cast<long>(n)));
  }
}

TEST_CASE("enclosure boxes respect the depth width bound") {
  HyperSpace h = hyper_space(signed_digit_space());
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto t = random_hyper_tree(h, mix(seed, 55));
    Rat bound = h.base().bound();
    for (unsigned n = 0; n <= 5; ++n) {
      CompactApprox a = compact_enclosure(h, t, n);
      CHECK(a.depth == n);
      for (const auto& b : a.boxes) {
        CHECK(box_contains(h.base().full_box(), b));
        CHECK(box_width(b) <= bound);
      }
      bound *= h.base().factor();
    }
  }
}

TEST_CASE("derived trees enumerate component choices") {
  HyperSpace h = hyper_space(signed_digit_space());
  auto zeros = constant_tree("[0]", 1);
  auto both = constant_tree("[-1,1]", 2);

  std::vector<FinTree> d2 = derived_trees(h, zeros, 2);
  REQUIRE(d2.size() == 1);
  CHECK(d2[0] == FinTree{"0", {FinTree{"0", {FinTree{"0", {}}}}}});

  CHECK(derived_trees(h, both, 1).size() == 4);

  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    auto t = random_hyper_tree(h, mix(seed, 61));
    for (unsigned n = 0; n <= 4; ++n) {
      std::vector<Box> brute;
      std::vector<DigitId> word;
      brute_boxes(h, *t, n, word, brute);
      CompactApprox fast = compact_enclosure(h, t, n);
      std::vector<Box> dedup;
      for (const auto& b : brute)
        if (std::find(dedup.begin(), dedup.end(), b) == dedup.end()) dedup.push_back(b);
      CHECK(same_box_set(fast.boxes, dedup));
    }
  }
}

TEST_CASE("approximations at successive depths stay Hausdorff-close") {
  HyperSpace h = hyper_space(signed_digit_space());
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto t = random_hyper_tree(h, mix(seed, 57));
    for (unsigned n = 0; n <= 4; ++n) {
      Rat bound = h.base().bound();
      for (unsigned i = 0; i < n; ++i) bound *= h.base().factor();
      CompactApprox base_approx = compact_enclosure(h, t, n);
      for (unsigned k = 1; k <= 3; ++k)
        CHECK(hausdorff_distance(base_approx, compact_enclosure(h, t, n + k)) <= bound);
    }
  }
}

TEST_CASE("the hyperspace is covering and well-covering at desk scale") {
  HyperSpace h = hyper_space(signed_digit_space());
  const Rat eps = h.base().well_covering_number();
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    std::size_t count = 1 + mix(seed, 2) % 4;
    std::vector<std::vector<Rat>> centers;
    for (std::size_t i = 0; i < count; ++i)
      centers.push_back({dstest::random_dyadic_in(h.base().full_box()[0], mix(seed, 5 + i))});

    // Covering: the components whose ranges meet U reassemble U exactly
    // (every point sits in the union, every chosen component is met).
    std::vector<DigitId> meets;
    for (const auto& d : h.base().digits())
      for (const auto& u : centers)
        if (box_contains_point(d.range, u)) {
          if (std::find(meets.begin(), meets.end(), d.id) == meets.end())
            meets.push_back(d.id);
          break;
        }
    REQUIRE(!meets.empty());
    for (const auto& u : centers) {
      bool inside = false;
      for (const auto& id : meets)
        if (box_contains_point(h.base().digit(id).range, u)) inside = true;
      CHECK(inside);
    }

    // Well-covering: with theta at most the base number, the components
    // that fully cover some center ball contain the whole Hausdorff ball.
    Rat theta = eps * Rat(1 + static_cast<long>(mix(seed, 7) % 4), 4);
    std::vector<DigitId> anchors;
    for (const auto& d : h.base().digits())
      for (const auto& u : centers)
        if (covers_ball(h.base(), d, u, theta)) {
          if (std::find(anchors.begin(), anchors.end(), d.id) == anchors.end())
            anchors.push_back(d.id);
          break;
        }
    REQUIRE(!anchors.empty());
    CHECK(hyper_ball_contained(h, centers, anchors, theta));
  }
}

TEST_CASE("hausdorff distance on box families") {
  CompactApprox a = make_compact_approx({iv(Rat(-1), Rat(-1))}, 0);
  CompactApprox b = make_compact_approx({iv(Rat(1), Rat(1))}, 0);
  CHECK(hausdorff_distance(a, a) == 0);
  CHECK(hausdorff_distance(a, b) == 2);

  CompactApprox origin = make_compact_approx({iv(Rat(0), Rat(0))}, 0);
  CompactApprox pair =
      make_compact_approx({iv(Rat(-1, 2), Rat(-1, 2)), iv(Rat(1, 2), Rat(1, 2))}, 0);
  CHECK(hausdorff_distance(origin, pair) == Rat(1, 2));
}

TEST_CASE("hausdorff distance in two dimensions") {
  Box b1{Interval(Rat(-3), Rat(-1)), Interval(Rat(-1), Rat(1))};
  Box b2{Interval(Rat(1), Rat(3)), Interval(Rat(-1), Rat(1))};
  Box a{Interval(Rat(-1), Rat(1)), Interval(Rat(0), Rat(0))};
  // Worst point of a sits mid-gap between the two slabs.
  CHECK(directed_hausdorff({a}, {b1, b2}) == 1);
  Box c{Interval(Rat(0), Rat(1)), Interval(Rat(0), Rat(1))};
  Box d{Interval(Rat(2), Rat(3)), Interval(Rat(0), Rat(1))};
  CHECK(directed_hausdorff({c}, {d}) == 2);
  CHECK(directed_hausdorff({d}, {c, d}) == 0);
}

TEST_CASE("union merge of hyper trees") {
  HyperSpace h = hyper_space(signed_digit_space());
  auto a = constant_tree("[1]", 1);
  auto b = random_hyper_tree(h, 99);

  // Full overlap: [1](A) u [1](B) = [1](A u B).
  auto fused = union_hyper_trees(a, constant_tree("[1]", 1));
  CHECK(fused->root() == "[1]");
  CHECK(fused->subtrees().size() == 1);

  // Disjoint: [-1](A) u [1](B) = [-1,1](A, B).
  auto disjoint = union_hyper_trees(constant_tree("[-1]", 1), a);
  CHECK(disjoint->root() == "[-1,1]");
  REQUIRE(disjoint->subtrees().size() == 2);
  CHECK(bisim_to_depth(disjoint->subtrees()[0], constant_tree("[-1]", 1), 10));
  CHECK(bisim_to_depth(disjoint->subtrees()[1], constant_tree("[1]", 1), 10));

  // Value check: boxes of the merge against the union of the boxes.
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto t = random_hyper_tree(h, mix(seed, 71));
    auto u = random_hyper_tree(h, mix(seed, 73));
    auto merged = union_hyper_trees(t, u);
    for (unsigned n = 1; n <= 4; ++n) {
      CompactApprox ma = compact_enclosure(h, merged, n);
      std::vector<Box> both = compact_enclosure(h, t, n).boxes;
      auto more = compact_enclosure(h, u, n).boxes;
      both.insert(both.end(), more.begin(), more.end());
      CompactApprox ub = make_compact_approx(std::move(both), n);
      Rat bound = h.base().bound();
      for (unsigned i = 0; i < n; ++i) bound *= h.base().factor();
      CHECK(hausdorff_distance(ma, ub) <= bound);
    }
  }
}

TEST_CASE("michael flatten relabels lifted nodes") {
  HyperSpace h = hyper_space(signed_digit_space());
  auto flat0 = michael_flatten(constant_tree("[K(0)]", 1));
  CHECK(bisim_to_depth(flat0, constant_tree("[0]", 1), 12));

  auto flat2 = michael_flatten(constant_tree("[K(-1),K(1)]", 2));
  CHECK(bisim_to_depth(flat2, constant_tree("[-1,1]", 2), 12));

  CHECK_THROWS_AS(michael_flatten(constant_tree("[0]", 1)), form_error);

  // Depth-3 value check against the brute-force union of stripped words.
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    auto t = dstest::random_lifted_tree(h, mix(seed, 81));
    auto flat = michael_flatten(t);
    for (unsigned n = 0; n <= 3; ++n) {
      std::vector<Box> brute;
      std::vector<DigitId> word;
      brute_boxes(h, *flat, n, word, brute);  // flattened labels, same words
      CompactApprox fast = compact_enclosure(h, flat, n);
      CompactApprox ref = make_compact_approx(std::move(brute), n);
      CHECK(hausdorff_distance(fast, ref) == 0);
    }
  }
}

TEST_CASE("michael rewrite of a general union node") {
  HyperSpace h = hyper_space(signed_digit_space());

  // A single unary occurrence passes through.
  auto child = dstest::random_lifted_tree(h, 7);
  auto [label1, kids1] = michael_rewrite(h, {{"1"}}, {child});
  CHECK(label1 == std::vector<DigitId>{"K(1)"});
  REQUIRE(kids1.size() == 1);
  CHECK(bisim_to_depth(kids1[0], child, 8));

  // Label [[0],[0,1]]: e-list is (0, 1); M_0 merges the 0-occurrences.
  auto c1 = constant_tree("[K(0)]", 1);
  // Child under [0,1] codes a compact set of pairs of compacts.
  auto c2 = constant_tree("[<K(-1),K(1)>]", 1);
  auto [label2, kids2] = michael_rewrite(h, {{"0"}, {"0", "1"}}, {c1, c2});
  CHECK(label2 == std::vector<DigitId>{"K(0)", "K(1)"});
  REQUIRE(kids2.size() == 2);

  // Semantic contract at depth 2: flatten the rewritten node and compare
  // with the direct union of the component images.
  auto rewritten = make_tree(make_hyper_id(label2), kids2);
  auto flat = michael_flatten(rewritten);
  for (unsigned n = 1; n <= 2; ++n) {
    CompactApprox out = compact_enclosure(h, flat, n);
    // Direct evaluation: [0] applied to flatten(c1) plus [0,1] applied to
    // the projections of c2 (constant pair ({-1 code}, {1 code})).
    std::vector<Box> expect;
    {
      auto f1 = michael_flatten(c1);
      for (const auto& b : compact_enclosure(h, f1, n - 1).boxes)
        expect.push_back(h.base().digit("0").action.apply(b));
      auto left = michael_flatten(constant_tree("[K(-1)]", 1));
      auto right = michael_flatten(constant_tree("[K(1)]", 1));
      for (const auto& b : compact_enclosure(h, left, n - 1).boxes)
        expect.push_back(h.base().digit("0").action.apply(b));
      for (const auto& b : compact_enclosure(h, right, n - 1).boxes)
        expect.push_back(h.base().digit("1").action.apply(b));
    }
    CompactApprox ref = make_compact_approx(std::move(expect), n);
    Rat bound = Rat(2) * h.base().bound();
    for (unsigned i = 0; i < n; ++i) bound *= h.base().factor();
    CHECK(hausdorff_distance(out, ref) <= bound);
  }
}

TEST_CASE("ball criterion: clauses imply containment; the gap is one-sided") {
  HyperSpace h = hyper_space(signed_digit_space());
  const Rat eps = h.base().well_covering_number();
  unsigned agreements = 0, gaps = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto& parts = h.digit_sets()[mix(seed, 1) % h.digit_sets().size()];
    std::size_t count = 1 + mix(seed, 2) % 4;
    std::vector<std::vector<Rat>> centers;
    for (std::size_t i = 0; i < count; ++i)
      centers.push_back({dstest::random_dyadic_in(h.base().full_box()[0], mix(seed, 3 + i))});
    Rat theta = eps * Rat(1 + static_cast<long>(mix(seed, 97) % 8), 8);
    bool clauses = hyper_ball_clauses(h, centers, parts, theta);
    bool contained = hyper_ball_contained(h, centers, parts, theta);
    if (clauses) CHECK(contained);  // the sound direction
    if (clauses == contained) {
      ++agreements;
    } else {
      ++gaps;
      // Every gap must be of the one-sided kind: some center ball straddles
      // several component ranges while the union still covers it and every
      // component anchors some other center.
      bool clause1 = true;
      for (const auto& u : centers) {
        bool some = false;
        for (const auto& p : parts)
          if (covers_ball(h.base(), h.base().digit(p), u, theta)) some = true;
        clause1 = clause1 && some;
      }
      CHECK_FALSE(clause1);
    }
  }
  CHECK(agreements + gaps == 200);
  CHECK(agreements > 0);
}

TEST_CASE("ball criterion: the syntactic clauses are strictly stronger for large radii") {
  // With theta above the well-covering number the per-center single-digit
  // clause can fail even though every compact in the Hausdorff ball is in
  // range: witnessed at U = {-1/2, 0, 1/4, 1/2}, theta = 1/2 over the full
  // component list.
  HyperSpace h = hyper_space(signed_digit_space());
  std::vector<std::vector<Rat>> centers{{Rat(-1, 2)}, {Rat(0)}, {Rat(1, 4)}, {Rat(1, 2)}};
  std::vector<DigitId> parts{"-1", "0", "1"};
  Rat theta(1, 2);
  CHECK_FALSE(hyper_ball_clauses(h, centers, parts, theta));
  CHECK(hyper_ball_contained(h, centers, parts, theta));

  // Finite compacts sampled from the Hausdorff ball really are members:
  // every K within theta of U meets each component range and stays in the
  // union.  Sample K as one dyadic pick near each center.
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    std::vector<Rat> points;
    for (std::size_t i = 0; i < centers.size(); ++i) {
      Interval around(std::max(Rat(-1), centers[i][0] - theta),
                      std::min(Rat(1), centers[i][0] + theta));
      points.push_back(dstest::random_dyadic_in(around, mix(seed, 11 + i)));
    }
    bool in_union = true;
    for (const auto& x : points) {
      bool inside = false;
      for (const auto& p : parts)
        if (h.base().digit(p).range[0].contains(x)) inside = true;
      in_union = in_union && inside;
    }
    bool meets_all = true;
    for (const auto& p : parts) {
      bool meets = false;
      for (const auto& x : points)
        if (h.base().digit(p).range[0].contains(x)) meets = true;
      meets_all = meets_all && meets;
    }
    CHECK(in_union);
    CHECK(meets_all);
  }
}
