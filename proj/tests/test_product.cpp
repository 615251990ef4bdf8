#include <doctest.h>

#include "digitspace/coding.hpp"
#include "digitspace/ids.hpp"
#include "digitspace/product.hpp"
#include "testutil.hpp"

using namespace digitspace;
using dstest::mix;
using dstest::random_tree;
using dstest::stream_of;

TEST_CASE("product of two signed digit spaces") {
  ProductSpace p = product_space({signed_digit_space(), signed_digit_space()});
  CHECK(p.common_arity == 1);
  CHECK(p.space.digits().size() == 9);
  for (const auto& d : p.space.digits()) CHECK(d.arity == 1);
  CHECK(p.space.bound() == 2);
  CHECK(p.space.factor() == Rat(1, 2));
  CHECK(p.space.well_covering_number() == Rat(1, 4));
  CHECK(p.space.dim() == 2);
  // Range of a product digit is the product of the component ranges.
  const Digit& d = p.space.digit("<-1,1>");
  CHECK(d.range == Box{Interval(Rat(-1), Rat(0)), Interval(Rat(0), Rat(1))});
}

TEST_CASE("single factor product is the factor up to relabelling") {
  DigitSpace sd = signed_digit_space();
  ProductSpace p = product_space({sd});
  REQUIRE(p.space.digits().size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(p.space.digits()[i].id == make_tuple_id({sd.digits()[i].id}));
    CHECK(p.space.digits()[i].action == sd.digits()[i].action);
  }
}

TEST_CASE("pad_arity ignores trailing arguments") {
  DigitSpace sd = signed_digit_space();
  Digit padded = pad_arity(sd.digit("1"), 2, sd.base_point());
  CHECK(padded.arity == 2);
  Box a{Interval(Rat(0), Rat(1)), Interval(Rat(-1), Rat(-1))};
  Box b{Interval(Rat(0), Rat(1)), Interval(Rat(1), Rat(1))};
  CHECK(padded.action.apply(a) == padded.action.apply(b));
  // Padding to the own arity changes nothing.
  Digit same = pad_arity(sd.digit("1"), 1, sd.base_point());
  CHECK(same.action == sd.digit("1").action);
  CHECK_THROWS_AS(pad_arity(padded, 1, sd.base_point()), domain_error);
}

TEST_CASE("projection and tupling of constant streams") {
  ProductSpace p = product_space({signed_digit_space(), signed_digit_space()});
  auto pair = constant_tree("<1,-1>", 1);
  CHECK(bisim_to_depth(project_tree(p, 0, pair), constant_tree("1", 1), 16));
  CHECK(bisim_to_depth(project_tree(p, 1, pair), constant_tree("-1", 1), 16));

  auto zeros = constant_tree("0", 1);
  auto ones = constant_tree("1", 1);
  CHECK(bisim_to_depth(tuple_tree(p, {zeros, ones}), constant_tree("<0,1>", 1), 16));
}

TEST_CASE("tuple of projections is the identity") {
  ProductSpace p = product_space({signed_digit_space(), signed_digit_space()});
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto t = random_tree(p.space, mix(seed, 41));
    auto rebuilt = tuple_tree(p, {project_tree(p, 0, t), project_tree(p, 1, t)});
    CHECK(bisim_to_depth(rebuilt, t, 12));
  }
}

TEST_CASE("range product equality at finite depth") {
  ProductSpace p = product_space({signed_digit_space(), signed_digit_space()});
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto t = random_tree(p.space, mix(seed, 43));
    for (unsigned m = 0; m <= 8; ++m) {
      Box whole = value_enclosure(p.space, t, m);
      Box left = value_enclosure(p.factors[0], project_tree(p, 0, t), m);
      Box right = value_enclosure(p.factors[1], project_tree(p, 1, t), m);
      CHECK(whole == box_concat(left, right));
    }
  }
}

TEST_CASE("value of a tuple is the tuple of values") {
  ProductSpace p = product_space({signed_digit_space(), signed_digit_space()});
  DigitSpace sd = signed_digit_space();
  auto a = stream_of(sd, {"1", "0"});
  auto b = stream_of(sd, {"-1", "1"});
  auto pair = tuple_tree(p, {a, b});
  for (unsigned m = 0; m <= 12; ++m) {
    Box whole = value_enclosure(p.space, pair, m);
    Box ea = value_enclosure(sd, a, m);
    Box eb = value_enclosure(sd, b, m);
    CHECK(whole == box_concat(ea, eb));
  }
}

TEST_CASE("mixed arity product pads factors") {
  ProductSpace p = product_space({signed_digit_space(), dstest::binary_mix_space()});
  CHECK(p.common_arity == 2);
  CHECK(p.space.digits().size() == 9);
  for (const auto& d : p.space.digits()) CHECK(d.arity == 2);
  CHECK(p.padded[0].digits().front().arity == 2);

  // Tupling and projecting padded-factor trees still roundtrips.
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    auto t = random_tree(p.space, mix(seed, 47));
    auto rebuilt = tuple_tree(p, {project_tree(p, 0, t), project_tree(p, 1, t)});
    CHECK(bisim_to_depth(rebuilt, t, 8));
  }

  // Enclosure agreement holds with padding in place.
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto t = random_tree(p.space, mix(seed, 53));
    for (unsigned m = 0; m <= 6; ++m) {
      Box whole = value_enclosure(p.space, t, m);
      Box left = value_enclosure(p.padded[0], project_tree(p, 0, t), m);
      Box right = value_enclosure(p.padded[1], project_tree(p, 1, t), m);
      CHECK(whole == box_concat(left, right));
    }
  }
}

TEST_CASE("product construction rejects empty input") {
  CHECK_THROWS_AS(product_space({}), domain_error);
}
