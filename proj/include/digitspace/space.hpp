#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "digitspace/affine.hpp"
#include "digitspace/interval.hpp"

namespace digitspace {

// A digit: a multi-ary contracting map with exact affine action.  The range
// box (exact hull of the action over the full space) and an exact affine
// right inverse are computed at construction.
struct Digit {
  std::string id;
  unsigned arity = 1;
  AffineMap action;      // dim rows, arity*dim cols
  Rat contraction;       // max-metric Lipschitz constant of the action, < 1
  AffineMap inverse;     // right inverse: arity*dim rows, dim cols
  Box range;             // action applied to fullBox^arity
};

// A compact covering system of contracting affine digits on a rational box,
// together with the space-level constants: bound M, contraction factor q,
// well-covering number epsilon and the base point z.
class DigitSpace {
 public:
  DigitSpace(Box full, Rat bound, Rat factor, Rat well_covering,
             std::vector<Rat> base_point, std::vector<Digit> digits);

  std::size_t dim() const { return full_.size(); }
  const Box& full_box() const { return full_; }
  const Rat& bound() const { return bound_; }
  const Rat& factor() const { return factor_; }
  const Rat& well_covering_number() const { return wc_; }
  const std::vector<Rat>& base_point() const { return base_; }
  const std::vector<Digit>& digits() const { return digits_; }

  const Digit& digit(const std::string& id) const;
  bool has_digit(const std::string& id) const;

  // Grid check of the well-covering property at the given mesh; throws
  // domain_error on a violation.  The property itself is an input promise
  // (it exists non-constructively); this verifies it on sample points only.
  void verify_well_covering(const Rat& mesh) const;

 private:
  void validate() const;

  Box full_;
  Rat bound_, factor_, wc_;
  std::vector<Rat> base_;
  std::vector<Digit> digits_;
};

// Constructs a digit from its exact affine action; derives the contraction
// constant, range box and right inverse.  Throws domain_error if the action
// is not contracting, leaves the space, or has no usable right inverse.
Digit make_digit(std::string id, unsigned arity, AffineMap action, const Box& full,
                 const std::vector<Rat>& base_point);

// --- operations ---------------------------------------------------------

// Exact affine image of a box under a digit.  args must have arity*dim
// coordinates inside fullBox^arity.
Box apply_digit_box(const DigitSpace& s, const Digit& d, const Box& args);

// Whether the closed radius-ball around center, intersected with the space,
// lies inside the digit's range box.  Exact rational comparisons.
bool covers_ball(const DigitSpace& s, const Digit& d, const std::vector<Rat>& center,
                 const Rat& radius);

// First digit in declaration order whose range contains the epsilon-ball
// around center.  center may sit up to epsilon/2 outside the space.
const Digit& pick_digit(const DigitSpace& s, const std::vector<Rat>& center);

// j(n) = min { i : q^i * M < 2^-n }.
unsigned contraction_depth(const DigitSpace& s, unsigned n);

// Exact preimage of y under d, clipped into the space; throws domain_error
// if y is outside the digit's range box or no exact in-space preimage is
// found.
std::vector<Rat> right_inverse_point(const DigitSpace& s, const Digit& d,
                                     const std::vector<Rat>& y);

// The interval [-1,1] with the three signed-digit averages (x+d)/2.
DigitSpace signed_digit_space();

// Text serialization; round-trips bit-exactly.
void write_space(std::ostream& os, const DigitSpace& s);
DigitSpace read_space(std::istream& is);
DigitSpace load_space(const std::string& name_or_path);  // "sd" or a file path

}  // namespace digitspace
