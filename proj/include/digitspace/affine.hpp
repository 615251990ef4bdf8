#pragma once

#include <cstddef>
#include <vector>

#include "digitspace/interval.hpp"
#include "digitspace/rat.hpp"

namespace digitspace {

// Exact affine map y = A x + b over the rationals, row-major.
class AffineMap {
 public:
  AffineMap() : rows_(0), cols_(0) {}
  AffineMap(std::size_t rows, std::size_t cols, std::vector<Rat> coeffs,
            std::vector<Rat> offset);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Rat& coeff(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  Rat& coeff(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Rat& offset(std::size_t r) const { return b_[r]; }
  Rat& offset(std::size_t r) { return b_[r]; }

  std::vector<Rat> apply(const std::vector<Rat>& x) const;

  // Exact interval hull of the image.  Each output coordinate is a separate
  // linear functional, so coordinatewise interval evaluation is the hull.
  Box apply(const Box& x) const;

  // Lipschitz constant under the maximum metric: max row |coeff| sum.
  Rat lipschitz() const;

  friend bool operator==(const AffineMap& a, const AffineMap& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_ && a.b_ == b.b_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Rat> a_;
  std::vector<Rat> b_;
};

// Builds an exact affine right inverse N with  A(N(y)) = y  for all y.
//
// Preference order: the diagonal section x = (t, ..., t) when the summed
// column-block matrix is invertible (it maps onto the full hull of
// same-sign rows), otherwise a Gaussian solve with non-pivot coordinates
// pinned to `fill`.  Throws domain_error when A has no right inverse
// (row rank below the number of rows).
AffineMap affine_right_inverse(const AffineMap& a, std::size_t block_dim,
                               const std::vector<Rat>& fill);

}  // namespace digitspace
