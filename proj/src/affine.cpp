#include "digitspace/affine.hpp"

#include <optional>

#include "digitspace/errors.hpp"

namespace digitspace {

AffineMap::AffineMap(std::size_t rows, std::size_t cols, std::vector<Rat> coeffs,
                     std::vector<Rat> offset)
    : rows_(rows), cols_(cols), a_(std::move(coeffs)), b_(std::move(offset)) {
  if (a_.size() != rows_ * cols_ || b_.size() != rows_)
    throw arity_error("affine map: coefficient shape mismatch");
}

std::vector<Rat> AffineMap::apply(const std::vector<Rat>& x) const {
  if (x.size() != cols_) throw arity_error("affine map: argument dimension mismatch");
  std::vector<Rat> y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rat acc = b_[r];
    for (std::size_t c = 0; c < cols_; ++c) {
      const Rat& k = coeff(r, c);
      if (k != 0) acc += k * x[c];
    }
    y[r] = acc;
  }
  return y;
}

Box AffineMap::apply(const Box& x) const {
  if (x.size() != cols_) throw arity_error("affine map: argument dimension mismatch");
  Box y;
  y.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rat lo = b_[r], hi = b_[r];
    for (std::size_t c = 0; c < cols_; ++c) {
      const Rat& k = coeff(r, c);
      if (k == 0) continue;
      if (k > 0) {
        lo += k * x[c].lo;
        hi += k * x[c].hi;
      } else {
        lo += k * x[c].hi;
        hi += k * x[c].lo;
      }
    }
    y.push_back(Interval(lo, hi));
  }
  return y;
}

Rat AffineMap::lipschitz() const {
  Rat best(0);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rat sum(0);
    for (std::size_t c = 0; c < cols_; ++c) sum += rat_abs(coeff(r, c));
    best = std::max(best, sum);
  }
  return best;
}

namespace {

// Inverts a square rational matrix; nullopt when singular.
std::optional<std::vector<Rat>> invert_square(const std::vector<Rat>& m, std::size_t n) {
  std::vector<Rat> a = m;
  std::vector<Rat> inv(n * n, Rat(0));
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv * n + col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a[piv * n + c], a[col * n + c]);
        std::swap(inv[piv * n + c], inv[col * n + c]);
      }
    }
    Rat d = a[col * n + col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col * n + c] /= d;
      inv[col * n + c] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      Rat f = a[r * n + col];
      if (f == 0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        a[r * n + c] -= f * a[col * n + c];
        inv[r * n + c] -= f * inv[col * n + c];
      }
    }
  }
  return inv;
}

// Diagonal section: x = (t, ..., t) with t of size block_dim; solves
// (sum of blocks) t = y - b.
std::optional<AffineMap> diagonal_inverse(const AffineMap& a, std::size_t block_dim) {
  const std::size_t rows = a.rows(), cols = a.cols();
  if (rows != block_dim || cols % block_dim != 0) return std::nullopt;
  const std::size_t blocks = cols / block_dim;
  std::vector<Rat> s(rows * block_dim, Rat(0));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t j = 0; j < blocks; ++j)
      for (std::size_t c = 0; c < block_dim; ++c)
        s[r * block_dim + c] += a.coeff(r, j * block_dim + c);
  auto invs = invert_square(s, block_dim);
  if (!invs) return std::nullopt;
  // t = S^-1 (y - b); replicate across all blocks.
  std::vector<Rat> coeffs(cols * rows, Rat(0));
  std::vector<Rat> offs(cols, Rat(0));
  for (std::size_t j = 0; j < blocks; ++j) {
    for (std::size_t c = 0; c < block_dim; ++c) {
      const std::size_t out = j * block_dim + c;
      for (std::size_t y = 0; y < rows; ++y) {
        coeffs[out * rows + y] = (*invs)[c * block_dim + y];
        offs[out] -= (*invs)[c * block_dim + y] * a.offset(y);
      }
    }
  }
  return AffineMap(cols, rows, std::move(coeffs), std::move(offs));
}

// Gaussian solve with non-pivot coordinates pinned to fill values.
std::optional<AffineMap> gaussian_inverse(const AffineMap& a, const std::vector<Rat>& fill) {
  const std::size_t rows = a.rows(), cols = a.cols();
  // Augmented system [A | I | -b] reduced so that pivot coordinates become
  // affine functions of y.
  std::vector<Rat> m(rows * (cols + rows + 1), Rat(0));
  auto at = [&](std::size_t r, std::size_t c) -> Rat& { return m[r * (cols + rows + 1) + c]; };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) at(r, c) = a.coeff(r, c);
    at(r, cols + r) = 1;
    at(r, cols + rows) = -a.offset(r);
  }
  std::vector<std::size_t> pivot_col(rows);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && at(piv, col) == 0) ++piv;
    if (piv == rows) continue;
    for (std::size_t c = 0; c <= cols + rows; ++c) std::swap(at(piv, c), at(rank, c));
    Rat d = at(rank, col);
    for (std::size_t c = 0; c <= cols + rows; ++c) at(rank, c) /= d;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      Rat f = at(r, col);
      if (f == 0) continue;
      for (std::size_t c = 0; c <= cols + rows; ++c) at(r, c) -= f * at(rank, c);
    }
    pivot_col[rank] = col;
    ++rank;
  }
  if (rank < rows) return std::nullopt;

  std::vector<Rat> coeffs(cols * rows, Rat(0));
  std::vector<Rat> offs(cols, Rat(0));
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t r = 0; r < rows; ++r) is_pivot[pivot_col[r]] = true;
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_pivot[c]) offs[c] = fill[c % fill.size()];
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t out = pivot_col[r];
    for (std::size_t y = 0; y < rows; ++y) coeffs[out * rows + y] = at(r, cols + y);
    Rat off = at(r, cols + rows);
    for (std::size_t c = 0; c < cols; ++c) {
      if (is_pivot[c] || c == out) continue;
      off -= at(r, c) * offs[c];
    }
    offs[out] = off;
  }
  return AffineMap(cols, rows, std::move(coeffs), std::move(offs));
}

bool is_right_inverse(const AffineMap& a, const AffineMap& n) {
  // A N = I and A c + b = 0, checked symbolically.
  const std::size_t rows = a.rows(), cols = a.cols();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t y = 0; y < rows; ++y) {
      Rat acc(0);
      for (std::size_t c = 0; c < cols; ++c) acc += a.coeff(r, c) * n.coeff(c, y);
      if (acc != (r == y ? Rat(1) : Rat(0))) return false;
    }
    Rat acc = a.offset(r);
    for (std::size_t c = 0; c < cols; ++c) acc += a.coeff(r, c) * n.offset(c);
    if (acc != 0) return false;
  }
  return true;
}

}  // namespace

AffineMap affine_right_inverse(const AffineMap& a, std::size_t block_dim,
                               const std::vector<Rat>& fill) {
  if (auto d = diagonal_inverse(a, block_dim)) {
    if (is_right_inverse(a, *d)) return *d;
  }
  if (auto g = gaussian_inverse(a, fill)) {
    if (is_right_inverse(a, *g)) return *g;
  }
  throw domain_error("affine map has no computable right inverse");
}

}  // namespace digitspace
