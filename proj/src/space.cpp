#include "digitspace/space.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace digitspace {

namespace {

Box clipped_ball(const Box& full, const std::vector<Rat>& center, const Rat& radius) {
  if (center.size() != full.size()) throw arity_error("center dimension mismatch");
  Box b;
  b.reserve(full.size());
  for (std::size_t i = 0; i < full.size(); ++i) {
    Rat lo = std::max(full[i].lo, center[i] - radius);
    Rat hi = std::min(full[i].hi, center[i] + radius);
    if (lo > hi) throw domain_error("ball does not meet the space");
    b.push_back(Interval(lo, hi));
  }
  return b;
}

}  // namespace

Digit make_digit(std::string id, unsigned arity, AffineMap action, const Box& full,
                 const std::vector<Rat>& base_point) {
  if (arity == 0) throw domain_error("digit arity must be positive");
  const std::size_t dim = full.size();
  if (action.rows() != dim || action.cols() != arity * dim)
    throw arity_error("digit action shape mismatch");
  Digit d;
  d.id = std::move(id);
  d.arity = arity;
  d.contraction = action.lipschitz();
  if (d.contraction >= 1)
    throw domain_error("digit '" + d.id + "' is not contracting");
  d.range = action.apply(box_power(full, arity));
  if (!box_contains(full, d.range))
    throw domain_error("digit '" + d.id + "' leaves the space");
  d.inverse = affine_right_inverse(action, dim, base_point);
  // The inverse must map the range box back into the domain box.  Each
  // inverse coordinate is affine in y, so checking range-box corners
  // suffices.
  {
    Box img = d.inverse.apply(d.range);
    if (!box_contains(box_power(full, arity), img))
      throw domain_error("digit '" + d.id + "' right inverse leaves the space");
  }
  d.action = std::move(action);
  return d;
}

DigitSpace::DigitSpace(Box full, Rat bound, Rat factor, Rat well_covering,
                       std::vector<Rat> base_point, std::vector<Digit> digits)
    : full_(std::move(full)),
      bound_(std::move(bound)),
      factor_(std::move(factor)),
      wc_(std::move(well_covering)),
      base_(std::move(base_point)),
      digits_(std::move(digits)) {
  validate();
}

void DigitSpace::validate() const {
  if (full_.empty()) throw domain_error("space has no dimensions");
  for (const auto& iv : full_)
    if (iv.width() == 0) throw domain_error("space box is degenerate");
  if (digits_.empty()) throw domain_error("space has no digits");
  if (wc_ <= 0) throw domain_error("well-covering number must be positive");
  if (factor_ >= 1 || factor_ <= 0) throw domain_error("contraction factor must be in (0,1)");
  if (box_width(full_) > bound_) throw domain_error("bound below the space diameter");
  if (!box_contains_point(full_, base_)) throw domain_error("base point outside the space");
  std::vector<Box> ranges;
  for (const auto& d : digits_) {
    if (d.contraction > factor_)
      throw domain_error("digit '" + d.id + "' exceeds the contraction factor");
    ranges.push_back(d.range);
  }
  for (std::size_t i = 0; i < digits_.size(); ++i)
    for (std::size_t j = i + 1; j < digits_.size(); ++j)
      if (digits_[i].id == digits_[j].id)
        throw domain_error("duplicate digit id '" + digits_[i].id + "'");
  if (!boxes_cover(full_, ranges)) throw domain_error("digit ranges do not cover the space");
  verify_well_covering(wc_);
}

void DigitSpace::verify_well_covering(const Rat& mesh) const {
  if (mesh <= 0) throw domain_error("mesh must be positive");
  std::vector<std::vector<Rat>> grids(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    for (Rat x = full_[i].lo; x < full_[i].hi; x += mesh) grids[i].push_back(x);
    grids[i].push_back(full_[i].hi);
  }
  std::vector<std::size_t> idx(dim(), 0);
  for (;;) {
    std::vector<Rat> p(dim());
    for (std::size_t i = 0; i < dim(); ++i) p[i] = grids[i][idx[i]];
    bool ok = false;
    for (const auto& d : digits_) {
      if (covers_ball(*this, d, p, wc_)) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      std::ostringstream os;
      os << "well-covering violated at (";
      for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
      os << ")";
      throw domain_error(os.str());
    }
    std::size_t i = 0;
    for (; i < dim(); ++i) {
      if (++idx[i] < grids[i].size()) break;
      idx[i] = 0;
    }
    if (i == dim()) return;
  }
}

const Digit& DigitSpace::digit(const std::string& id) const {
  for (const auto& d : digits_)
    if (d.id == id) return d;
  throw domain_error("unknown digit '" + id + "'");
}

bool DigitSpace::has_digit(const std::string& id) const {
  for (const auto& d : digits_)
    if (d.id == id) return true;
  return false;
}

Box apply_digit_box(const DigitSpace& s, const Digit& d, const Box& args) {
  if (args.size() != d.arity * s.dim())
    throw arity_error("apply_digit_box: argument box has wrong dimension");
  if (!box_contains(box_power(s.full_box(), d.arity), args))
    throw domain_error("apply_digit_box: arguments leave the space");
  return d.action.apply(args);
}

bool covers_ball(const DigitSpace& s, const Digit& d, const std::vector<Rat>& center,
                 const Rat& radius) {
  if (radius <= 0) throw domain_error("ball radius must be positive");
  Box ball = clipped_ball(s.full_box(), center, radius);
  return box_contains(d.range, ball);
}

const Digit& pick_digit(const DigitSpace& s, const std::vector<Rat>& center) {
  if (box_dist_point(s.full_box(), center) > s.well_covering_number() / 2)
    throw domain_error("pick_digit: point too far from the space");
  for (const auto& d : s.digits())
    if (covers_ball(s, d, center, s.well_covering_number())) return d;
  throw domain_error("pick_digit: well-covering violated (no digit covers the ball)");
}

unsigned contraction_depth(const DigitSpace& s, unsigned n) {
  const Rat threshold = pow2(-static_cast<long>(n));
  Rat p = s.bound();
  unsigned i = 0;
  while (!(p < threshold)) {
    p *= s.factor();
    ++i;
  }
  return i;
}

std::vector<Rat> right_inverse_point(const DigitSpace& s, const Digit& d,
                                     const std::vector<Rat>& y) {
  if (!box_contains_point(d.range, y))
    throw domain_error("right_inverse_point: point outside range of '" + d.id + "'");
  std::vector<Rat> x = d.inverse.apply(y);
  const Box dom = box_power(s.full_box(), d.arity);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = dom[i].clamp(x[i]);
  if (d.action.apply(x) != y)
    throw domain_error("right_inverse_point: no exact in-space preimage");
  return x;
}

DigitSpace signed_digit_space() {
  Box full{Interval(Rat(-1), Rat(1))};
  std::vector<Rat> zero{Rat(0)};
  std::vector<Digit> digits;
  for (int v : {-1, 0, 1}) {
    AffineMap act(1, 1, {Rat(1, 2)}, {Rat(v, 2)});
    digits.push_back(make_digit(std::to_string(v), 1, std::move(act), full, zero));
  }
  return DigitSpace(full, Rat(2), Rat(1, 2), Rat(1, 4), zero, std::move(digits));
}

void write_space(std::ostream& os, const DigitSpace& s) {
  os << "digitspace\n";
  os << "dim " << s.dim() << "\n";
  os << "box";
  for (const auto& iv : s.full_box()) os << " " << iv.lo << " " << iv.hi;
  os << "\n";
  os << "bound " << s.bound() << "\n";
  os << "factor " << s.factor() << "\n";
  os << "wellcovering " << s.well_covering_number() << "\n";
  os << "base";
  for (const auto& x : s.base_point()) os << " " << x;
  os << "\n";
  os << "digits " << s.digits().size() << "\n";
  for (const auto& d : s.digits()) {
    os << "digit " << d.id << " " << d.arity << "\n";
    for (std::size_t r = 0; r < d.action.rows(); ++r) {
      for (std::size_t c = 0; c < d.action.cols(); ++c)
        os << (c ? " " : "") << d.action.coeff(r, c);
      os << "\n";
    }
    for (std::size_t r = 0; r < d.action.rows(); ++r)
      os << (r ? " " : "") << d.action.offset(r);
    os << "\n";
  }
}

namespace {

std::string next_tok(std::istream& is, const char* what) {
  std::string t;
  if (!(is >> t)) throw parse_error(std::string("space file: missing ") + what);
  return t;
}

Rat next_rat(std::istream& is, const char* what) { return parse_rat(next_tok(is, what)); }

void expect(std::istream& is, const std::string& kw) {
  std::string t = next_tok(is, kw.c_str());
  if (t != kw) throw parse_error("space file: expected '" + kw + "', got '" + t + "'");
}

}  // namespace

DigitSpace read_space(std::istream& is) {
  expect(is, "digitspace");
  expect(is, "dim");
  std::size_t dim = std::stoul(next_tok(is, "dim"));
  if (dim == 0) throw parse_error("space file: dim must be positive");
  expect(is, "box");
  Box full;
  for (std::size_t i = 0; i < dim; ++i) {
    Rat lo = next_rat(is, "box lo"), hi = next_rat(is, "box hi");
    full.push_back(Interval(lo, hi));
  }
  expect(is, "bound");
  Rat bound = next_rat(is, "bound");
  expect(is, "factor");
  Rat factor = next_rat(is, "factor");
  expect(is, "wellcovering");
  Rat wc = next_rat(is, "wellcovering");
  expect(is, "base");
  std::vector<Rat> base;
  for (std::size_t i = 0; i < dim; ++i) base.push_back(next_rat(is, "base"));
  expect(is, "digits");
  std::size_t count = std::stoul(next_tok(is, "digit count"));
  std::vector<Digit> digits;
  for (std::size_t k = 0; k < count; ++k) {
    expect(is, "digit");
    std::string id = next_tok(is, "digit id");
    unsigned arity = static_cast<unsigned>(std::stoul(next_tok(is, "digit arity")));
    std::vector<Rat> coeffs;
    coeffs.reserve(dim * arity * dim);
    for (std::size_t i = 0; i < dim * arity * dim; ++i)
      coeffs.push_back(next_rat(is, "matrix entry"));
    std::vector<Rat> off;
    for (std::size_t i = 0; i < dim; ++i) off.push_back(next_rat(is, "offset entry"));
    AffineMap act(dim, arity * dim, std::move(coeffs), std::move(off));
    digits.push_back(make_digit(std::move(id), arity, std::move(act), full, base));
  }
  return DigitSpace(std::move(full), std::move(bound), std::move(factor), std::move(wc),
                    std::move(base), std::move(digits));
}

DigitSpace load_space(const std::string& name_or_path) {
  if (name_or_path == "sd") return signed_digit_space();
  std::ifstream f(name_or_path);
  if (!f) throw parse_error("cannot open space file '" + name_or_path + "'");
  return read_space(f);
}

}  // namespace digitspace
