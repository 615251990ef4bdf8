#include "digitspace/product.hpp"

#include <algorithm>

#include "digitspace/ids.hpp"

namespace digitspace {

Digit pad_arity(const Digit& d, unsigned s, const std::vector<Rat>& fill) {
  if (s < d.arity) throw domain_error("pad_arity: target arity below digit arity");
  if (s == d.arity) return d;
  const std::size_t dim = d.action.rows();
  if (fill.size() != dim) throw arity_error("pad_arity: fill point dimension mismatch");
  std::vector<Rat> coeffs(dim * s * dim, Rat(0));
  std::vector<Rat> off(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    off[r] = d.action.offset(r);
    for (std::size_t c = 0; c < d.action.cols(); ++c) coeffs[r * (s * dim) + c] = d.action.coeff(r, c);
  }
  Digit out;
  out.id = d.id;
  out.arity = s;
  out.action = AffineMap(dim, s * dim, std::move(coeffs), std::move(off));
  out.contraction = d.contraction;
  out.range = d.range;
  // Inverse: original preimage for the first blocks, the fill point beyond.
  std::vector<Rat> icoeffs(s * dim * dim, Rat(0));
  std::vector<Rat> ioff(s * dim, Rat(0));
  for (std::size_t r = 0; r < d.inverse.rows(); ++r) {
    for (std::size_t c = 0; c < dim; ++c) icoeffs[r * dim + c] = d.inverse.coeff(r, c);
    ioff[r] = d.inverse.offset(r);
  }
  for (std::size_t r = d.inverse.rows(); r < s * dim; ++r) ioff[r] = fill[r % dim];
  out.inverse = AffineMap(s * dim, dim, std::move(icoeffs), std::move(ioff));
  return out;
}

namespace {

DigitSpace pad_space(const DigitSpace& s, unsigned arity) {
  std::vector<Digit> digits;
  digits.reserve(s.digits().size());
  for (const auto& d : s.digits()) digits.push_back(pad_arity(d, arity, s.base_point()));
  return DigitSpace(s.full_box(), s.bound(), s.factor(), s.well_covering_number(),
                    s.base_point(), std::move(digits));
}

Digit product_digit(const std::vector<const Digit*>& parts,
                    const std::vector<std::size_t>& offsets, std::size_t total_dim,
                    unsigned s_arity, const Box& full, const std::vector<Rat>& base) {
  std::vector<std::string> ids;
  ids.reserve(parts.size());
  for (const auto* d : parts) ids.push_back(d->id);
  const std::size_t cols = static_cast<std::size_t>(s_arity) * total_dim;
  std::vector<Rat> coeffs(total_dim * cols, Rat(0));
  std::vector<Rat> off(total_dim, Rat(0));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Digit& d = *parts[i];
    const std::size_t fdim = d.action.rows();
    for (std::size_t r = 0; r < fdim; ++r) {
      const std::size_t row = offsets[i] + r;
      off[row] = d.action.offset(r);
      for (std::size_t j = 0; j < s_arity; ++j)
        for (std::size_t c = 0; c < fdim; ++c)
          coeffs[row * cols + j * total_dim + offsets[i] + c] =
              d.action.coeff(r, j * fdim + c);
    }
  }
  AffineMap action(total_dim, cols, std::move(coeffs), std::move(off));
  return make_digit(make_tuple_id(ids), s_arity, std::move(action), full, base);
}

}  // namespace

ProductSpace product_space(std::vector<DigitSpace> factors) {
  if (factors.empty()) throw domain_error("product of no spaces");
  unsigned s_arity = 1;
  for (const auto& f : factors)
    for (const auto& d : f.digits()) s_arity = std::max(s_arity, d.arity);

  std::vector<DigitSpace> padded;
  std::vector<std::size_t> offsets;
  std::size_t total_dim = 0;
  Box full;
  std::vector<Rat> base;
  Rat bound(0), factor(0);
  Rat wc = factors.front().well_covering_number();
  for (const auto& f : factors) {
    offsets.push_back(total_dim);
    padded.push_back(pad_space(f, s_arity));
    total_dim += f.dim();
    full.insert(full.end(), f.full_box().begin(), f.full_box().end());
    base.insert(base.end(), f.base_point().begin(), f.base_point().end());
    bound = std::max(bound, f.bound());
    factor = std::max(factor, f.factor());
    wc = std::min(wc, f.well_covering_number());
  }

  // All tuples, lexicographic in factor order.
  std::vector<Digit> digits;
  std::vector<std::size_t> idx(factors.size(), 0);
  for (;;) {
    std::vector<const Digit*> parts;
    parts.reserve(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i)
      parts.push_back(&padded[i].digits()[idx[i]]);
    digits.push_back(product_digit(parts, offsets, total_dim, s_arity, full, base));
    std::size_t i = factors.size();
    for (; i > 0; --i) {
      if (++idx[i - 1] < padded[i - 1].digits().size()) break;
      idx[i - 1] = 0;
    }
    if (i == 0) break;
  }

  DigitSpace space(std::move(full), std::move(bound), std::move(factor), std::move(wc),
                   std::move(base), std::move(digits));
  return ProductSpace{std::move(factors), std::move(padded), s_arity, std::move(offsets),
                      std::move(space)};
}

LazyTreePtr project_tree(const ProductSpace& p, std::size_t i, LazyTreePtr t) {
  if (i >= p.factors.size()) throw domain_error("project_tree: factor index out of range");
  auto parts = split_tuple_id(t->root());
  if (!parts || parts->size() != p.factors.size())
    throw arity_error("project_tree: node '" + t->root() + "' is not a product digit");
  auto gen = [&p, i, t]() {
    std::vector<LazyTreePtr> kids;
    kids.reserve(p.common_arity);
    for (const auto& sub : t->subtrees()) kids.push_back(project_tree(p, i, sub));
    return kids;
  };
  return make_tree((*parts)[i], std::move(gen));
}

LazyTreePtr tuple_tree(const ProductSpace& p, std::vector<LazyTreePtr> parts) {
  if (parts.size() != p.factors.size())
    throw arity_error("tuple_tree: need one tree per factor");
  std::vector<std::string> ids;
  ids.reserve(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!p.padded[i].has_digit(parts[i]->root()))
      throw arity_error("tuple_tree: label '" + parts[i]->root() + "' not in factor " +
                        std::to_string(i + 1));
    ids.push_back(parts[i]->root());
  }
  const unsigned s = p.common_arity;
  auto shared = std::make_shared<std::vector<LazyTreePtr>>(std::move(parts));
  auto gen = [&p, shared, s]() {
    std::vector<LazyTreePtr> kids;
    kids.reserve(s);
    for (unsigned j = 0; j < s; ++j) {
      std::vector<LazyTreePtr> slice;
      slice.reserve(shared->size());
      for (const auto& part : *shared) {
        const auto& subs = part->subtrees();
        if (subs.size() != s)
          throw arity_error("tuple_tree: factor tree not padded to the common arity");
        slice.push_back(subs[j]);
      }
      kids.push_back(tuple_tree(p, std::move(slice)));
    }
    return kids;
  };
  return make_tree(make_tuple_id(ids), std::move(gen));
}

}  // namespace digitspace
