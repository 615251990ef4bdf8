#include <algorithm>
#include <set>
#include <sstream>

#include "digitspace/dyadic.hpp"
#include "digitspace/interval.hpp"
#include "digitspace/rat.hpp"

namespace digitspace {

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw parse_error("empty rational");
  auto star = s.find("*2^");
  try {
    if (star != std::string::npos) {
      Int m(s.substr(0, star));
      long e = std::stol(s.substr(star + 3));
      if (e >= 0) return Rat(m * (Int(1) << e));
      return Rat(m, Int(1) << (-e));
    }
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw parse_error("zero denominator: " + s);
    return Rat(num, den);
  } catch (const std::exception& e) {
    throw parse_error("bad rational '" + s + "': " + e.what());
  }
}

std::string show_rat(const Rat& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

void Dyadic::normalize() {
  if (m_ == 0) {
    e_ = 0;
    return;
  }
  while ((m_ & 1) == 0) {
    m_ >>= 1;
    ++e_;
  }
}

Dyadic Dyadic::from_rat(const Rat& x) {
  if (!is_dyadic(x)) throw domain_error("not a dyadic rational: " + show_rat(x));
  Int den = denominator(x);
  long e = 0;
  while (den > 1) {
    den >>= 1;
    --e;
  }
  return Dyadic(numerator(x), e);
}

Dyadic Dyadic::round_to_grid(const Rat& x, long k) {
  Rat scaled = x * pow2(k) + Rat(1, 2);
  return Dyadic(floor_rat(scaled), -k);
}

std::string Dyadic::str() const {
  std::ostringstream os;
  os << m_ << "*2^" << e_;
  return os.str();
}

bool boxes_cover(const Box& target, const std::vector<Box>& boxes) {
  const std::size_t dim = target.size();
  // Coordinate grid from all box faces clipped to the target.
  std::vector<std::vector<Rat>> cuts(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::set<Rat> s{target[i].lo, target[i].hi};
    for (const auto& b : boxes) {
      if (b.size() != dim) throw arity_error("box dimension mismatch");
      if (target[i].contains(b[i].lo)) s.insert(b[i].lo);
      if (target[i].contains(b[i].hi)) s.insert(b[i].hi);
    }
    cuts[i].assign(s.begin(), s.end());
  }
  // Walk every cell; test its midpoint.
  std::vector<std::size_t> idx(dim, 0);
  for (;;) {
    std::vector<Rat> mid(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const Rat& lo = cuts[i][idx[i]];
      const Rat& hi = cuts[i][std::min(idx[i] + 1, cuts[i].size() - 1)];
      mid[i] = (lo + hi) / 2;
    }
    bool covered = false;
    for (const auto& b : boxes) {
      if (box_contains_point(b, mid)) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
    // Advance the cell index (note a dim with a single cut has one cell).
    std::size_t i = 0;
    for (; i < dim; ++i) {
      std::size_t cells = std::max<std::size_t>(1, cuts[i].size() - 1);
      if (++idx[i] < cells) break;
      idx[i] = 0;
    }
    if (i == dim) return true;
  }
}

}  // namespace digitspace
