#include "primlat/shapes.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

namespace primlat {

double ShapePoint2::yd() const { return std::sqrt(y_sq.get_d()); }

namespace {

Int ceil_rat(const Rat& q) { return -floor_div(-q.get_num(), q.get_den()); }

}  // namespace

ShapePoint2 reduce_to_f2(Rat x, Rat y_sq) {
  if (y_sq <= 0) throw Error(Errc::BadArgument, "point must lie in the upper half plane");
  ShapePoint2 p;
  while (true) {
    x -= Rat(ceil_rat(x - Rat(1, 2)));
    const Rat r = x * x + y_sq;
    if (r >= 1) {
      if (r == 1 && x < 0) x = -x;
      break;
    }
    x = -x / r;
    y_sq = y_sq / (r * r);
    ++p.inversions;
  }
  p.x = x;
  p.y_sq = y_sq;
  return p;
}

ShapePoint2 shape_rank2(const DLattice& l) {
  if (l.d() != 2) throw Error(Errc::RankNotTwo, "shape_rank2 needs rank 2");
  const RatMatrix g = gram(l.oriented_basis());
  return reduce_to_f2(g(0, 1) / g(0, 0), l.covol_sq() / (g(0, 0) * g(0, 0)));
}

Gram2 reduce_gram2(__int128 a, __int128 h, __int128 c) {
  if (a <= 0 || a * c <= h * h) throw Error(Errc::BadArgument, "reduce_gram2: form is not positive definite");
  while (true) {
    // m = ceil((2h - a) / 2a); h -> h - m a.
    const __int128 num = 2 * h - a, den = 2 * a;
    __int128 m = num / den;
    if (num % den != 0 && num > 0) ++m;
    c = c - 2 * m * h + m * m * a;
    h = h - m * a;
    if (c >= a) {
      if (c == a && h < 0) h = -h;
      return {a, h, c};
    }
    std::swap(a, c);
    h = -h;
  }
}

namespace {

Int to_mpz(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  Int hi = static_cast<unsigned long>(u >> 64);
  Int out = (hi << 64) + Int(static_cast<unsigned long>(u & ~0ul));
  return neg ? Int(-out) : out;
}

}  // namespace

ShapePoint2 shape_from_gram2(__int128 a, __int128 h, __int128 c) {
  const Gram2 g = reduce_gram2(a, h, c);
  ShapePoint2 p;
  const Int ai = to_mpz(g.a);
  p.x = Rat(to_mpz(g.h), ai);
  p.x.canonicalize();
  p.y_sq = Rat(to_mpz(g.a * g.c - g.h * g.h), ai * ai);
  p.y_sq.canonicalize();
  return p;
}

DenseGram shape_reduced_gram(const DLattice& l) {
  const std::size_t d = l.d();
  const RatMatrix g = gram(l.oriented_basis());
  const RatMatrix t = to_rat(lll_gram(to_dense(g), 0.99, true));
  DenseGram out = to_dense(t.transpose() * g * t);
  const double scale = std::pow(l.covol_sq().get_d(), 1.0 / double(d));
  for (auto& v : out.a) v /= scale;
  if (d == 2) {
    // Finish the reduction into F2 with Gauss steps: translate, then swap.
    double a = out(0, 0), b = out(0, 1), c = out(1, 1);
    for (int guard = 0; guard < 64; ++guard) {
      const double m = std::ceil(b / a - 0.5);
      c = c - 2 * m * b + m * m * a;
      b = b - m * a;
      if (c < a) {
        std::swap(a, c);
        b = -b;
      } else {
        break;
      }
    }
    if (std::abs(a - c) <= 1e-12 * a && b < 0) b = -b;
    out(0, 0) = a;
    out(0, 1) = out(1, 0) = b;
    out(1, 1) = c;
  }
  return out;
}

F2Partition::F2Partition(std::size_t k_x, std::size_t k_y, double y_max) : k_x_(k_x), k_y_(k_y), y_max_(y_max) {
  if (k_x == 0 || k_y == 0) throw Error(Errc::BadPartition, "cell counts must be positive");
  if (!(y_max > 1)) throw Error(Errc::BadPartition, "Y_max must exceed 1");
  for (std::size_t i = 0; i <= k_x; ++i) x_edges_.push_back(Rat(-1, 2) + make_rat(long(i), long(k_x)));
  const Rat ymax(y_max);
  std::vector<Rat> y_edges;
  for (std::size_t j = 1; j <= k_y; ++j) {
    // Equal spacing in 1/y from 1 down to 1/Y_max.
    const Rat inv = 1 - make_rat(long(j), long(k_y)) * (1 - 1 / ymax);
    y_edges.push_back(1 / inv);
    y_sq_edges_.push_back(y_edges.back() * y_edges.back());
  }
  for (std::size_t i = 0; i < k_x; ++i)
    for (std::size_t j = 0; j < k_y; ++j) {
      F2Cell c;
      c.x0 = x_edges_[i].get_d();
      c.x1 = x_edges_[i + 1].get_d();
      c.y0 = j == 0 ? 0.0 : y_edges[j - 1].get_d();
      c.y1 = j + 1 == k_y ? y_max : y_edges[j].get_d();
      cells_.push_back(c);
    }
  F2Cell cusp;
  cusp.y0 = y_max;
  cusp.y1 = std::numeric_limits<double>::infinity();
  cusp.cusp = true;
  cells_.push_back(cusp);
}

std::size_t F2Partition::cell_of(const ShapePoint2& p) const {
  if (p.y_sq >= y_sq_edges_.back()) return cells_.size() - 1;
  std::size_t ix = 0;
  while (ix + 1 < k_x_ && p.x > x_edges_[ix + 1]) ++ix;
  std::size_t jy = 0;
  while (jy + 1 < k_y_ && p.y_sq >= y_sq_edges_[jy]) ++jy;
  return ix * k_y_ + jy;
}

std::vector<double> F2Partition::measures() const {
  std::vector<double> m;
  for (const auto& c : cells_) m.push_back(f2_cell_measure(c));
  return m;
}

std::vector<double> F2Partition::probabilities() const {
  std::vector<double> m = measures();
  double total = 0;
  for (double v : m) total += v;
  for (double& v : m) v /= total;
  return m;
}

F2Partition f2_partition(std::size_t k_x, std::size_t k_y, double y_max) { return F2Partition(k_x, k_y, y_max); }

double f2_cell_measure(const F2Cell& cell) {
  const double inv_top = std::isinf(cell.y1) ? 0.0 : 1.0 / cell.y1;
  auto f = [&](double x) {
    const double lo = std::max(cell.y0, std::sqrt(std::max(0.0, 1 - x * x)));
    return std::max(0.0, 1.0 / lo - inv_top);
  };
  std::vector<double> cuts{cell.x0, cell.x1};
  for (double y : {cell.y0, cell.y1}) {
    if (!(y > 0 && y < 1)) continue;
    const double k = std::sqrt(1 - y * y);
    for (double s : {-k, k})
      if (s > cell.x0 && s < cell.x1) cuts.push_back(s);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double err = 0;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, cuts[i], cuts[i + 1], 15, 1e-14, &err);
  }
  return total;
}

}  // namespace primlat
