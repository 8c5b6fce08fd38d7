#include "primlat/lattice.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "primlat/constants.hpp"
#include "primlat/reduce.hpp"
#include "primlat/shapes.hpp"

namespace primlat {

DLattice::DLattice(RatMatrix basis, int orientation) : basis_(std::move(basis)), orientation_(orientation) {
  if (orientation != 1 && orientation != -1) throw Error(Errc::BadArgument, "orientation must be +1 or -1");
  if (basis_.cols() == 0 || basis_.cols() > basis_.rows()) throw Error(Errc::RankDeficient, "bad lattice rank");
  covol_sq_ = primlat::covol_sq(basis_);
}

RatMatrix DLattice::oriented_basis() const {
  RatMatrix b = basis_;
  if (orientation_ < 0) b.negate_col(b.cols() - 1);
  return b;
}

bool DLattice::is_integral() const {
  for (const auto& v : basis_.data())
    if (v.get_den() != 1) return false;
  return true;
}

PrimitiveLattice PrimitiveLattice::from_basis(const IntMatrix& b, int orientation) {
  if (minor_gcd(b) != 1) throw Error(Errc::NotPrimitive, "basis does not span a primitive lattice");
  HermiteForm h = primlat::hnf(b);
  return from_hnf(std::move(h.H), orientation * h.det_u);
}

PrimitiveLattice PrimitiveLattice::from_hnf(IntMatrix h, int orientation) {
  PrimitiveLattice p;
  p.hnf_ = std::move(h);
  p.orientation_ = orientation;
  return p;
}

IntMatrix PrimitiveLattice::oriented_basis() const {
  IntMatrix b = hnf_;
  if (orientation_ < 0) b.negate_col(b.cols() - 1);
  return b;
}

bool hnf_less(const IntMatrix& a, const IntMatrix& b) {
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
  return false;
}

bool is_primitive(const DLattice& l) {
  auto b = to_int(l.basis());
  if (!b) throw Error(Errc::NotIntegral, "is_primitive needs an integral basis");
  const bool by_minors = minor_gcd(*b) == 1;
  const bool by_saturation = hnf(*b).H == saturate(*b);
  assert(by_minors == by_saturation);
  return by_minors && by_saturation;
}

DLattice dual(const DLattice& l) {
  const RatMatrix& b = l.basis();
  return DLattice(b * inverse(gram(b)), l.orientation());
}

namespace {

struct Canon {
  IntMatrix h;
  int sign;
};

Canon canonical(const DLattice& l, const Int& scale) {
  auto b = to_int(l.basis().scaled(Rat(scale)));
  assert(b.has_value());
  HermiteForm h = hnf(*b);
  return {std::move(h.H), l.orientation() * h.det_u};
}

Int round_rat(const Rat& q) {
  // floor(q + 1/2)
  Int num = 2 * q.get_num() + q.get_den();
  Int den = 2 * q.get_den();
  return floor_div(num, den);
}

int sign_of(const Int& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace

bool equal(const DLattice& a, const DLattice& b) {
  if (a.n() != b.n() || a.d() != b.d()) return false;
  Int l = common_denominator(a.basis());
  mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), common_denominator(b.basis()).get_mpz_t());
  Canon ca = canonical(a, l);
  Canon cb = canonical(b, l);
  return ca.h == cb.h && ca.sign == cb.sign;
}

bool equal_unoriented(const DLattice& a, const DLattice& b) { return equal(a, b) || equal(a, b.flipped()); }

PrimitiveLattice orthogonal(const PrimitiveLattice& l) {
  if (l.d() >= l.n()) throw Error(Errc::BadArgument, "orthogonal needs d < n");
  IntMatrix k = int_kernel(l.hnf().transpose());
  const int s = sign_of(det_int(hconcat(l.oriented_basis(), k)));
  return PrimitiveLattice::from_hnf(std::move(k), s);
}

DLattice factor(const PrimitiveLattice& l, const DLattice& delta) {
  const std::size_t n = l.n();
  if (l.d() >= n) throw Error(Errc::BadArgument, "factor needs d < n");
  if (delta.n() != n || delta.d() != n) throw Error(Errc::BadArgument, "delta must be a full lattice in R^n");
  const RatMatrix& dm = delta.basis();
  const RatMatrix b = to_rat(l.oriented_basis());
  auto y = to_int(inverse(dm) * b);
  if (!y) throw Error(Errc::NotPrimitiveInDelta, "lattice is not contained in delta");
  if (covol_sq(*y) != covol_sq(saturate(*y))) throw Error(Errc::NotPrimitiveInDelta, "lattice is not primitive in delta");
  RatMatrix c = dm * to_rat(unimodular_complete(*y));
  if (det_rat(dm) < 0) c.negate_col(c.cols() - 1);
  const RatMatrix proj = c - b * (inverse(gram(b)) * (b.transpose() * c));
  return DLattice(proj, 1);
}

DLattice factor(const PrimitiveLattice& l) {
  const std::size_t n = l.n();
  DLattice f = factor(l, DLattice(IntMatrix::identity(n)));
  assert(equal(dual(f), orthogonal(l).lattice()));
  return f;
}

IntMatrix gamma_matrix(const PrimitiveLattice& l) {
  const std::size_t n = l.n();
  const std::size_t d = l.d();
  const IntMatrix b = l.oriented_basis();
  if (d == n) {
    if (det_int(b) != 1) throw Error(Errc::NotPrimitive, "full-rank lattice must be Z^n with positive orientation");
    return b;
  }
  if (minor_gcd(b) != 1) throw Error(Errc::NotPrimitive, "gamma_matrix needs a primitive lattice");
  IntMatrix c = unimodular_complete(b);
  // Normalize the image of C in Z^n / Lambda through K^t, then fix the sign.
  const IntMatrix k = int_kernel(b.transpose());
  HermiteForm h = hnf(k.transpose() * c);
  c = c * h.U;
  if (det_int(hconcat(b, c)) < 0) c.negate_col(n - d - 1);
  // Reduce each completion column against Lambda by rounding its coordinates.
  const RatMatrix br = to_rat(b);
  const RatMatrix coef = inverse(gram(br)) * (br.transpose() * to_rat(c));
  IntMatrix m(d, c.cols());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) m(i, j) = round_rat(coef(i, j));
  c = c - b * m;
  IntMatrix g = hconcat(b, c);
  assert(det_int(g) == 1);
  return g;
}

Minima successive_minima(const DLattice& l) {
  const std::size_t d = l.d();
  if (d > 4) throw Error(Errc::RankTooLarge, "successive minima limited to rank 4");
  const RatMatrix g = gram(l.basis());
  const IntMatrix t = lll_gram(to_dense(g));
  const RatMatrix tr = to_rat(t);
  const RatMatrix gr = tr.transpose() * g * tr;
  Rat bound = gr(0, 0);
  for (std::size_t i = 1; i < d; ++i) bound = std::max(bound, gr(i, i));

  struct Cand {
    Rat q;
    std::vector<long> x;
  };
  std::vector<Cand> cands;
  short_vectors(to_dense(gr), bound.get_d(), [&](const std::vector<long>& x) {
    std::size_t f = 0;
    while (x[f] == 0) ++f;
    if (x[f] < 0) return;
    Rat q = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) q += gr(i, j) * x[i] * x[j];
    if (q <= bound) cands.push_back({q, x});
  });
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.q != b.q) return a.q < b.q;
    return a.x < b.x;
  });

  Minima out;
  std::vector<std::vector<Int>> chosen;
  for (const auto& c : cands) {
    std::vector<Int> v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = c.x[i];
    chosen.push_back(v);
    if (column_echelon(IntMatrix::from_columns(chosen)).rank < chosen.size()) {
      chosen.pop_back();
      continue;
    }
    out.sq.push_back(c.q);
    if (chosen.size() == d) break;
  }
  if (chosen.size() != d) throw Error(Errc::IllConditioned, "short vector enumeration missed a minimum");
  out.coords = t * IntMatrix::from_columns(chosen);
  return out;
}

bool transference_check(const DLattice& l) {
  const std::size_t k = l.d();
  const Minima a = successive_minima(l);
  const Minima b = successive_minima(dual(l));
  const Rat k2(static_cast<long>(k * k));
  for (std::size_t j = 0; j < k; ++j) {
    const Rat p = a.sq[j] * b.sq[k - 1 - j];
    if (p < 1 || p > k2) return false;
  }
  return true;
}

double minkowski_constant(std::size_t k) {
  if (k == 0) return 1.0;
  return std::pow(2.0, double(k)) / ball_vol(static_cast<int>(k));
}

bool sublattice_covolume_check(const DLattice& l) {
  const std::size_t k = l.d();
  const DLattice ld = dual(l);
  const Minima m = successive_minima(l);
  const Minima md = successive_minima(ld);
  const RatMatrix vl = l.basis() * to_rat(m.coords);
  const RatMatrix vd = ld.basis() * to_rat(md.coords);
  const long double cov_dual_sq = ld.covol_sq().get_d();
  for (std::size_t j = 1; j <= k; ++j) {
    const long double lj = covol_sq(vl.col_block(0, j)).get_d();
    const long double dj = (k - j == 0) ? 1.0L : (long double)covol_sq(vd.col_block(0, k - j)).get_d();
    const long double mid = dj / cov_dual_sq;
    const long double ckj = minkowski_constant(k - j);
    const long double kj = std::pow((long double)k, (long double)j);
    const long double lo = lj / (ckj * ckj * kj * kj);
    const long double cj = minkowski_constant(j), ck = minkowski_constant(k);
    const long double hi = cj * cj * ck * ck * lj;
    const long double tol = 1e-12L;
    if (mid < lo * (1 - tol) || mid > hi * (1 + tol)) return false;
  }
  return true;
}

int sym_order_rank2(const DLattice& l) {
  if (l.d() != 2) throw Error(Errc::RankNotTwo, "symmetry order needs rank 2");
  const ShapePoint2 p = shape_rank2(l);
  const bool on_circle = p.x * p.x + p.y_sq == 1;
  if (p.x == 0 && p.y_sq == 1) return 8;
  if (p.x == Rat(1, 2) && p.y_sq == Rat(3, 4)) return 12;
  if (p.x == 0 || p.x == Rat(1, 2) || on_circle) return 4;
  return 2;
}

}  // namespace primlat
