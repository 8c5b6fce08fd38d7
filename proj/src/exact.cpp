#include "primlat/exact.hpp"

#include <cassert>
#include <utility>

namespace primlat {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::NotPrimitive: return "NotPrimitive";
    case Errc::NotIntegral: return "NotIntegral";
    case Errc::NotPrimitiveInDelta: return "NotPrimitiveInDelta";
    case Errc::RankTooLarge: return "RankTooLarge";
    case Errc::RankNotTwo: return "RankNotTwo";
    case Errc::IllConditioned: return "IllConditioned";
    case Errc::BadPartition: return "BadPartition";
    case Errc::BadArgument: return "BadArgument";
    case Errc::NegativeIndex: return "NegativeIndex";
    case Errc::DegenerateCells: return "DegenerateCells";
    case Errc::EmptySweep: return "EmptySweep";
    case Errc::GuardExceeded: return "GuardExceeded";
  }
  return "Unknown";
}

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

std::optional<IntMatrix> to_int(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) return std::nullopt;
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

Int common_denominator(const RatMatrix& m) {
  Int l = 1;
  for (const auto& v : m.data()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

namespace {

// Replaces columns (k, j) of both matrices by (s*c_k + t*c_j, -(b/g)*c_k + (a/g)*c_j),
// a unimodular 2x2 step that leaves gcd(a, b) in row r of column k and zero in column j.
void gcd_step(IntMatrix& e, IntMatrix& u, std::size_t r, std::size_t k, std::size_t j) {
  const Int a = e(r, k);
  const Int b = e(r, j);
  Int g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  const Int bg = b / g;
  const Int ag = a / g;
  auto apply = [&](IntMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const Int ck = m(i, k);
      const Int cj = m(i, j);
      m(i, k) = s * ck + t * cj;
      m(i, j) = ag * cj - bg * ck;
    }
  };
  apply(e);
  apply(u);
}

}  // namespace

ColumnEchelon column_echelon(const IntMatrix& m) {
  ColumnEchelon out;
  out.E = m;
  out.U = IntMatrix::identity(m.cols());
  const std::size_t n = m.cols();
  std::size_t k = 0;
  for (std::size_t r = 0; r < m.rows() && k < n; ++r) {
    for (std::size_t j = k + 1; j < n; ++j)
      if (out.E(r, j) != 0) gcd_step(out.E, out.U, r, k, j);
    if (out.E(r, k) == 0) continue;
    if (out.E(r, k) < 0) {
      out.E.negate_col(k);
      out.U.negate_col(k);
      out.det_u = -out.det_u;
    }
    const Int p = out.E(r, k);
    for (std::size_t j = 0; j < k; ++j) {
      const Int q = floor_div(out.E(r, j), p);
      if (q != 0) {
        out.E.add_col_multiple(j, k, -q);
        out.U.add_col_multiple(j, k, -q);
      }
    }
    out.pivot_rows.push_back(r);
    ++k;
  }
  out.rank = k;
  return out;
}

HermiteForm hnf(const IntMatrix& b) {
  ColumnEchelon ce = column_echelon(b);
  if (ce.rank < b.cols()) throw Error(Errc::RankDeficient, "hnf: columns are dependent");
  return HermiteForm{std::move(ce.E), std::move(ce.U), std::move(ce.pivot_rows), ce.det_u};
}

Int det_int(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::BadArgument, "det_int: not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = std::move(v);
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Rat det_rat(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::BadArgument, "det_rat: not square");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  Rat det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rat f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

RatMatrix gram(const RatMatrix& b) { return b.transpose() * b; }
IntMatrix gram(const IntMatrix& b) { return b.transpose() * b; }

Rat covol_sq(const RatMatrix& b) {
  Rat v = det_rat(gram(b));
  if (v == 0) throw Error(Errc::RankDeficient, "covol_sq: columns are dependent");
  return v;
}

Int covol_sq(const IntMatrix& b) {
  Int v = det_int(gram(b));
  if (v == 0) throw Error(Errc::RankDeficient, "covol_sq: columns are dependent");
  return v;
}

namespace {

template <class T, class F>
void for_each_row_subset(const Matrix<T>& b, F&& f) {
  const std::size_t n = b.rows();
  const std::size_t d = b.cols();
  if (d > n) return;
  std::vector<std::size_t> idx(d);
  for (std::size_t i = 0; i < d; ++i) idx[i] = i;
  Matrix<T> sub(d, d);
  while (true) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) sub(i, j) = b(idx[i], j);
    if (!f(sub)) return;
    std::size_t i = d;
    while (i > 0 && idx[i - 1] == n - d + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::vector<Int> maximal_minors(const IntMatrix& b) {
  std::vector<Int> out;
  for_each_row_subset(b, [&](const IntMatrix& sub) {
    out.push_back(det_int(sub));
    return true;
  });
  return out;
}

std::vector<Rat> maximal_minors(const RatMatrix& b) {
  std::vector<Rat> out;
  for_each_row_subset(b, [&](const RatMatrix& sub) {
    out.push_back(det_rat(sub));
    return true;
  });
  return out;
}

Int minor_gcd(const IntMatrix& b) {
  Int g = 0;
  for_each_row_subset(b, [&](const IntMatrix& sub) {
    const Int m = det_int(sub);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.get_mpz_t());
    return g != 1;
  });
  if (g == 0) throw Error(Errc::RankDeficient, "minor_gcd: columns are dependent");
  return g;
}

IntMatrix int_kernel(const IntMatrix& m) {
  const std::size_t n = m.cols();
  ColumnEchelon ce = column_echelon(m);
  if (ce.rank == n) return IntMatrix(n, 0);
  return hnf(ce.U.col_block(ce.rank, n - ce.rank)).H;
}

IntMatrix saturate(const IntMatrix& b) {
  const std::size_t n = b.rows();
  const std::size_t d = b.cols();
  IntMatrix k = int_kernel(b.transpose());
  if (n - k.cols() < d) throw Error(Errc::RankDeficient, "saturate: columns are dependent");
  if (k.cols() == 0) return IntMatrix::identity(n);
  return hnf(int_kernel(k.transpose())).H;
}

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::BadArgument, "inverse: not square");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw Error(Errc::RankDeficient, "inverse: singular matrix");
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    const Rat piv = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      const Rat f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

IntMatrix unimodular_complete(const IntMatrix& b) {
  const std::size_t n = b.rows();
  const std::size_t d = b.cols();
  if (d >= n) throw Error(Errc::BadArgument, "unimodular_complete: need d < n");
  if (minor_gcd(b) != 1) throw Error(Errc::NotPrimitive, "unimodular_complete: basis is not primitive");
  // B^t U = [H | 0] with H unimodular, hence B = U^{-t}[H^t; 0] and the trailing
  // columns of U^{-t} complete B.
  ColumnEchelon ce = column_echelon(b.transpose());
  const auto w = to_int(inverse(to_rat(ce.U)).transpose());
  assert(w.has_value());
  IntMatrix c = w->col_block(d, n - d);
  if (det_int(hconcat(b, c)) < 0) c.negate_col(n - d - 1);
  assert(det_int(hconcat(b, c)) == 1);
  return c;
}

}  // namespace primlat
