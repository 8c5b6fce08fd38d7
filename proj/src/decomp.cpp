#include "primlat/decomp.hpp"

#include <cmath>

namespace primlat {

namespace {

template <class F>
void for_each_rows(std::size_t n, std::size_t d, F&& f) {
  std::vector<std::size_t> idx(d);
  for (std::size_t i = 0; i < d; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = d;
    while (i > 0 && idx[i - 1] == n - d + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<double> normalized(std::vector<double> v) {
  double s = 0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  for (double& x : v) x /= s;
  return v;
}

}  // namespace

RealMatrix to_real(const IntMatrix& m) {
  RealMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).get_d();
  return r;
}

RealMatrix to_real(const RatMatrix& m) {
  RealMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).get_d();
  return r;
}

IwasawaKAN iwasawa(const RealMatrix& g) {
  const Eigen::Index n = g.rows();
  if (n == 0 || g.cols() != n) throw Error(Errc::BadArgument, "iwasawa: need a square matrix");
  if (std::abs(g.determinant() - 1.0) > 1e-9) throw Error(Errc::BadArgument, "iwasawa: det must be 1");
  RealMatrix q(n, n);
  RealMatrix r = RealMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXd v = g.col(j);
    const double scale = v.norm();
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index k = 0; k < j; ++k) {
        const double c = q.col(k).dot(v);
        r(k, j) += c;
        v -= c * q.col(k);
      }
    const double p = v.norm();
    if (!(p >= 1e-12 * std::max(1.0, scale))) throw Error(Errc::IllConditioned, "iwasawa: Gram-Schmidt pivot too small");
    r(j, j) = p;
    q.col(j) = v / p;
  }
  IwasawaKAN out;
  out.K = q;
  out.A = r.diagonal();
  out.N = out.A.cwiseInverse().asDiagonal() * r;
  for (Eigen::Index i = 0; i < n; ++i) out.N(i, i) = 1.0;
  return out;
}

RIComponents ri(const RealMatrix& g, std::size_t d) {
  const std::size_t n = g.rows();
  if (d < 1 || d >= n) throw Error(Errc::BadArgument, "ri: need 1 <= d < n");
  const IwasawaKAN kan = iwasawa(g);
  std::vector<double> la(n);
  for (std::size_t i = 0; i < n; ++i) la[i] = std::log(kan.A(i));
  RIComponents out;
  out.n = n;
  out.d = d;
  out.grass_point = plucker_unit(kan.K.leftCols(d));
  for (std::size_t i = 0; i < d; ++i) out.t += la[i];
  double acc = 0;
  for (std::size_t i = 1; i < d; ++i) {
    acc += la[i - 1];
    out.s.push_back(2.0 * (double(i) * out.t / double(d) - acc));
  }
  acc = 0;
  for (std::size_t j = 1; j < n - d; ++j) {
    acc += la[d + j - 1];
    out.w.push_back(-2.0 * (double(j) * out.t / double(n - d) + acc));
  }
  const RealMatrix rr = kan.A.asDiagonal() * kan.N;
  out.g_d = std::exp(-out.t / double(d)) * rr.topLeftCorner(d, d);
  out.g_nd = std::exp(out.t / double(n - d)) * rr.bottomRightCorner(n - d, n - d);
  return out;
}

double RIComponents::covol_prefix(std::size_t i) const {
  if (i < 1 || i > d) throw Error(Errc::BadArgument, "covol_prefix: index out of range");
  const double si = i < d ? s[i - 1] : 0.0;
  return std::exp(double(i) * t / double(d) - si / 2);
}

double RIComponents::covol_factor_prefix(std::size_t j) const {
  if (j < 1 || j > n - d) throw Error(Errc::BadArgument, "covol_factor_prefix: index out of range");
  const double wj = j < n - d ? w[j - 1] : 0.0;
  return std::exp(-double(j) * t / double(n - d) - wj / 2);
}

std::vector<double> plucker_unit(const RealMatrix& cols) {
  const std::size_t n = cols.rows(), d = cols.cols();
  std::vector<double> out;
  RealMatrix sub(d, d);
  for_each_rows(n, d, [&](const std::vector<std::size_t>& rows) {
    for (std::size_t i = 0; i < d; ++i) sub.row(i) = cols.row(rows[i]);
    out.push_back(sub.determinant());
  });
  return normalized(std::move(out));
}

std::vector<double> direction(const DLattice& l) {
  std::vector<double> out;
  for (const Rat& m : maximal_minors(l.oriented_basis())) out.push_back(m.get_d());
  return normalized(std::move(out));
}

std::vector<double> direction(const PrimitiveLattice& l) {
  std::vector<double> out;
  for (const Int& m : maximal_minors(l.oriented_basis())) out.push_back(m.get_d());
  return normalized(std::move(out));
}

}  // namespace primlat
