#include "primlat/reduce.hpp"

#include <cmath>

namespace primlat {

DenseGram to_dense(const RatMatrix& g) {
  DenseGram out;
  out.d = g.rows();
  out.a.resize(out.d * out.d);
  for (std::size_t i = 0; i < out.d; ++i)
    for (std::size_t j = 0; j < out.d; ++j) out(i, j) = g(i, j).get_d();
  return out;
}

namespace {

DenseGram transformed(const DenseGram& g, const std::vector<long long>& t) {
  const std::size_t d = g.d;
  DenseGram gt;
  gt.d = d;
  gt.a.assign(d * d, 0.0);
  std::vector<double> tmp(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      double s = 0;
      for (std::size_t k = 0; k < d; ++k) s += g(i, k) * double(t[k * d + j]);
      tmp[i * d + j] = s;
    }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      double s = 0;
      for (std::size_t k = 0; k < d; ++k) s += double(t[k * d + i]) * tmp[k * d + j];
      gt(i, j) = s;
    }
  return gt;
}

// Gram-Schmidt data from a Gram matrix: mu (lower triangle) and squared lengths.
void gso(const DenseGram& g, std::vector<double>& mu, std::vector<double>& bstar) {
  const std::size_t d = g.d;
  mu.assign(d * d, 0.0);
  bstar.assign(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      double r = g(i, j);
      for (std::size_t k = 0; k < j; ++k) r -= mu[j * d + k] * mu[i * d + k] * bstar[k];
      mu[i * d + j] = r / bstar[j];
    }
    double b = g(i, i);
    for (std::size_t k = 0; k < i; ++k) b -= mu[i * d + k] * mu[i * d + k] * bstar[k];
    bstar[i] = b;
  }
}

}  // namespace

IntMatrix lll_gram(const DenseGram& g0, double delta, bool sl_only) {
  const std::size_t d = g0.d;
  std::vector<long long> t(d * d, 0);
  for (std::size_t i = 0; i < d; ++i) t[i * d + i] = 1;
  std::vector<double> mu, bstar;
  std::size_t k = 1;
  int guard = 0;
  while (k < d && guard++ < 100000) {
    DenseGram g = transformed(g0, t);
    gso(g, mu, bstar);
    for (std::size_t jj = k; jj-- > 0;) {
      const double q = std::nearbyint(mu[k * d + jj]);
      if (q == 0) continue;
      const long long qi = static_cast<long long>(q);
      for (std::size_t r = 0; r < d; ++r) t[r * d + k] -= qi * t[r * d + jj];
      for (std::size_t c = 0; c <= jj; ++c) mu[k * d + c] -= q * (c == jj ? 1.0 : mu[jj * d + c]);
    }
    g = transformed(g0, t);
    gso(g, mu, bstar);
    const double m = mu[k * d + k - 1];
    if (bstar[k] >= (delta - m * m) * bstar[k - 1]) {
      ++k;
    } else {
      for (std::size_t r = 0; r < d; ++r) {
        const long long a = t[r * d + k - 1];
        const long long b = t[r * d + k];
        t[r * d + k - 1] = b;
        t[r * d + k] = sl_only ? -a : a;
      }
      k = k > 1 ? k - 1 : 1;
    }
  }
  IntMatrix out(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out(i, j) = static_cast<long>(t[i * d + j]);
  return out;
}

bool short_vectors(const DenseGram& g, double bound, const std::function<void(const std::vector<long>&)>& visit) {
  const std::size_t d = g.d;
  if (d == 0) return true;
  // Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
  std::vector<double> q(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) q[i * d + j] = g(i, j);
  for (std::size_t i = 0; i < d; ++i) {
    if (!(q[i * d + i] > 0)) return false;
    for (std::size_t j = i + 1; j < d; ++j) {
      const double f = q[i * d + j] / q[i * d + i];
      for (std::size_t l = j; l < d; ++l) q[j * d + l] -= f * q[i * d + l];
    }
    for (std::size_t j = i + 1; j < d; ++j) q[i * d + j] /= q[i * d + i];
  }
  const double r = bound * (1 + 1e-9) + 1e-12;
  std::vector<long> x(d, 0);
  std::vector<double> rem(d + 1, 0.0);
  rem[d] = r;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    double c = 0;
    for (std::size_t j = i + 1; j < d; ++j) c += q[i * d + j] * double(x[j]);
    const double qi = q[i * d + i];
    const double w = std::sqrt(std::max(0.0, rem[i + 1]) / qi) + 1e-9;
    const long lo = static_cast<long>(std::ceil(-c - w));
    const long hi = static_cast<long>(std::floor(-c + w));
    for (long v = lo; v <= hi; ++v) {
      const double e = double(v) + c;
      const double left = rem[i + 1] - qi * e * e;
      if (left < -1e-9 * r) continue;
      x[i] = v;
      rem[i] = left;
      if (i == 0) {
        bool zero = true;
        for (long xv : x) zero = zero && xv == 0;
        if (!zero) visit(x);
      } else {
        self(self, i - 1);
      }
    }
    x[i] = 0;
  };
  rec(rec, d - 1);
  return true;
}

}  // namespace primlat
