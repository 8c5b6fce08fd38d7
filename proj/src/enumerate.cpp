#include "primlat/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <set>
#include <thread>
#include <mutex>

namespace primlat {

namespace {

using i128 = __int128;

i128 abs128(i128 v) { return v < 0 ? -v : v; }

// Fraction-free determinant of a k x k row-major matrix.
i128 det_small(i128* m, std::size_t k) {
  i128 prev = 1;
  int sign = 1;
  for (std::size_t c = 0; c + 1 < k; ++c) {
    if (m[c * k + c] == 0) {
      std::size_t p = c + 1;
      while (p < k && m[p * k + c] == 0) ++p;
      if (p == k) return 0;
      for (std::size_t j = 0; j < k; ++j) std::swap(m[c * k + j], m[p * k + j]);
      sign = -sign;
    }
    for (std::size_t i = c + 1; i < k; ++i) {
      for (std::size_t j = c + 1; j < k; ++j) m[i * k + j] = (m[i * k + j] * m[c * k + c] - m[i * k + c] * m[c * k + j]) / prev;
      m[i * k + c] = 0;
    }
    prev = m[c * k + c];
  }
  return sign * m[(k - 1) * k + (k - 1)];
}

template <class F>
void for_each_subset(std::size_t n, std::size_t d, F&& f) {
  std::vector<std::size_t> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    f(idx);
    std::size_t i = d;
    while (i > 0 && idx[i - 1] == n - d + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<std::vector<std::size_t>> all_patterns(std::size_t n, std::size_t d) {
  std::vector<std::vector<std::size_t>> out;
  for_each_subset(n, d, [&](const std::vector<std::size_t>& s) { out.push_back(s); });
  return out;
}

long long floor_square(double x) {
  const long double x2 = static_cast<long double>(x) * x;
  long long v = static_cast<long long>(std::floor(x2));
  while (static_cast<long double>(v + 1) <= x2) ++v;
  while (v > 0 && static_cast<long double>(v) > x2) --v;
  return v;
}

// Exact primitivity and covolume of a completed leaf.
bool finalize(HnfLeaf& leaf, long long xsq) {
  const std::size_t n = leaf.n, d = leaf.d;
  i128 sum = 0;
  long long g = 0;
  bool over = false;
  i128 buf[kMaxEnumDim * kMaxEnumDim];
  for_each_subset(n, d, [&](const std::vector<std::size_t>& rows) {
    if (over) return;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) buf[i * d + j] = leaf(rows[i], j);
    const i128 m = det_small(buf, d);
    sum += m * m;
    if (sum > xsq) over = true;
    g = std::gcd(g, static_cast<long long>(abs128(m)));
  });
  if (over || g != 1) return false;
  leaf.covol_sq = static_cast<long long>(sum);
  return true;
}

// Depth-first walk over the Hermite forms with one pivot pattern and first pivot.
class Walker {
 public:
  Walker(std::size_t n, std::size_t d, long long xsq, const std::function<void(const HnfLeaf&)>& visit)
      : n_(n), d_(d), xsq_(xsq), x2_(static_cast<double>(xsq)), visit_(visit) {}

  void run(const std::vector<std::size_t>& pattern, long long p0) {
    pattern_ = pattern;
    free_rows_.clear();
    free_m_.clear();
    for (std::size_t r = 0; r < n_; ++r) {
      if (std::find(pattern.begin(), pattern.end(), r) != pattern.end()) continue;
      const std::size_t m = std::count_if(pattern.begin(), pattern.end(), [r](std::size_t pr) { return pr < r; });
      if (m == 0) continue;
      free_rows_.push_back(r);
      free_m_.push_back(m);
    }
    leaf_ = HnfLeaf{};
    leaf_.n = n_;
    leaf_.d = d_;
    for (std::size_t i = 0; i < d_; ++i) leaf_.pivots[i] = pattern[i];
    if (p0 * p0 > xsq_) return;
    piv_[0] = p0;
    leaf_.at(pattern[0], 0) = p0;
    choose_pivot(1, p0);
  }

 private:
  void choose_pivot(std::size_t i, long long prod) {
    if (i == d_) {
      prod_ = prod;
      fill_pivot_rows(1, 0);
      return;
    }
    for (long long p = 1; (prod * p) * (prod * p) <= xsq_; ++p) {
      piv_[i] = p;
      leaf_.at(pattern_[i], i) = p;
      choose_pivot(i + 1, prod * p);
    }
  }

  // Entries left of the pivot in pivot row i, column j, in [0, p_i).
  void fill_pivot_rows(std::size_t i, std::size_t j) {
    if (i >= d_) {
      start_free_rows();
      return;
    }
    if (j == i) {
      fill_pivot_rows(i + 1, 0);
      return;
    }
    for (long long v = 0; v < piv_[i]; ++v) {
      leaf_.at(pattern_[i], j) = v;
      fill_pivot_rows(i, j + 1);
    }
    leaf_.at(pattern_[i], j) = 0;
  }

  void start_free_rows() {
    // P^{-1} for the lower-triangular pivot block.
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j) pinv_[i][j] = 0;
    for (std::size_t i = 0; i < d_; ++i) {
      pinv_[i][i] = 1.0 / double(piv_[i]);
      for (std::size_t j = 0; j < i; ++j) {
        double s = 0;
        for (std::size_t k = j; k < i; ++k) s += double(leaf_(pattern_[i], k)) * pinv_[k][j];
        pinv_[i][j] = -s / double(piv_[i]);
      }
    }
    Level& l0 = levels_[0];
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j) l0.minv[i][j] = i == j ? 1.0 : 0.0;
    l0.detm = 1.0;
    free_row(0);
  }

  void free_row(std::size_t k) {
    if (k == free_rows_.size()) {
      HnfLeaf leaf = leaf_;
      if (finalize(leaf, xsq_)) visit_(leaf);
      return;
    }
    const std::size_t m = free_m_[k];
    const Level& lv = levels_[k];
    RowState& st = rows_[k];
    st.m = m;
    // Q = (P^{-1} M^{-1} P^{-t}) restricted to the first m indices.
    double tmp[kMaxEnumDim][kMaxEnumDim];
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t l = 0; l < d_; ++l) {
        double s = 0;
        for (std::size_t kk = 0; kk <= a; ++kk) s += pinv_[a][kk] * lv.minv[kk][l];
        tmp[a][l] = s;
      }
    double q[kMaxEnumDim][kMaxEnumDim];
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        double s = 0;
        for (std::size_t l = 0; l <= b; ++l) s += tmp[a][l] * pinv_[b][l];
        q[a][b] = s;
      }
    // Cholesky-style split Q(u) = sum_a qd_a (u_a + sum_{b>a} mu_ab u_b)^2.
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        const double f = q[a][b] / q[a][a];
        for (std::size_t c = b; c < m; ++c) q[b][c] -= f * q[a][c];
      }
      st.qd[a] = q[a][a];
      for (std::size_t b = a + 1; b < m; ++b) st.mu[a][b] = q[a][b] / q[a][a];
    }
    double r = x2_ / (double(prod_) * double(prod_) * lv.detm) - 1.0;
    r = std::max(r, 0.0) * (1 + 1e-9) + 1e-9;
    st.rem[m] = r;
    enumerate_u(k, m - 1);
    for (std::size_t a = 0; a < m; ++a) leaf_.at(free_rows_[k], a) = 0;
  }

  void enumerate_u(std::size_t k, std::size_t a) {
    RowState& st = rows_[k];
    double c = 0;
    for (std::size_t b = a + 1; b < st.m; ++b) c += st.mu[a][b] * double(st.u[b]);
    const double w = std::sqrt(st.rem[a + 1] / st.qd[a]) * (1 + 1e-12) + 1e-9;
    const long long lo = static_cast<long long>(std::ceil(-c - w));
    const long long hi = static_cast<long long>(std::floor(-c + w));
    for (long long v = lo; v <= hi; ++v) {
      const double e = double(v) + c;
      const double left = st.rem[a + 1] - st.qd[a] * e * e;
      if (left < -1e-9) continue;
      st.u[a] = v;
      st.rem[a] = std::max(left, 0.0);
      if (a > 0) {
        enumerate_u(k, a - 1);
      } else {
        accept_row(k);
      }
    }
  }

  void accept_row(std::size_t k) {
    const RowState& st = rows_[k];
    const std::size_t r = free_rows_[k];
    for (std::size_t a = 0; a < st.m; ++a) leaf_.at(r, a) = st.u[a];
    if (k + 1 == free_rows_.size()) {
      free_row(k + 1);
      return;
    }
    // y = P^{-t} h; M += y y^t via Sherman-Morrison.
    double y[kMaxEnumDim] = {};
    for (std::size_t a = 0; a < st.m; ++a)
      if (st.u[a] != 0)
        for (std::size_t l = 0; l <= a; ++l) y[l] += double(st.u[a]) * pinv_[a][l];
    const Level& cur = levels_[k];
    Level& nxt = levels_[k + 1];
    double z[kMaxEnumDim];
    double t = 0;
    for (std::size_t i = 0; i < d_; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < d_; ++j) s += cur.minv[i][j] * y[j];
      z[i] = s;
      t += y[i] * s;
    }
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j) nxt.minv[i][j] = cur.minv[i][j] - z[i] * z[j] / (1 + t);
    nxt.detm = cur.detm * (1 + t);
    free_row(k + 1);
  }

  struct Level {
    double minv[kMaxEnumDim][kMaxEnumDim];
    double detm;
  };
  struct RowState {
    std::size_t m = 0;
    double qd[kMaxEnumDim];
    double mu[kMaxEnumDim][kMaxEnumDim];
    double rem[kMaxEnumDim + 1];
    long long u[kMaxEnumDim];
  };

  std::size_t n_, d_;
  long long xsq_;
  double x2_;
  const std::function<void(const HnfLeaf&)>& visit_;
  std::vector<std::size_t> pattern_, free_rows_, free_m_;
  HnfLeaf leaf_;
  long long piv_[kMaxEnumDim] = {};
  long long prod_ = 1;
  double pinv_[kMaxEnumDim][kMaxEnumDim] = {};
  Level levels_[kMaxEnumDim + 1];
  RowState rows_[kMaxEnumDim];
};

struct Partition {
  std::vector<std::size_t> pattern;
  long long p0;
};

void validate(const EnumTask& task) {
  if (task.d < 1 || task.d >= task.n) throw Error(Errc::BadArgument, "enumeration needs 1 <= d < n");
  if (task.n > kMaxEnumDim) throw Error(Errc::BadArgument, "enumeration limited to n <= 6");
  if (!(task.max_covol >= 1)) throw Error(Errc::BadArgument, "covolume bound must be >= 1");
  if (task.max_covol > 1e6) throw Error(Errc::BadArgument, "covolume bound too large");
  if (task.pivot_pattern) {
    const auto& p = *task.pivot_pattern;
    if (p.size() != task.d || !std::is_sorted(p.begin(), p.end()) || std::adjacent_find(p.begin(), p.end()) != p.end() ||
        p.back() >= task.n)
      throw Error(Errc::BadArgument, "bad pivot pattern");
  }
}

std::vector<Partition> partitions(const EnumTask& task, long long xsq) {
  std::vector<Partition> out;
  std::vector<std::vector<std::size_t>> pats =
      task.pivot_pattern ? std::vector<std::vector<std::size_t>>{*task.pivot_pattern} : all_patterns(task.n, task.d);
  for (const auto& p : pats)
    for (long long p0 = 1; p0 * p0 <= xsq; ++p0) out.push_back({p, p0});
  return out;
}

template <class Body>
void run_parallel(std::size_t jobs, unsigned threads, Body&& body) {
  threads = std::max(1u, threads);
  if (threads == 1 || jobs <= 1) {
    for (std::size_t j = 0; j < jobs; ++j) body(0u, j);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t j; (j = next.fetch_add(1)) < jobs;) body(w, j);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace

IntMatrix HnfLeaf::matrix() const {
  IntMatrix m(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = static_cast<long>((*this)(i, j));
  return m;
}

std::vector<long long> HnfLeaf::minors() const {
  std::vector<long long> out;
  i128 buf[kMaxEnumDim * kMaxEnumDim];
  for_each_subset(n, d, [&](const std::vector<std::size_t>& rows) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) buf[i * d + j] = (*this)(rows[i], j);
    out.push_back(static_cast<long long>(det_small(buf, d)));
  });
  return out;
}

bool operator<(const HnfLeaf& a, const HnfLeaf& b) {
  for (std::size_t i = 0; i < a.d; ++i)
    if (a.pivots[i] != b.pivots[i]) return a.pivots[i] < b.pivots[i];
  for (std::size_t k = 0; k < a.n * a.d; ++k)
    if (a.h[k] != b.h[k]) return a.h[k] < b.h[k];
  return false;
}

bool canonical_less(const IntMatrix& a, const IntMatrix& b) {
  auto pivots = [](const IntMatrix& m) {
    std::vector<std::size_t> p;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::size_t r = 0;
      while (r < m.rows() && m(r, j) == 0) ++r;
      p.push_back(r);
    }
    return p;
  };
  const auto pa = pivots(a), pb = pivots(b);
  if (pa != pb) return pa < pb;
  return hnf_less(a, b);
}

std::vector<long long> orthogonal_basis(const HnfLeaf& leaf) {
  const std::size_t n = leaf.n, d = leaf.d;
  // Column echelon of H^t (d x n) with the transform U tracked; the trailing
  // n - d columns of U span the kernel.
  i128 e[kMaxEnumDim][kMaxEnumDim];
  i128 u[kMaxEnumDim][kMaxEnumDim];
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < n; ++c) e[r][c] = leaf(c, r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) u[i][j] = i == j;
  auto combine = [&](std::size_t k, std::size_t j, i128 s, i128 t, i128 p, i128 q) {
    // col_k <- s col_k + t col_j, col_j <- p col_k + q col_j
    for (std::size_t r = 0; r < d; ++r) {
      const i128 ck = e[r][k], cj = e[r][j];
      e[r][k] = s * ck + t * cj;
      e[r][j] = p * ck + q * cj;
    }
    for (std::size_t r = 0; r < n; ++r) {
      const i128 ck = u[r][k], cj = u[r][j];
      u[r][k] = s * ck + t * cj;
      u[r][j] = p * ck + q * cj;
    }
  };
  std::size_t k = 0;
  for (std::size_t r = 0; r < d; ++r, ++k) {
    for (std::size_t j = k + 1; j < n; ++j) {
      if (e[r][j] == 0) continue;
      // extended gcd on (e[r][k], e[r][j])
      i128 a = e[r][k], b = e[r][j];
      i128 s0 = 1, t0 = 0, s1 = 0, t1 = 1;
      while (b != 0) {
        const i128 q = a / b;
        i128 tmp = a - q * b;
        a = b;
        b = tmp;
        tmp = s0 - q * s1;
        s0 = s1;
        s1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
      }
      // s0 x + t0 y = a = g; (s1, t1) is the cofactor pair annihilating (x, y).
      combine(k, j, s0, t0, s1, t1);
    }
  }
  std::vector<long long> out(n * (n - d));
  for (std::size_t c = d; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) {
      const i128 v = u[r][c];
      if (v > INT64_MAX || v < INT64_MIN) throw Error(Errc::GuardExceeded, "orthogonal_basis: 64-bit overflow");
      out[(c - d) * n + r] = static_cast<long long>(v);
    }
  i128 m[kMaxEnumDim * kMaxEnumDim];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = j < d ? leaf(i, j) : out[(j - d) * n + i];
  if (det_small(m, n) < 0)
    for (std::size_t r = 0; r < n; ++r) out[(n - d - 1) * n + r] = -out[(n - d - 1) * n + r];
  return out;
}

std::vector<long long> gram_of(const std::vector<long long>& basis, std::size_t n) {
  const std::size_t k = basis.size() / n;
  std::vector<long long> g(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      long long s = 0;
      for (std::size_t r = 0; r < n; ++r) s += basis[i * n + r] * basis[j * n + r];
      g[j * k + i] = s;
    }
  return g;
}

int hashed_orientation(const HnfLeaf& leaf) {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ (leaf.n * 131 + leaf.d);
  for (std::size_t k = 0; k < leaf.n * leaf.d; ++k) {
    h ^= static_cast<std::uint64_t>(leaf.h[k]) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= h >> 30;
    h *= 0xbf58476d1ce4e5b9ull;
    h ^= h >> 27;
    h *= 0x94d049bb133111ebull;
    h ^= h >> 31;
  }
  return (h >> 17) & 1 ? 1 : -1;
}

EnumResult enumerate_unordered(const EnumTask& task, const std::function<void(unsigned, const HnfLeaf&)>& visit) {
  validate(task);
  const long long xsq = floor_square(task.max_covol);
  const auto parts = partitions(task, xsq);
  const unsigned threads = std::max(1u, task.threads);
  std::vector<std::map<std::vector<std::size_t>, std::uint64_t>> counts(threads);
  run_parallel(parts.size(), threads, [&](unsigned w, std::size_t j) {
    std::uint64_t c = 0;
    std::function<void(const HnfLeaf&)> f = [&](const HnfLeaf& leaf) {
      if (task.filter && !task.filter(leaf)) return;
      ++c;
      visit(w, leaf);
    };
    Walker walker(task.n, task.d, xsq, f);
    walker.run(parts[j].pattern, parts[j].p0);
    counts[w][parts[j].pattern] += c;
  });
  EnumResult res;
  for (const auto& m : counts)
    for (const auto& [k, v] : m) {
      res.per_pattern[k] += v;
      res.count += v;
    }
  return res;
}

EnumResult enumerate_primitive(const EnumTask& task, const std::function<void(const HnfLeaf&)>& emit) {
  validate(task);
  const long long xsq = floor_square(task.max_covol);
  const auto parts = partitions(task, xsq);
  const unsigned threads = std::max(1u, task.threads);
  EnumResult res;
  const std::size_t window = threads * 4;
  for (std::size_t base = 0; base < parts.size(); base += window) {
    const std::size_t len = std::min(window, parts.size() - base);
    std::vector<std::vector<HnfLeaf>> buffers(len);
    run_parallel(len, threads, [&](unsigned, std::size_t j) {
      auto& buf = buffers[j];
      std::function<void(const HnfLeaf&)> f = [&](const HnfLeaf& leaf) {
        if (!task.filter || task.filter(leaf)) buf.push_back(leaf);
      };
      Walker walker(task.n, task.d, xsq, f);
      walker.run(parts[base + j].pattern, parts[base + j].p0);
      std::sort(buf.begin(), buf.end());
    });
    for (std::size_t j = 0; j < len; ++j) {
      res.per_pattern[parts[base + j].pattern] += buffers[j].size();
      res.count += buffers[j].size();
      for (const auto& leaf : buffers[j]) emit(leaf);
    }
  }
  return res;
}

std::vector<PrimitiveLattice> enumerate_set(std::size_t n, std::size_t d, double max_covol, unsigned threads) {
  EnumTask task;
  task.n = n;
  task.d = d;
  task.max_covol = max_covol;
  task.threads = threads;
  std::vector<PrimitiveLattice> out;
  enumerate_primitive(task, [&](const HnfLeaf& leaf) { out.push_back(leaf.lattice()); });
  return out;
}

std::vector<PrimitiveLattice> brute_force_oracle(std::size_t n, std::size_t d, double max_covol) {
  if (n > 4 || max_covol > 12) throw Error(Errc::GuardExceeded, "oracle limited to n <= 4 and X <= 12");
  if (d < 1 || d >= n || max_covol < 1) throw Error(Errc::BadArgument, "oracle needs 1 <= d < n and X >= 1");
  const long long xsq = floor_square(max_covol);
  // Successive-minima vectors of a lattice with covol <= X are primitive in Z^n,
  // ordered by norm, and their norm product is at most C(d) X (Minkowski).
  const double bound = minkowski_constant(d) * max_covol * (1 + 1e-12);
  const long r = static_cast<long>(std::floor(bound));
  struct Vec {
    std::vector<long> v;
    long long nsq;
  };
  std::vector<Vec> prim;
  std::vector<long> x(n, -r);
  while (true) {
    long long nsq = 0;
    long g = 0;
    std::size_t first = n;
    for (std::size_t i = 0; i < n; ++i) {
      nsq += x[i] * x[i];
      g = std::gcd(g, std::labs(x[i]));
      if (first == n && x[i] != 0) first = i;
    }
    if (g == 1 && x[first] > 0 && std::sqrt(double(nsq)) <= bound) prim.push_back({x, nsq});
    std::size_t i = 0;
    while (i < n && x[i] == r) x[i++] = -r;
    if (i == n) break;
    ++x[i];
  }
  std::sort(prim.begin(), prim.end(), [](const Vec& a, const Vec& b) { return a.nsq != b.nsq ? a.nsq < b.nsq : a.v < b.v; });

  std::set<std::vector<long long>> keys;
  std::vector<std::vector<std::size_t>> reps;
  std::vector<std::size_t> pick;
  i128 buf[16];
  auto rec = [&](auto&& self, std::size_t start, double prod) -> void {
    if (pick.size() == d) {
      std::vector<long long> minors;
      long long g = 0;
      for_each_subset(n, d, [&](const std::vector<std::size_t>& rows) {
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j) buf[i * d + j] = prim[pick[j]].v[rows[i]];
        const long long m = static_cast<long long>(det_small(buf, d));
        minors.push_back(m);
        g = std::gcd(g, std::llabs(m));
      });
      if (g == 0) return;
      long long sum = 0;
      for (auto& m : minors) {
        m /= g;
        sum += m * m;
      }
      if (sum > xsq) return;
      const auto nz = std::find_if(minors.begin(), minors.end(), [](long long m) { return m != 0; });
      if (*nz < 0)
        for (auto& m : minors) m = -m;
      if (keys.insert(minors).second) reps.push_back(pick);
      return;
    }
    for (std::size_t i = start; i < prim.size(); ++i) {
      const double len = std::sqrt(double(prim[i].nsq));
      // Remaining vectors are at least as long as this one.
      const double least = prod * std::pow(len, double(d - pick.size()));
      if (least > bound) break;
      pick.push_back(i);
      self(self, i + 1, prod * len);
      pick.pop_back();
    }
  };
  rec(rec, 0, 1.0);

  std::vector<PrimitiveLattice> out;
  for (const auto& p : reps) {
    IntMatrix b(n, d);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < n; ++i) b(i, j) = prim[p[j]].v[i];
    out.push_back(PrimitiveLattice::from_hnf(saturate(b)));
  }
  std::sort(out.begin(), out.end(), [](const PrimitiveLattice& a, const PrimitiveLattice& b) { return canonical_less(a.hnf(), b.hnf()); });
  return out;
}

std::vector<SweepRow> count_sweep(std::size_t n, std::size_t d, const std::vector<double>& xs, unsigned threads) {
  if (xs.empty()) throw Error(Errc::EmptySweep, "count_sweep needs at least one bound");
  const double xmax = *std::max_element(xs.begin(), xs.end());
  EnumTask task;
  task.n = n;
  task.d = d;
  task.max_covol = xmax;
  task.threads = threads;
  const unsigned workers = std::max(1u, threads);
  std::vector<std::map<long long, std::uint64_t>> hist(workers);
  enumerate_unordered(task, [&](unsigned w, const HnfLeaf& leaf) { ++hist[w][leaf.covol_sq]; });
  std::map<long long, std::uint64_t> merged;
  for (const auto& h : hist)
    for (const auto& [k, v] : h) merged[k] += v;
  std::vector<SweepRow> rows;
  for (double x : xs) {
    const long long xsq = floor_square(x);
    std::uint64_t c = 0;
    for (auto it = merged.begin(); it != merged.end() && it->first <= xsq; ++it) c += it->second;
    rows.push_back({x, c, double(c) / std::pow(x, double(n))});
  }
  return rows;
}

PivotBoundReport pivot_bounds(const HnfLeaf& leaf) {
  PivotBoundReport rep;
  const std::size_t n = leaf.n, d = leaf.d;
  const IntMatrix h = leaf.matrix();
  const Int cov2 = covol_sq(h);
  Int prod = 1;
  for (std::size_t i = 0; i < d; ++i) prod *= static_cast<long>(leaf(leaf.pivots[i], i));
  rep.pivot_product_ok = prod * prod <= cov2;
  RatMatrix p(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) p(i, j) = Rat(static_cast<long>(leaf(leaf.pivots[i], j)));
  const RatMatrix pinv = inverse(p);
  for (std::size_t r = 0; r < n; ++r) {
    if (std::find(leaf.pivots.begin(), leaf.pivots.begin() + d, r) != leaf.pivots.begin() + d) continue;
    std::size_t m = 0;
    while (m < d && leaf.pivots[m] < r) ++m;
    if (m == 0) continue;
    RatMatrix row(1, d);
    for (std::size_t j = 0; j < d; ++j) row(0, j) = Rat(static_cast<long>(leaf(r, j)));
    const RatMatrix y = row * pinv;
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<std::size_t> rows;
      for (std::size_t i = 0; i < d; ++i) rows.push_back(i == j ? r : leaf.pivots[i]);
      std::sort(rows.begin(), rows.end());
      IntMatrix sub(d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t c = 0; c < d; ++c) sub(i, c) = h(rows[i], c);
      const Int minor = det_int(sub);
      const Rat scaled = Rat(prod) * y(0, j);
      if (abs(scaled) != Rat(abs(minor)) || minor * minor > cov2) rep.replaced_minor_ok = false;
    }
    for (std::size_t i = 0; i < m; ++i) {
      const Int hv = static_cast<long>(leaf(r, i));
      Int others = prod / static_cast<long>(leaf(leaf.pivots[i], i));
      const bool ok = hv * hv * others * others <= cov2;
      if (!ok) rep.all_entries_ok = false;
      if (!ok && i + 1 == m) rep.last_entry_ok = false;
    }
  }
  return rep;
}

}  // namespace primlat
