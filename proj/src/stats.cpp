#include "primlat/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numeric>

#include "primlat/decomp.hpp"

namespace primlat {

namespace {

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t d) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    out.push_back(idx);
    std::size_t i = d;
    while (i > 0 && idx[i - 1] == n - d + i - 1) --i;
    if (i == 0) return out;
    ++idx[i - 1];
    for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::size_t binom(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::vector<double> haar_direction(std::mt19937_64& rng, std::size_t n, std::size_t d) {
  std::normal_distribution<double> g(0.0, 1.0);
  RealMatrix m(n, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = g(rng);
  return plucker_unit(m);
}

std::vector<double> hodge_star(const std::vector<double>& p, std::size_t n, std::size_t d) {
  const auto is = subsets(n, d);
  const auto js = subsets(n, n - d);
  if (p.size() != is.size()) throw Error(Errc::BadArgument, "hodge_star: wrong Plucker length");
  std::vector<double> out(js.size());
  for (std::size_t a = 0; a < is.size(); ++a) {
    std::vector<std::size_t> comp;
    std::size_t inv = 0;
    for (std::size_t r = 0, k = 0; r < n; ++r) {
      if (k < d && is[a][k] == r) {
        inv += r - k;
        ++k;
      } else {
        comp.push_back(r);
      }
    }
    const std::size_t b = std::lower_bound(js.begin(), js.end(), comp) - js.begin();
    out[b] = inv % 2 ? -p[a] : p[a];
  }
  return out;
}

std::size_t GrPartition::cell_of(const double* p) const {
  std::size_t best = 0;
  double best_dot = -2;
  for (std::size_t c = 0; c < refs.size(); ++c) {
    double s = 0;
    for (std::size_t k = 0; k < refs[c].size(); ++k) s += refs[c][k] * p[k];
    if (s > best_dot) {
      best_dot = s;
      best = c;
    }
  }
  return best;
}

std::size_t GrPartition::cell_of(const std::vector<double>& p) const { return cell_of(p.data()); }

GrPartition gr_partition(std::size_t n, std::size_t d, std::vector<std::vector<double>> refs, std::uint64_t seed,
                         std::size_t mc_samples) {
  if (d < 1 || d >= n) throw Error(Errc::BadArgument, "gr_partition: need 1 <= d < n");
  if (refs.size() < 2) throw Error(Errc::BadArgument, "gr_partition: need at least two cells");
  if (mc_samples == 0) throw Error(Errc::BadArgument, "gr_partition: need Monte Carlo samples");
  const std::size_t len = binom(n, d);
  for (const auto& r : refs)
    if (r.size() != len) throw Error(Errc::BadArgument, "gr_partition: reference has wrong length");
  GrPartition gp;
  gp.n = n;
  gp.d = d;
  gp.refs = std::move(refs);
  gp.mc_samples = mc_samples;
  std::mt19937_64 rng(seed ^ 0x5bd1e995u);
  std::vector<std::uint64_t> hits(gp.refs.size());
  for (std::size_t s = 0; s < mc_samples; ++s) ++hits[gp.cell_of(haar_direction(rng, n, d))];
  for (auto h : hits) {
    const double p = double(h) / double(mc_samples);
    gp.masses.push_back(p);
    gp.se.push_back(std::sqrt(std::max(p * (1 - p), 1.0 / double(mc_samples)) / double(mc_samples)));
  }
  return gp;
}

GrPartition gr_partition(std::size_t n, std::size_t d, std::size_t k, std::uint64_t seed, std::size_t mc_samples) {
  if (k < 2) throw Error(Errc::BadArgument, "gr_partition: need k >= 2");
  if (d < 1 || d >= n) throw Error(Errc::BadArgument, "gr_partition: need 1 <= d < n");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> refs;
  for (std::size_t i = 0; i < k; ++i) refs.push_back(haar_direction(rng, n, d));
  return gr_partition(n, d, std::move(refs), seed + 1, mc_samples);
}

double chi_square_quantile(double p, double dof) {
  return boost::math::quantile(boost::math::chi_squared_distribution<double>(dof), p);
}

ChiSquareReport chi_square(const std::vector<double>& observed, const std::vector<double>& expected,
                           const std::vector<double>& tolerance, double quantile) {
  if (observed.size() != expected.size() || (!tolerance.empty() && tolerance.size() != expected.size()))
    throw Error(Errc::BadArgument, "chi_square: size mismatch");
  ChiSquareReport rep;
  rep.quantile = quantile;
  double o = 0, e = 0, t = 0;
  std::vector<std::size_t> group;
  auto close = [&] {
    rep.observed.push_back(o);
    rep.expected.push_back(e);
    rep.tolerance.push_back(t);
    rep.groups.push_back(group);
    o = e = t = 0;
    group.clear();
  };
  for (std::size_t i = 0; i < observed.size(); ++i) {
    o += observed[i];
    e += expected[i];
    t += tolerance.empty() ? 0.0 : tolerance[i];
    group.push_back(i);
    if (e >= 5) close();
  }
  if (!group.empty()) {
    if (rep.groups.empty()) {
      close();
    } else {
      rep.observed.back() += o;
      rep.expected.back() += e;
      rep.tolerance.back() += t;
      rep.groups.back().insert(rep.groups.back().end(), group.begin(), group.end());
    }
  }
  if (rep.groups.size() < 2 || rep.expected.back() <= 0) throw Error(Errc::DegenerateCells, "chi_square: fewer than two usable cells");
  for (std::size_t i = 0; i < rep.observed.size(); ++i) {
    const double dev = std::abs(rep.observed[i] - rep.expected[i]);
    rep.statistic_raw += dev * dev / rep.expected[i];
    const double wide = std::max(0.0, dev - rep.tolerance[i]);
    rep.statistic += wide * wide / rep.expected[i];
    rep.max_rel_dev = std::max(rep.max_rel_dev, dev / rep.expected[i]);
  }
  rep.dof = double(rep.groups.size() - 1);
  rep.threshold = chi_square_quantile(quantile, rep.dof);
  rep.pass = rep.statistic <= rep.threshold;
  return rep;
}

ChiSquareReport joint_contingency(const std::vector<std::vector<std::uint64_t>>& table, double quantile) {
  const std::size_t ka = table.size();
  const std::size_t kb = ka ? table[0].size() : 0;
  std::vector<double> rows(ka, 0), cols(kb, 0);
  double total = 0;
  for (std::size_t i = 0; i < ka; ++i) {
    if (table[i].size() != kb) throw Error(Errc::BadArgument, "joint_contingency: ragged table");
    for (std::size_t j = 0; j < kb; ++j) {
      rows[i] += double(table[i][j]);
      cols[j] += double(table[i][j]);
      total += double(table[i][j]);
    }
  }
  std::vector<std::size_t> ri, ci;
  for (std::size_t i = 0; i < ka; ++i)
    if (rows[i] > 0) ri.push_back(i);
  for (std::size_t j = 0; j < kb; ++j)
    if (cols[j] > 0) ci.push_back(j);
  if (ri.size() < 2 || ci.size() < 2) throw Error(Errc::DegenerateCells, "joint_contingency: need a 2 x 2 table");
  ChiSquareReport rep;
  rep.quantile = quantile;
  for (std::size_t i : ri)
    for (std::size_t j : ci) {
      const double e = rows[i] * cols[j] / total;
      const double o = double(table[i][j]);
      rep.observed.push_back(o);
      rep.expected.push_back(e);
      rep.tolerance.push_back(0);
      rep.groups.push_back({i * kb + j});
      rep.statistic += (o - e) * (o - e) / e;
      rep.max_rel_dev = std::max(rep.max_rel_dev, std::abs(o - e) / e);
    }
  rep.statistic_raw = rep.statistic;
  rep.dof = double((ri.size() - 1) * (ci.size() - 1));
  rep.threshold = chi_square_quantile(quantile, rep.dof);
  rep.pass = rep.statistic <= rep.threshold;
  return rep;
}

ChiSquareReport joint_contingency(const std::vector<std::pair<std::size_t, std::size_t>>& samples, std::size_t ka,
                                  std::size_t kb, double quantile) {
  std::vector<std::vector<std::uint64_t>> table(ka, std::vector<std::uint64_t>(kb, 0));
  for (const auto& [a, b] : samples) {
    if (a >= ka || b >= kb) throw Error(Errc::BadArgument, "joint_contingency: cell index out of range");
    ++table[a][b];
  }
  return joint_contingency(table, quantile);
}

FitReport fit_constant(const std::vector<SweepRow>& sweep, std::size_t n) {
  if (sweep.empty()) throw Error(Errc::EmptySweep, "fit_constant: empty sweep");
  std::vector<SweepRow> rows = sweep;
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) { return a.x < b.x; });
  FitReport rep;
  const double xmax = rows.back().x;
  rep.c_hat = double(rows.back().count) / std::pow(xmax, double(n));
  for (const auto& r : rows) {
    rep.xs.push_back(r.x);
    rep.normalized.push_back(double(r.count) / std::pow(r.x, double(n)));
    rep.residuals.push_back(std::abs(double(r.count) - rep.c_hat * std::pow(r.x, double(n))));
  }
  const std::size_t m = rows.size();
  if (m >= 2) {
    rep.final_step_change = std::abs(rep.normalized[m - 1] - rep.normalized[m - 2]) / rep.normalized[m - 2];
    double su = 0, sv = 0, suu = 0, suv = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double u = 1.0 / rep.xs[i], v = rep.normalized[i];
      su += u;
      sv += v;
      suu += u * u;
      suv += u * v;
    }
    const double den = double(m) * suu - su * su;
    rep.c_extrap = den != 0 ? (sv * suu - su * suv) / den : rep.c_hat;
  } else {
    rep.c_extrap = rep.c_hat;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t k = 0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (rep.residuals[i] <= 0 || rep.xs[i] >= xmax) continue;
    const double lx = std::log(rep.xs[i]), ly = std::log(rep.residuals[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++k;
  }
  if (k >= 2) rep.residual_slope = (double(k) * sxy - sx * sy) / (double(k) * sxx - sx * sx);
  return rep;
}

EquidistReport run_equidist(const EquidistConfig& cfg) {
  if (cfg.d < 1 || cfg.d >= cfg.n) throw Error(Errc::BadArgument, "run_equidist: need 1 <= d < n");
  EquidistReport rep;
  rep.gr = gr_partition(cfg.n, cfg.d, cfg.gr_cells, cfg.seed, cfg.mc_samples);
  rep.has_shape = cfg.d == 2;
  rep.has_shape_perp = cfg.n - cfg.d == 2;
  const F2Partition part(cfg.shape_kx, cfg.shape_ky, cfg.y_max);
  if (rep.has_shape || rep.has_shape_perp) rep.shape_probs = part.probabilities();
  const unsigned workers = std::max(1u, cfg.threads);
  const std::size_t kg = rep.gr.size(), ks = part.size();
  std::vector<std::vector<std::uint64_t>> dir(workers, std::vector<std::uint64_t>(kg)), sh(workers, std::vector<std::uint64_t>(ks)),
      shp(workers, std::vector<std::uint64_t>(ks));
  EnumTask task;
  task.n = cfg.n;
  task.d = cfg.d;
  task.max_covol = cfg.max_covol;
  task.threads = workers;
  const EnumResult res = enumerate_unordered(task, [&](unsigned w, const HnfLeaf& leaf) {
    const int sigma = hashed_orientation(leaf);
    const auto minors = leaf.minors();
    double p[64];
    double norm = 0;
    for (std::size_t k = 0; k < minors.size(); ++k) {
      p[k] = double(minors[k]);
      norm += p[k] * p[k];
    }
    norm = sigma / std::sqrt(norm);
    for (std::size_t k = 0; k < minors.size(); ++k) p[k] *= norm;
    ++dir[w][rep.gr.cell_of(p)];
    if (rep.has_shape) {
      __int128 a = 0, h = 0, c = 0;
      for (std::size_t i = 0; i < leaf.n; ++i) {
        a += __int128(leaf(i, 0)) * leaf(i, 0);
        h += __int128(leaf(i, 0)) * leaf(i, 1);
        c += __int128(leaf(i, 1)) * leaf(i, 1);
      }
      ++sh[w][part.cell_of(shape_from_gram2(a, sigma * h, c))];
    }
    if (rep.has_shape_perp) {
      const auto g = gram_of(orthogonal_basis(leaf), leaf.n);
      ++shp[w][part.cell_of(shape_from_gram2(g[0], sigma * __int128(g[2]), g[3]))];
    }
  });
  rep.count = res.count;
  auto merge = [](const std::vector<std::vector<std::uint64_t>>& parts, std::size_t k) {
    std::vector<std::uint64_t> out(k);
    for (const auto& p : parts)
      for (std::size_t i = 0; i < k; ++i) out[i] += p[i];
    return out;
  };
  const double total = double(rep.count);
  rep.direction_hist = merge(dir, kg);
  std::vector<double> obs, exp, tol;
  for (std::size_t i = 0; i < kg; ++i) {
    obs.push_back(double(rep.direction_hist[i]));
    exp.push_back(total * rep.gr.masses[i]);
    tol.push_back(3.0 * total * rep.gr.se[i]);
  }
  rep.direction = chi_square(obs, exp, tol);
  auto shape_test = [&](const std::vector<std::uint64_t>& hist) {
    std::vector<double> o, e;
    for (std::size_t i = 0; i < ks; ++i) {
      o.push_back(double(hist[i]));
      e.push_back(total * rep.shape_probs[i]);
    }
    return chi_square(o, e);
  };
  if (rep.has_shape) {
    rep.shape_hist = merge(sh, ks);
    rep.shape = shape_test(rep.shape_hist);
  }
  if (rep.has_shape_perp) {
    rep.shape_perp_hist = merge(shp, ks);
    rep.shape_perp = shape_test(rep.shape_perp_hist);
  }
  return rep;
}

JointReport run_joint(const JointConfig& cfg) {
  if (cfg.d != 2 || cfg.n != 4) throw Error(Errc::BadArgument, "run_joint: needs n = 4, d = 2");
  JointReport rep;
  const F2Partition part(cfg.kx, cfg.ky, cfg.y_max);
  rep.probs = part.probabilities();
  const std::size_t k = part.size();
  const unsigned workers = std::max(1u, cfg.threads);
  std::vector<std::vector<std::uint64_t>> tables(workers, std::vector<std::uint64_t>(k * k));
  EnumTask task;
  task.n = cfg.n;
  task.d = cfg.d;
  task.max_covol = cfg.max_covol;
  task.threads = workers;
  const EnumResult res = enumerate_unordered(task, [&](unsigned w, const HnfLeaf& leaf) {
    const int sigma = hashed_orientation(leaf);
    __int128 a = 0, h = 0, c = 0;
    for (std::size_t i = 0; i < leaf.n; ++i) {
      a += __int128(leaf(i, 0)) * leaf(i, 0);
      h += __int128(leaf(i, 0)) * leaf(i, 1);
      c += __int128(leaf(i, 1)) * leaf(i, 1);
    }
    const std::size_t ca = part.cell_of(shape_from_gram2(a, sigma * h, c));
    const auto g = gram_of(orthogonal_basis(leaf), leaf.n);
    const std::size_t cb = part.cell_of(shape_from_gram2(g[0], sigma * __int128(g[2]), g[3]));
    ++tables[w][ca * k + cb];
  });
  rep.count = res.count;
  rep.table.assign(k, std::vector<std::uint64_t>(k, 0));
  for (const auto& t : tables)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) rep.table[i][j] += t[i * k + j];
  rep.independence = joint_contingency(rep.table);
  const double total = double(rep.count);
  std::vector<double> ra(k, 0), rb(k, 0), ea, flat, eflat;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      ra[i] += double(rep.table[i][j]);
      rb[j] += double(rep.table[i][j]);
      flat.push_back(double(rep.table[i][j]));
      eflat.push_back(total * rep.probs[i] * rep.probs[j]);
    }
  for (std::size_t i = 0; i < k; ++i) ea.push_back(total * rep.probs[i]);
  rep.marginal_shape = chi_square(ra, ea);
  rep.marginal_shape_perp = chi_square(rb, ea);
  rep.joint_product = chi_square(flat, eflat);
  return rep;
}

}  // namespace primlat
