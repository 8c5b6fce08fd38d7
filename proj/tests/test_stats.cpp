#include "doctest.h"

#include <cmath>
#include <random>

#include "primlat/constants.hpp"
#include "primlat/decomp.hpp"
#include "primlat/stats.hpp"
#include "test_util.hpp"

using namespace primlat;

namespace {

// Regularized lower incomplete gamma by its power series.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a, sum = term;
  for (int k = 1; k < 2000; ++k) {
    term *= x / (a + k);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return std::exp(a * std::log(x) - x - std::lgamma(a)) * sum;
}

double chi2_quantile_oracle(double p, double dof) {
  double lo = 0, hi = 10 * dof + 100;
  for (int i = 0; i < 200; ++i) {
    const double mid = (lo + hi) / 2;
    (gamma_p_series(dof / 2, mid / 2) < p ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

std::vector<double> multinomial(std::mt19937_64& rng, const std::vector<double>& p, int n) {
  std::discrete_distribution<int> dist(p.begin(), p.end());
  std::vector<double> out(p.size(), 0);
  for (int i = 0; i < n; ++i) ++out[dist(rng)];
  return out;
}

}  // namespace

TEST_CASE("chi-square quantile") {
  for (double dof : {1.0, 2.0, 5.0, 20.0, 25.0, 35.0})
    for (double p : {0.5, 0.95, 0.99}) CHECK(chi_square_quantile(p, dof) == doctest::Approx(chi2_quantile_oracle(p, dof)).epsilon(1e-9));
}

TEST_CASE("chi-square goodness of fit") {
  const std::vector<double> e{100, 200, 300, 400};
  const auto same = chi_square(e, e);
  CHECK(same.statistic == 0);
  CHECK(same.pass);
  CHECK(same.dof == 3);
  const auto lump = chi_square({1000, 0, 0, 0}, {250, 250, 250, 250});
  CHECK_FALSE(lump.pass);
  CHECK(lump.statistic == doctest::Approx(3000));
  // small cells are merged into neighbours
  const auto merged = chi_square({1, 2, 10, 3, 1, 2}, {1, 2, 10, 3, 3, 1});
  REQUIRE(merged.groups.size() == 2);
  CHECK(merged.groups[0] == std::vector<std::size_t>{0, 1, 2});
  CHECK(merged.groups[1] == std::vector<std::size_t>{3, 4, 5});
  CHECK(merged.expected[0] == 13);
  CHECK_THROWS_AS(chi_square({1, 1}, {1, 1}), Error);
  // widening absorbs deviations inside the tolerance
  const auto wide = chi_square({110, 90}, {100, 100}, {10, 10});
  CHECK(wide.statistic == 0);
  CHECK(wide.statistic_raw == doctest::Approx(2.0));

  std::mt19937_64 rng(3);
  const std::vector<double> p{0.05, 0.1, 0.15, 0.2, 0.2, 0.3};
  int passes = 0;
  for (int s = 0; s < 100; ++s) {
    const auto obs = multinomial(rng, p, 3000);
    std::vector<double> exp;
    for (double q : p) exp.push_back(3000 * q);
    if (chi_square(obs, exp).pass) ++passes;
  }
  CHECK(passes >= 95);
}

TEST_CASE("contingency tables") {
  std::vector<std::pair<std::size_t, std::size_t>> corr;
  for (std::size_t i = 0; i < 600; ++i) corr.push_back({i % 3, i % 3});
  CHECK_FALSE(joint_contingency(corr, 3, 3).pass);
  CHECK(joint_contingency(corr, 3, 3).dof == 4);
  std::mt19937_64 rng(8);
  std::discrete_distribution<std::size_t> a({1, 2, 3}), b({4, 1, 1, 2});
  int passes = 0;
  for (int s = 0; s < 100; ++s) {
    std::vector<std::pair<std::size_t, std::size_t>> ind;
    for (int i = 0; i < 2000; ++i) ind.push_back({a(rng), b(rng)});
    const auto r = joint_contingency(ind, 3, 4);
    CHECK(r.dof == 6);
    if (r.pass) ++passes;
  }
  CHECK(passes >= 95);
  CHECK_THROWS_AS(joint_contingency(std::vector<std::vector<std::uint64_t>>{{5, 0}, {7, 0}}), Error);
}

TEST_CASE("Grassmannian partitions") {
  const auto s1 = gr_partition(2, 1, {{1, 0}, {-1, 0}}, 4, 200000);
  for (std::size_t i = 0; i < 2; ++i) CHECK(std::abs(s1.masses[i] - 0.5) <= 3 * s1.se[i]);
  std::vector<std::vector<double>> oct;
  for (std::size_t i = 0; i < 3; ++i)
    for (double s : {1.0, -1.0}) {
      std::vector<double> v(3, 0);
      v[i] = s;
      oct.push_back(v);
    }
  const auto s2 = gr_partition(3, 1, oct, 9, 300000);
  double total = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(std::abs(s2.masses[i] - 1.0 / 6) <= 3 * s2.se[i]);
    total += s2.masses[i];
  }
  CHECK(total == doctest::Approx(1.0));
  const auto a = gr_partition(4, 2, 10, 5, 20000);
  const auto b = gr_partition(4, 2, 10, 5, 20000);
  CHECK(a.masses == b.masses);
  CHECK(a.refs == b.refs);
  CHECK(a.refs[0].size() == 6);
  CHECK_THROWS_AS(gr_partition(3, 1, 1, 0, 10), Error);
}

TEST_CASE("Hodge star maps a frame's direction to its complement") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g(0, 1);
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = 2 + it % 4, d = 1 + it % (n - 1);
    RealMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = g(rng);
    if (m.determinant() < 0) m.col(0) *= -1;
    m /= std::pow(m.determinant(), 1.0 / double(n));
    const auto kan = iwasawa(m);
    const auto pb = plucker_unit(kan.K.leftCols(d));
    const auto pc = plucker_unit(kan.K.rightCols(n - d));
    const auto star = hodge_star(pb, n, d);
    for (std::size_t k = 0; k < pc.size(); ++k) CHECK(std::abs(star[k] - pc[k]) < 1e-12);
    const auto twice = hodge_star(star, n, n - d);
    const double sign = (d * (n - d)) % 2 ? -1.0 : 1.0;
    for (std::size_t k = 0; k < pb.size(); ++k) CHECK(twice[k] == sign * pb[k]);
  }
}

TEST_CASE("constant fitting") {
  std::vector<SweepRow> syn;
  for (double x : {10.0, 20.0, 40.0, 80.0, 100000.0}) syn.push_back({x, std::uint64_t(std::floor(2.5 * x * x * x)), 0});
  auto f = fit_constant(syn, 3);
  CHECK(f.c_hat == doctest::Approx(2.5).epsilon(1e-9));
  std::vector<SweepRow> lower;
  for (double x : {10.0, 20.0, 40.0, 80.0, 160.0, 100000.0}) lower.push_back({x, std::uint64_t(2.5 * std::pow(x, 3) + x * x), 0});
  f = fit_constant(lower, 3);
  CHECK(f.residual_slope == doctest::Approx(2.0).epsilon(0.02));
  CHECK(f.c_extrap == doctest::Approx(2.5).epsilon(1e-6));
  CHECK_THROWS_AS(fit_constant({}, 2), Error);
  const auto real = fit_constant(count_sweep(2, 1, {125, 250, 500, 1000}), 2);
  CHECK(std::abs(real.c_hat / schmidt_c(1, 2) - 1) <= 0.02);
}

TEST_CASE("fast shapes and directions agree with the exact library") {
  const F2Partition part(4, 5, 4.0);
  const auto gr = gr_partition(3, 1, 24, 0, 1000);
  std::vector<std::vector<double>> star_refs;
  for (const auto& r : gr.refs) star_refs.push_back(hodge_star(r, 3, 1));
  GrPartition gr_star = gr;
  gr_star.refs = star_refs;
  gr_star.d = 2;
  std::vector<std::uint64_t> h1(24), h2(24);
  enumerate_primitive({3, 1, 12, std::nullopt, nullptr, 1}, [&](const HnfLeaf& leaf) {
    const int sigma = hashed_orientation(leaf);
    PrimitiveLattice l = leaf.lattice();
    if (sigma < 0) l = l.flipped();
    const auto g = gram_of(orthogonal_basis(leaf), 3);
    const ShapePoint2 fast = shape_from_gram2(g[0], sigma * __int128(g[2]), g[3]);
    const ShapePoint2 exact = shape_rank2(factor(l));
    CHECK(fast.x == exact.x);
    CHECK(fast.y_sq == exact.y_sq);
    CHECK(part.cell_of(fast) == part.cell_of(shape_rank2(orthogonal(l).lattice())));
    ++h1[gr.cell_of(direction(l))];
    ++h2[gr_star.cell_of(direction(orthogonal(l)))];
  });
  CHECK(h1 == h2);

  enumerate_primitive({4, 2, 5, std::nullopt, nullptr, 1}, [&](const HnfLeaf& leaf) {
    const int sigma = hashed_orientation(leaf);
    PrimitiveLattice l = leaf.lattice();
    if (sigma < 0) l = l.flipped();
    const IntMatrix h = leaf.matrix();
    const IntMatrix gm = gram(h);
    CHECK(shape_from_gram2(gm(0, 0).get_si(), sigma * __int128(gm(0, 1).get_si()), gm(1, 1).get_si()).x == shape_rank2(l.lattice()).x);
  });
}

TEST_CASE("equidistribution runs are independent of thread count") {
  EquidistConfig cfg;
  cfg.max_covol = 25;
  cfg.mc_samples = 20000;
  const auto a = run_equidist(cfg);
  cfg.threads = 3;
  const auto b = run_equidist(cfg);
  CHECK(a.count == b.count);
  CHECK(a.direction_hist == b.direction_hist);
  CHECK(a.shape_perp_hist == b.shape_perp_hist);
  CHECK_FALSE(a.has_shape);
  std::uint64_t total = 0;
  for (auto v : a.direction_hist) total += v;
  CHECK(total == a.count);
  total = 0;
  for (auto v : a.shape_perp_hist) total += v;
  CHECK(total == a.count);

  JointConfig jc;
  jc.max_covol = 6;
  const auto j1 = run_joint(jc);
  jc.threads = 2;
  const auto j2 = run_joint(jc);
  CHECK(j1.table == j2.table);
  // Lambda -> Lambda^perp permutes the enumerated set, so the two marginals coincide.
  CHECK(j1.marginal_shape.observed == j1.marginal_shape_perp.observed);
}
