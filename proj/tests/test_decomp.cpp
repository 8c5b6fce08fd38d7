#include "doctest.h"

#include <cmath>
#include <random>

#include "primlat/decomp.hpp"
#include "test_util.hpp"

using namespace primlat;

namespace {

RealMatrix random_sl(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g(0, 1);
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = g(rng);
  double det = m.determinant();
  if (det < 0) {
    m.col(0) *= -1;
    det = -det;
  }
  return m / std::pow(det, 1.0 / double(n));
}

double covol_real(const RealMatrix& b) { return std::sqrt((b.transpose() * b).determinant()); }

// Exact squared covolume of the projection of columns onto span(b)^perp.
Rat projected_covol_sq(const IntMatrix& b, const IntMatrix& cols) {
  const RatMatrix br = to_rat(b);
  const RatMatrix p = RatMatrix::identity(b.rows()) - br * inverse(gram(br)) * br.transpose();
  return covol_sq(p * to_rat(cols));
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

}  // namespace

TEST_CASE("iwasawa basics") {
  const auto kan = iwasawa(RealMatrix::Identity(3, 3));
  CHECK((kan.K - RealMatrix::Identity(3, 3)).norm() == doctest::Approx(0));
  CHECK((kan.A - Eigen::VectorXd::Ones(3)).norm() == doctest::Approx(0));
  RealMatrix g(2, 2);
  g << 2, 0, 0, 0.5;
  const auto k2 = iwasawa(g);
  CHECK(k2.A(0) == doctest::Approx(2));
  CHECK(k2.A(1) == doctest::Approx(0.5));
  CHECK((k2.K - RealMatrix::Identity(2, 2)).norm() < 1e-15);
  CHECK((k2.N - RealMatrix::Identity(2, 2)).norm() < 1e-15);
  CHECK_THROWS_AS(iwasawa(2 * RealMatrix::Identity(2, 2)), Error);
  RealMatrix bad(2, 2);
  bad << 1e-13, 1, -1e13, 0;
  CHECK_THROWS_AS(iwasawa(bad), Error);
}

TEST_CASE("iwasawa reconstruction on random frames") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 10000; ++it) {
    const std::size_t n = 2 + it % 5;
    const RealMatrix g = random_sl(rng, n);
    if (1.0 / g.inverse().norm() < 1e-3) continue;
    const auto kan = iwasawa(g);
    const RealMatrix rec = kan.K * kan.A.asDiagonal() * kan.N;
    REQUIRE((rec - g).cwiseAbs().maxCoeff() <= 1e-10 * g.norm());
    REQUIRE((kan.K.transpose() * kan.K - RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
    REQUIRE(kan.K.determinant() == doctest::Approx(1.0));
    REQUIRE(kan.A.minCoeff() > 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) REQUIRE(kan.N(i, j) == (i == j ? 1.0 : 0.0));
    if (it % 50 == 0) {
      double prod = 1;
      for (std::size_t i = 1; i <= n; ++i) {
        prod *= kan.A(i - 1);
        CHECK(rel_close(prod, covol_real(g.leftCols(i)), 1e-9));
      }
    }
  }
}

TEST_CASE("refined coordinates of a scaled coordinate frame") {
  const double c = 1.7;
  for (std::size_t n = 2; n <= 5; ++n)
    for (std::size_t d = 1; d < n; ++d) {
      RealMatrix g = RealMatrix::Identity(n, n);
      for (std::size_t i = 0; i < n; ++i) g(i, i) = i < d ? c : std::pow(c, -double(d) / double(n - d));
      const auto r = ri(g, d);
      CHECK(r.t == doctest::Approx(double(d) * std::log(c)));
      for (double s : r.s) CHECK(std::abs(s) < 1e-12);
      for (double w : r.w) CHECK(std::abs(w) < 1e-12);
      CHECK(r.g_d.determinant() == doctest::Approx(1.0));
      CHECK(r.g_nd.determinant() == doctest::Approx(1.0));
      CHECK(r.grass_point[0] == doctest::Approx(1.0));
    }
}

TEST_CASE("refined coordinates against exact covolumes") {
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 500; ++it) {
    const std::size_t n = 2 + it % 4;
    const std::size_t d = 1 + (it / 4) % (n - 1);
    CAPTURE(n);
    CAPTURE(d);
    const auto l = PrimitiveLattice::from_basis(testutil::random_primitive(rng, n, d));
    const IntMatrix gam = gamma_matrix(l);
    const auto r = ri(to_real(gam), d);
    const IntMatrix b = gam.col_block(0, d);
    // (ii), (iii)
    CHECK(rel_close(std::exp(r.t), std::sqrt(l.covol_sq().get_d()), 1e-8));
    for (std::size_t i = 1; i <= d; ++i)
      CHECK(rel_close(r.covol_prefix(i), std::sqrt(covol_sq(gam.col_block(0, i)).get_d()), 1e-8));
    // (ii)#, (iii)#
    CHECK(rel_close(std::exp(-r.t), std::sqrt(factor(l).covol_sq().get_d()), 1e-8));
    for (std::size_t j = 1; j <= n - d; ++j)
      CHECK(rel_close(r.covol_factor_prefix(j), std::sqrt(projected_covol_sq(b, gam.col_block(d, j)).get_d()), 1e-8));
    // (i)
    const auto dir = direction(l);
    REQUIRE(dir.size() == r.grass_point.size());
    for (std::size_t k = 0; k < dir.size(); ++k) CHECK(std::abs(dir[k] - r.grass_point[k]) < 1e-12);
  }
}

TEST_CASE("direction") {
  const auto e = direction(PrimitiveLattice::from_basis(IntMatrix::from_rows({{0, 0}, {1, 0}, {0, 1}})));
  CHECK(e == std::vector<double>{0, 0, 1});
  std::mt19937_64 rng(5);
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = 3 + it % 3, d = 1 + it % (n - 1);
    const IntMatrix b = testutil::random_full_rank(rng, n, d, -5, 5);
    const DLattice l(b);
    const auto a = direction(l);
    const auto scaled = direction(DLattice(to_rat(b).scaled(Rat(3))));
    const auto unimod = direction(DLattice(b * testutil::random_unimodular(rng, d)));
    const auto flip = direction(l.flipped());
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(std::abs(a[k] - scaled[k]) < 1e-15);
      CHECK(std::abs(a[k] - unimod[k]) < 1e-14);
      CHECK(flip[k] == -a[k]);
    }
  }
}
