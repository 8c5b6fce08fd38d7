#include "doctest.h"

#include <cmath>
#include <map>
#include <set>

#include "primlat/lattice.hpp"
#include "primlat/shapes.hpp"
#include "test_util.hpp"

using namespace primlat;

namespace {

const double kPi = std::acos(-1.0);

bool in_f2(const Rat& x, const Rat& y_sq) {
  const Rat r = x * x + y_sq;
  if (x <= Rat(-1, 2) || x > Rat(1, 2) || r < 1) return false;
  return !(r == 1 && x < 0);
}

// Breadth-first search over words in T, T^{-1}, S of length <= depth, in exact
// arithmetic on (x, y^2); returns every F2 point reached.
std::set<std::pair<Rat, Rat>> word_search(const Rat& x0, const Rat& y0, int depth) {
  std::set<std::pair<Rat, Rat>> seen{{x0, y0}}, frontier{{x0, y0}}, hits;
  for (int k = 0; k <= depth; ++k) {
    std::set<std::pair<Rat, Rat>> next;
    for (const auto& [x, y] : frontier) {
      if (in_f2(x, y)) hits.insert({x, y});
      const Rat r = x * x + y;
      for (auto p : {std::pair<Rat, Rat>{x + 1, y}, std::pair<Rat, Rat>{x - 1, y}, std::pair<Rat, Rat>{-x / r, y / (r * r)}})
        if (seen.insert(p).second) next.insert(p);
    }
    frontier = std::move(next);
  }
  return hits;
}

DLattice rat_lattice(std::initializer_list<std::initializer_list<Rat>> rows) { return DLattice(RatMatrix::from_rows(rows)); }

}  // namespace

TEST_CASE("shape_rank2 examples") {
  ShapePoint2 a = shape_rank2(rat_lattice({{1, Rat(5, 2)}, {0, 1}}));
  CHECK(a.x == Rat(1, 2));
  CHECK(a.y_sq == 1);
  auto hits = word_search(Rat(5, 2), Rat(1), 6);
  CHECK(hits.count({Rat(1, 2), Rat(1)}) == 1);

  ShapePoint2 h = shape_rank2(DLattice(IntMatrix::from_rows({{1, 0}, {1, 1}, {0, 1}})));
  CHECK(h.x == Rat(1, 2));
  CHECK(h.y_sq == Rat(3, 4));
  ShapePoint2 s = shape_rank2(DLattice(IntMatrix::identity(2)));
  CHECK(s.x == 0);
  CHECK(s.y_sq == 1);
  CHECK_THROWS_AS(shape_rank2(DLattice(IntMatrix::identity(3))), Error);
}

TEST_CASE("reduction agrees with a word search") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> num(-12, 12), den(1, 6);
  int checked = 0;
  for (int it = 0; it < 300; ++it) {
    const Rat x = make_rat(num(rng), den(rng));
    const Rat y = make_rat(den(rng), den(rng));
    const Rat y_sq = y * y;
    ShapePoint2 p = reduce_to_f2(x, y_sq);
    REQUIRE(in_f2(p.x, p.y_sq));
    if (p.inversions > 2) continue;
    auto hits = word_search(x, y_sq, 6);
    if (hits.empty()) continue;
    CHECK(hits.size() == 1);
    if (hits.size() != 1)
      for (auto& h : hits) MESSAGE(h.first.get_str() << " " << h.second.get_str() << " from " << x.get_str() << " " << y_sq.get_str());
    CHECK(*hits.begin() == std::make_pair(p.x, p.y_sq));
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("shape is basis independent and bounded in steps") {
  std::mt19937_64 rng(32);
  const double phi = (1 + std::sqrt(5.0)) / 2;
  for (int it = 0; it < 1000; ++it) {
    const std::size_t n = 2 + rng() % 3;
    IntMatrix b = testutil::random_full_rank(rng, n, 2, -6, 6);
    ShapePoint2 p = shape_rank2(DLattice(b));
    ShapePoint2 q = shape_rank2(DLattice(b * testutil::random_unimodular(rng, 2, false, 6)));
    CHECK(p.x == q.x);
    CHECK(p.y_sq == q.y_sq);
    const RatMatrix g = gram(to_rat(b));
    const double height = Rat(g(0, 0) + g(1, 1)).get_d() / std::sqrt(DLattice(b).covol_sq().get_d());
    CHECK(p.inversions <= 2 + std::log(height) / std::log(phi));
    // lambda_1^2 / covol = 1/y, squared to stay exact.
    const Rat l1 = successive_minima(DLattice(b)).sq[0];
    CHECK(l1 * l1 / DLattice(b).covol_sq() == 1 / p.y_sq);
  }
}

TEST_CASE("shape_reduced_gram") {
  for (std::size_t d = 1; d <= 4; ++d) {
    DenseGram g = shape_reduced_gram(DLattice(IntMatrix::identity(d)));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) CHECK(g(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));
  }
  std::mt19937_64 rng(33);
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = 2 + rng() % 4;
    const std::size_t d = 2 + rng() % (n - 1);
    IntMatrix b = testutil::random_full_rank(rng, n, d, -5, 5);
    DenseGram g1 = shape_reduced_gram(DLattice(b));
    DenseGram g2 = shape_reduced_gram(DLattice(b.scaled(Int(3))));
    for (std::size_t i = 0; i < d * d; ++i) CHECK(g1.a[i] == doctest::Approx(g2.a[i]).epsilon(1e-12));
    if (d == 2) {
      ShapePoint2 p = shape_rank2(DLattice(b));
      const double x = p.xd(), y = p.yd();
      CHECK(std::abs(g1(0, 0) - 1 / y) < 1e-9);
      CHECK(std::abs(g1(0, 1) - x / y) < 1e-9);
      CHECK(std::abs(g1(1, 1) - (x * x + y * y) / y) < 1e-9);
    }
  }
}

TEST_CASE("F2 partition and cell measures") {
  CHECK_THROWS_AS(f2_partition(2, 2, 1.0), Error);
  CHECK_THROWS_AS(f2_partition(0, 2, 3.0), Error);
  F2Partition one = f2_partition(1, 1, 2.0);
  CHECK(one.size() == 2);

  F2Cell whole;
  whole.y1 = std::numeric_limits<double>::infinity();
  CHECK(std::abs(f2_cell_measure(whole) - kPi / 3) < 1e-10);
  F2Cell cusp;
  cusp.y0 = 4;
  cusp.y1 = std::numeric_limits<double>::infinity();
  cusp.cusp = true;
  CHECK(std::abs(f2_cell_measure(cusp) - 0.25) < 1e-12);

  for (auto [kx, ky, ym] : {std::tuple<int, int, double>{4, 5, 4.0}, {1, 5, 4.0}, {3, 2, 2.5}, {6, 6, 10.0}}) {
    F2Partition p = f2_partition(kx, ky, ym);
    CHECK(p.size() == std::size_t(kx * ky + 1));
    auto m = p.measures();
    double total = 0;
    for (double v : m) total += v;
    CHECK(std::abs(total - kPi / 3) < 1e-8);
    for (std::size_t c = 0; c + 1 < p.size(); ++c) {
      const F2Cell& cell = p.cells()[c];
      // Closed forms: the bottom band lies over the arc, the others are plain boxes.
      const double expect = cell.y0 == 0 ? std::asin(cell.x1) - std::asin(cell.x0) - (cell.x1 - cell.x0) / cell.y1
                                         : (cell.x1 - cell.x0) * (1 / cell.y0 - 1 / cell.y1);
      CHECK(std::abs(m[c] - expect) < 1e-10);
      const std::size_t mirror = (kx - 1 - c / ky) * ky + c % ky;
      CHECK(std::abs(m[c] - m[mirror]) < 1e-12);
    }
    CHECK(std::abs(m.back() - 1 / ym) < 1e-12);
  }

  F2Partition p = f2_partition(4, 5, 4.0);
  ShapePoint2 corner = reduce_to_f2(0, 1);
  const std::size_t c = p.cell_of(corner);
  CHECK(p.cells()[c].y0 == 0);
  CHECK(p.cells()[c].x0 < 0);
  CHECK(p.cells()[c].x1 >= 0);
  CHECK(p.cell_of(reduce_to_f2(0, 25)) == p.size() - 1);
  CHECK(p.cell_of(reduce_to_f2(Rat(1, 2), 16)) == p.size() - 1);
  CHECK(p.cell_of(reduce_to_f2(Rat(1, 2), Rat(3, 4))) == 3 * 5);

  // Every sample lands in a cell whose box contains it.
  std::mt19937_64 rng(34);
  std::vector<std::size_t> hist(p.size(), 0);
  for (int it = 0; it < 2000; ++it) {
    IntMatrix b = testutil::random_full_rank(rng, 3, 2, -7, 7);
    ShapePoint2 s = shape_rank2(DLattice(b));
    const std::size_t k = p.cell_of(s);
    REQUIRE(k < p.size());
    ++hist[k];
    const F2Cell& cell = p.cells()[k];
    if (cell.cusp) {
      CHECK(s.yd() >= cell.y0 - 1e-12);
    } else {
      CHECK(s.xd() > cell.x0 - 1e-12);
      CHECK(s.xd() <= cell.x1 + 1e-12);
      CHECK(s.yd() >= cell.y0 - 1e-12);
      CHECK(s.yd() < cell.y1 + 1e-12);
    }
  }
  std::size_t total = 0;
  for (auto h : hist) total += h;
  CHECK(total == 2000);
}

TEST_CASE("integral binary Gram reduction agrees with exact point reduction") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<long> dist(-40, 40);
  int done = 0;
  while (done < 5000) {
    const long a1 = dist(rng), a2 = dist(rng), b1 = dist(rng), b2 = dist(rng), a3 = dist(rng) / 8, b3 = dist(rng) / 8;
    const __int128 a = a1 * a1 + a2 * a2 + a3 * a3, h = a1 * b1 + a2 * b2 + a3 * b3, c = b1 * b1 + b2 * b2 + b3 * b3;
    if (a == 0 || a * c == h * h) continue;
    ++done;
    const ShapePoint2 want = reduce_to_f2(make_rat(long(h), long(a)), Rat(Rat(long(a * c - h * h)) / Rat(long(a * a))));
    const ShapePoint2 got = shape_from_gram2(a, h, c);
    REQUIRE(got.x == want.x);
    REQUIRE(got.y_sq == want.y_sq);
    const Gram2 r = reduce_gram2(a, h, c);
    CHECK(r.a * r.c - r.h * r.h == a * c - h * h);
  }
  // boundary conventions
  CHECK(shape_from_gram2(2, -1, 2).x == Rat(1, 2));
  CHECK(shape_from_gram2(5, -2, 5).x == make_rat(2, 5));
  CHECK(shape_from_gram2(4, -2, 7).x == Rat(1, 2));
  CHECK_THROWS_AS(reduce_gram2(1, 1, 1), Error);
}
