#pragma once

// Shapes of lattices: exact reduction of rank-2 shapes into the standard
// fundamental domain F2 of SL2(Z), a floating reduced Gram for general rank,
// and box partitions of F2 with hyperbolic cell areas.

#include <cstddef>
#include <vector>

#include "primlat/lattice.hpp"
#include "primlat/reduce.hpp"

namespace primlat {

// z = x + iy in F2: -1/2 < x <= 1/2, x^2 + y^2 >= 1, and x >= 0 on the unit circle.
struct ShapePoint2 {
  Rat x;
  Rat y_sq;
  int inversions = 0;  // number of z -> -1/z steps taken by the reduction

  double xd() const { return x.get_d(); }
  double yd() const;
};

// Reduces an arbitrary point of the upper half plane (y_sq > 0) into F2.
ShapePoint2 reduce_to_f2(Rat x, Rat y_sq);

// Throws RankNotTwo.
ShapePoint2 shape_rank2(const DLattice& l);

// Integral binary Gram [[a, h], [h, c]] (a > 0, ac > h^2) reduced by translations
// and swaps so that h/a + i sqrt(ac - h^2)/a lies in F2 with the same boundary
// convention as reduce_to_f2.
struct Gram2 {
  __int128 a, h, c;
};
Gram2 reduce_gram2(__int128 a, __int128 h, __int128 c);
ShapePoint2 shape_from_gram2(__int128 a, __int128 h, __int128 c);

// Gram matrix of an LLL-reduced (delta 0.99), covolume-normalized basis.
DenseGram shape_reduced_gram(const DLattice& l);

// Body cells are x in (x0, x1], y in [y0, y1) intersected with F2; the bottom
// band starts at the unit circle (y0 = 0 encodes that). The cusp cell is y >= Y_max.
struct F2Cell {
  double x0 = -0.5;
  double x1 = 0.5;
  double y0 = 0.0;
  double y1 = 0.0;
  bool cusp = false;
};

class F2Partition {
 public:
  // k_x strips of equal width; k_y bands equally spaced in 1/y between 1 and Y_max.
  F2Partition(std::size_t k_x, std::size_t k_y, double y_max);

  std::size_t size() const noexcept { return cells_.size(); }
  const std::vector<F2Cell>& cells() const noexcept { return cells_; }
  std::size_t k_x() const noexcept { return k_x_; }
  std::size_t k_y() const noexcept { return k_y_; }
  double y_max() const noexcept { return y_max_; }

  // Exact assignment of a reduced point; the cusp cell is the last index.
  std::size_t cell_of(const ShapePoint2& p) const;

  // Cell areas under dx dy / y^2, and the same normalized to sum to 1.
  std::vector<double> measures() const;
  std::vector<double> probabilities() const;

 private:
  std::size_t k_x_, k_y_;
  double y_max_;
  std::vector<Rat> x_edges_;   // k_x + 1 values from -1/2 to 1/2
  std::vector<Rat> y_sq_edges_;  // squared band edges y_1^2 .. y_{k_y}^2
  std::vector<F2Cell> cells_;
};

// Throws BadPartition if y_max <= 1 or a count is zero.
F2Partition f2_partition(std::size_t k_x, std::size_t k_y, double y_max);

// Integral of dx dy / y^2 over cell intersected with F2 (adaptive Gauss-Kronrod).
double f2_cell_measure(const F2Cell& cell);

}  // namespace primlat
