#pragma once

// Histograms over Grassmannian and F2 cells, chi-square tests, constant fits,
// and the equidistribution experiments built on the enumerator.

#include <cstdint>
#include <random>
#include <vector>

#include "primlat/enumerate.hpp"
#include "primlat/shapes.hpp"

namespace primlat {

// Unit Plucker vector of a Haar-random oriented d-plane (orthonormalized Gaussian frame).
std::vector<double> haar_direction(std::mt19937_64& rng, std::size_t n, std::size_t d);

// (*p)_J = sgn(I, J) p_I for complementary row subsets I, J; maps the direction
// of a positively completed frame (B | C) from B to C.
std::vector<double> hodge_star(const std::vector<double>& p, std::size_t n, std::size_t d);

// Voronoi cells of k reference points on the oriented Grassmannian (largest
// Plucker inner product wins), with Monte Carlo masses.
struct GrPartition {
  std::size_t n = 0, d = 0;
  std::vector<std::vector<double>> refs;
  std::vector<double> masses;
  std::vector<double> se;
  std::size_t mc_samples = 0;

  std::size_t size() const noexcept { return refs.size(); }
  std::size_t cell_of(const std::vector<double>& p) const;
  std::size_t cell_of(const double* p) const;
};

// Throws BadArgument for k < 2.
GrPartition gr_partition(std::size_t n, std::size_t d, std::size_t k, std::uint64_t seed, std::size_t mc_samples);
GrPartition gr_partition(std::size_t n, std::size_t d, std::vector<std::vector<double>> refs, std::uint64_t seed,
                         std::size_t mc_samples);

double chi_square_quantile(double p, double dof);

struct ChiSquareReport {
  std::vector<double> observed;  // after merging
  std::vector<double> expected;
  std::vector<double> tolerance;  // widening subtracted from |O - E| per cell
  std::vector<std::vector<std::size_t>> groups;  // original cells in each merged cell
  double statistic = 0;
  double statistic_raw = 0;  // without widening
  double dof = 0;
  double quantile = 0.99;
  double threshold = 0;
  bool pass = false;
  double max_rel_dev = 0;
};

// Pearson goodness of fit. Cells with expected < 5 are merged with their
// neighbours; tolerance (optional, counts) widens each expected value to an
// interval. Throws DegenerateCells if fewer than two cells remain.
ChiSquareReport chi_square(const std::vector<double>& observed, const std::vector<double>& expected,
                           const std::vector<double>& tolerance = {}, double quantile = 0.99);

// Independence test on a kA x kB table with product-of-marginals expectations;
// empty rows and columns are dropped. Throws DegenerateCells below 2 x 2.
ChiSquareReport joint_contingency(const std::vector<std::vector<std::uint64_t>>& table, double quantile = 0.99);
ChiSquareReport joint_contingency(const std::vector<std::pair<std::size_t, std::size_t>>& samples, std::size_t ka,
                                  std::size_t kb, double quantile = 0.99);

struct FitReport {
  double c_hat = 0;      // N(X_max) / X_max^n
  double c_extrap = 0;   // least-squares c in N/X^n = c + b/X
  double final_step_change = 0;  // relative change of N/X^n over the last step
  std::vector<double> xs;
  std::vector<double> normalized;
  std::vector<double> residuals;  // |N(X) - c_hat X^n|
  double residual_slope = 0;      // log-log slope of residuals over X < X_max
};

// Throws EmptySweep.
FitReport fit_constant(const std::vector<SweepRow>& sweep, std::size_t n);

struct EquidistConfig {
  std::size_t n = 3, d = 1;
  double max_covol = 150;
  std::size_t gr_cells = 24;
  std::size_t mc_samples = 2000000;
  std::size_t shape_kx = 4, shape_ky = 5;
  double y_max = 4;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct EquidistReport {
  std::uint64_t count = 0;
  GrPartition gr;
  std::vector<std::uint64_t> direction_hist;
  ChiSquareReport direction;
  // Rank-2 shapes of Lambda (d = 2) and of the factor lattice (n - d = 2).
  bool has_shape = false, has_shape_perp = false;
  std::vector<double> shape_probs;
  std::vector<std::uint64_t> shape_hist, shape_perp_hist;
  ChiSquareReport shape, shape_perp;
};

// Each lattice gets hashed_orientation(); directions and shapes are taken for
// that orientation.
EquidistReport run_equidist(const EquidistConfig& cfg);

struct JointConfig {
  std::size_t n = 4, d = 2;
  double max_covol = 20;
  std::size_t kx = 1, ky = 5;
  double y_max = 4;
  unsigned threads = 1;
};

struct JointReport {
  std::uint64_t count = 0;
  std::vector<double> probs;  // normalized cell areas
  std::vector<std::vector<std::uint64_t>> table;  // [shape(Lambda) cell][shape(factor) cell]
  ChiSquareReport independence;
  ChiSquareReport marginal_shape, marginal_shape_perp, joint_product;
};

// Needs d = n - d = 2.
JointReport run_joint(const JointConfig& cfg);

}  // namespace primlat
