#pragma once

// Iwasawa and refined Iwasawa coordinates of unimodular real frames.

#include <Eigen/Dense>
#include <vector>

#include "primlat/lattice.hpp"

namespace primlat {

using RealMatrix = Eigen::MatrixXd;

RealMatrix to_real(const IntMatrix& m);
RealMatrix to_real(const RatMatrix& m);

// g = K diag(A) N with K in SO(n), A > 0, N upper unipotent.
struct IwasawaKAN {
  RealMatrix K;
  Eigen::VectorXd A;
  RealMatrix N;
};

// Modified Gram-Schmidt with one reorthogonalization pass.
// BadArgument unless |det g - 1| <= 1e-9; IllConditioned on a pivot below 1e-12 relative.
IwasawaKAN iwasawa(const RealMatrix& g);

// Refined Iwasawa data of g for the split d + (n - d). The Grassmannian point is
// the unit Plucker vector of the first d columns of K. The block representatives
// are the normalized triangular blocks, i.e. the section K' = K:
//   g_d = e^{-t/d} R[0:d, 0:d],  g_{n-d} = e^{t/(n-d)} R[d:n, d:n],  R = diag(A) N.
struct RIComponents {
  std::size_t n = 0, d = 0;
  std::vector<double> grass_point;
  double t = 0;
  std::vector<double> s;  // d - 1 entries
  std::vector<double> w;  // n - d - 1 entries
  RealMatrix g_d, g_nd;

  // Covolumes predicted by the coordinates: covol(Lambda^i), i = 1..d, and
  // covol((Lambda#)^j), j = 1..n-d.
  double covol_prefix(std::size_t i) const;
  double covol_factor_prefix(std::size_t j) const;
};

RIComponents ri(const RealMatrix& g, std::size_t d);

// Unit Plucker vector of the columns (row subsets in lexicographic order).
std::vector<double> plucker_unit(const RealMatrix& cols);

// Oriented direction of V_Lambda as a unit Plucker vector, computed from exact minors.
std::vector<double> direction(const DLattice& l);
std::vector<double> direction(const PrimitiveLattice& l);

}  // namespace primlat
