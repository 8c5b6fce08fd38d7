#pragma once

// Lattices in R^n given by rational column bases, with an orientation sign.

#include <cstddef>
#include <vector>

#include "primlat/exact.hpp"

namespace primlat {

// Oriented rank-d lattice: the Z-span of the basis columns, oriented like the
// basis when orientation = +1 and opposite to it when orientation = -1.
class DLattice {
 public:
  DLattice(RatMatrix basis, int orientation = 1);
  DLattice(const IntMatrix& basis, int orientation = 1) : DLattice(to_rat(basis), orientation) {}

  std::size_t n() const noexcept { return basis_.rows(); }
  std::size_t d() const noexcept { return basis_.cols(); }
  const RatMatrix& basis() const noexcept { return basis_; }
  int orientation() const noexcept { return orientation_; }
  const Rat& covol_sq() const noexcept { return covol_sq_; }

  // Basis whose own orientation is the lattice orientation (last column negated if needed).
  RatMatrix oriented_basis() const;
  bool is_integral() const;
  DLattice flipped() const { return DLattice(basis_, -orientation_, covol_sq_); }

 private:
  DLattice(RatMatrix basis, int orientation, Rat covol_sq)
      : basis_(std::move(basis)), orientation_(orientation), covol_sq_(std::move(covol_sq)) {}

  RatMatrix basis_;
  int orientation_ = 1;
  Rat covol_sq_;
};

inline DLattice make(const RatMatrix& b, int orientation = 1) { return DLattice(b, orientation); }

// Integral primitive lattice stored by its column Hermite form. The sign is the
// orientation relative to the Hermite basis.
class PrimitiveLattice {
 public:
  // Throws NotPrimitive unless minor_gcd(b) = 1.
  static PrimitiveLattice from_basis(const IntMatrix& b, int orientation = 1);
  // Trusted constructor for bases already in Hermite form (used by the enumerator).
  static PrimitiveLattice from_hnf(IntMatrix h, int orientation = 1);

  std::size_t n() const noexcept { return hnf_.rows(); }
  std::size_t d() const noexcept { return hnf_.cols(); }
  const IntMatrix& hnf() const noexcept { return hnf_; }
  int orientation() const noexcept { return orientation_; }
  Int covol_sq() const { return primlat::covol_sq(hnf_); }

  IntMatrix oriented_basis() const;
  DLattice lattice() const { return DLattice(hnf_, orientation_); }
  PrimitiveLattice flipped() const { return from_hnf(hnf_, -orientation_); }

  // Oriented equality.
  friend bool operator==(const PrimitiveLattice& a, const PrimitiveLattice& b) {
    return a.orientation_ == b.orientation_ && a.hnf_ == b.hnf_;
  }

 private:
  IntMatrix hnf_;
  int orientation_ = 1;
};

// Lexicographic comparison of Hermite bases, column by column (orientation ignored).
bool hnf_less(const IntMatrix& a, const IntMatrix& b);

// Throws NotIntegral for non-integral bases.
bool is_primitive(const DLattice& l);

DLattice dual(const DLattice& l);

// Z^n intersected with the orthogonal complement, oriented so that det(B | C) > 0.
PrimitiveLattice orthogonal(const PrimitiveLattice& l);

// Projection of delta onto the orthogonal complement of span(l).
DLattice factor(const PrimitiveLattice& l);
DLattice factor(const PrimitiveLattice& l, const DLattice& delta);

// [oriented Hermite basis | C] with det +1; C is canonical given the lattice.
IntMatrix gamma_matrix(const PrimitiveLattice& l);

// Same Z-span and same orientation.
bool equal(const DLattice& a, const DLattice& b);
// Same Z-span, orientation ignored.
bool equal_unoriented(const DLattice& a, const DLattice& b);

struct Minima {
  std::vector<Rat> sq;  // lambda_1^2 <= ... <= lambda_d^2
  IntMatrix coords;     // column i: coordinates (in the input basis) of a vector attaining lambda_i
};

// Exact successive minima for rank <= 4; throws RankTooLarge otherwise.
Minima successive_minima(const DLattice& l);

bool transference_check(const DLattice& l);

// Minkowski constant 2^k / V_k (1 for k = 0).
double minkowski_constant(std::size_t k);

// Checks the two-sided bound relating covol(L^j) and covol((L*)^{k-j}) / covol(L*)
// for every j, where the sublattices are spanned by successive-minima vectors.
bool sublattice_covolume_check(const DLattice& l);

// Order of the orthogonal symmetry group of a rank-2 lattice.
int sym_order_rank2(const DLattice& l);

}  // namespace primlat
