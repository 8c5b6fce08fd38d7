#pragma once

// Floating-point helpers shared by the exact code paths: LLL on a Gram matrix
// and Fincke-Pohst short-vector enumeration. Results are always re-checked exactly
// by the callers; these only have to be complete, not exact.

#include <cstddef>
#include <functional>
#include <vector>

#include "primlat/exact.hpp"

namespace primlat {

// Row-major dense d x d matrix of doubles.
struct DenseGram {
  std::size_t d = 0;
  std::vector<double> a;

  double& operator()(std::size_t i, std::size_t j) { return a[i * d + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * d + j]; }
};

DenseGram to_dense(const RatMatrix& g);

// Unimodular T with T^t G T LLL-reduced (Lovasz parameter delta). With
// sl_only, swaps are replaced by (b_k, -b_{k-1}) so that det T = +1.
IntMatrix lll_gram(const DenseGram& g, double delta = 0.99, bool sl_only = false);

// Calls visit(x) for every nonzero integer x with x^t G x <= bound (both x and -x).
// Returns false if G is not numerically positive definite.
bool short_vectors(const DenseGram& g, double bound, const std::function<void(const std::vector<long>&)>& visit);

}  // namespace primlat
