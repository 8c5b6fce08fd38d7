#pragma once

// Complete enumeration of primitive d-lattices in Z^n with covolume <= X, by
// walking column Hermite forms: pivot pattern, pivots, reduced pivot-row
// entries, then the free rows under an ellipsoid bound derived from the
// covolume.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "primlat/lattice.hpp"

namespace primlat {

inline constexpr std::size_t kMaxEnumDim = 6;

// Hermite basis held in machine integers, column-major.
struct HnfLeaf {
  std::size_t n = 0, d = 0;
  std::array<long long, kMaxEnumDim * kMaxEnumDim> h{};
  std::array<std::size_t, kMaxEnumDim> pivots{};
  long long covol_sq = 0;

  long long operator()(std::size_t i, std::size_t j) const { return h[j * n + i]; }
  long long& at(std::size_t i, std::size_t j) { return h[j * n + i]; }

  IntMatrix matrix() const;
  PrimitiveLattice lattice() const { return PrimitiveLattice::from_hnf(matrix()); }
  // Maximal minors in lexicographic order of row subsets.
  std::vector<long long> minors() const;

  friend bool operator<(const HnfLeaf& a, const HnfLeaf& b);
};

// Oriented basis of the orthogonal lattice in machine integers, column-major
// n x (n - d); spans the same oriented lattice as orthogonal(leaf.lattice()).
// Throws GuardExceeded if an intermediate leaves the 64-bit range.
std::vector<long long> orthogonal_basis(const HnfLeaf& leaf);

// Gram matrix (column-major n' x n') of a column-major integer basis with n rows.
std::vector<long long> gram_of(const std::vector<long long>& basis, std::size_t n);

// Deterministic pseudo-random sign from the Hermite entries.
int hashed_orientation(const HnfLeaf& leaf);

// Canonical order: pivot rows lexicographically, then column-major entries.
bool canonical_less(const IntMatrix& a, const IntMatrix& b);

struct EnumTask {
  std::size_t n = 0, d = 0;
  double max_covol = 1;
  std::optional<std::vector<std::size_t>> pivot_pattern;  // restrict to one pattern
  std::function<bool(const HnfLeaf&)> filter;             // optional predicate
  unsigned threads = 1;
};

struct EnumResult {
  std::uint64_t count = 0;
  std::map<std::vector<std::size_t>, std::uint64_t> per_pattern;
};

// Emits lattices in canonical order: pivot pattern, then column-major Hermite
// entries. emit is always called from the calling thread.
EnumResult enumerate_primitive(const EnumTask& task, const std::function<void(const HnfLeaf&)>& emit);

// Unordered variant: visit(worker, leaf) runs concurrently on task.threads workers.
EnumResult enumerate_unordered(const EnumTask& task, const std::function<void(unsigned, const HnfLeaf&)>& visit);

std::vector<PrimitiveLattice> enumerate_set(std::size_t n, std::size_t d, double max_covol, unsigned threads = 1);

// Independent oracle for n <= 4, X <= 12 (GuardExceeded otherwise): spans of
// tuples of primitive vectors with norm product <= C(d) X, saturated, filtered
// and deduplicated; sorted like enumerate_primitive.
std::vector<PrimitiveLattice> brute_force_oracle(std::size_t n, std::size_t d, double max_covol);

struct SweepRow {
  double x = 0;
  std::uint64_t count = 0;
  double normalized = 0;  // count / x^n
};

// One enumeration at max(xs), histogrammed by covolume. Throws EmptySweep for an empty list.
std::vector<SweepRow> count_sweep(std::size_t n, std::size_t d, const std::vector<double>& xs, unsigned threads = 1);

// Bound checks on a Hermite basis with pivots p_k at rows r_k. For a free row r
// with entries h_0..h_{m-1} (r_{m-1} < r):
//   replaced_minor: the minor on rows {r_k, k != j} + {r} equals +-prod(p) y_j,
//     y = h^t P^{-1}, and is at most covol in absolute value;
//   last_entry: |h_{m-1}| prod_{k != m-1} p_k <= covol (a special case of the above);
//   all_entries: |h_i| prod_{k != i} p_k <= covol for every i, which can fail.
struct PivotBoundReport {
  bool pivot_product_ok = true;
  bool replaced_minor_ok = true;
  bool last_entry_ok = true;
  bool all_entries_ok = true;
};

PivotBoundReport pivot_bounds(const HnfLeaf& leaf);

}  // namespace primlat
