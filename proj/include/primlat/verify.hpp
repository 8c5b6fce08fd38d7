#pragma once

// Seeded verification suites shared by the command-line tool and the
// acceptance runner. Each returns named checks with counts.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "primlat/lattice.hpp"

namespace primlat {

struct Check {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;
  bool pass() const { return checked > 0 && failed == 0; }
};

struct VerifyReport {
  std::string name;
  std::vector<Check> checks;
  bool pass() const;
  Check& check(const std::string& name);
};

// Random primitive d-lattice in Z^n: saturation of a random basis with entries in [lo, hi].
PrimitiveLattice random_primitive_lattice(std::mt19937_64& rng, std::size_t n, std::size_t d, int lo = -4, int hi = 4);

// Dual, factor and orthogonal identities on random primitive lattices, n in [2, 6].
VerifyReport verify_identities(std::size_t samples, std::uint64_t seed);
// enumerate_primitive against brute_force_oracle.
VerifyReport verify_oracle(std::size_t n, std::size_t d, double max_covol);
// Counts in ranks d and n - d agree at every covolume up to X, and orthogonal()
// is an involutive bijection between the enumerated sets.
VerifyReport verify_duality(std::size_t n, double max_covol);
// Rank k in {2, 3, 4}, exact minima of the lattice and its dual.
VerifyReport verify_transference(std::size_t samples, std::uint64_t seed);
// Square, hexagonal and random rank-2 lattices against their duals.
VerifyReport verify_symmetry(std::size_t samples, std::uint64_t seed);
// Refined Iwasawa covolume identities on gamma matrices, relative tolerance 1e-8.
VerifyReport verify_ri(std::size_t samples, std::uint64_t seed);
// Closed-form constant identities.
VerifyReport verify_constants();

}  // namespace primlat
