#include "doctest.h"

#include "primlat/exact.hpp"
#include "primlat/verify.hpp"

using namespace primlat;

namespace {

void require_pass(const VerifyReport& r) {
  for (const auto& c : r.checks) {
    INFO(r.name, ": ", c.name, " failed ", c.failed, " of ", c.checked);
    CHECK(c.pass());
  }
  CHECK(r.pass());
}

}  // namespace

TEST_CASE("empty reports do not pass") {
  VerifyReport r{"x", {}};
  CHECK_FALSE(r.pass());
  r.check("a");
  CHECK_FALSE(r.pass());
}

TEST_CASE("random primitive lattices") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto l = random_primitive_lattice(rng, 5, 2);
    CHECK(minor_gcd(l.hnf()) == 1);
  }
}

TEST_CASE("verification suites on small inputs") {
  require_pass(verify_identities(100, 1));
  require_pass(verify_oracle(3, 1, 6));
  require_pass(verify_duality(3, 6));
  require_pass(verify_transference(30, 2));
  require_pass(verify_symmetry(20, 3));
  require_pass(verify_ri(60, 4));
  require_pass(verify_constants());
}
