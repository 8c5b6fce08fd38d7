#include "primlat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "primlat/constants.hpp"
#include "primlat/decomp.hpp"
#include "primlat/enumerate.hpp"

namespace primlat {

bool VerifyReport::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

Check& VerifyReport::check(const std::string& n) {
  for (auto& c : checks)
    if (c.name == n) return c;
  checks.push_back({n, 0, 0});
  return checks.back();
}

namespace {

void record(VerifyReport& r, const std::string& name, bool ok) {
  Check& c = r.check(name);
  ++c.checked;
  if (!ok) ++c.failed;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t n, std::size_t d, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  while (true) {
    IntMatrix m(n, d);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = dist(rng);
    if (det_int(gram(m)) != 0) return m;
  }
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

}  // namespace

PrimitiveLattice random_primitive_lattice(std::mt19937_64& rng, std::size_t n, std::size_t d, int lo, int hi) {
  return PrimitiveLattice::from_hnf(saturate(random_matrix(rng, n, d, lo, hi)), (rng() & 1) ? 1 : -1);
}

VerifyReport verify_identities(std::size_t samples, std::uint64_t seed) {
  VerifyReport r{"identities", {}};
  std::mt19937_64 rng(seed);
  for (std::size_t it = 0; it < samples; ++it) {
    const std::size_t n = 2 + it % 5;
    const std::size_t d = 1 + rng() % (n - 1);
    const PrimitiveLattice l = random_primitive_lattice(rng, n, d);
    const DLattice ld = l.lattice();
    const DLattice dl = dual(ld);
    record(r, "dual_involution", equal(dual(dl), ld));
    record(r, "dual_covolume", dl.covol_sq() * ld.covol_sq() == 1);
    const DLattice f = factor(l);
    const PrimitiveLattice o = orthogonal(l);
    record(r, "dual_factor_is_orthogonal", equal(dual(f), o.lattice()));
    record(r, "orthogonal_covolume", Rat(o.covol_sq()) == ld.covol_sq());
    record(r, "factor_covolume", f.covol_sq() * ld.covol_sq() == 1);
    // Delta = [B | C M + B Y] with [B | C] unimodular and M nonsingular.
    const IntMatrix c = unimodular_complete(l.hnf());
    std::uniform_int_distribution<int> small(-3, 3);
    IntMatrix m = random_matrix(rng, n - d, n - d, -3, 3);
    IntMatrix y(d, n - d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < n - d; ++j) y(i, j) = small(rng);
    const DLattice delta(hconcat(l.hnf(), c * m + l.hnf() * y));
    const DLattice fd = factor(l, delta);
    record(r, "factor_covolume_general", fd.covol_sq() * ld.covol_sq() == delta.covol_sq());
    bool integral = true;
    for (const Rat& v : dl.basis().data())
      if (Rat(v * ld.covol_sq()).get_den() != 1) integral = false;
    record(r, "almost_integrality", integral);
  }
  return r;
}

VerifyReport verify_oracle(std::size_t n, std::size_t d, double max_covol) {
  VerifyReport r{"oracle", {}};
  const auto got = enumerate_set(n, d, max_covol);
  const auto want = brute_force_oracle(n, d, max_covol);
  record(r, "same_size", got.size() == want.size());
  bool same = got.size() == want.size();
  for (std::size_t i = 0; same && i < got.size(); ++i) same = got[i].hnf() == want[i].hnf();
  record(r, "same_set", same);
  bool valid = true;
  for (const auto& l : got)
    if (minor_gcd(l.hnf()) != 1 || l.covol_sq() > Int(static_cast<long>(std::floor(max_covol * max_covol + 1e-9)))) valid = false;
  record(r, "primitive_within_bound", valid);
  return r;
}

VerifyReport verify_duality(std::size_t n, double max_covol) {
  VerifyReport r{"duality", {}};
  for (std::size_t d = 1; d < n; ++d) {
    std::map<std::vector<long long>, std::size_t> other;
    std::map<long long, std::uint64_t> hist_d, hist_o;
    EnumTask t{n, n - d, max_covol, std::nullopt, nullptr, 1};
    enumerate_primitive(t, [&](const HnfLeaf& leaf) {
      other.emplace(std::vector<long long>(leaf.h.begin(), leaf.h.begin() + n * (n - d)), 0);
      ++hist_o[leaf.covol_sq];
    });
    const int twist = (d * (n - d)) % 2 ? -1 : 1;
    bool involutive = true, into = true;
    t.d = d;
    enumerate_primitive(t, [&](const HnfLeaf& leaf) {
      ++hist_d[leaf.covol_sq];
      const PrimitiveLattice l = leaf.lattice();
      const PrimitiveLattice o = orthogonal(l);
      const PrimitiveLattice oo = orthogonal(o);
      if (!(oo.hnf() == l.hnf() && oo.orientation() == twist * l.orientation())) involutive = false;
      std::vector<long long> key;
      for (std::size_t j = 0; j < n - d; ++j)
        for (std::size_t i = 0; i < n; ++i) key.push_back(o.hnf()(i, j).get_si());
      auto it = other.find(key);
      if (it == other.end()) into = false;
      else ++it->second;
    });
    const bool onto = std::all_of(other.begin(), other.end(), [](const auto& kv) { return kv.second == 1; });
    const std::string tag = "d=" + std::to_string(d);
    record(r, "counts_equal_at_every_covolume " + tag, hist_d == hist_o);
    record(r, "orthogonal_involutive " + tag, involutive);
    record(r, "orthogonal_bijective " + tag, into && onto);
  }
  return r;
}

VerifyReport verify_transference(std::size_t samples, std::uint64_t seed) {
  VerifyReport r{"transference", {}};
  std::mt19937_64 rng(seed);
  for (std::size_t it = 0; it < samples; ++it) {
    const std::size_t k = 2 + it % 3;
    const std::size_t n = k + rng() % 3;
    const DLattice l(random_matrix(rng, n, k, -6, 6));
    record(r, "rank " + std::to_string(k), transference_check(l));
  }
  return r;
}

VerifyReport verify_symmetry(std::size_t samples, std::uint64_t seed) {
  VerifyReport r{"symmetry", {}};
  const DLattice square(IntMatrix::identity(2));
  const DLattice hex(IntMatrix::from_rows({{1, 0}, {1, 1}, {0, 1}}));
  record(r, "square_order_8", sym_order_rank2(square) == 8 && sym_order_rank2(dual(square)) == 8);
  record(r, "hexagonal_order_12", sym_order_rank2(hex) == 12 && sym_order_rank2(dual(hex)) == 12);
  std::mt19937_64 rng(seed);
  for (std::size_t it = 0; it < samples; ++it) {
    const std::size_t n = 2 + rng() % 3;
    const DLattice l(random_matrix(rng, n, 2, -5, 5));
    record(r, "dual_has_same_order", sym_order_rank2(l) == sym_order_rank2(dual(l)));
  }
  return r;
}

VerifyReport verify_ri(std::size_t samples, std::uint64_t seed) {
  VerifyReport r{"ri", {}};
  std::mt19937_64 rng(seed);
  const double tol = 1e-8;
  for (std::size_t it = 0; it < samples; ++it) {
    const std::size_t n = 2 + it % 4;
    const std::size_t d = 1 + rng() % (n - 1);
    const PrimitiveLattice l = random_primitive_lattice(rng, n, d);
    const IntMatrix gam = gamma_matrix(l);
    const RIComponents c = ri(to_real(gam), d);
    const IntMatrix b = gam.col_block(0, d);
    record(r, "(ii) e^t = covol", rel_close(std::exp(c.t), std::sqrt(l.covol_sq().get_d()), tol));
    bool ok = true;
    for (std::size_t i = 1; i <= d; ++i)
      ok = ok && rel_close(c.covol_prefix(i), std::sqrt(covol_sq(b.col_block(0, i)).get_d()), tol);
    record(r, "(iii) partial covolumes", ok);
    record(r, "(ii)# e^-t = covol of factor", rel_close(std::exp(-c.t), std::sqrt(factor(l).covol_sq().get_d()), tol));
    const RatMatrix br = to_rat(b);
    const RatMatrix proj = RatMatrix::identity(n) - br * inverse(gram(br)) * br.transpose();
    ok = true;
    for (std::size_t j = 1; j <= n - d; ++j)
      ok = ok && rel_close(c.covol_factor_prefix(j), std::sqrt(covol_sq(proj * to_rat(gam.col_block(d, j))).get_d()), tol);
    record(r, "(iii)# partial covolumes of factor", ok);
    const auto dir = direction(l.lattice());
    double diff = 0;
    for (std::size_t k = 0; k < dir.size(); ++k) diff = std::max(diff, std::abs(dir[k] - c.grass_point[k]));
    record(r, "(i) Grassmannian point", diff < 1e-12);
  }
  return r;
}

VerifyReport verify_constants() {
  VerifyReport r{"constants", {}};
  for (int d = 2; d <= 10; ++d) {
    const UpsilonReport u = upsilon_report(d);
    record(r, "S-product = V-product numerator", std::abs(u.s_numerator - u.v_numerator) <= 1e-12 * u.v_numerator);
  }
  for (int n = 2; n <= 6; ++n)
    for (int d = 1; d < n; ++d) {
      const double a = schmidt_c(d, n), b = schmidt_c(n - d, n);
      record(r, "c(d,n) = c(n-d,n)", std::abs(a - b) <= 1e-12 * a);
    }
  record(r, "tau_3 = 1/36", tau(3) == 1.0 / 36);
  record(r, "tau_4 = 1/32", tau(4) == 1.0 / 32);
  record(r, "beta(4,2,neither) = 46", beta(4, 2, Boundedness::Neither) == 46);
  return r;
}

}  // namespace primlat
