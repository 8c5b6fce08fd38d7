// Acceptance runner: one PASS/FAIL line per criterion, details indented below.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "primlat/constants.hpp"
#include "primlat/enumerate.hpp"
#include "primlat/stats.hpp"
#include "primlat/verify.hpp"

using namespace primlat;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Outcome {
  bool pass = false;
  std::vector<std::string> details;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

void add_report(Outcome& o, const VerifyReport& r) {
  for (const auto& c : r.checks)
    o.details.push_back(fmt("%s: %s %llu checked, %llu failed", r.name.c_str(), c.name.c_str(),
                            static_cast<unsigned long long>(c.checked), static_cast<unsigned long long>(c.failed)));
}

void add_chi(Outcome& o, const char* label, const ChiSquareReport& r) {
  o.details.push_back(fmt("%s: statistic %.3f (unwidened %.3f), dof %g, threshold %.3f, max rel dev %.4f -> %s", label,
                          r.statistic, r.statistic_raw, r.dof, r.threshold, r.max_rel_dev, r.pass ? "pass" : "fail"));
}

Outcome suite(const std::vector<VerifyReport>& reports) {
  Outcome o{true, {}};
  for (const auto& r : reports) {
    add_report(o, r);
    o.pass = o.pass && r.pass();
  }
  return o;
}

Outcome count_ratio(std::size_t n, std::size_t d, double x, double constant, double tol) {
  const auto rows = count_sweep(n, d, {x}, 1);
  const double ratio = rows[0].normalized / constant;
  Outcome o{std::abs(ratio - 1) <= tol, {}};
  o.details.push_back(fmt("N(%g) = %llu, N/X^%zu = %.6f, constant %.6f, ratio - 1 = %+.5f (tolerance %.2f)", x,
                          static_cast<unsigned long long>(rows[0].count), n, rows[0].normalized, constant, ratio - 1,
                          tol));
  return o;
}

Outcome criterion6() {
  const auto rows = count_sweep(4, 2, {8, 12, 16, 20, 24}, 1);
  const FitReport f = fit_constant(rows, 4);
  const double c = schmidt_c(2, 4);
  const double dev = f.c_extrap / c - 1;
  Outcome o{f.final_step_change <= 0.05 && std::abs(dev) <= 0.10, {}};
  for (const auto& r : rows)
    o.details.push_back(fmt("X = %g: N = %llu, N/X^4 = %.6f", r.x, static_cast<unsigned long long>(r.count), r.normalized));
  o.details.push_back(fmt("final-step change %.4f (limit 0.05)", f.final_step_change));
  o.details.push_back(fmt("extrapolated c = %.5f, schmidt_c(2,4) = %.5f, deviation %+.4f (limit 0.10)", f.c_extrap, c, dev));
  return o;
}

Outcome criterion9() {
  const EquidistReport r = run_equidist(EquidistConfig{});
  Outcome o{r.direction.pass && r.has_shape_perp && r.shape_perp.pass, {}};
  o.details.push_back(fmt("N = %llu", static_cast<unsigned long long>(r.count)));
  add_chi(o, "(a) directions, 24 Gr(1,3) cells, expected widened by 3 MC-SE", r.direction);
  add_chi(o, "(b) shapes of the factor lattice, 20 F2 cells", r.shape_perp);
  return o;
}

Outcome criterion10() {
  const JointReport r = run_joint(JointConfig{});
  Outcome o{r.independence.pass && r.marginal_shape.pass && r.marginal_shape_perp.pass && r.joint_product.pass, {}};
  o.details.push_back(fmt("N = %llu", static_cast<unsigned long long>(r.count)));
  add_chi(o, "independence", r.independence);
  add_chi(o, "marginal shape(L)", r.marginal_shape);
  add_chi(o, "marginal shape(L^pi)", r.marginal_shape_perp);
  add_chi(o, "joint vs product of areas", r.joint_product);
  return o;
}

Outcome criterion11() { return suite({verify_constants()}); }

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "exact identities", 10, [] { return suite({verify_identities(1000, 0)}); }},
      {2, "oracle equivalence", 120,
       [] {
         return suite({verify_oracle(2, 1, 12), verify_oracle(3, 1, 10), verify_oracle(3, 2, 10),
                       verify_oracle(4, 2, 6)});
       }},
      {3, "duality bijection", 60, [] { return suite({verify_duality(3, 12), verify_duality(4, 12)}); }},
      {4, "primitive vectors n=2", 10, [] { return count_ratio(2, 1, 1000, kPi / (2 * zeta(2)), 0.02); }},
      {5, "primitive vectors n=3", 60, [] { return count_ratio(3, 1, 200, (2 * kPi / 3) / zeta(3), 0.03); }},
      {6, "n=4 d=2 stabilization", 600, criterion6},
      {7, "RI coordinates", 60, [] { return suite({verify_ri(500, 0)}); }},
      {8, "transference", 60, [] { return suite({verify_transference(200, 0)}); }},
      {9, "equidistribution n=3 d=1", 180, criterion9},
      {10, "joint independence n=4 d=2", 600, criterion10},
      {11, "constants", 1, criterion11},
      {12, "symmetry", 10, [] { return suite({verify_symmetry(100, 0)}); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, {std::string("exception: ") + e.what()}};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s  %2d  %-30s %8.2fs (budget %gs)\n", pass ? "PASS" : "FAIL", c.id, c.name, secs, c.budget_s);
    for (const auto& d : o.details) std::printf("      %s\n", d.c_str());
    if (!in_time) std::printf("      over time budget\n");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
