// primlat: command-line front end to the library.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "primlat/constants.hpp"
#include "primlat/decomp.hpp"
#include "primlat/enumerate.hpp"
#include "primlat/lattice.hpp"
#include "primlat/shapes.hpp"
#include "primlat/stats.hpp"
#include "primlat/verify.hpp"

using json = nlohmann::json;
using namespace primlat;

namespace {

struct Options {
  std::size_t n = 0, d = 0;
  double max_covol = 0;
  std::size_t cells = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out;
  std::size_t sweep = 1;
  std::size_t samples = 0;
  std::string suite;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw Error(Errc::BadArgument, "cannot open " + path);
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

json shape_json(const ShapePoint2& p) { return {{"x", p.xd()}, {"y", p.yd()}}; }

json to_json(const ChiSquareReport& r) {
  return {{"observed", r.observed},   {"expected", r.expected}, {"tolerance", r.tolerance},
          {"groups", r.groups},       {"statistic", r.statistic}, {"statistic_raw", r.statistic_raw},
          {"dof", r.dof},             {"quantile", r.quantile}, {"threshold", r.threshold},
          {"pass", r.pass},           {"max_rel_dev", r.max_rel_dev}};
}

json to_json(const UpsilonReport& u) {
  return {{"d", u.d}, {"v_numerator", u.v_numerator}, {"s_numerator", u.s_numerator}, {"index", u.index},
          {"value", u.value}};
}

json to_json(const TheoremConstants& t) {
  return {{"n", t.n},
          {"d", t.d},
          {"zeta", t.zeta_values},
          {"ball_vol", t.ball},
          {"sphere_area", t.sphere},
          {"upsilon_d", to_json(t.upsilon_d)},
          {"upsilon_nd", to_json(t.upsilon_nd)},
          {"vol_u_d", t.vol_u_d},
          {"vol_u_nd", t.vol_u_nd},
          {"vol_u_n", t.vol_u_n},
          {"vol_gr", t.vol_gr},
          {"schmidt",
           {{"corrected", t.schmidt.corrected},
            {"printed", t.schmidt.printed},
            {"remark", t.schmidt.remark},
            {"remark_over_n", t.schmidt.remark_over_n}}},
          {"c_oriented", t.c_oriented},
          {"tau", t.tau_n},
          {"lambda", t.lambda_n},
          {"beta", {{"neither", t.beta_neither}, {"shape", t.beta_e}, {"shape_perp", t.beta_f}, {"both", t.beta_both}}},
          {"exponent",
           {{"neither", t.exponent_neither}, {"shape", t.exponent_e}, {"shape_perp", t.exponent_f},
            {"both", t.exponent_both}}},
          {"vol_x2", {{"index2", t.vol_x2_index2}, {"index1", t.vol_x2_index1}, {"hyperbolic", t.vol_x2_hyperbolic}}}};
}

json to_json(const VerifyReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"checked", c.checked}, {"failed", c.failed}});
  return {{"suite", r.name}, {"checks", checks}, {"pass", r.pass()}};
}

void print(Output& out, const json& j) { out.os() << j.dump(2) << '\n'; }

int cmd_constants(const Options& o) {
  Output out(o.out);
  print(out, to_json(theorem_constants(static_cast<int>(o.n), static_cast<int>(o.d))));
  return 0;
}

int cmd_enumerate(const Options& o) {
  Output out(o.out);
  EnumTask task{o.n, o.d, o.max_covol, std::nullopt, nullptr, o.threads};
  enumerate_primitive(task, [&](const HnfLeaf& leaf) {
    const PrimitiveLattice l = leaf.lattice();
    json hnf = json::array();
    for (std::size_t j = 0; j < o.d; ++j) {
      json col = json::array();
      for (std::size_t i = 0; i < o.n; ++i) col.push_back(leaf(i, j));
      hnf.push_back(col);
    }
    json rec = {{"n", o.n},         {"d", o.d}, {"hnf", hnf}, {"covol_sq", std::to_string(leaf.covol_sq)},
                {"direction", direction(l)}, {"orient", 1}};
    if (o.d == 2) rec["shape"] = shape_json(shape_rank2(l.lattice()));
    if (o.n - o.d == 2) rec["shape_perp"] = shape_json(shape_rank2(factor(l)));
    out.os() << rec.dump() << '\n';
  });
  return 0;
}

int cmd_count(const Options& o) {
  if (o.sweep < 1) throw Error(Errc::BadArgument, "--sweep must be at least 1");
  Output out(o.out);
  std::vector<double> xs;
  for (std::size_t i = 1; i <= o.sweep; ++i) xs.push_back(o.max_covol * static_cast<double>(i) / o.sweep);
  const auto rows = count_sweep(o.n, o.d, xs, o.threads);
  out.os() << "x,count,normalized\n";
  for (const auto& r : rows) out.os() << json(r.x).dump() << ',' << r.count << ',' << json(r.normalized).dump() << '\n';
  return 0;
}

int cmd_verify(const Options& o) {
  VerifyReport r;
  const auto samples = [&](std::size_t def) { return o.samples ? o.samples : def; };
  if (o.suite == "identities") r = verify_identities(samples(1000), o.seed);
  else if (o.suite == "oracle") r = verify_oracle(o.n, o.d, o.max_covol);
  else if (o.suite == "duality") r = verify_duality(o.n, o.max_covol);
  else if (o.suite == "transference") r = verify_transference(samples(200), o.seed);
  else if (o.suite == "symmetry") r = verify_symmetry(samples(100), o.seed);
  else if (o.suite == "ri") r = verify_ri(samples(500), o.seed);
  else if (o.suite == "constants") r = verify_constants();
  else throw Error(Errc::BadArgument, "unknown suite " + o.suite);
  Output out(o.out);
  print(out, to_json(r));
  return r.pass() ? 0 : 1;
}

int cmd_equidist(const Options& o) {
  EquidistConfig cfg;
  cfg.n = o.n;
  cfg.d = o.d;
  cfg.max_covol = o.max_covol;
  cfg.gr_cells = o.cells;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  const EquidistReport r = run_equidist(cfg);
  json j = {{"n", cfg.n}, {"d", cfg.d}, {"max_covol", cfg.max_covol}, {"count", r.count},
            {"gr_cells", {{"refs", r.gr.refs}, {"masses", r.gr.masses}, {"se", r.gr.se}, {"mc_samples", r.gr.mc_samples}}},
            {"direction_hist", r.direction_hist}, {"direction", to_json(r.direction)}};
  bool pass = r.direction.pass;
  if (r.has_shape || r.has_shape_perp) j["shape_probs"] = r.shape_probs;
  if (r.has_shape) {
    j["shape_hist"] = r.shape_hist;
    j["shape"] = to_json(r.shape);
    pass = pass && r.shape.pass;
  }
  if (r.has_shape_perp) {
    j["shape_perp_hist"] = r.shape_perp_hist;
    j["shape_perp"] = to_json(r.shape_perp);
    pass = pass && r.shape_perp.pass;
  }
  j["pass"] = pass;
  Output out(o.out);
  print(out, j);
  return pass ? 0 : 1;
}

int cmd_joint(const Options& o) {
  JointConfig cfg;
  cfg.n = o.n;
  cfg.d = o.d;
  cfg.max_covol = o.max_covol;
  cfg.threads = o.threads;
  if (o.cells) {
    if (o.cells < 3) throw Error(Errc::BadArgument, "--cells must be at least 3");
    cfg.ky = o.cells - 1;
  }
  const JointReport r = run_joint(cfg);
  const bool pass = r.independence.pass && r.marginal_shape.pass && r.marginal_shape_perp.pass && r.joint_product.pass;
  const json j = {{"n", cfg.n},
                  {"d", cfg.d},
                  {"max_covol", cfg.max_covol},
                  {"count", r.count},
                  {"cell_probs", r.probs},
                  {"table", r.table},
                  {"independence", to_json(r.independence)},
                  {"marginal_shape", to_json(r.marginal_shape)},
                  {"marginal_shape_perp", to_json(r.marginal_shape_perp)},
                  {"joint_product", to_json(r.joint_product)},
                  {"pass", pass}};
  Output out(o.out);
  print(out, j);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Primitive lattice enumeration and verification"};
  app.require_subcommand(1);

  struct Sub {
    CLI::App* app;
    std::size_t n, d;
    double x;
    std::size_t cells;
    int (*run)(const Options&);
  };
  std::vector<Sub> subs;
  auto add = [&](const char* name, const char* help, std::size_t n, std::size_t d, double x, std::size_t cells,
                 int (*run)(const Options&)) {
    CLI::App* s = app.add_subcommand(name, help);
    subs.push_back({s, n, d, x, cells, run});
    return s;
  };
  add("constants", "closed-form constants as JSON", 4, 2, 0, 0, cmd_constants);
  add("enumerate", "primitive lattices as JSON lines", 3, 1, 10, 0, cmd_enumerate);
  CLI::App* count = add("count", "counts N(X) as CSV", 2, 1, 1000, 0, cmd_count);
  CLI::App* verify = add("verify", "run a verification suite", 3, 2, 10, 0, cmd_verify);
  add("equidist", "direction and shape equidistribution tests", 3, 1, 150, 24, cmd_equidist);
  add("joint", "joint shape independence test", 4, 2, 20, 0, cmd_joint);

  std::size_t sweep = 1, samples = 0;
  std::string suite;
  count->add_option("--sweep", sweep, "number of evenly spaced X values up to --max-covol")->capture_default_str();
  verify->add_option("suite", suite, "identities|oracle|duality|transference|symmetry|ri|constants")->required();
  verify->add_option("--samples", samples, "sample count for randomized suites");

  // CLI11 binds each option to a variable, so each subcommand gets its own copy.
  std::vector<Options> opts(subs.size());
  for (std::size_t k = 0; k < subs.size(); ++k) {
    Sub& s = subs[k];
    Options& so = opts[k];
    so.n = s.n;
    so.d = s.d;
    so.max_covol = s.x;
    so.cells = s.cells;
    s.app->add_option("--n", so.n, "ambient dimension")->capture_default_str();
    s.app->add_option("--d", so.d, "rank")->capture_default_str();
    s.app->add_option("--max-covol", so.max_covol, "covolume bound X")->capture_default_str();
    s.app->add_option("--cells", so.cells, "number of partition cells")->capture_default_str();
    s.app->add_option("--seed", so.seed, "random seed")->capture_default_str();
    s.app->add_option("--threads", so.threads, "worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();
    s.app->add_option("--out", so.out, "output file (default stdout)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  for (std::size_t k = 0; k < subs.size(); ++k) {
    if (!subs[k].app->parsed()) continue;
    Options run = opts[k];
    run.sweep = sweep;
    run.samples = samples;
    run.suite = suite;
    try {
      return subs[k].run(run);
    } catch (const Error& e) {
      std::cerr << "primlat: " << e.what() << '\n';
      const bool usage = e.code() == Errc::BadArgument || e.code() == Errc::GuardExceeded ||
                         e.code() == Errc::EmptySweep || e.code() == Errc::BadPartition;
      return usage ? 2 : 1;
    }
  }
  return 2;
}
