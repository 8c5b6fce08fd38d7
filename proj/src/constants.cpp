#include "primlat/constants.hpp"

#include <algorithm>
#include <cmath>

#include "primlat/error.hpp"

namespace primlat {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double ball_vol(int i) {
  if (i < 0) throw Error(Errc::NegativeIndex, "ball_vol index must be >= 0");
  // V_i = (2 pi / i) V_{i-2}
  double v = (i % 2) ? 2.0 : 1.0;
  for (int k = (i % 2) ? 3 : 2; k <= i; k += 2) v *= 2.0 * kPi / k;
  return v;
}

double sphere_area(int i) {
  if (i < 0) throw Error(Errc::NegativeIndex, "sphere_area index must be >= 0");
  return (i + 1) * ball_vol(i + 1);
}

double zeta(int k) {
  if (k < 2) throw Error(Errc::BadArgument, "zeta needs k >= 2");
  // Partial sum up to N - 1 plus the Euler-Maclaurin tail through the B_6 term;
  // the remainder is below k^5 N^{-k-5} / 30240 < 1e-16 for N = 40.
  const int big_n = 40;
  long double s = 0;
  for (int m = big_n - 1; m >= 1; --m) s += std::pow((long double)m, (long double)-k);
  const long double nn = big_n;
  const long double kk = k;
  long double tail = std::pow(nn, 1 - kk) / (kk - 1) + std::pow(nn, -kk) / 2;
  tail += kk * std::pow(nn, -kk - 1) / 12;
  tail -= kk * (kk + 1) * (kk + 2) * std::pow(nn, -kk - 3) / 720;
  tail += kk * (kk + 1) * (kk + 2) * (kk + 3) * (kk + 4) * std::pow(nn, -kk - 5) / 30240;
  return static_cast<double>(s + tail);
}

UpsilonReport upsilon_report(int d) {
  if (d < 1) throw Error(Errc::BadArgument, "upsilon needs d >= 1");
  UpsilonReport r;
  r.d = d;
  double fact = 1;
  for (int i = 2; i <= d; ++i) fact *= i;
  double vprod = 1;
  for (int i = 2; i <= d; ++i) vprod *= ball_vol(i);
  r.v_numerator = fact * vprod;
  double sprod = 1;
  for (int i = 1; i <= d - 1; ++i) sprod *= sphere_area(i);
  r.s_numerator = sprod;
  r.index = d % 2 == 0 ? 2 : 1;
  r.value = r.v_numerator / r.index;
  return r;
}

double upsilon(int d) { return upsilon_report(d).value; }

double vol_u(int d) {
  if (d < 1) throw Error(Errc::BadArgument, "vol_u needs d >= 1");
  double p = 1;
  for (int i = 2; i <= d; ++i) p *= zeta(i);
  return p;
}

double vol_gr(int d, int n) {
  if (d < 1 || d >= n) throw Error(Errc::BadArgument, "vol_gr needs 1 <= d < n");
  double num = 1, den = 1;
  for (int i = n - d; i <= n - 1; ++i) num *= sphere_area(i);
  for (int i = 1; i <= d - 1; ++i) den *= sphere_area(i);
  return num / den;
}

namespace {

double binom(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

SchmidtReport schmidt_report(int d, int n) {
  if (d < 1 || d >= n) throw Error(Errc::BadArgument, "schmidt_c needs 1 <= d < n");
  double vden = 1;
  for (int j = 1; j <= d; ++j) vden *= ball_vol(j);
  double zratio = 1;
  for (int i = 2; i <= d; ++i) zratio *= zeta(i);
  for (int j = n - d + 1; j <= n; ++j) zratio /= zeta(j);
  const double pre = binom(n, d) / n;

  double vnum = 1;
  for (int i = n - d + 1; i <= n; ++i) vnum *= ball_vol(i);
  double vnum_printed = 1;
  for (int i = n - d - 1; i <= n; ++i) vnum_printed *= ball_vol(i);

  SchmidtReport r;
  r.corrected = pre * vnum / vden * zratio;
  r.printed = pre * vnum_printed / vden * zratio;
  r.remark = vol_gr(d, n) / 2 * vol_u(d) * vol_u(n - d) / vol_u(n);
  r.remark_over_n = r.remark / n;
  return r;
}

double schmidt_c(int d, int n) { return schmidt_report(d, n).corrected; }

double tau(int n) {
  if (n < 2) throw Error(Errc::BadArgument, "tau needs n >= 2");
  return ((n - 1 + 1) / 2) / (4.0 * n * n);
}

double lambda_param(int n) {
  if (n < 2) throw Error(Errc::BadArgument, "lambda needs n >= 2");
  return double(n) * n / (2.0 * (double(n) * n - 1));
}

double beta(int n, int d, Boundedness b) {
  if (d < 1 || d >= n) throw Error(Errc::BadArgument, "beta needs 1 <= d < n");
  const double q = double(n) * n - 1;
  const double n2 = double(n) * n;
  switch (b) {
    case Boundedness::ShapeBounded: return 2.0 * (n - d - 1) * q + n2;
    case Boundedness::PerpShapeBounded: return 2.0 * (d - 1) * q + n2;
    case Boundedness::Neither: return 2.0 * (std::max(d, n - d) - 1) * q + n2;
    case Boundedness::Both: return 1.0;
  }
  return 1.0;
}

TheoremConstants theorem_constants(int n, int d) {
  if (d < 1 || d >= n) throw Error(Errc::BadArgument, "theorem_constants needs 1 <= d < n");
  TheoremConstants t;
  t.n = n;
  t.d = d;
  for (int k = 2; k <= n; ++k) t.zeta_values.push_back(zeta(k));
  for (int i = 0; i <= n; ++i) {
    t.ball.push_back(ball_vol(i));
    t.sphere.push_back(sphere_area(i));
  }
  t.upsilon_d = upsilon_report(d);
  t.upsilon_nd = upsilon_report(n - d);
  t.vol_u_d = vol_u(d);
  t.vol_u_nd = vol_u(n - d);
  t.vol_u_n = vol_u(n);
  t.vol_gr = vol_gr(d, n);
  t.schmidt = schmidt_report(d, n);
  t.c_oriented = 2 * t.schmidt.corrected;
  t.tau_n = tau(n);
  t.lambda_n = lambda_param(n);
  t.beta_neither = beta(n, d, Boundedness::Neither);
  t.beta_e = beta(n, d, Boundedness::ShapeBounded);
  t.beta_f = beta(n, d, Boundedness::PerpShapeBounded);
  t.beta_both = beta(n, d, Boundedness::Both);
  auto expo = [&](double b) { return n - t.tau_n * n / b; };
  t.exponent_neither = expo(t.beta_neither);
  t.exponent_e = expo(t.beta_e);
  t.exponent_f = expo(t.beta_f);
  t.exponent_both = expo(t.beta_both);
  t.vol_x2_index2 = zeta(2) / upsilon(2);
  t.vol_x2_index1 = zeta(2) / upsilon_report(2).v_numerator;
  t.vol_x2_hyperbolic = kPi / 3;
  return t;
}

}  // namespace primlat
