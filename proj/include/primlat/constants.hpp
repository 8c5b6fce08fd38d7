#pragma once

// Closed-form constants: zeta values, ball and sphere volumes, the SO_d volume
// factors, Schmidt's counting constant and the error-term parameters.

#include <cstddef>
#include <string>
#include <vector>

namespace primlat {

// Lebesgue measure of the unit ball in R^i; throws NegativeIndex for i < 0.
double ball_vol(int i);
// Surface measure of the unit sphere S^i in R^{i+1}: (i + 1) * V_{i+1}.
double sphere_area(int i);

// Riemann zeta for integer k >= 2 (BadArgument otherwise).
double zeta(int k);

struct UpsilonReport {
  int d = 0;
  double v_numerator = 0;  // d! * prod_{i=2}^d V_i
  double s_numerator = 0;  // prod_{i=1}^{d-1} S_i
  int index = 1;           // 2 for even d, 1 for odd d
  double value = 0;        // v_numerator / index
};

UpsilonReport upsilon_report(int d);
double upsilon(int d);

// prod_{i=2}^d zeta(i), the volume of SL_d(R)/SL_d(Z) under the chosen normalization.
double vol_u(int d);
// prod_{i=n-d}^{n-1} S_i / prod_{i=1}^{d-1} S_i.
double vol_gr(int d, int n);

struct SchmidtReport {
  double corrected = 0;  // operative constant
  double printed = 0;    // V-product starting at n - d - 1
  double remark = 0;     // (vol Gr / 2) vol U_d vol U_{n-d} / vol U_n
  double remark_over_n = 0;
};

SchmidtReport schmidt_report(int d, int n);
double schmidt_c(int d, int n);

enum class Boundedness { Neither, ShapeBounded, PerpShapeBounded, Both };

struct TheoremConstants {
  int n = 0, d = 0;
  std::vector<double> zeta_values;  // zeta(2) .. zeta(n)
  std::vector<double> ball;         // V_0 .. V_n
  std::vector<double> sphere;       // S_0 .. S_n
  UpsilonReport upsilon_d, upsilon_nd;
  double vol_u_d = 0, vol_u_nd = 0, vol_u_n = 0, vol_gr = 0;
  SchmidtReport schmidt;
  double c_oriented = 0;  // twice the unoriented constant
  double tau_n = 0, lambda_n = 0;
  double beta_neither = 0, beta_e = 0, beta_f = 0, beta_both = 0;
  double exponent_neither = 0, exponent_e = 0, exponent_f = 0, exponent_both = 0;
  // Three candidate normalizations of vol(X_2).
  double vol_x2_index2 = 0, vol_x2_index1 = 0, vol_x2_hyperbolic = 0;
};

double tau(int n);
double lambda_param(int n);
// beta for the given case; E bounded = shape of the d-lattice bounded.
double beta(int n, int d, Boundedness b);

TheoremConstants theorem_constants(int n, int d);

}  // namespace primlat
