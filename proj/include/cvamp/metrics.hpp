#pragma once

#include <functional>

#include "cvamp/gaussian_state.hpp"

namespace cvamp {

double quad_variance(const GaussianState& s, int mode, Quadrature q);

double quad_covariance(const GaussianState& s, int mode_a, Quadrature qa,
                       int mode_b, Quadrature qb);

/// Var[(X1 - g X2) / sqrt(2)].
double joint_variance_minus(const GaussianState& s, int m1, int m2, double g);

/// Var[(Y1 + g Y2) / sqrt(2)].
double joint_variance_plus(const GaussianState& s, int m1, int m2, double g);

struct InsepResult {
  double inseparability;  // I, entangled iff < 2
  double g_opt;
};

/// Duan-Simon inseparability, minimized over the electronic gain g >= 0.
/// Each joint variance is normalized to its SQL of (1 + g^2)/2, so two
/// uncorrelated vacua give I = 2 at any g. Minimization is by the closed-form
/// stationary point of the rational function I(g).
InsepResult inseparability(const GaussianState& s, int m1, int m2);

struct CondVarResult {
  double variance;  // normalized to the target's SQL (= 1 in these units)
  double g_min;
};

/// Conditional variance V_{target|meter} = V_t - C^2 / V_m at the minimizing
/// electronic gain. For Y quadratures the sum convention Y_t + g Y_m is used,
/// so g_min >= 0 for anticorrelated phase quadratures. A correlation of the
/// wrong sign pins g_min to 0 (the attenuator cannot go negative).
CondVarResult conditional_variance(const GaussianState& s, int target_mode,
                                   int meter_mode, Quadrature q);

struct EprResult {
  double e12;  // V_{X1|X2} * V_{Y1|Y2}, EPR-entangled iff < 1
  double e21;
};

EprResult epr(const GaussianState& s, int m1, int m2);

/// Full set of entanglement figures for one mode pair.
struct EntanglementReport {
  double inseparability = 0;
  double g_insep = 0;
  double epr_12 = 0;
  double epr_21 = 0;
  double g_min_x = 0;  // gain minimizing V_{X1|X2}
  double g_min_y = 0;  // gain minimizing V_{Y1|Y2}
  double squeezed_var_x_minus = 0;  // at g = g_insep, SQL-normalized
  double squeezed_var_y_plus = 0;
};

EntanglementReport entanglement_report(const GaussianState& s, int m1, int m2);

double to_db(double variance_ratio);
double from_db(double db);

/// Golden-section minimizer on [lo, hi]; cross-check for the closed forms.
double golden_section_minimize(const std::function<double(double)>& f,
                               double lo, double hi, double tol = 1e-10);

}  // namespace cvamp
