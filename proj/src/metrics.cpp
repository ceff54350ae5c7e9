#include "cvamp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace cvamp {

namespace {

constexpr double kGMax = 1e3;  // search bound for the electronic gain

void check_pair(const GaussianState& s, int m1, int m2) {
  if (s.n_modes() < 2) {
    throw std::invalid_argument("need at least 2 modes");
  }
  if (m1 == m2) {
    throw std::invalid_argument("mode pair must be distinct");
  }
}

}  // namespace

double quad_variance(const GaussianState& s, int mode, Quadrature q) {
  if (mode < 0 || mode >= s.n_modes()) {
    throw std::invalid_argument("quad_variance: mode out of range");
  }
  const int i = quad_index(mode, q);
  return s.cov(i, i);
}

double quad_covariance(const GaussianState& s, int mode_a, Quadrature qa,
                       int mode_b, Quadrature qb) {
  if (mode_a < 0 || mode_a >= s.n_modes() || mode_b < 0 ||
      mode_b >= s.n_modes()) {
    throw std::invalid_argument("quad_covariance: mode out of range");
  }
  return s.cov(quad_index(mode_a, qa), quad_index(mode_b, qb));
}

double joint_variance_minus(const GaussianState& s, int m1, int m2,
                            double g) {
  const double v1 = quad_variance(s, m1, Quadrature::X);
  const double v2 = quad_variance(s, m2, Quadrature::X);
  const double c = quad_covariance(s, m1, Quadrature::X, m2, Quadrature::X);
  return (v1 + g * g * v2 - 2.0 * g * c) / 2.0;
}

double joint_variance_plus(const GaussianState& s, int m1, int m2, double g) {
  const double v1 = quad_variance(s, m1, Quadrature::Y);
  const double v2 = quad_variance(s, m2, Quadrature::Y);
  const double c = quad_covariance(s, m1, Quadrature::Y, m2, Quadrature::Y);
  return (v1 + g * g * v2 + 2.0 * g * c) / 2.0;
}

InsepResult inseparability(const GaussianState& s, int m1, int m2) {
  check_pair(s, m1, m2);
  // I(g) = (A + B g^2 - D g) / (1 + g^2) with
  //   A = V1x + V1y,  B = V2x + V2y,  D = 2 (Cx - Cy).
  const double a = quad_variance(s, m1, Quadrature::X) +
                   quad_variance(s, m1, Quadrature::Y);
  const double b = quad_variance(s, m2, Quadrature::X) +
                   quad_variance(s, m2, Quadrature::Y);
  const double d =
      2.0 * (quad_covariance(s, m1, Quadrature::X, m2, Quadrature::X) -
             quad_covariance(s, m1, Quadrature::Y, m2, Quadrature::Y));
  auto value = [&](double g) {
    return (a + b * g * g - d * g) / (1.0 + g * g);
  };

  std::vector<double> candidates = {0.0, kGMax};
  if (d != 0.0) {
    // Stationary points: D g^2 + 2 (B - A) g - D = 0.
    const double disc = std::hypot(a - b, d);
    for (double root : {((a - b) + disc) / d, ((a - b) - disc) / d}) {
      if (root >= 0.0 && root <= kGMax) candidates.push_back(root);
    }
  } else if (a == b) {
    // I(g) is constant; g = 1 is the conventional operating point.
    return {a, 1.0};
  }

  double best_g = candidates.front();
  double best = value(best_g);
  for (double g : candidates) {
    const double v = value(g);
    if (v < best) {
      best = v;
      best_g = g;
    }
  }
  return {best, best_g};
}

CondVarResult conditional_variance(const GaussianState& s, int target_mode,
                                   int meter_mode, Quadrature q) {
  check_pair(s, target_mode, meter_mode);
  const double vt = quad_variance(s, target_mode, q);
  const double vm = quad_variance(s, meter_mode, q);
  const double c = quad_covariance(s, target_mode, q, meter_mode, q);
  if (vm <= 0.0) {
    throw std::runtime_error("conditional_variance: non-positive meter variance");
  }
  double g_min = (q == Quadrature::X) ? c / vm : -c / vm;
  if (g_min < 0.0) {
    return {vt, 0.0};
  }
  return {vt - c * c / vm, g_min};
}

EprResult epr(const GaussianState& s, int m1, int m2) {
  check_pair(s, m1, m2);
  const double vx12 = conditional_variance(s, m1, m2, Quadrature::X).variance;
  const double vy12 = conditional_variance(s, m1, m2, Quadrature::Y).variance;
  const double vx21 = conditional_variance(s, m2, m1, Quadrature::X).variance;
  const double vy21 = conditional_variance(s, m2, m1, Quadrature::Y).variance;
  return {vx12 * vy12, vx21 * vy21};
}

EntanglementReport entanglement_report(const GaussianState& s, int m1,
                                       int m2) {
  EntanglementReport rep;
  const InsepResult ins = inseparability(s, m1, m2);
  rep.inseparability = ins.inseparability;
  rep.g_insep = ins.g_opt;
  const EprResult e = epr(s, m1, m2);
  rep.epr_12 = e.e12;
  rep.epr_21 = e.e21;
  rep.g_min_x = conditional_variance(s, m1, m2, Quadrature::X).g_min;
  rep.g_min_y = conditional_variance(s, m1, m2, Quadrature::Y).g_min;
  const double sql = (1.0 + ins.g_opt * ins.g_opt) / 2.0;
  rep.squeezed_var_x_minus =
      joint_variance_minus(s, m1, m2, ins.g_opt) / sql;
  rep.squeezed_var_y_plus = joint_variance_plus(s, m1, m2, ins.g_opt) / sql;
  return rep;
}

double to_db(double variance_ratio) {
  if (!(variance_ratio > 0.0)) {
    throw std::invalid_argument("to_db: ratio must be positive");
  }
  return 10.0 * std::log10(variance_ratio);
}

double from_db(double db) { return std::pow(10.0, db / 10.0); }

double golden_section_minimize(const std::function<double(double)>& f,
                               double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / 2.0;
}

}  // namespace cvamp
