#include "cvamp/gaussian_state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cvamp {

namespace {

void check_mode(const GaussianState& s, int mode) {
  if (mode < 0 || mode >= s.n_modes()) {
    throw std::invalid_argument("mode index " + std::to_string(mode) +
                                " out of range for " +
                                std::to_string(s.n_modes()) + " modes");
  }
}

void symmetrize(Eigen::MatrixXd& m) {
  m = ((m + m.transpose()) / 2.0).eval();
}

// Applies the scale-and-add-noise CP map of a single-mode Gaussian channel:
// mean block *= scale, cov block -> scale^2 block + noise I, cross
// covariances *= scale.
GaussianState scalar_channel(const GaussianState& s, int mode, double scale,
                             double noise) {
  GaussianState out = s;
  const int x = quad_index(mode, Quadrature::X);
  const int y = quad_index(mode, Quadrature::Y);
  out.mean(x) *= scale;
  out.mean(y) *= scale;
  out.cov.row(x) *= scale;
  out.cov.row(y) *= scale;
  out.cov.col(x) *= scale;
  out.cov.col(y) *= scale;
  out.cov(x, x) += noise;
  out.cov(y, y) += noise;
  symmetrize(out.cov);
  return out;
}

GaussianState apply_symplectic(const GaussianState& s,
                               const Eigen::MatrixXd& symp) {
  GaussianState out;
  out.mean = symp * s.mean;
  out.cov = symp * s.cov * symp.transpose();
  symmetrize(out.cov);
  return out;
}

}  // namespace

GaussianState vacuum(int n_modes) {
  if (n_modes < 1) {
    throw std::invalid_argument("vacuum: n_modes must be >= 1");
  }
  GaussianState s;
  s.mean = Eigen::VectorXd::Zero(2 * n_modes);
  s.cov = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  return s;
}

GaussianState displace(const GaussianState& s, int mode, double dx,
                       double dy) {
  check_mode(s, mode);
  GaussianState out = s;
  out.mean(quad_index(mode, Quadrature::X)) += dx;
  out.mean(quad_index(mode, Quadrature::Y)) += dy;
  return out;
}

GaussianState two_mode_squeeze(const GaussianState& s, int mode_a, int mode_b,
                               double r) {
  check_mode(s, mode_a);
  check_mode(s, mode_b);
  if (mode_a == mode_b) {
    throw std::invalid_argument("two_mode_squeeze: modes must be distinct");
  }
  const int dim = 2 * s.n_modes();
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  const int xa = quad_index(mode_a, Quadrature::X);
  const int ya = quad_index(mode_a, Quadrature::Y);
  const int xb = quad_index(mode_b, Quadrature::X);
  const int yb = quad_index(mode_b, Quadrature::Y);
  Eigen::MatrixXd symp = Eigen::MatrixXd::Identity(dim, dim);
  symp(xa, xa) = ch;
  symp(xa, xb) = sh;
  symp(xb, xb) = ch;
  symp(xb, xa) = sh;
  symp(ya, ya) = ch;
  symp(ya, yb) = -sh;
  symp(yb, yb) = ch;
  symp(yb, ya) = -sh;
  return apply_symplectic(s, symp);
}

GaussianState amplify(const GaussianState& s, int mode, double gain,
                      bool keep_ancilla) {
  check_mode(s, mode);
  if (!(gain >= 1.0)) {
    throw std::invalid_argument("amplify: gain must be >= 1");
  }
  if (keep_ancilla) {
    const int ancilla = s.n_modes();
    GaussianState ext = tensor(s, vacuum(1));
    return two_mode_squeeze(ext, mode, ancilla,
                            std::acosh(std::sqrt(gain)));
  }
  return scalar_channel(s, mode, std::sqrt(gain), gain - 1.0);
}

GaussianState attenuate(const GaussianState& s, int mode,
                        double transmission) {
  check_mode(s, mode);
  if (!(transmission > 0.0 && transmission <= 1.0)) {
    throw std::invalid_argument("attenuate: transmission must be in (0, 1]");
  }
  return scalar_channel(s, mode, std::sqrt(transmission),
                        1.0 - transmission);
}

GaussianState beamsplit(const GaussianState& s, int mode,
                        double transmission) {
  check_mode(s, mode);
  if (!(transmission > 0.0 && transmission < 1.0)) {
    throw std::invalid_argument("beamsplit: transmission must be in (0, 1)");
  }
  const int fresh = s.n_modes();
  GaussianState ext = tensor(s, vacuum(1));
  const int dim = 2 * ext.n_modes();
  const double t = std::sqrt(transmission);
  const double rr = std::sqrt(1.0 - transmission);
  Eigen::MatrixXd symp = Eigen::MatrixXd::Identity(dim, dim);
  for (Quadrature q : {Quadrature::X, Quadrature::Y}) {
    const int a = quad_index(mode, q);
    const int b = quad_index(fresh, q);
    symp(a, a) = t;
    symp(a, b) = rr;
    symp(b, a) = -rr;
    symp(b, b) = t;
  }
  return apply_symplectic(ext, symp);
}

GaussianState rotate_phase(const GaussianState& s, int mode, double theta) {
  check_mode(s, mode);
  const int dim = 2 * s.n_modes();
  const int x = quad_index(mode, Quadrature::X);
  const int y = quad_index(mode, Quadrature::Y);
  Eigen::MatrixXd symp = Eigen::MatrixXd::Identity(dim, dim);
  symp(x, x) = std::cos(theta);
  symp(x, y) = std::sin(theta);
  symp(y, x) = -std::sin(theta);
  symp(y, y) = std::cos(theta);
  return apply_symplectic(s, symp);
}

GaussianState trace_out(const GaussianState& s, int mode) {
  check_mode(s, mode);
  const int n = s.n_modes();
  if (n < 2) {
    throw std::invalid_argument("trace_out: cannot remove the last mode");
  }
  GaussianState out;
  out.mean.resize(2 * (n - 1));
  out.cov.resize(2 * (n - 1), 2 * (n - 1));
  int ri = 0;
  for (int i = 0; i < n; ++i) {
    if (i == mode) continue;
    out.mean.segment<2>(2 * ri) = s.mean.segment<2>(2 * i);
    int rj = 0;
    for (int j = 0; j < n; ++j) {
      if (j == mode) continue;
      out.cov.block<2, 2>(2 * ri, 2 * rj) = s.cov.block<2, 2>(2 * i, 2 * j);
      ++rj;
    }
    ++ri;
  }
  return out;
}

GaussianState tensor(const GaussianState& a, const GaussianState& b) {
  const int da = static_cast<int>(a.mean.size());
  const int db = static_cast<int>(b.mean.size());
  GaussianState out;
  out.mean.resize(da + db);
  out.mean << a.mean, b.mean;
  out.cov = Eigen::MatrixXd::Zero(da + db, da + db);
  out.cov.topLeftCorner(da, da) = a.cov;
  out.cov.bottomRightCorner(db, db) = b.cov;
  return out;
}

Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& cov) {
  const int dim = static_cast<int>(cov.rows());
  const int n = dim / 2;
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    omega(2 * i, 2 * i + 1) = 1.0;
    omega(2 * i + 1, 2 * i) = -1.0;
  }
  // Eigenvalues of Omega * cov come in pairs +- i nu.
  Eigen::EigenSolver<Eigen::MatrixXd> es(omega * cov, false);
  Eigen::VectorXd abs_vals = es.eigenvalues().cwiseAbs();
  std::sort(abs_vals.data(), abs_vals.data() + dim);
  Eigen::VectorXd nus(n);
  for (int i = 0; i < n; ++i) {
    nus(i) = (abs_vals(2 * i) + abs_vals(2 * i + 1)) / 2.0;
  }
  return nus;
}

bool is_physical(const GaussianState& s, double tol) {
  if (!s.mean.allFinite() || !s.cov.allFinite()) return false;
  if ((s.cov - s.cov.transpose()).cwiseAbs().maxCoeff() > 1e-12) return false;
  return symplectic_eigenvalues(s.cov).minCoeff() >= 1.0 - tol;
}

void require_physical(const GaussianState& s, double tol) {
  if (!is_physical(s, tol)) {
    throw std::runtime_error("state violates the uncertainty principle");
  }
}

}  // namespace cvamp
