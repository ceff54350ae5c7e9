#pragma once

#include <Eigen/Dense>

namespace cvamp {

/// Gaussian state of n optical modes, described by the means and covariances
/// of the amplitude (X) and phase (Y) quadratures. Quadrature ordering is
/// (x1, y1, x2, y2, ...). Vacuum variance is 1 (SQL convention), so a
/// physical covariance matrix has all symplectic eigenvalues >= 1.
struct GaussianState {
  Eigen::VectorXd mean;  // length 2 * n_modes
  Eigen::MatrixXd cov;   // 2 * n_modes x 2 * n_modes, symmetric

  int n_modes() const { return static_cast<int>(mean.size()) / 2; }
};

enum class Quadrature { X = 0, Y = 1 };

/// Row/column index of a quadrature in the mean vector / covariance matrix.
inline int quad_index(int mode, Quadrature q) {
  return 2 * mode + static_cast<int>(q);
}

GaussianState vacuum(int n_modes);

/// Shift the mean of one mode; covariances are untouched.
GaussianState displace(const GaussianState& s, int mode, double dx, double dy);

/// Two-mode squeezing with the x-quadratures correlated and the
/// y-quadratures anticorrelated, so that X- = (x_a - x_b)/sqrt(2) and
/// Y+ = (y_a + y_b)/sqrt(2) are squeezed to e^{-2r} on vacuum input.
GaussianState two_mode_squeeze(const GaussianState& s, int mode_a, int mode_b,
                               double r);

/// Quantum-limited phase-insensitive amplifier of intensity gain G >= 1.
/// Dilation: two-mode squeeze against a fresh vacuum ancilla with
/// r = arccosh(sqrt(G)). With keep_ancilla the ancilla is appended as the
/// last mode; otherwise it is traced out, leaving the single-mode CP map
/// cov_block -> G cov_block + (G - 1) I.
GaussianState amplify(const GaussianState& s, int mode, double gain,
                      bool keep_ancilla = false);

/// Pure-loss channel of transmission T in (0, 1]: beamsplitter against
/// vacuum with the reflected port traced out.
GaussianState attenuate(const GaussianState& s, int mode, double transmission);

/// Beamsplitter of transmission T in (0, 1) against a fresh vacuum mode;
/// both outputs are kept (the reflected port is appended as the last mode).
GaussianState beamsplit(const GaussianState& s, int mode, double transmission);

/// Quadrature rotation x -> x cos(t) + y sin(t), y -> -x sin(t) + y cos(t).
GaussianState rotate_phase(const GaussianState& s, int mode, double theta);

GaussianState trace_out(const GaussianState& s, int mode);

GaussianState tensor(const GaussianState& a, const GaussianState& b);

/// Symplectic eigenvalues of a covariance matrix, ascending. All >= 1 for a
/// physical state in SQL units.
Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& cov);

/// Physicality check: cov symmetric, entries finite, and every symplectic
/// eigenvalue >= 1 - tol.
bool is_physical(const GaussianState& s, double tol = 1e-9);

/// Throws std::runtime_error if the state fails is_physical().
void require_physical(const GaussianState& s, double tol = 1e-9);

}  // namespace cvamp
