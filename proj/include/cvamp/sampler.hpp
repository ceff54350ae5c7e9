#pragma once

#include <cstdint>

#include "cvamp/gaussian_state.hpp"

namespace cvamp {

/// Monte-Carlo homodyne sampling configuration. Variances are estimated per
/// block of block_size shots and averaged over blocks (the spectrum-analyzer
/// RBW/VBW abstraction).
struct SampleConfig {
  std::uint64_t seed = 0;
  int shots = 0;
  int block_size = 1024;
};

/// shots x 2n matrix of i.i.d. draws from the state's Gaussian distribution.
/// Deterministic for a fixed seed: mt19937_64 driving a Box-Muller transform,
/// with the Cholesky factor of cov applied in mode-major order. Throws on a
/// non-physical state.
Eigen::MatrixXd sample_quadratures(const GaussianState& s,
                                   const SampleConfig& cfg);

struct MeanCov {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;  // unbiased (divisor N - 1)
};

MeanCov empirical_covariance(const Eigen::MatrixXd& samples);

/// g-weighted joint quadrature (q1 + sign * g * q2) / sqrt(2). With g = 0
/// the spec degenerates to a plain single-quadrature measurement of mode1
/// (no sqrt(2) normalization).
struct JointSpec {
  int mode1 = 0;
  int mode2 = 1;
  Quadrature quad = Quadrature::X;
  int sign = -1;  // -1 for X-, +1 for Y+
  double g = 1.0;
};

struct VarianceEstimate {
  double estimate;
  double std_error;  // std of per-block variances / sqrt(n_blocks)
};

VarianceEstimate variance_trace(const GaussianState& s, const JointSpec& spec,
                                const SampleConfig& cfg);

}  // namespace cvamp
