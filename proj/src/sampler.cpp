#include "cvamp/sampler.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace cvamp {

namespace {

// Standard-normal stream with a pinned algorithm: mt19937_64 uniforms mapped
// to (0, 1] and fed through Box-Muller. Implementation-defined library
// distributions are avoided so a seed maps to the same draws everywhere the
// floating-point environment matches.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_open_closed();
    const double u2 = uniform_open_closed();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  double uniform_open_closed() {
    // 53-bit mantissa, shifted into (0, 1] so log() is always finite.
    return static_cast<double>((rng_() >> 11) + 1) * 0x1.0p-53;
  }

  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace

Eigen::MatrixXd sample_quadratures(const GaussianState& s,
                                   const SampleConfig& cfg) {
  if (cfg.shots < 1) {
    throw std::invalid_argument("sample_quadratures: shots must be >= 1");
  }
  require_physical(s);
  const Eigen::LLT<Eigen::MatrixXd> llt(s.cov);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error(
        "sample_quadratures: covariance factorization failed");
  }
  const Eigen::MatrixXd factor = llt.matrixL();
  const int dim = static_cast<int>(s.mean.size());

  NormalStream normals(cfg.seed);
  Eigen::MatrixXd samples(cfg.shots, dim);
  Eigen::VectorXd z(dim);
  for (int shot = 0; shot < cfg.shots; ++shot) {
    for (int i = 0; i < dim; ++i) z(i) = normals.next();
    samples.row(shot) = (s.mean + factor * z).transpose();
  }
  return samples;
}

MeanCov empirical_covariance(const Eigen::MatrixXd& samples) {
  const auto n = samples.rows();
  if (n < 2) {
    throw std::invalid_argument("empirical_covariance: need >= 2 samples");
  }
  MeanCov result;
  result.mean = samples.colwise().mean();
  const Eigen::MatrixXd centered = samples.rowwise() - result.mean.transpose();
  result.cov = centered.transpose() * centered / static_cast<double>(n - 1);
  return result;
}

VarianceEstimate variance_trace(const GaussianState& s, const JointSpec& spec,
                                const SampleConfig& cfg) {
  if (cfg.block_size < 2 || cfg.shots < cfg.block_size) {
    throw std::invalid_argument(
        "variance_trace: need shots >= block_size >= 2");
  }
  if (spec.sign != 1 && spec.sign != -1) {
    throw std::invalid_argument("variance_trace: sign must be +1 or -1");
  }
  const Eigen::MatrixXd samples = sample_quadratures(s, cfg);
  const int i1 = quad_index(spec.mode1, spec.quad);
  const int i2 = quad_index(spec.mode2, spec.quad);
  Eigen::VectorXd joint;
  if (spec.g == 0.0) {
    joint = samples.col(i1);
  } else {
    joint = (samples.col(i1) + spec.sign * spec.g * samples.col(i2)) /
            std::numbers::sqrt2;
  }

  const int n_blocks = cfg.shots / cfg.block_size;
  Eigen::VectorXd block_vars(n_blocks);
  for (int b = 0; b < n_blocks; ++b) {
    const Eigen::VectorXd block = joint.segment(b * cfg.block_size,
                                                cfg.block_size);
    const double mean = block.mean();
    block_vars(b) = (block.array() - mean).square().sum() /
                    (cfg.block_size - 1);
  }
  const double estimate = block_vars.mean();
  double stderr_val = 0.0;
  if (n_blocks > 1) {
    const double spread =
        (block_vars.array() - estimate).square().sum() / (n_blocks - 1);
    stderr_val = std::sqrt(spread / n_blocks);
  }
  return {estimate, stderr_val};
}

}  // namespace cvamp
