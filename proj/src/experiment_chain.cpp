#include "cvamp/experiment_chain.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cvamp {

namespace {

constexpr double kGainLimit = 1e4;

double chain_metric(const ChainConfig& base, CrossingMetric metric,
                    double gain) {
  ChainConfig cfg = base;
  cfg.gain = gain;
  cfg.transmission = -1.0;  // unity gain-loss product
  const GaussianState out = run_chain(cfg);
  if (metric == CrossingMetric::Inseparability) {
    return inseparability(out, 0, 1).inseparability;
  }
  return epr(out, 0, 1).e12;
}

}  // namespace

SourceModel pure_source(double squeezing_db) {
  const double v_sq = from_db(-squeezing_db);
  return {v_sq, 1.0 / v_sq};
}

ChainConfig ideal_chain(const SourceModel& source, double gain) {
  ChainConfig cfg;
  cfg.source = source;
  cfg.gain = gain;
  cfg.window_transmission = 1.0;
  cfg.window_count = 0;
  cfg.polarizer_transmission = 1.0;
  cfg.detector_efficiency = 1.0;
  return cfg;
}

GaussianState build_source(const SourceModel& source) {
  if (!source.physical()) {
    throw std::invalid_argument(
        "build_source: v_sq * v_as >= 1 required (uncertainty principle)");
  }
  GaussianState s = vacuum(2);
  const double v = (source.v_sq + source.v_as) / 2.0;
  const double c = (source.v_as - source.v_sq) / 2.0;
  s.cov.diagonal().setConstant(v);
  s.cov(0, 2) = s.cov(2, 0) = c;   // x1-x2 correlated
  s.cov(1, 3) = s.cov(3, 1) = -c;  // y1-y2 anticorrelated
  return s;
}

GaussianState run_chain(const ChainConfig& cfg) {
  if (!(cfg.gain >= 1.0)) {
    throw std::invalid_argument("run_chain: gain must be >= 1");
  }
  GaussianState s = build_source(cfg.source);

  const double pre =
      std::pow(cfg.window_transmission, cfg.window_count) *
      cfg.polarizer_transmission;
  if (pre < 1.0) {
    s = attenuate(s, 0, pre);
    s = attenuate(s, 1, pre);
  }

  if (cfg.gain > 1.0 || cfg.keep_ancilla) {
    s = amplify(s, 1, cfg.gain, cfg.keep_ancilla);
  }
  const double t = cfg.effective_transmission();
  if (t < 1.0) s = attenuate(s, 1, t);

  if (cfg.detector_efficiency < 1.0) {
    s = attenuate(s, 0, cfg.detector_efficiency);
    s = attenuate(s, 1, cfg.detector_efficiency);
  }
  return s;
}

std::vector<SweepRow> clone_sweep(const ChainConfig& base,
                                  const std::vector<double>& gains) {
  std::vector<SweepRow> rows;
  rows.reserve(gains.size());
  for (double g : gains) {
    ChainConfig cfg = base;
    cfg.gain = g;
    cfg.transmission = -1.0;
    const GaussianState out = run_chain(cfg);
    const EntanglementReport rep = entanglement_report(out, 0, 1);
    rows.push_back({g, rep.inseparability, rep.g_insep, rep.epr_12,
                    rep.epr_21, rep.squeezed_var_x_minus,
                    rep.squeezed_var_y_plus, rep.inseparability < 2.0,
                    rep.epr_12 < 1.0});
  }
  return rows;
}

std::optional<double> find_crossing(const ChainConfig& base,
                                    CrossingMetric metric) {
  const double threshold =
      metric == CrossingMetric::Inseparability ? 2.0 : 1.0;
  auto f = [&](double g) { return chain_metric(base, metric, g); };

  double hi = 50.0;
  while (f(hi) < threshold) {
    hi *= 2.0;
    if (hi > kGainLimit) return std::nullopt;
  }

  // Degradation with gain should be monotone; a non-monotone sample means
  // the configuration is outside the model's assumptions.
  const int probes = 17;
  double prev = f(1.0);
  for (int i = 1; i < probes; ++i) {
    const double g = 1.0 + (hi - 1.0) * i / (probes - 1);
    const double v = f(g);
    if (v < prev - 1e-10) {
      throw std::runtime_error(
          "find_crossing: metric not monotone in gain (value " +
          std::to_string(v) + " at G = " + std::to_string(g) +
          " below previous " + std::to_string(prev) + ")");
    }
    prev = v;
  }

  double lo = 1.0;
  if (f(lo) >= threshold) return lo;
  double mid = (lo + hi) / 2.0;
  while (hi - lo > 1e-13 * hi) {
    mid = (lo + hi) / 2.0;
    const double v = f(mid);
    if (std::abs(v - threshold) < 1e-9) return mid;
    if (v < threshold) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

std::vector<PhaseScanPoint> phase_scan(const ChainConfig& cfg, double g,
                                       const std::vector<double>& thetas) {
  const GaussianState out = run_chain(cfg);
  const double sql = (1.0 + g * g) / 2.0;
  std::vector<PhaseScanPoint> points;
  points.reserve(thetas.size());
  for (double theta : thetas) {
    GaussianState rotated = rotate_phase(out, 0, theta);
    rotated = rotate_phase(rotated, 1, theta);
    points.push_back({theta, joint_variance_minus(rotated, 0, 1, g) / sql,
                      joint_variance_plus(rotated, 0, 1, g) / sql});
  }
  return points;
}

AncillaReport ancilla_report(const ChainConfig& cfg) {
  if (!cfg.keep_ancilla) {
    throw std::invalid_argument("ancilla_report: keep_ancilla must be set");
  }
  const GaussianState out = run_chain(cfg);
  const int ancilla = 2;
  return {entanglement_report(out, 0, ancilla),
          entanglement_report(out, 1, ancilla)};
}

}  // namespace cvamp
