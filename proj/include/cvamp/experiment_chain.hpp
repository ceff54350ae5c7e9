#pragma once

#include <optional>
#include <vector>

#include "cvamp/gaussian_state.hpp"
#include "cvamp/metrics.hpp"

namespace cvamp {

/// Two-mode squeezed source parametrized by its joint-quadrature variances
/// (linear, SQL units). A pure source has v_as = 1 / v_sq.
struct SourceModel {
  double v_sq = 1.0;  // Var[(x1 - x2)/sqrt(2)] = Var[(y1 + y2)/sqrt(2)]
  double v_as = 1.0;  // antisqueezed joint variance

  bool physical() const { return v_sq > 0 && v_as > 0 && v_sq * v_as >= 1.0 - 1e-9; }
};

SourceModel pure_source(double squeezing_db);

/// Full cloning-chain configuration: source, amplifier on the conjugate
/// (mode 1), attenuator, and passive losses. transmission < 0 selects the
/// unity gain-loss product T = 1/G.
struct ChainConfig {
  SourceModel source;
  double gain = 1.0;
  double transmission = -1.0;
  double window_transmission = 0.98;  // per window, applied to both beams
  int window_count = 2;
  double polarizer_transmission = 0.99;
  double detector_efficiency = 0.95;
  bool keep_ancilla = false;

  double effective_transmission() const {
    return transmission < 0.0 ? 1.0 / gain : transmission;
  }
};

/// Chain with all passive losses and detectors set to unit transmission.
ChainConfig ideal_chain(const SourceModel& source, double gain);

GaussianState build_source(const SourceModel& source);

/// Propagates the source through the chain. Mode 0 is the probe, mode 1 the
/// conjugate clone; with keep_ancilla the amplifier idler is mode 2 and sees
/// no detection loss.
GaussianState run_chain(const ChainConfig& cfg);

struct SweepRow {
  double gain;
  double inseparability;
  double g_insep;
  double e12;
  double e21;
  double var_x_minus;  // at g_insep, SQL-normalized
  double var_y_plus;
  bool inseparable;    // inseparability < 2
  bool epr_entangled;  // e12 < 1
};

std::vector<SweepRow> clone_sweep(const ChainConfig& base,
                                  const std::vector<double>& gains);

enum class CrossingMetric { Inseparability, Epr12 };

/// Gain at which the metric crosses its entanglement bound (2 for I, 1 for
/// E12), found by bisection under T = 1/G. Empty if the metric never reaches
/// the bound up to gain 1e4. Throws if the sampled metric is not monotone
/// nondecreasing over the bracket.
std::optional<double> find_crossing(const ChainConfig& base,
                                    CrossingMetric metric);

struct PhaseScanPoint {
  double theta;
  double var_minus;  // SQL-normalized joint variances at the scanned phase
  double var_plus;
};

/// Homodyne phase scan: both local-oscillator phases rotated together.
std::vector<PhaseScanPoint> phase_scan(const ChainConfig& cfg, double g,
                                       const std::vector<double>& thetas);

struct AncillaReport {
  EntanglementReport ancilla_probe;
  EntanglementReport ancilla_clone;
};

/// Entanglement figures between the amplifier idler and each retained mode.
/// Requires keep_ancilla. In each pair the retained mode is system 1 and the
/// ancilla is system 2.
AncillaReport ancilla_report(const ChainConfig& cfg);

}  // namespace cvamp
