#pragma once

#include <vector>

namespace cvamp {

/// Coherent test signal: a mean-field modulation of the given power (in
/// shot-noise units) detected with efficiency eta.
struct SignalModel {
  double signal_power = 100.0;      // ~20 dB above shot noise
  double detector_efficiency = 1.0; // eta in (0, 1]
  double input_phase = 0.0;         // phase of the modulation; NF-neutral
};

double snr(double signal_power, double noise_variance);

/// Ideal quantum-limited noise figure G / (2G - 1).
double nf_ideal(double gain);

/// Noise figure seen through a detector of efficiency eta:
/// G / (2 eta G - 2 eta + 1). Reduces to nf_ideal at eta = 1.
double nf_with_detector(double gain, double eta);

/// Noise figure obtained by propagating a displaced vacuum through the
/// amplifier chain and ratioing the detected SNRs. pre_detection_t models
/// extra transmission loss before the detector (absorption), default none.
double nf_simulated(double gain, const SignalModel& signal,
                    double pre_detection_t = 1.0);

struct NfRow {
  double gain;
  double ideal;
  double with_detector;
  double simulated;
};

std::vector<NfRow> nf_sweep(const std::vector<double>& gains, double eta);

}  // namespace cvamp
