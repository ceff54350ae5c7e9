#include "cvamp/amplifier_nf.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cvamp/gaussian_state.hpp"
#include "cvamp/metrics.hpp"

namespace cvamp {

double snr(double signal_power, double noise_variance) {
  if (!(noise_variance > 0.0)) {
    throw std::invalid_argument("snr: noise variance must be positive");
  }
  return signal_power / noise_variance;
}

double nf_ideal(double gain) {
  if (!(gain >= 1.0)) {
    throw std::invalid_argument("nf_ideal: gain must be >= 1");
  }
  return gain / (2.0 * gain - 1.0);
}

double nf_with_detector(double gain, double eta) {
  if (!(gain >= 1.0)) {
    throw std::invalid_argument("nf_with_detector: gain must be >= 1");
  }
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("nf_with_detector: eta must be in (0, 1]");
  }
  return gain / (2.0 * eta * gain - 2.0 * eta + 1.0);
}

double nf_simulated(double gain, const SignalModel& signal,
                    double pre_detection_t) {
  if (!(signal.signal_power > 0.0)) {
    throw std::invalid_argument("nf_simulated: signal power must be positive");
  }
  const double eta = signal.detector_efficiency;
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("nf_simulated: eta must be in (0, 1]");
  }
  const GaussianState input = rotate_phase(
      displace(vacuum(1), 0, std::sqrt(signal.signal_power), 0.0), 0,
      signal.input_phase);

  auto detect = [&](const GaussianState& s) {
    GaussianState d = s;
    if (pre_detection_t < 1.0) d = attenuate(d, 0, pre_detection_t);
    if (eta < 1.0) d = attenuate(d, 0, eta);
    const double power = d.mean(0) * d.mean(0) + d.mean(1) * d.mean(1);
    return snr(power, quad_variance(d, 0, Quadrature::X));
  };

  // Input SNR measured by bypassing the amplifier entirely.
  const double snr_in = detect(input);
  const double snr_out = detect(amplify(input, 0, gain));
  return snr_out / snr_in;
}

std::vector<NfRow> nf_sweep(const std::vector<double>& gains, double eta) {
  for (std::size_t i = 0; i < gains.size(); ++i) {
    if (!(gains[i] >= 1.0)) {
      throw std::invalid_argument("nf_sweep: gain < 1 at index " +
                                  std::to_string(i));
    }
  }
  std::vector<NfRow> rows;
  rows.reserve(gains.size());
  for (double g : gains) {
    rows.push_back({g, nf_ideal(g), nf_with_detector(g, eta),
                    nf_simulated(g, {100.0, eta})});
  }
  return rows;
}

}  // namespace cvamp
