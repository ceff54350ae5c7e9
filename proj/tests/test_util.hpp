#pragma once

#include <cmath>
#include <random>

#include "cvamp/gaussian_state.hpp"

namespace cvamp::testing {

// 4.3 dB source parameters used throughout the tests.
inline const double kVsq43 = std::pow(10.0, -0.43);
inline const double kR43 = -0.5 * std::log(kVsq43);

/// Random physical state built by applying random Gaussian channels to
/// vacuum. Mode count is preserved.
inline GaussianState random_state(std::mt19937_64& rng, int n_modes,
                                  int n_ops = 6) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  GaussianState s = vacuum(n_modes);
  for (int k = 0; k < n_ops; ++k) {
    const int op = static_cast<int>(rng() % 5);
    const int mode = static_cast<int>(rng() % n_modes);
    switch (op) {
      case 0: {
        if (n_modes < 2) break;
        int other = static_cast<int>(rng() % n_modes);
        if (other == mode) other = (other + 1) % n_modes;
        s = two_mode_squeeze(s, mode, other, 2.0 * unit(rng) - 1.0);
        break;
      }
      case 1:
        s = rotate_phase(s, mode, 2.0 * M_PI * unit(rng));
        break;
      case 2:
        s = attenuate(s, mode, 0.3 + 0.7 * unit(rng));
        break;
      case 3:
        s = amplify(s, mode, 1.0 + 2.0 * unit(rng));
        break;
      default:
        s = displace(s, mode, 4.0 * unit(rng) - 2.0, 4.0 * unit(rng) - 2.0);
        break;
    }
  }
  return s;
}

}  // namespace cvamp::testing
