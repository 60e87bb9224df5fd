#pragma once

#include <cmath>
#include <stdexcept>

namespace ck {

/// Physical parameters of the one-dimensional harmonic oscillator.
struct OscillatorParams {
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;

  OscillatorParams() = default;
  OscillatorParams(double m, double w, double hb) : mass(m), omega(w), hbar(hb) {
    validate();
  }

  void validate() const {
    if (!(mass > 0.0) || !(omega > 0.0) || !(hbar > 0.0))
      throw std::invalid_argument("OscillatorParams: mass, omega, hbar must be > 0");
  }

  // Ground-state position variance hbar / (2 m omega).
  double ground_var_x() const { return hbar / (2.0 * mass * omega); }
  // Oscillator length sqrt(hbar / (m omega)).
  double length_scale() const { return std::sqrt(hbar / (mass * omega)); }
};

}  // namespace ck
