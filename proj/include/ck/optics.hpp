#pragma once

#include <Eigen/Dense>
#include <variant>
#include <vector>

#include "ck/fock.hpp"

namespace ck {

/// One field mode (lambda, k) in a cubic box of side L.
struct ModeSpec {
  Eigen::Vector3d k;
  int lambda = 1;  // polarisation index, 1 or 2
  Eigen::Vector3d polarization;
  double box_side = 1.0;
  double hbar = 1.0;
  double light_speed = 1.0;

  double omega() const { return light_speed * k.norm(); }
  void validate() const;
};

struct SpacetimePoint {
  Eigen::Vector3d r = Eigen::Vector3d::Zero();
  double t = 0.0;
};

/// Product of coherent states, one label per mode.
struct ProductCoherent {
  std::vector<Complex> alphas;
};

/// Joint state on the tensor product of truncated mode spaces.
struct FockTensor {
  std::vector<int> truncations;  // per-mode dimension
  Eigen::VectorXcd coeffs;       // row-major over mode indices
};

/// Single-mode mixed state given by a density matrix in the number basis.
struct MixedSingleMode {
  Eigen::MatrixXcd rho;
};

struct MultiModeState {
  std::vector<ModeSpec> modes;
  std::variant<ProductCoherent, FockTensor, MixedSingleMode> body;

  bool pure() const { return !std::holds_alternative<MixedSingleMode>(body); }
  // <a_k^dag a_k'> matrix.
  Eigen::MatrixXcd correlation_matrix() const;
  double purity() const;  // Tr rho^2 (1 for pure states)
  // <H> = sum_k hbar w_k (<n_k> + 1/2)
  double expected_energy() const;
};

/// Classical current sampled on a space-time grid.
struct CurrentProfile {
  std::vector<Eigen::Vector3d> points;           // spatial sample positions
  double volume_weight = 1.0;                    // dV per point
  std::vector<double> times;                     // uniform time samples
  std::vector<std::vector<Eigen::Vector3d>> values;  // values[it][ip]
};

// Scalar coefficient of a_k in E^+ at x.
Complex e_plus_coeff(const ModeSpec& mode, const SpacetimePoint& x);

// Two-point correlation G(x1, x2) = <E^-(x1) E^+(x2)>.
Complex g1(const MultiModeState& state, const SpacetimePoint& x1,
           const SpacetimePoint& x2);

// Fringe visibility from the three correlation values.
double visibility(double g11, double g22, Complex g12);

double double_slit_intensity(const MultiModeState& state,
                             const SpacetimePoint& x1,
                             const SpacetimePoint& x2);

// Coherent amplitude driven by a classical current up to time t.
Complex driven_alpha(const CurrentProfile& current, const ModeSpec& mode,
                     double t);

ModeSpec default_mode();

// Ideal laser: phase-averaged coherent state; diagonal Poisson weights.
MultiModeState laser_state(double abs_alpha, int n_max,
                           const ModeSpec& mode = default_mode());

// Product-coherent factorisation amplitude: E(x) = sum_k c_k(x) alpha_k.
Complex coherent_field_amplitude(const MultiModeState& state,
                                 const SpacetimePoint& x);

}  // namespace ck
