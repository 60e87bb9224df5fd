#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "ck/fock.hpp"  // Complex, MatrixOperator
#include "ck/quadrature.hpp"

namespace ck {

/// Half-integer spin stored as twice its value.
struct SpinJ {
  int twice_j = 0;

  SpinJ() = default;
  explicit SpinJ(double j);
  static SpinJ from_twice(int twice);
  double value() const { return 0.5 * twice_j; }
  int dim() const { return twice_j + 1; }
};

using Mat2c = Eigen::Matrix2cd;

struct SU2Element {
  Mat2c u;
  void validate(double tol = 1e-12) const;
};

struct SL2CElement {
  Mat2c h;
  void validate(double tol = 1e-10) const;
};

/// SU(2) coherent state |j, n(zeta)>; zeta == nullopt encodes the south
/// pole (the point excluded by the stereographic chart).
struct BlochState {
  SpinJ j;
  std::optional<Complex> zeta;
  Eigen::VectorXcd coeffs;  // index k, magnetic number m = j - k
};

struct AngularMomentumOps {
  MatrixOperator j1;
  MatrixOperator j2;
  MatrixOperator j3;
};

struct UncertaintyPair {
  double product;     // dJ1 * dJ2
  double half_mean3;  // |<J3>| / 2
};

AngularMomentumOps angular_momentum_ops(SpinJ j);

// Inverse stereographic projection; zeta = 0 is the north pole,
// nullopt the south pole.
Eigen::Vector3d stereo_n(const std::optional<Complex>& zeta);

// Chart inverse of stereo_n; returns nullopt at the south pole.
std::optional<Complex> stereo_zeta(const Eigen::Vector3d& n);

SU2Element perelomov_u(const std::optional<Complex>& zeta);

// Wigner matrix of a unimodular 2x2 matrix; the polynomial matrix elements
// continue verbatim to SL(2,C).  Basis ordering: m = j, j-1, ..., -j.
Eigen::MatrixXcd wigner_d(SpinJ j, const Mat2c& g);

// Character of the spin-j representation from the eigenvalues of g.
Complex su2_character(SpinJ j, const Mat2c& g);

BlochState bloch_state(SpinJ j, const std::optional<Complex>& zeta);

// || (n.J + j) |j, n> ||
double bloch_eigen_residual(const BlochState& state);

// Evaluated on the lowest-weight state |j,-j>: both sides equal j/2.
UncertaintyPair bloch_uncertainty_check(SpinJ j);

struct SphereQuadratureSpec {
  int gl_order = 8;       // Gauss-Legendre order in cos(theta)
  int phi_points = 16;    // uniform points in phi
};

// || (2j+1)/(4 pi) sum_w |j,n><j,n| - 1 ||_inf
double s2_resolution_check(SpinJ j, const SphereQuadratureSpec& spec);

// Heat kernel on SU(2), analytically continued to SL(2,C) arguments.
// Truncated at j_max with certified tail bound.
Complex heat_kernel_su2(double t, const Mat2c& g, double j_max);

// Minimal j_max so the series tail is below `tail_tol` for this argument.
double heat_kernel_required_jmax(double t, const Mat2c& g, double tail_tol);

// K_{x,t}(g) = rho_t(x^{-1} g)
Complex heat_kernel_cs(const SL2CElement& x, double t, const SU2Element& g,
                       double j_max);

/// One point of an SU(2) Haar quadrature rule (normalised to total mass 1).
struct HaarPoint {
  Mat2c u;
  double weight;
};

// Euler-angle product rule exact for matrix coefficients up to the given
// polynomial degree in the entries of u.
std::vector<HaarPoint> haar_quadrature(int degree);

// Euler-angle SU(2) element e^{-i phi s3/2} e^{-i theta s2/2} e^{-i psi s3/2}.
Mat2c su2_euler(double phi, double theta, double psi);

}  // namespace ck
