#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

#include "ck/units.hpp"

namespace ck {

using Complex = std::complex<double>;

/// Raised when a requested state does not fit the truncated basis within
/// the declared tail bound.
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MatrixOperator {
  Eigen::MatrixXcd entries;
  bool hermitian = false;

  Eigen::Index dim() const { return entries.rows(); }
};

/// State of the 1-D oscillator in the truncated number basis.
struct FockState {
  Eigen::VectorXcd coeffs;
  OscillatorParams params;

  Eigen::Index dim() const { return coeffs.size(); }
  double norm() const { return coeffs.norm(); }
};

struct LadderOperators {
  MatrixOperator a;
  MatrixOperator a_dag;
  MatrixOperator x;
  MatrixOperator p;
  MatrixOperator h;
};

/// Initial moments of a state; the interface between analytic spread
/// formulas and the Fock-space simulation.
struct MomentData {
  double mean_x = 0.0;
  double mean_p = 0.0;
  double var_x = 0.0;
  double var_p = 0.0;
  double sym_xp = 0.0;  // <xp + px>

  // Covariance-like combination entering the spread formulas.
  double cross() const { return sym_xp - 2.0 * mean_x * mean_p; }
};

/// Label of a squeezed coherent state: eigenstate of x + i*gamma*p with
/// eigenvalue z.  Normalisable only for gamma > 0.
struct SqueezedLabel {
  Complex z;
  double gamma = 1.0;
};

struct ConstantMinimalDiagnostic {
  double residual_constancy_1 = 0.0;  // |var_p - m^2 w^2 var_x|, scaled
  double residual_constancy_2 = 0.0;  // |<xp+px> - 2<x><p>|, scaled
  double residual_minimality = 0.0;   // |var_x - hbar/2mw|, scaled
  bool constant = false;
  bool minimal = false;
  bool pass = false;  // constant && minimal
};

struct SchrodingerMatch {
  double gamma = 0.0;
  Complex z;
  Complex phase;
};

LadderOperators build_operators(const OscillatorParams& params, int n_max);

FockState coherent_state(Complex alpha, int n_max,
                         const OscillatorParams& params = {});

// Smallest truncation admitted by the Poisson tail rule for |alpha|.
int coherent_min_dim(Complex alpha);

FockState evolve(const FockState& state, double t);

MomentData moments(const FockState& state, const LadderOperators& ops);
MomentData moments(const FockState& state);

// Free-particle spread Delta x(t) from initial moments.
double spread_free(const MomentData& m0, double t, double mass);

// Harmonic-oscillator spread Delta x(t); period pi/omega.
double spread_ho(const MomentData& m0, double t, const OscillatorParams& params);

ConstantMinimalDiagnostic is_constant_minimal(const MomentData& m0,
                                              const OscillatorParams& params,
                                              double tol);

// Time average of Delta x over one period.
double time_avg_spread(const MomentData& m0, const OscillatorParams& params);

// <H> - H(<x>, <p>); bounded below by hbar*omega/2.
double energy_gap(const FockState& state, const OscillatorParams& params);

// Oscillator eigenfunction <x|n> (real), stable recurrence.
double hermite_function(int n, double x, const OscillatorParams& params = {});

Complex squeezed_wavefunction(const SqueezedLabel& label, double x,
                              double hbar = 1.0);

// Number-basis coefficients of psi_{z,gamma} by Gauss-Hermite projection.
FockState squeezed_fock_vector(const SqueezedLabel& label, int n_max,
                               const OscillatorParams& params = {});

// Identification of the Schroedinger state |A e^{i w t}> as a squeezed state.
SchrodingerMatch schrodinger_match(double A, double t,
                                   const OscillatorParams& params = {});

// <bra|M|ket> helper.
Complex expectation(const FockState& bra, const MatrixOperator& m,
                    const FockState& ket);

}  // namespace ck
