#pragma once

#include <functional>

#include "ck/fock.hpp"
#include "ck/quadrature.hpp"

namespace ck {

/// Element of the Segal-Bargmann space, stored by coefficients on the
/// orthonormal monomials z^k / sqrt(hbar^k k!).
struct BargmannFunction {
  Eigen::VectorXcd coeffs;
  double hbar = 1.0;

  Eigen::Index dim() const { return coeffs.size(); }
  Complex evaluate(Complex z) const;
};

/// Position-space wave function rendered from number-basis coefficients.
struct PositionFunction {
  Eigen::VectorXcd fock_coeffs;
  OscillatorParams params;

  Complex evaluate(double x) const;
};

// Segal-Bargmann kernel K(z, x).
Complex sb_kernel(Complex z, double x, const OscillatorParams& params = {});

// Fast path: the transform is diagonal Hermite -> monomial.
BargmannFunction sb_transform(const PositionFunction& phi);

// Oracle path: Gauss-Hermite quadrature of the defining integral
// phi~(z) = integral K(z,x) phi(x) dx at one point z.
Complex sb_transform_point(const PositionFunction& phi, Complex z,
                           int quad_order);

PositionFunction sb_inverse(const BargmannFunction& f,
                            const OscillatorParams& params = {});

// Oracle: phi(x) = integral over C of conj(K(z,x)) f(z) dmu(z) by tensor
// Gauss-Hermite quadrature.
Complex sb_inverse_quadrature(const BargmannFunction& f, double x,
                              const OscillatorParams& params, int quad_order);

// SB inner product from monomial coefficients.
Complex sb_inner(const BargmannFunction& f1, const BargmannFunction& f2);

// || (1/pi) sum_i w_i |a_i><a_i| - 1 ||_inf on the interior block.
double resolution_of_identity_check(int n_max, int quad_order);

// Heat kernel on R.
double heat_kernel_r(double t, double x);

// Freely evolving Gaussian wave function psi(x, t) of initial width sigma.
Complex free_gaussian_evolve(double sigma, double t, double x, double mass,
                             double hbar);

}  // namespace ck
