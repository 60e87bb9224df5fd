#pragma once

#include "ck/fock.hpp"

namespace ck {

/// Algebra element a*x + b*p + c*I in the exponent e^{i(ax+bp+cI)}.
struct HeisenbergElement {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

struct DisplacementLabel {
  Complex alpha;
};

struct DisplacementSplit {
  DisplacementLabel label;
  Complex phase;  // unit modulus
};

struct ComposedDisplacement {
  Complex phase;  // e^{-i Im(alpha conj(beta))}
  Complex sum;    // alpha + beta
};

// D(alpha) on the truncated basis via the normally ordered factorisation
// e^{-|a|^2/2} e^{a a^dag} e^{-conj(a) a}: exact triangular series, no
// matrix-exponential solver.
MatrixOperator displacement_matrix(Complex alpha, int n_max,
                                   const OscillatorParams& params = {});

ComposedDisplacement compose_displacements(Complex alpha, Complex beta);

// Split e^{i(ax+bp+cI)} into a displacement label and a global phase.
DisplacementSplit heisenberg_to_displacement(const HeisenbergElement& e,
                                             const OscillatorParams& params = {});

}  // namespace ck
