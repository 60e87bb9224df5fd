#include "ck/heisenberg.hpp"

#include <cmath>

namespace ck {

namespace {
constexpr Complex kI{0.0, 1.0};

// e^{alpha a^dag}: strictly lower-triangular nilpotent exponent, so the
// series is a finite triangular matrix with entries
// alpha^k sqrt((n+k)!/n!) / k!.
Eigen::MatrixXcd exp_creation(Complex alpha, int n_max) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n_max, n_max);
  for (int n = 0; n < n_max; ++n) {
    Complex e = 1.0;
    for (int k = 1; n + k < n_max; ++k) {
      e *= alpha * std::sqrt(static_cast<double>(n + k)) / static_cast<double>(k);
      m(n + k, n) = e;
    }
  }
  return m;
}
}  // namespace

MatrixOperator displacement_matrix(Complex alpha, int n_max,
                                   const OscillatorParams& params) {
  (void)params;  // D(alpha) acts on the abstract number basis
  if (n_max < 2)
    throw std::invalid_argument("displacement_matrix: n_max must be >= 2");
  if (n_max < coherent_min_dim(alpha))
    throw TruncationError("displacement_matrix: n_max below the tail rule");
  const Eigen::MatrixXcd eplus = exp_creation(alpha, n_max);
  const Eigen::MatrixXcd eminus = exp_creation(-std::conj(alpha), n_max).transpose();
  MatrixOperator d;
  d.entries = std::exp(-0.5 * std::norm(alpha)) * (eplus * eminus);
  d.hermitian = false;
  return d;
}

ComposedDisplacement compose_displacements(Complex alpha, Complex beta) {
  ComposedDisplacement out;
  out.phase = std::exp(-kI * std::imag(alpha * std::conj(beta)));
  out.sum = alpha + beta;
  return out;
}

DisplacementSplit heisenberg_to_displacement(const HeisenbergElement& e,
                                             const OscillatorParams& params) {
  // e^{i(ax+bp)} = D(alpha) with
  //   a = sqrt(2 m w / hbar) Im(alpha),  b = -sqrt(2/(m w hbar)) Re(alpha);
  // the central part c contributes the global phase e^{ic} only.
  const double mw = params.mass * params.omega;
  DisplacementSplit out;
  out.label.alpha = Complex(-e.b * std::sqrt(mw * params.hbar / 2.0),
                            e.a * std::sqrt(params.hbar / (2.0 * mw)));
  out.phase = std::exp(kI * e.c);
  return out;
}

}  // namespace ck
