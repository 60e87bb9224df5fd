#include "ck/bargmann.hpp"

#include <cmath>
#include <numbers>

namespace ck {

namespace {
constexpr Complex kI{0.0, 1.0};
}

Complex BargmannFunction::evaluate(Complex z) const {
  // sum_k c_k z^k / sqrt(hbar^k k!)
  Complex acc = 0.0;
  Complex mono = 1.0;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    acc += coeffs(k) * mono;
    if (k + 1 < coeffs.size()) mono *= z / std::sqrt(hbar * (k + 1.0));
  }
  return acc;
}

Complex PositionFunction::evaluate(double x) const {
  Complex acc = 0.0;
  for (Eigen::Index n = 0; n < fock_coeffs.size(); ++n)
    acc += fock_coeffs(n) * hermite_function(static_cast<int>(n), x, params);
  return acc;
}

Complex sb_kernel(Complex z, double x, const OscillatorParams& params) {
  const double mw = params.mass * params.omega;
  const Complex arg = std::sqrt(mw / 2.0) * x - z;
  return std::pow(mw / (std::numbers::pi * params.hbar), 0.25) *
         std::exp((0.5 * z * z - arg * arg) / params.hbar);
}

BargmannFunction sb_transform(const PositionFunction& phi) {
  // Hermite coefficient n maps to monomial coefficient n with factor 1.
  BargmannFunction f;
  f.coeffs = phi.fock_coeffs;
  f.hbar = phi.params.hbar;
  return f;
}

Complex sb_transform_point(const PositionFunction& phi, Complex z,
                           int quad_order) {
  const double s = std::sqrt(phi.params.hbar /
                             (phi.params.mass * phi.params.omega));
  const QuadRule rule = gauss_hermite(quad_order);
  Complex acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = s * rule.nodes[i];
    const double comp = std::exp(rule.nodes[i] * rule.nodes[i]);
    acc += rule.weights[i] * comp * s * sb_kernel(z, x, phi.params) *
           phi.evaluate(x);
  }
  return acc;
}

PositionFunction sb_inverse(const BargmannFunction& f,
                            const OscillatorParams& params) {
  PositionFunction phi;
  phi.fock_coeffs = f.coeffs;
  phi.params = params;
  return phi;
}

Complex sb_inverse_quadrature(const BargmannFunction& f, double x,
                              const OscillatorParams& params, int quad_order) {
  // Measure (i/2 pi hbar) e^{-|z|^2/hbar} dz dz~; with z = sqrt(hbar)(u+iv)
  // the Gaussian becomes the tensor Gauss-Hermite weight.
  const QuadRule rule = gauss_hermite(quad_order);
  const double sh = std::sqrt(f.hbar);
  Complex acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    for (std::size_t j = 0; j < rule.size(); ++j) {
      const Complex z = sh * Complex(rule.nodes[i], rule.nodes[j]);
      acc += rule.weights[i] * rule.weights[j] *
             std::conj(sb_kernel(z, x, params)) * f.evaluate(z);
    }
  }
  return acc / std::numbers::pi;
}

Complex sb_inner(const BargmannFunction& f1, const BargmannFunction& f2) {
  return f1.coeffs.dot(f2.coeffs);
}

double resolution_of_identity_check(int n_max, int quad_order) {
  const QuadRule rule = gauss_hermite(quad_order);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_max, n_max);
  Eigen::VectorXcd v(n_max);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    for (std::size_t j = 0; j < rule.size(); ++j) {
      const Complex alpha(rule.nodes[i], rule.nodes[j]);
      // Coherent coefficients with e^{-|alpha|^2} supplied by the
      // Gauss-Hermite weight.
      Complex c = 1.0;
      for (int n = 0; n < n_max; ++n) {
        v(n) = c;
        c *= alpha / std::sqrt(n + 1.0);
      }
      m += (rule.weights[i] * rule.weights[j]) * (v * v.adjoint());
    }
  }
  m /= std::numbers::pi;
  const int interior = n_max - 1;
  double resid = 0.0;
  for (int r = 0; r < interior; ++r) {
    double row = 0.0;
    for (int c = 0; c < interior; ++c)
      row += std::abs(m(r, c) - (r == c ? 1.0 : 0.0));
    resid = std::max(resid, row);
  }
  return resid;
}

double heat_kernel_r(double t, double x) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_kernel_r: t must be > 0");
  return std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * std::numbers::pi * t);
}

Complex free_gaussian_evolve(double sigma, double t, double x, double mass,
                             double hbar) {
  if (!(sigma > 0.0))
    throw std::invalid_argument("free_gaussian_evolve: sigma must be > 0");
  const Complex w = sigma * sigma + kI * hbar * t / (2.0 * mass);
  return std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.25) *
         std::sqrt(sigma * sigma / w) * std::exp(-x * x / (4.0 * w));
}

}  // namespace ck
