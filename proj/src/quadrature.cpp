#include "ck/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ck {

namespace {

// Golub-Welsch: nodes are eigenvalues of the symmetric tridiagonal Jacobi
// matrix, weights are mu0 * (first eigenvector component)^2.
QuadRule golub_welsch(const std::vector<double>& diag,
                      const std::vector<double>& offdiag, double mu0) {
  const int n = static_cast<int>(diag.size());
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) J(i, i) = diag[i];
  for (int i = 0; i + 1 < n; ++i) J(i, i + 1) = J(i + 1, i) = offdiag[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

}  // namespace

QuadRule gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n must be >= 1");
  std::vector<double> diag(n, 0.0), off(n - 1);
  for (int i = 1; i < n; ++i) off[i - 1] = std::sqrt(i / 2.0);
  QuadRule rule = golub_welsch(diag, off, std::sqrt(std::numbers::pi));
  // Eigenvector weights lose relative accuracy once they drop below about
  // eps * max weight; recompute from the orthonormal Hermite functions
  // phi_k (weight folded in):  w_i = e^{-x^2} / sum_k phi_k(x_i)^2.
  // This keeps w_i * e^{x_i^2} accurate for the compensated integrands.
  for (int i = 0; i < n; ++i) {
    const double x = rule.nodes[i];
    double pm1 = 0.0;
    double p = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    double sum = p * p;
    for (int k = 1; k < n; ++k) {
      const double pk = x * std::sqrt(2.0 / k) * p - std::sqrt((k - 1.0) / k) * pm1;
      pm1 = p;
      p = pk;
      sum += p * p;
    }
    rule.weights[i] = std::exp(-x * x) / sum;
  }
  return rule;
}

QuadRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  std::vector<double> diag(n, 0.0), off(n - 1);
  for (int i = 1; i < n; ++i) {
    const double k = static_cast<double>(i);
    off[i - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  }
  return golub_welsch(diag, off, 2.0);
}

QuadRule gauss_legendre(int n, double a, double b) {
  QuadRule rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

QuadRule uniform_periodic(int n, double period) {
  if (n < 1) throw std::invalid_argument("uniform_periodic: n must be >= 1");
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.assign(n, period / n);
  for (int i = 0; i < n; ++i) rule.nodes[i] = period * i / n;
  return rule;
}

}  // namespace ck
