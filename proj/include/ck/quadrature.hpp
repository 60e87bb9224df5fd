#pragma once

#include <vector>

namespace ck {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

// Gauss-Hermite rule: integrates f(x) e^{-x^2} over R exactly for
// polynomials of degree <= 2n-1.  Golub-Welsch on the Jacobi matrix.
QuadRule gauss_hermite(int n);

// Gauss-Legendre rule on [-1, 1], exact for degree <= 2n-1.
QuadRule gauss_legendre(int n);

// Gauss-Legendre rule mapped to [a, b].
QuadRule gauss_legendre(int n, double a, double b);

// Uniform (trapezoidal on a periodic interval) rule on [0, period),
// n points.  Exact for trigonometric polynomials e^{2*pi*i*k*x/period}
// with 0 < |k| < n.
QuadRule uniform_periodic(int n, double period);

}  // namespace ck
