#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ck/su2.hpp"

using namespace ck;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

Mat2c rand_su2(std::mt19937& rng) {
  std::uniform_real_distribution<double> ur(0.0, 1.0);
  return su2_euler(2.0 * kPi * ur(rng), std::acos(2.0 * ur(rng) - 1.0),
                   4.0 * kPi * ur(rng));
}

Complex rand_disc(std::mt19937& rng, double radius) {
  std::uniform_real_distribution<double> ur(0.0, 1.0);
  const double r = radius * std::sqrt(ur(rng));
  const double th = 2.0 * kPi * ur(rng);
  return {r * std::cos(th), r * std::sin(th)};
}
}  // namespace

TEST_CASE("su2_euler produces special unitary matrices") {
  std::mt19937 rng(2);
  for (int i = 0; i < 20; ++i) {
    const Mat2c u = rand_su2(rng);
    CHECK((u * u.adjoint() - Mat2c::Identity()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(u.determinant() - Complex(1.0, 0.0)) < 1e-14);
  }
}

TEST_CASE("wigner_d is a homomorphism and unitary on SU(2)") {
  std::mt19937 rng(4);
  for (int tj : {1, 2, 3, 5}) {
    const SpinJ j = SpinJ::from_twice(tj);
    const Mat2c g = rand_su2(rng), h = rand_su2(rng);
    const Eigen::MatrixXcd dg = wigner_d(j, g), dh = wigner_d(j, h);
    CHECK((wigner_d(j, (g * h).eval()) - dg * dh).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((dg * dg.adjoint() -
           Eigen::MatrixXcd::Identity(j.dim(), j.dim()))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("wigner_d of spin 1/2 is the matrix itself") {
  std::mt19937 rng(6);
  const Mat2c g = rand_su2(rng);
  CHECK((wigner_d(SpinJ::from_twice(1), g) - g).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("wigner_d commutes with transposition") {
  std::mt19937 rng(8);
  for (int tj : {1, 2, 4}) {
    const SpinJ j = SpinJ::from_twice(tj);
    Mat2c g = rand_su2(rng);
    // An SL(2,C) deformation keeps the identity polynomial.
    g(0, 0) *= 1.2;
    g(1, 1) = (1.0 + g(0, 1) * g(1, 0)) / g(0, 0);
    CHECK((wigner_d(j, g.transpose().eval()) -
           wigner_d(j, g).transpose())
              .cwiseAbs()
              .maxCoeff() < 1e-11);
  }
}

TEST_CASE("character equals the Wigner trace, also off SU(2)") {
  std::mt19937 rng(10);
  for (int tj : {1, 2, 3}) {
    const SpinJ j = SpinJ::from_twice(tj);
    Mat2c g = rand_su2(rng);
    CHECK(std::abs(su2_character(j, g) - wigner_d(j, g).trace()) < 1e-11);
    Mat2c b;
    b << std::exp(0.3), 0.0, 0.1, std::exp(-0.3);
    const Mat2c gb = g * b;
    CHECK(std::abs(su2_character(j, gb) - wigner_d(j, gb).trace()) < 1e-9);
  }
  // Identity: dimension.
  CHECK(std::abs(su2_character(SpinJ::from_twice(4), Mat2c::Identity()) -
                 Complex(5.0, 0.0)) < 1e-12);
}

TEST_CASE("stereographic chart round-trips") {
  std::mt19937 rng(12);
  for (int i = 0; i < 20; ++i) {
    const Complex z = rand_disc(rng, 4.0);
    const Eigen::Vector3d n = stereo_n(z);
    CHECK(n.norm() == Approx(1.0).epsilon(1e-13));
    const auto back = stereo_zeta(n);
    REQUIRE(back.has_value());
    CHECK(std::abs(*back - z) < 1e-10);
  }
  CHECK((stereo_n(std::nullopt) - Eigen::Vector3d(0, 0, -1)).norm() < 1e-14);
  CHECK_FALSE(stereo_zeta(Eigen::Vector3d(0, 0, -1)).has_value());
}

TEST_CASE("bloch state is the rotated lowest weight eigenstate") {
  std::mt19937 rng(14);
  for (int tj : {1, 2, 3, 6}) {
    const SpinJ j = SpinJ::from_twice(tj);
    for (int i = 0; i < 20; ++i) {
      const Complex z = rand_disc(rng, 3.0);
      const BlochState s = bloch_state(j, z);
      CHECK(std::abs(s.coeffs.norm() - 1.0) < 1e-12);
      CHECK(bloch_eigen_residual(s) < 1e-12);
    }
    // South pole: the highest k component only.
    const BlochState south = bloch_state(j, std::nullopt);
    CHECK(bloch_eigen_residual(south) < 1e-13);
  }
}

TEST_CASE("angular momentum algebra and the Casimir") {
  const SpinJ j = SpinJ::from_twice(3);
  const AngularMomentumOps ops = angular_momentum_ops(j);
  const Eigen::MatrixXcd comm =
      ops.j1.entries * ops.j2.entries - ops.j2.entries * ops.j1.entries;
  CHECK((comm - Complex(0, 1) * ops.j3.entries).cwiseAbs().maxCoeff() < 1e-13);
  const Eigen::MatrixXcd casimir = ops.j1.entries * ops.j1.entries +
                                   ops.j2.entries * ops.j2.entries +
                                   ops.j3.entries * ops.j3.entries;
  const double jv = j.value();
  CHECK((casimir - jv * (jv + 1.0) *
                       Eigen::MatrixXcd::Identity(j.dim(), j.dim()))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("adapted-frame uncertainty saturates at j/2") {
  for (int tj : {1, 2, 5, 8}) {
    const UncertaintyPair p = bloch_uncertainty_check(SpinJ::from_twice(tj));
    CHECK(p.product == Approx(p.half_mean3).epsilon(1e-12));
    CHECK(p.product == Approx(0.25 * tj).epsilon(1e-12));
  }
}

TEST_CASE("sphere quadrature resolves the identity") {
  for (int tj : {1, 3, 6}) {
    SphereQuadratureSpec spec;
    spec.gl_order = tj + 2;
    spec.phi_points = 2 * tj + 6;
    CHECK(s2_resolution_check(SpinJ::from_twice(tj), spec) < 1e-10);
  }
}

TEST_CASE("haar quadrature integrates matrix coefficients exactly") {
  // Schur orthogonality: integral of D^j_{mn} conj(D^j'_{m'n'}) is
  // delta / (2j+1).
  const auto quad = haar_quadrature(4);
  for (int tj : {1, 2}) {
    const SpinJ j = SpinJ::from_twice(tj);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(j.dim(), j.dim());
    Complex cross = 0.0;
    for (const HaarPoint& p : quad) {
      const Eigen::MatrixXcd d = wigner_d(j, p.u);
      acc += p.weight * (d.cwiseProduct(d.conjugate()));
      cross += p.weight * d(0, 0);  // against the trivial rep
    }
    CHECK((acc.array() - 1.0 / j.dim()).abs().maxCoeff() < 1e-12);
    CHECK(std::abs(cross) < 1e-12);
  }
}

TEST_CASE("heat kernel semigroup property under Haar convolution") {
  std::mt19937 rng(16);
  const Mat2c g = rand_su2(rng);
  const double j_max = 8.0;
  const auto quad = haar_quadrature(4 * static_cast<int>(j_max));
  Complex conv = 0.0;
  for (const HaarPoint& p : quad) {
    Mat2c xinv;
    xinv << p.u(1, 1), -p.u(0, 1), -p.u(1, 0), p.u(0, 0);
    conv += p.weight * heat_kernel_su2(0.7, (g * xinv).eval(), j_max) *
            heat_kernel_su2(0.5, p.u, j_max);
  }
  CHECK(std::abs(conv - heat_kernel_su2(1.2, g, j_max)) < 1e-10);
}

TEST_CASE("heat kernel normalizes to one and peaks at the identity") {
  const auto quad = haar_quadrature(32);
  Complex mass = 0.0;
  for (const HaarPoint& p : quad)
    mass += p.weight * heat_kernel_su2(0.6, p.u, 8.0);
  CHECK(std::abs(mass - Complex(1.0, 0.0)) < 1e-10);

  std::mt19937 rng(18);
  const double at_one =
      std::real(heat_kernel_su2(0.6, Mat2c::Identity(), 8.0));
  for (int i = 0; i < 10; ++i)
    CHECK(std::real(heat_kernel_su2(0.6, rand_su2(rng), 8.0)) <= at_one + 1e-12);
}

TEST_CASE("SL(2,C) kernel reduces exactly at x = identity") {
  std::mt19937 rng(20);
  SL2CElement one;
  one.h = Mat2c::Identity();
  for (int i = 0; i < 5; ++i) {
    SU2Element g;
    g.u = rand_su2(rng);
    CHECK(heat_kernel_cs(one, 0.8, g, 7.0) ==
          heat_kernel_su2(0.8, g.u, 7.0));
  }
}

TEST_CASE("required truncation grows with the boost") {
  Mat2c boosted;
  boosted << std::exp(1.0), 0.0, 0.0, std::exp(-1.0);
  const double small = heat_kernel_required_jmax(0.5, Mat2c::Identity(), 1e-12);
  const double large = heat_kernel_required_jmax(0.5, boosted, 1e-12);
  CHECK(large > small);
  // The truncated value is then stable under enlarging j_max.
  const Complex a = heat_kernel_su2(0.5, boosted, large);
  const Complex b = heat_kernel_su2(0.5, boosted, large + 4.0);
  CHECK(std::abs(a - b) < 1e-7);
}
