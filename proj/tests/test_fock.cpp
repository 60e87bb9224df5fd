#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ck/fock.hpp"
#include "ck/quadrature.hpp"

using namespace ck;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

Complex rand_disc(std::mt19937& rng, double radius) {
  std::uniform_real_distribution<double> ur(0.0, 1.0);
  const double r = radius * std::sqrt(ur(rng));
  const double th = 2.0 * kPi * ur(rng);
  return {r * std::cos(th), r * std::sin(th)};
}
}  // namespace

TEST_CASE("ladder operators satisfy the algebra on the interior block") {
  const OscillatorParams params(1.3, 0.7, 1.0);
  const int n = 20;
  const LadderOperators ops = build_operators(params, n);

  const Eigen::MatrixXcd comm =
      ops.a.entries * ops.a_dag.entries - ops.a_dag.entries * ops.a.entries;
  CHECK((comm - Eigen::MatrixXcd::Identity(n, n))
            .topLeftCorner(n - 1, n - 1)
            .cwiseAbs()
            .maxCoeff() < 1e-13);

  const Eigen::MatrixXcd xp =
      ops.x.entries * ops.p.entries - ops.p.entries * ops.x.entries;
  CHECK((xp - Complex(0, 1) * params.hbar * Eigen::MatrixXcd::Identity(n, n))
            .topLeftCorner(n - 1, n - 1)
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("coherent state is an eigenvector of a up to the tail") {
  std::mt19937 rng(7);
  for (int i = 0; i < 10; ++i) {
    const Complex alpha = rand_disc(rng, 2.5);
    const int dim = coherent_min_dim(alpha);
    const FockState s = coherent_state(alpha, dim);
    const LadderOperators ops = build_operators(s.params, dim);
    CHECK(std::abs(s.norm() - 1.0) < 1e-10);
    const Eigen::VectorXcd r = ops.a.entries * s.coeffs - alpha * s.coeffs;
    CHECK(r.head(dim - 1).norm() < 1e-8);
  }
}

TEST_CASE("coherent_min_dim respects the Poisson tail rule") {
  CHECK(coherent_min_dim(Complex(0, 0)) >= 10);
  const Complex alpha(2.0, 1.0);
  const double m = std::abs(alpha);
  CHECK(coherent_min_dim(alpha) >=
        static_cast<int>(std::ceil(m * m + 6.0 * m + 10.0)));
}

TEST_CASE("evolution is unitary and periodic for the oscillator") {
  const OscillatorParams params;
  const FockState s = coherent_state(Complex(1.0, -0.5), 40, params);
  const FockState st = evolve(s, 0.7);
  CHECK(st.norm() == Approx(1.0).epsilon(1e-12));
  const FockState period = evolve(s, 2.0 * kPi / params.omega);
  // Same ray: number-basis phases e^{i n 2 pi} all return.
  CHECK((period.coeffs - std::exp(Complex(0, 1.0 * kPi)) * s.coeffs).norm() <
        1e-10);
}

TEST_CASE("moments of the coherent state match the classical point") {
  const OscillatorParams params(1.0, 2.0, 1.0);
  const Complex alpha(0.8, -0.6);
  const FockState s = coherent_state(alpha, coherent_min_dim(alpha), params);
  const MomentData m = moments(s);
  const double x0 = std::sqrt(2.0 * params.hbar / (params.mass * params.omega)) *
                    alpha.real();
  const double p0 =
      std::sqrt(2.0 * params.hbar * params.mass * params.omega) * alpha.imag();
  CHECK(m.mean_x == Approx(x0).epsilon(1e-9));
  CHECK(m.mean_p == Approx(p0).epsilon(1e-9));
  CHECK(std::sqrt(m.var_x * m.var_p) == Approx(0.5 * params.hbar).epsilon(1e-9));
}

TEST_CASE("spread_ho against direct simulation for a squeezed state") {
  const OscillatorParams params;
  SqueezedLabel label;
  label.gamma = 1.8;
  label.z = Complex(0.4, -0.9);
  const FockState s = squeezed_fock_vector(label, 60, params);
  const MomentData m0 = moments(s);
  CHECK(std::abs(m0.cross()) < 1e-9);  // real-gamma states: no cross moment
  for (double t : {0.3, 1.1, 2.9, 4.4}) {
    const MomentData mt = moments(evolve(s, t));
    CHECK(std::sqrt(mt.var_x) == Approx(spread_ho(m0, t, params)).epsilon(1e-9));
  }
}

TEST_CASE("spread_free against the exactly evolved Gaussian moments") {
  // Free Gaussian: var_x(t) = var_x + t^2 var_p / m^2 when cross = 0.
  MomentData m0;
  m0.var_x = 0.49;
  m0.var_p = 1.0 / (4.0 * 0.49);
  const double mass = 1.7;
  for (double t : {0.0, 0.5, 2.0}) {
    const double expected =
        std::sqrt(m0.var_x + t * t * m0.var_p / (mass * mass));
    CHECK(spread_free(m0, t, mass) == Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("squeezed state is an eigenvector of x + i gamma p") {
  const OscillatorParams params;
  SqueezedLabel label;
  label.gamma = 0.6;
  label.z = Complex(-0.3, 0.8);
  const int n = 60;
  const FockState s = squeezed_fock_vector(label, n, params);
  const LadderOperators ops = build_operators(params, n);
  const Eigen::MatrixXcd op =
      ops.x.entries + Complex(0, label.gamma) * ops.p.entries;
  const Eigen::VectorXcd r = op * s.coeffs - label.z * s.coeffs;
  CHECK(r.head(n - 2).norm() < 1e-8);
}

TEST_CASE("squeezed_wavefunction matches the Fock expansion pointwise") {
  const OscillatorParams params;
  SqueezedLabel label;
  label.gamma = 1.4;
  label.z = Complex(0.5, 0.2);
  const FockState s = squeezed_fock_vector(label, 70, params);
  for (double x : {-1.3, 0.0, 0.7, 2.1}) {
    Complex sum = 0.0;
    for (int n = 0; n < s.dim(); ++n)
      sum += s.coeffs(n) * hermite_function(n, x, params);
    CHECK(std::abs(sum - squeezed_wavefunction(label, x, params.hbar)) < 1e-9);
  }
}

TEST_CASE("characterization predicates single out gamma = 1/(m omega)") {
  const OscillatorParams params(1.0, 1.5, 1.0);
  const double tol = 1e-8;

  SqueezedLabel coherent;
  coherent.gamma = 1.0 / (params.mass * params.omega);
  coherent.z = Complex(0.7, 0.4);
  const FockState sc = squeezed_fock_vector(coherent, 64, params);
  const MomentData mc = moments(sc);
  CHECK(is_constant_minimal(mc, params, tol).pass);
  const double ground = std::sqrt(params.ground_var_x());
  CHECK(time_avg_spread(mc, params) == Approx(ground).epsilon(1e-9));
  CHECK(energy_gap(sc, params) ==
        Approx(0.5 * params.hbar * params.omega).epsilon(1e-9));

  SqueezedLabel squeezed = coherent;
  squeezed.gamma *= 1.7;
  const FockState ss = squeezed_fock_vector(squeezed, 64, params);
  const MomentData ms = moments(ss);
  CHECK_FALSE(is_constant_minimal(ms, params, tol).pass);
  CHECK(std::abs(time_avg_spread(ms, params) - ground) > 10 * tol);
  // Gap for the squeezed family: hbar omega (f + 1/f) / 4.
  const double f = 1.7;
  CHECK(energy_gap(ss, params) ==
        Approx(0.25 * params.hbar * params.omega * (f + 1.0 / f)).epsilon(1e-8));
}

TEST_CASE("energy gap is bounded below by half a quantum") {
  const OscillatorParams params;
  std::mt19937 rng(11);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    FockState s;
    s.params = params;
    s.coeffs = Eigen::VectorXcd(12);
    for (int n = 0; n < 12; ++n) s.coeffs(n) = Complex(g(rng), g(rng));
    s.coeffs /= s.coeffs.norm();
    CHECK(energy_gap(s, params) > 0.5 * params.hbar * params.omega - 1e-9);
  }
}

TEST_CASE("schrodinger_match identifies the classical trajectory state") {
  const OscillatorParams params;
  const double A = 1.2, t = 0.9;
  const SchrodingerMatch match = schrodinger_match(A, t, params);
  CHECK(match.gamma == Approx(1.0 / (params.mass * params.omega)).epsilon(1e-12));
  const Complex traj =
      std::sqrt(2.0 * params.hbar / (params.mass * params.omega)) * A *
      std::exp(Complex(0, params.omega * t));
  CHECK(std::abs(match.z - traj) < 1e-12);
}

TEST_CASE("hermite functions are orthonormal under quadrature") {
  const OscillatorParams params;
  const QuadRule q = gauss_legendre(300, -9.0, 9.0);
  for (int a = 0; a < 5; ++a)
    for (int b = a; b < 5; ++b) {
      double acc = 0.0;
      for (std::size_t i = 0; i < q.size(); ++i)
        acc += q.weights[i] * hermite_function(a, q.nodes[i], params) *
               hermite_function(b, q.nodes[i], params);
      CHECK(acc == Approx(a == b ? 1.0 : 0.0).epsilon(1e-9).scale(1.0));
    }
}
