#include "ck/fock.hpp"

#include <cmath>
#include <numbers>

#include "ck/quadrature.hpp"

namespace ck {

namespace {
constexpr Complex kI{0.0, 1.0};
}

LadderOperators build_operators(const OscillatorParams& params, int n_max) {
  if (n_max < 2) throw std::invalid_argument("build_operators: n_max must be >= 2");
  params.validate();

  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n_max, n_max);
  for (int n = 0; n + 1 < n_max; ++n) a(n, n + 1) = std::sqrt(n + 1.0);
  Eigen::MatrixXcd ad = a.adjoint();

  const double lx = std::sqrt(params.hbar / (2.0 * params.mass * params.omega));
  const double lp = std::sqrt(params.mass * params.omega * params.hbar / 2.0);

  LadderOperators ops;
  ops.a = {a, false};
  ops.a_dag = {ad, false};
  ops.x = {lx * (a + ad), true};
  ops.p = {-kI * lp * (a - ad), true};

  // H = hbar w (n + 1/2); assembled diagonally so the truncated edge row
  // carries no quadratic defect.
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n_max, n_max);
  for (int n = 0; n < n_max; ++n)
    h(n, n) = params.hbar * params.omega * (n + 0.5);
  ops.h = {h, true};
  return ops;
}

int coherent_min_dim(Complex alpha) {
  const double r = std::abs(alpha);
  return static_cast<int>(std::ceil(r * r + 6.0 * r + 10.0));
}

FockState coherent_state(Complex alpha, int n_max, const OscillatorParams& params) {
  if (n_max < coherent_min_dim(alpha))
    throw TruncationError("coherent_state: n_max below the Poisson tail rule");
  FockState s;
  s.params = params;
  s.coeffs.resize(n_max);
  // c_n = e^{-|a|^2/2} a^n / sqrt(n!), built by recurrence.
  Complex c = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n < n_max; ++n) {
    s.coeffs(n) = c;
    c *= alpha / std::sqrt(n + 1.0);
  }
  const double nrm = s.norm();
  if (std::abs(nrm - 1.0) > 1e-10)
    throw TruncationError("coherent_state: truncation tail exceeds bound");
  s.coeffs /= nrm;
  return s;
}

FockState evolve(const FockState& state, double t) {
  FockState out = state;
  const double w = state.params.omega;
  for (Eigen::Index n = 0; n < out.dim(); ++n) {
    const double phase = w * t * (n + 0.5);  // E_n t / hbar
    out.coeffs(n) *= std::exp(kI * phase);
  }
  return out;
}

Complex expectation(const FockState& bra, const MatrixOperator& m,
                    const FockState& ket) {
  return bra.coeffs.dot(m.entries * ket.coeffs);
}

MomentData moments(const FockState& state, const LadderOperators& ops) {
  MomentData md;
  const auto& v = state.coeffs;
  md.mean_x = std::real(v.dot(ops.x.entries * v));
  md.mean_p = std::real(v.dot(ops.p.entries * v));
  const Eigen::VectorXcd xv = ops.x.entries * v;
  const Eigen::VectorXcd pv = ops.p.entries * v;
  md.var_x = std::real(xv.dot(xv)) - md.mean_x * md.mean_x;
  md.var_p = std::real(pv.dot(pv)) - md.mean_p * md.mean_p;
  md.sym_xp = 2.0 * std::real(xv.dot(pv));
  return md;
}

MomentData moments(const FockState& state) {
  return moments(state, build_operators(state.params,
                                        static_cast<int>(state.dim())));
}

double spread_free(const MomentData& m0, double t, double mass) {
  const double v = m0.var_x + m0.var_p * t * t / (mass * mass) +
                   t / mass * m0.cross();
  return std::sqrt(std::max(v, 0.0));
}

double spread_ho(const MomentData& m0, double t, const OscillatorParams& params) {
  const double mw2 = params.mass * params.mass * params.omega * params.omega;
  const double vp = m0.var_p / mw2;
  const double v = 0.5 * (m0.var_x + vp) -
                   0.5 * (vp - m0.var_x) * std::cos(2.0 * params.omega * t) +
                   m0.cross() / (2.0 * params.mass * params.omega) *
                       std::sin(2.0 * params.omega * t);
  return std::sqrt(std::max(v, 0.0));
}

ConstantMinimalDiagnostic is_constant_minimal(const MomentData& m0,
                                              const OscillatorParams& params,
                                              double tol) {
  const double mw = params.mass * params.omega;
  const double scale = params.hbar * params.omega * params.mass;  // var_p scale
  ConstantMinimalDiagnostic d;
  d.residual_constancy_1 = std::abs(m0.var_p - mw * mw * m0.var_x) / scale;
  d.residual_constancy_2 = std::abs(m0.cross()) / params.hbar;
  d.residual_minimality = std::abs(m0.var_x - params.ground_var_x()) /
                          params.ground_var_x();
  d.constant = d.residual_constancy_1 < tol && d.residual_constancy_2 < tol;
  d.minimal = d.residual_minimality < tol;
  d.pass = d.constant && d.minimal;
  return d;
}

double time_avg_spread(const MomentData& m0, const OscillatorParams& params) {
  const double mw2 = params.mass * params.mass * params.omega * params.omega;
  return std::sqrt(0.5 * m0.var_x + 0.5 * m0.var_p / mw2);
}

double energy_gap(const FockState& state, const OscillatorParams& params) {
  const auto ops = build_operators(params, static_cast<int>(state.dim()));
  const MomentData md = moments(state, ops);
  return md.var_p / (2.0 * params.mass) +
         0.5 * params.mass * params.omega * params.omega * md.var_x;
}

double hermite_function(int n, double x, const OscillatorParams& params) {
  const double xi = x * std::sqrt(params.mass * params.omega / params.hbar);
  const double norm0 =
      std::pow(params.mass * params.omega / (std::numbers::pi * params.hbar), 0.25);
  double hm1 = 0.0;
  double h = norm0 * std::exp(-0.5 * xi * xi);
  for (int k = 1; k <= n; ++k) {
    const double hk = xi * std::sqrt(2.0 / k) * h - std::sqrt((k - 1.0) / k) * hm1;
    hm1 = h;
    h = hk;
  }
  return h;
}

Complex squeezed_wavefunction(const SqueezedLabel& label, double x, double hbar) {
  if (!(label.gamma > 0.0))
    throw std::invalid_argument("squeezed_wavefunction: gamma must be > 0");
  const double gh = label.gamma * hbar;
  const double im = std::imag(label.z);
  const Complex dx = x - label.z;
  return std::exp(-im * im / (2.0 * gh)) /
         std::pow(std::numbers::pi * gh, 0.25) *
         std::exp(-dx * dx / (2.0 * gh));
}

FockState squeezed_fock_vector(const SqueezedLabel& label, int n_max,
                               const OscillatorParams& params) {
  if (!(label.gamma > 0.0))
    throw std::invalid_argument("squeezed_fock_vector: gamma must be > 0");
  // Scale chosen so the combined Gaussian decay of psi * h_n maps onto the
  // Gauss-Hermite weight; the real shift of z recentres the rule.
  const double mw = params.mass * params.omega;
  const double c = 0.5 * mw / params.hbar + 0.5 / (label.gamma * params.hbar);
  const double s = 1.0 / std::sqrt(c);
  const double x0 = std::real(label.z) / (1.0 + label.gamma * mw);
  const QuadRule rule = gauss_hermite(2 * n_max + 24);

  FockState out;
  out.params = params;
  out.coeffs = Eigen::VectorXcd::Zero(n_max);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = x0 + s * rule.nodes[i];
    const double comp = std::exp(rule.nodes[i] * rule.nodes[i]);
    const Complex psi = squeezed_wavefunction(label, x, params.hbar);
    for (int n = 0; n < n_max; ++n)
      out.coeffs(n) += rule.weights[i] * comp * s *
                       hermite_function(n, x, params) * psi;
  }
  return out;
}

SchrodingerMatch schrodinger_match(double A, double t,
                                   const OscillatorParams& params) {
  SchrodingerMatch m;
  m.gamma = 1.0 / (params.mass * params.omega);
  const double w = params.omega;
  m.z = std::sqrt(2.0 * params.hbar / (params.mass * w)) * A *
        std::exp(kI * w * t);
  m.phase = std::exp(kI * (0.5 * A * A * std::sin(2.0 * w * t)));
  return m;
}

}  // namespace ck
