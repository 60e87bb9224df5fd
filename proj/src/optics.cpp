#include "ck/optics.hpp"

#include <cmath>
#include <numbers>

namespace ck {

namespace {
constexpr Complex kI{0.0, 1.0};

// Apply a_k to a joint Fock tensor.
Eigen::VectorXcd apply_annihilation(const FockTensor& ft, std::size_t mode) {
  const auto& tr = ft.truncations;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(ft.coeffs.size());
  // strides, row-major: last mode fastest
  std::vector<Eigen::Index> stride(tr.size());
  Eigen::Index s = 1;
  for (std::size_t m = tr.size(); m-- > 0;) {
    stride[m] = s;
    s *= tr[m];
  }
  for (Eigen::Index idx = 0; idx < ft.coeffs.size(); ++idx) {
    const int n = static_cast<int>((idx / stride[mode]) % tr[mode]);
    if (n == 0) continue;
    // a |n> = sqrt(n) |n-1>
    out(idx - stride[mode]) += std::sqrt(static_cast<double>(n)) * ft.coeffs(idx);
  }
  return out;
}
}  // namespace

void ModeSpec::validate() const {
  if (!(omega() > 0.0)) throw std::invalid_argument("ModeSpec: omega must be > 0");
  if (lambda != 1 && lambda != 2)
    throw std::invalid_argument("ModeSpec: lambda must be 1 or 2");
  if (std::abs(polarization.dot(k)) > 1e-10 * k.norm() * polarization.norm())
    throw std::invalid_argument("ModeSpec: polarization must be orthogonal to k");
}

ModeSpec default_mode() {
  ModeSpec m;
  m.k = Eigen::Vector3d(0.0, 0.0, 1.0);
  m.polarization = Eigen::Vector3d(1.0, 0.0, 0.0);
  return m;
}

Eigen::MatrixXcd MultiModeState::correlation_matrix() const {
  const std::size_t nm = modes.size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(nm, nm);
  if (const auto* pc = std::get_if<ProductCoherent>(&body)) {
    for (std::size_t i = 0; i < nm; ++i)
      for (std::size_t j = 0; j < nm; ++j)
        m(i, j) = std::conj(pc->alphas[i]) * pc->alphas[j];
  } else if (const auto* ft = std::get_if<FockTensor>(&body)) {
    std::vector<Eigen::VectorXcd> av(nm);
    for (std::size_t i = 0; i < nm; ++i) av[i] = apply_annihilation(*ft, i);
    for (std::size_t i = 0; i < nm; ++i)
      for (std::size_t j = 0; j < nm; ++j) m(i, j) = av[i].dot(av[j]);
  } else {
    const auto& rho = std::get<MixedSingleMode>(body).rho;
    Complex acc = 0.0;
    for (Eigen::Index n = 0; n < rho.rows(); ++n)
      acc += static_cast<double>(n) * rho(n, n);
    m(0, 0) = acc;
  }
  return m;
}

double MultiModeState::purity() const {
  if (const auto* ms = std::get_if<MixedSingleMode>(&body))
    return std::real((ms->rho * ms->rho).trace());
  return 1.0;
}

double MultiModeState::expected_energy() const {
  const Eigen::MatrixXcd m = correlation_matrix();
  double e = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i)
    e += modes[i].hbar * modes[i].omega() * (std::real(m(i, i)) + 0.5);
  return e;
}

Complex e_plus_coeff(const ModeSpec& mode, const SpacetimePoint& x) {
  const double w = mode.omega();
  const double l3 = std::pow(mode.box_side, 3);
  return kI * std::sqrt(mode.hbar * w / (2.0 * l3)) *
         std::exp(kI * (mode.k.dot(x.r) - w * x.t));
}

Complex g1(const MultiModeState& state, const SpacetimePoint& x1,
           const SpacetimePoint& x2) {
  if (const auto* ms = std::get_if<MixedSingleMode>(&state.body)) {
    const auto& rho = ms->rho;
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10 ||
        std::abs(rho.trace() - 1.0) > 1e-8)
      throw std::invalid_argument("g1: invalid density matrix");
  }
  const Eigen::MatrixXcd m = state.correlation_matrix();
  Complex acc = 0.0;
  for (std::size_t i = 0; i < state.modes.size(); ++i)
    for (std::size_t j = 0; j < state.modes.size(); ++j)
      acc += std::conj(e_plus_coeff(state.modes[i], x1)) * m(i, j) *
             e_plus_coeff(state.modes[j], x2);
  return acc;
}

double visibility(double g11, double g22, Complex g12) {
  const double denom = g11 + g22;
  if (denom <= 0.0) return 0.0;
  return 2.0 * std::abs(g12) / denom;
}

double double_slit_intensity(const MultiModeState& state,
                             const SpacetimePoint& x1,
                             const SpacetimePoint& x2) {
  const double g11 = std::real(g1(state, x1, x1));
  const double g22 = std::real(g1(state, x2, x2));
  const Complex g12 = g1(state, x1, x2);
  return g11 + g22 + 2.0 * std::real(g12);
}

Complex driven_alpha(const CurrentProfile& current, const ModeSpec& mode,
                     double t) {
  if (current.times.size() < 2)
    throw std::invalid_argument("driven_alpha: need at least two time samples");
  const double dt = current.times[1] - current.times[0];
  const double w = mode.omega();
  if (dt * w > 0.5)
    throw std::invalid_argument("driven_alpha: time grid undersampled for mode");
  if (t > current.times.back() + 1e-12)
    throw std::invalid_argument("driven_alpha: t beyond sampled range");

  const double l3 = std::pow(mode.box_side, 3);
  const Complex pref = kI / std::sqrt(2.0 * l3 * mode.hbar * w);

  // Spatial factor per point is time-independent; precompute.
  std::vector<Complex> spatial(current.points.size());
  for (std::size_t p = 0; p < current.points.size(); ++p)
    spatial[p] = std::exp(-kI * mode.k.dot(current.points[p]));

  Complex acc = 0.0;
  for (std::size_t it = 0; it + 1 < current.times.size(); ++it) {
    if (current.times[it] >= t - 1e-12) break;
    const double t0 = current.times[it];
    const double t1 = std::min(current.times[it + 1], t);
    const double h = t1 - t0;
    if (h <= 0.0) break;
    Complex f0 = 0.0, f1 = 0.0;
    for (std::size_t p = 0; p < current.points.size(); ++p) {
      const double j0 = current.values[it][p].dot(mode.polarization);
      const double j1 = current.values[it + 1][p].dot(mode.polarization);
      f0 += j0 * spatial[p] * std::exp(-kI * w * t0);
      f1 += j1 * spatial[p] * std::exp(-kI * w * t1);
    }
    acc += 0.5 * h * (f0 + f1) * current.volume_weight;
  }
  return pref * acc;
}

MultiModeState laser_state(double abs_alpha, int n_max, const ModeSpec& mode) {
  // (1/2pi) integral over theta of ||a|e^{i theta}><...| is diagonal with
  // Poisson weights.
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n_max, n_max);
  double wgt = std::exp(-abs_alpha * abs_alpha);
  for (int n = 0; n < n_max; ++n) {
    rho(n, n) = wgt;
    wgt *= abs_alpha * abs_alpha / (n + 1.0);
  }
  rho /= std::real(rho.trace());
  MultiModeState s;
  s.modes = {mode};
  s.body = MixedSingleMode{std::move(rho)};
  return s;
}

Complex coherent_field_amplitude(const MultiModeState& state,
                                 const SpacetimePoint& x) {
  const auto* pc = std::get_if<ProductCoherent>(&state.body);
  if (pc == nullptr)
    throw std::invalid_argument(
        "coherent_field_amplitude: state is not product-coherent");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < state.modes.size(); ++i)
    acc += e_plus_coeff(state.modes[i], x) * pc->alphas[i];
  return acc;
}

}  // namespace ck
