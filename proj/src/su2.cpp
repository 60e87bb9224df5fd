#include "ck/su2.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ck {

namespace {
constexpr Complex kI{0.0, 1.0};

double factorial(int n) {
  static std::vector<double> table = {1.0};
  while (static_cast<int>(table.size()) <= n)
    table.push_back(table.back() * static_cast<double>(table.size()));
  return table[n];
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}
}  // namespace

SpinJ::SpinJ(double j) {
  const double tj = 2.0 * j;
  twice_j = static_cast<int>(std::lround(tj));
  if (twice_j < 0 || std::abs(tj - twice_j) > 1e-9)
    throw std::invalid_argument("SpinJ: j must be a non-negative half-integer");
}

SpinJ SpinJ::from_twice(int twice) {
  if (twice < 0) throw std::invalid_argument("SpinJ: negative spin");
  SpinJ s;
  s.twice_j = twice;
  return s;
}

void SU2Element::validate(double tol) const {
  if ((u * u.adjoint() - Mat2c::Identity()).cwiseAbs().maxCoeff() > tol ||
      std::abs(u.determinant() - 1.0) > tol)
    throw std::invalid_argument("SU2Element: not special unitary");
}

void SL2CElement::validate(double tol) const {
  if (std::abs(h.determinant() - 1.0) > tol)
    throw std::invalid_argument("SL2CElement: determinant must be 1");
}

AngularMomentumOps angular_momentum_ops(SpinJ j) {
  const int d = j.dim();
  const double jv = j.value();
  Eigen::MatrixXcd jp = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd j3 = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const double m = jv - k;
    j3(k, k) = m;
    if (k > 0)  // J+ |j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>
      jp(k - 1, k) = std::sqrt(jv * (jv + 1.0) - m * (m + 1.0));
  }
  const Eigen::MatrixXcd jm = jp.adjoint();
  AngularMomentumOps ops;
  ops.j1 = {0.5 * (jp + jm), true};
  ops.j2 = {-0.5 * kI * (jp - jm), true};
  ops.j3 = {j3, true};
  return ops;
}

Eigen::Vector3d stereo_n(const std::optional<Complex>& zeta) {
  if (!zeta) return {0.0, 0.0, -1.0};
  const double den = 1.0 + std::norm(*zeta);
  return Eigen::Vector3d(-2.0 * std::real(*zeta), 2.0 * std::imag(*zeta),
                         1.0 - std::norm(*zeta)) /
         den;
}

std::optional<Complex> stereo_zeta(const Eigen::Vector3d& n) {
  if (n(2) < -1.0 + 1e-14) return std::nullopt;
  return Complex(-n(0), n(1)) / (1.0 + n(2));
}

SU2Element perelomov_u(const std::optional<Complex>& zeta) {
  SU2Element e;
  if (!zeta) {
    e.u << 0.0, 1.0, -1.0, 0.0;
    return e;
  }
  const double s = 1.0 / std::sqrt(1.0 + std::norm(*zeta));
  e.u << s, s * *zeta, -s * std::conj(*zeta), s;
  return e;
}

Eigen::MatrixXcd wigner_d(SpinJ j, const Mat2c& g) {
  if (std::abs(g.determinant() - 1.0) > 1e-10)
    throw std::invalid_argument("wigner_d: input must be unimodular");
  const int tj = j.twice_j;
  const int d = j.dim();
  const Complex a = g(0, 0), b = g(0, 1), c = g(1, 0), dd = g(1, 1);

  // Matrix elements of the action f(z) -> f(g^T z) on the monomial basis
  // z1^{j+m} z2^{j-m} / sqrt((j+m)!(j-m)!), ordered m = j..-j.
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (int col = 0; col < d; ++col) {
    const int jm = tj - col;   // j + m
    const int jmm = col;       // j - m
    // powers of a, c from (a z1 + c z2)^{j+m}; b, d from (b z1 + d z2)^{j-m}
    std::vector<Complex> apow(jm + 1), cpow(jm + 1), bpow(jmm + 1), dpow(jmm + 1);
    apow[0] = cpow[0] = bpow[0] = dpow[0] = 1.0;
    for (int i = 1; i <= jm; ++i) { apow[i] = apow[i - 1] * a; cpow[i] = cpow[i - 1] * c; }
    for (int i = 1; i <= jmm; ++i) { bpow[i] = bpow[i - 1] * b; dpow[i] = dpow[i - 1] * dd; }
    for (int row = 0; row < d; ++row) {
      const int jmp = tj - row;  // j + m'
      Complex acc = 0.0;
      const int pmin = std::max(0, jmp - jmm);
      const int pmax = std::min(jm, jmp);
      for (int p = pmin; p <= pmax; ++p) {
        const int q = jmp - p;
        acc += binomial(jm, p) * binomial(jmm, q) * apow[p] * cpow[jm - p] *
               bpow[q] * dpow[jmm - q];
      }
      out(row, col) = acc * std::sqrt(factorial(jmp) * factorial(tj - jmp) /
                                      (factorial(jm) * factorial(jmm)));
    }
  }
  return out;
}

Complex su2_character(SpinJ j, const Mat2c& g) {
  // Eigenvalues lambda, 1/lambda; chi_j = sum over m of lambda^{2m}.
  const Complex tr = g.trace();
  const Complex disc = std::sqrt(tr * tr - 4.0);
  Complex lambda = 0.5 * (tr + disc);
  if (std::abs(lambda) < 1.0) lambda = 0.5 * (tr - disc);
  const Complex l2 = lambda * lambda;
  if (std::abs(l2 - 1.0) < 1e-6) {
    // Near-degenerate eigenvalues: evaluate the trace directly.
    return wigner_d(j, g).trace();
  }
  Complex term = std::pow(lambda, -j.twice_j);
  Complex acc = 0.0;
  for (int k = 0; k <= j.twice_j; ++k) {
    acc += term;
    term *= l2;
  }
  return acc;
}

BlochState bloch_state(SpinJ j, const std::optional<Complex>& zeta) {
  const int d = j.dim();
  BlochState s;
  s.j = j;
  s.zeta = zeta;
  s.coeffs = Eigen::VectorXcd::Zero(d);
  if (!zeta) {
    s.coeffs(0) = 1.0;  // |j, +j>, the ray at the south pole
    return s;
  }
  const double den = std::pow(1.0 + std::norm(*zeta), j.value());
  Complex zp = 1.0;
  std::vector<Complex> zpow(d);
  for (int i = 0; i < d; ++i) {
    zpow[i] = zp;
    zp *= *zeta;
  }
  for (int k = 0; k < d; ++k) {
    const int jpm = j.twice_j - k;  // j + m with m = j - k
    s.coeffs(k) = std::sqrt(binomial(j.twice_j, jpm)) * zpow[jpm] / den;
  }
  return s;
}

double bloch_eigen_residual(const BlochState& state) {
  const auto ops = angular_momentum_ops(state.j);
  const Eigen::Vector3d n = stereo_n(state.zeta);
  const Eigen::MatrixXcd ndotj = n(0) * ops.j1.entries + n(1) * ops.j2.entries +
                                 n(2) * ops.j3.entries;
  return (ndotj * state.coeffs + state.j.value() * state.coeffs).norm();
}

UncertaintyPair bloch_uncertainty_check(SpinJ j) {
  const auto ops = angular_momentum_ops(j);
  const int d = j.dim();
  Eigen::VectorXcd low = Eigen::VectorXcd::Zero(d);
  low(d - 1) = 1.0;  // |j, -j>
  auto var = [&](const MatrixOperator& m) {
    const Eigen::VectorXcd mv = m.entries * low;
    const double mean = std::real(low.dot(mv));
    return std::real(mv.dot(mv)) - mean * mean;
  };
  UncertaintyPair out;
  out.product = std::sqrt(var(ops.j1) * var(ops.j2));
  out.half_mean3 = 0.5 * std::abs(std::real(low.dot(ops.j3.entries * low)));
  return out;
}

double s2_resolution_check(SpinJ j, const SphereQuadratureSpec& spec) {
  const int d = j.dim();
  const QuadRule gl = gauss_legendre(spec.gl_order, -1.0, 1.0);
  const QuadRule phi = uniform_periodic(spec.phi_points, 2.0 * std::numbers::pi);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (std::size_t it = 0; it < gl.size(); ++it) {
    const double ct = gl.nodes[it];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (std::size_t ip = 0; ip < phi.size(); ++ip) {
      const Eigen::Vector3d n(st * std::cos(phi.nodes[ip]),
                              st * std::sin(phi.nodes[ip]), ct);
      const BlochState s = bloch_state(j, stereo_zeta(n));
      m += (gl.weights[it] * phi.weights[ip]) * (s.coeffs * s.coeffs.adjoint());
    }
  }
  m *= (j.twice_j + 1.0) / (4.0 * std::numbers::pi);
  return (m - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
}

namespace {

// Growth rate of characters: max(|lambda|, 1/|lambda|) for eigenvalues of g.
double char_growth(const Mat2c& g) {
  const Complex tr = g.trace();
  const Complex disc = std::sqrt(tr * tr - 4.0);
  const double l = std::abs(0.5 * (tr + disc));
  const double m = std::max(l, l > 0.0 ? 1.0 / l : 1.0);
  return std::max(m, 1.0);
}

// Upper bound on the tail sum_{j > j_from} (2j+1)^2 e^{-j(j+1)t} M^{2j}.
double tail_bound(double t, double growth, double j_from) {
  double bound = 0.0;
  for (double j = j_from + 0.5; j < j_from + 400.0; j += 0.5) {
    const double term = (2.0 * j + 1.0) * (2.0 * j + 1.0) *
                        std::exp(-j * (j + 1.0) * t + 2.0 * j * std::log(growth));
    bound += term;
    if (term < 1e-300 || (term < 1e-16 * bound && j > j_from + 4.0)) break;
  }
  return bound;
}

}  // namespace

double heat_kernel_required_jmax(double t, const Mat2c& g, double tail_tol) {
  const double growth = char_growth(g);
  for (double j = 0.0; j <= 500.0; j += 0.5)
    if (tail_bound(t, growth, j) < tail_tol) return j;
  return -1.0;
}

Complex heat_kernel_su2(double t, const Mat2c& g, double j_max) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_kernel_su2: t must be > 0");
  if (std::abs(g.determinant() - 1.0) > 1e-8)
    throw std::invalid_argument("heat_kernel_su2: input must be unimodular");
  const double growth = char_growth(g);
  if (tail_bound(t, growth, j_max) > 1e-12) {
    const double req = heat_kernel_required_jmax(t, g, 1e-12);
    if (req < 0.0)
      throw std::invalid_argument(
          "heat_kernel_su2: t too small for a tractable truncation");
    throw TruncationError("heat_kernel_su2: tail above bound, need j_max >= " +
                          std::to_string(req));
  }
  Complex acc = 0.0;
  for (int tj = 0; tj <= static_cast<int>(std::lround(2.0 * j_max)); ++tj) {
    const double j = 0.5 * tj;
    acc += (tj + 1.0) * std::exp(-j * (j + 1.0) * t) *
           su2_character(SpinJ::from_twice(tj), g);
  }
  return acc;
}

Complex heat_kernel_cs(const SL2CElement& x, double t, const SU2Element& g,
                       double j_max) {
  x.validate();
  // Unimodular inverse of x.
  Mat2c xinv;
  xinv << x.h(1, 1), -x.h(0, 1), -x.h(1, 0), x.h(0, 0);
  return heat_kernel_su2(t, (xinv * g.u).eval(), j_max);
}

Mat2c su2_euler(double phi, double theta, double psi) {
  Mat2c zf, yt, zp;
  zf << std::exp(-kI * (0.5 * phi)), 0.0, 0.0, std::exp(kI * (0.5 * phi));
  yt << std::cos(0.5 * theta), -std::sin(0.5 * theta), std::sin(0.5 * theta),
      std::cos(0.5 * theta);
  zp << std::exp(-kI * (0.5 * psi)), 0.0, 0.0, std::exp(kI * (0.5 * psi));
  return zf * yt * zp;
}

std::vector<HaarPoint> haar_quadrature(int degree) {
  const int m1 = degree + 2;
  const int q = degree / 2 + 2;
  int m2 = 2 * degree + 4;
  if (m2 % 2 != 0) ++m2;
  const QuadRule phi = uniform_periodic(m1, 2.0 * std::numbers::pi);
  const QuadRule ct = gauss_legendre(q, -1.0, 1.0);
  const QuadRule psi = uniform_periodic(m2, 4.0 * std::numbers::pi);

  std::vector<HaarPoint> pts;
  pts.reserve(phi.size() * ct.size() * psi.size());
  for (std::size_t i = 0; i < phi.size(); ++i)
    for (std::size_t jt = 0; jt < ct.size(); ++jt)
      for (std::size_t k = 0; k < psi.size(); ++k) {
        HaarPoint p;
        p.u = su2_euler(phi.nodes[i], std::acos(ct.nodes[jt]), psi.nodes[k]);
        // Normalised Haar: (1/16 pi^2) sin(theta) dtheta dphi dpsi.
        p.weight = phi.weights[i] * ct.weights[jt] * psi.weights[k] /
                   (16.0 * std::numbers::pi * std::numbers::pi);
        pts.push_back(p);
      }
  return pts;
}

}  // namespace ck
