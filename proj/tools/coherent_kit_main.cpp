// coherent-kit: command-line front end for the coherent-state toolkit.

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ck/acceptance.hpp"
#include "ck/bargmann.hpp"
#include "ck/fock.hpp"
#include "ck/heisenberg.hpp"
#include "ck/optics.hpp"
#include "ck/polyhedra.hpp"
#include "ck/spinnet.hpp"
#include "ck/su2.hpp"

namespace {

using json = nlohmann::json;
using ck::Complex;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAcceptance = 2;
constexpr int kExitRefusal = 3;

struct RunOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::string format = "csv";
  bool svg = false;
  bool out_set = false;
  bool format_set = false;
  bool svg_set = false;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// Column-oriented numeric table; names carry units in brackets.
struct Table {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns[0].size(); }
};

void atomic_write(const std::filesystem::path& path, const std::string& text) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
  }
  std::filesystem::rename(tmp, path);
}

std::string to_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t c = 0; c < t.names.size(); ++c)
    os << (c ? "," : "") << t.names[c];
  os << "\n";
  for (std::size_t r = 0; r < t.rows(); ++r) {
    for (std::size_t c = 0; c < t.columns.size(); ++c)
      os << (c ? "," : "") << num(t.columns[c][r]);
    os << "\n";
  }
  return os.str();
}

std::string to_json_text(const Table& t) {
  json j;
  for (std::size_t c = 0; c < t.names.size(); ++c) {
    json col = json::array();
    for (double v : t.columns[c]) col.push_back(num(v));
    j[t.names[c]] = col;
  }
  return j.dump(2) + "\n";
}

/// Polyline plot of every column against the first one.
std::string to_svg(const Table& t) {
  const double w = 640.0, h = 480.0, m = 50.0;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << w << " "
     << h << "\">\n";
  os << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  if (t.columns.size() >= 2 && t.rows() >= 2) {
    const auto& xs = t.columns[0];
    double xlo = xs[0], xhi = xs[0], ylo = 0.0, yhi = 0.0;
    bool first = true;
    for (double v : xs) {
      xlo = std::min(xlo, v);
      xhi = std::max(xhi, v);
    }
    for (std::size_t c = 1; c < t.columns.size(); ++c)
      for (double v : t.columns[c]) {
        if (first) ylo = yhi = v;
        first = false;
        ylo = std::min(ylo, v);
        yhi = std::max(yhi, v);
      }
    if (xhi <= xlo) xhi = xlo + 1.0;
    if (yhi <= ylo) yhi = ylo + 1.0;
    const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                             "#9467bd", "#ff7f0e", "#8c564b"};
    auto px = [&](double x) { return m + (w - 2 * m) * (x - xlo) / (xhi - xlo); };
    auto py = [&](double y) { return h - m - (h - 2 * m) * (y - ylo) / (yhi - ylo); };
    os << "<line x1=\"" << m << "\" y1=\"" << h - m << "\" x2=\"" << w - m
       << "\" y2=\"" << h - m << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << m << "\" y1=\"" << m << "\" x2=\"" << m
       << "\" y2=\"" << h - m << "\" stroke=\"black\"/>\n";
    for (std::size_t c = 1; c < t.columns.size(); ++c) {
      os << "<polyline fill=\"none\" stroke=\"" << palette[(c - 1) % 6]
         << "\" points=\"";
      for (std::size_t r = 0; r < t.rows(); ++r)
        os << num6(px(xs[r])) << "," << num6(py(t.columns[c][r])) << " ";
      os << "\"/>\n";
      os << "<text x=\"" << w - m + 4 << "\" y=\"" << m + 16.0 * c
         << "\" font-size=\"11\" fill=\"" << palette[(c - 1) % 6] << "\">"
         << t.names[c] << "</text>\n";
    }
    os << "<text x=\"" << w / 2 << "\" y=\"" << h - 12
       << "\" font-size=\"12\" text-anchor=\"middle\">" << t.names[0]
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void emit(const Table& t, const RunOptions& opt, const std::string& stem) {
  std::filesystem::create_directories(opt.out_dir);
  const std::filesystem::path base =
      std::filesystem::path(opt.out_dir) / stem;
  if (opt.format == "json") {
    atomic_write(base.string() + ".json", to_json_text(t));
  } else {
    atomic_write(base.string() + ".csv", to_csv(t));
  }
  if (opt.svg) atomic_write(base.string() + ".svg", to_svg(t));
}

json load_config(RunOptions& opt) {
  std::ifstream in(opt.config_path);
  if (!in) throw CLI::ValidationError("config", "cannot read " + opt.config_path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw CLI::ValidationError("config", std::string("invalid JSON: ") + e.what());
  }
  if (!cfg.is_object() || !cfg.contains("seed") ||
      !cfg["seed"].is_number_integer())
    throw CLI::ValidationError("config", "integer field \"seed\" is required");
  // File values for out/format/svg; explicit flags win.
  if (!opt.out_set && cfg.contains("out")) opt.out_dir = cfg["out"];
  if (!opt.format_set && cfg.contains("format")) opt.format = cfg["format"];
  if (!opt.svg_set && cfg.contains("svg")) opt.svg = cfg["svg"].get<bool>();
  if (opt.format != "csv" && opt.format != "json")
    throw CLI::ValidationError("format", "must be csv or json");
  return cfg;
}

double getd(const json& cfg, const char* key, double fallback) {
  return cfg.contains(key) ? cfg[key].get<double>() : fallback;
}

int geti(const json& cfg, const char* key, int fallback) {
  return cfg.contains(key) ? cfg[key].get<int>() : fallback;
}

ck::OscillatorParams osc_params(const json& cfg) {
  return ck::OscillatorParams(getd(cfg, "mass", 1.0), getd(cfg, "omega", 1.0),
                              getd(cfg, "hbar", 1.0));
}

Complex random_disc(std::mt19937& rng, double radius) {
  std::uniform_real_distribution<double> ur(0.0, 1.0);
  const double r = radius * std::sqrt(ur(rng));
  const double th = 2.0 * std::numbers::pi * ur(rng);
  return Complex(r * std::cos(th), r * std::sin(th));
}

ck::Mat2c random_su2(std::mt19937& rng) {
  std::uniform_real_distribution<double> ur(0.0, 1.0);
  return ck::su2_euler(2.0 * std::numbers::pi * ur(rng),
                       std::acos(2.0 * ur(rng) - 1.0),
                       4.0 * std::numbers::pi * ur(rng));
}

int run_spread(const RunOptions& opt, const json& cfg) {
  const ck::OscillatorParams params = osc_params(cfg);
  const int n_points = geti(cfg, "num_points", 200);
  const double t_max = getd(cfg, "t_max", 4.0 * std::numbers::pi / params.omega);
  ck::SqueezedLabel label;
  label.gamma = getd(cfg, "gamma", 2.0) / (params.mass * params.omega);
  label.z = Complex(getd(cfg, "z_re", 1.0), getd(cfg, "z_im", 0.0));

  const ck::FockState state =
      ck::squeezed_fock_vector(label, geti(cfg, "n_max", 48), params);
  const ck::MomentData m0 = ck::moments(state);
  const double coherent_dx = std::sqrt(params.ground_var_x());

  Table t;
  t.names = {"t [1/omega]", "dx_free [x0]", "dx_ho [x0]", "dx_coherent [x0]"};
  t.columns.assign(4, {});
  for (int i = 0; i < n_points; ++i) {
    const double ti = t_max * i / (n_points - 1);
    t.columns[0].push_back(ti);
    t.columns[1].push_back(ck::spread_free(m0, ti, params.mass));
    t.columns[2].push_back(ck::spread_ho(m0, ti, params));
    t.columns[3].push_back(coherent_dx);
  }
  emit(t, opt, "spread");
  return kExitOk;
}

int run_characterize(const RunOptions& opt, const json& cfg) {
  const ck::OscillatorParams params = osc_params(cfg);
  std::mt19937 rng(cfg["seed"].get<unsigned>());
  std::uniform_real_distribution<double> ur(0.0, 1.0);
  const int n_states = geti(cfg, "num_states", 40);
  const double tol = getd(cfg, "tolerance", 1e-8);

  const double ground = std::sqrt(params.ground_var_x());
  const double half_quantum = 0.5 * params.hbar * params.omega;

  Table t;
  t.names = {"gamma*m*omega [1]",      "z_re [x0]",
             "z_im [x0]",              "res_constant_minimal [1]",
             "res_time_average [1]",   "res_energy_gap [1]",
             "coherent [bool]"};
  t.columns.assign(7, {});
  for (int i = 0; i < n_states; ++i) {
    const bool member = i % 2 == 0;
    ck::SqueezedLabel label;
    label.z = random_disc(rng, 1.5);
    const double f = member ? 1.0 : 1.3 + ur(rng);
    label.gamma = f / (params.mass * params.omega);
    const ck::FockState state = ck::squeezed_fock_vector(label, 64, params);
    const ck::MomentData m0 = ck::moments(state);
    const auto diag = ck::is_constant_minimal(m0, params, tol);
    t.columns[0].push_back(f);
    t.columns[1].push_back(label.z.real());
    t.columns[2].push_back(label.z.imag());
    t.columns[3].push_back(diag.residual_constancy_1 + diag.residual_minimality);
    t.columns[4].push_back(std::abs(ck::time_avg_spread(m0, params) - ground) /
                           ground);
    t.columns[5].push_back(
        std::abs(ck::energy_gap(state, params) - half_quantum) / half_quantum);
    t.columns[6].push_back(member ? 1.0 : 0.0);
  }
  emit(t, opt, "characterize");
  return kExitOk;
}

int run_displacement(const RunOptions& opt, const json& cfg) {
  const ck::OscillatorParams params = osc_params(cfg);
  std::mt19937 rng(cfg["seed"].get<unsigned>());
  const int n_pairs = geti(cfg, "num_pairs", 25);
  const int n_max = geti(cfg, "n_max", 48);
  const int interior = n_max / 2;

  Table t;
  t.names = {"pair [index]",  "alpha_re [1]", "alpha_im [1]",
             "beta_re [1]",   "beta_im [1]",  "group_law_residual [1]"};
  t.columns.assign(6, {});
  for (int i = 0; i < n_pairs; ++i) {
    const Complex alpha = random_disc(rng, 1.5);
    const Complex beta = random_disc(rng, 1.5);
    const auto comp = ck::compose_displacements(alpha, beta);
    const Eigen::MatrixXcd lhs =
        ck::displacement_matrix(comp.sum, n_max, params).entries;
    const Eigen::MatrixXcd rhs =
        comp.phase * (ck::displacement_matrix(alpha, n_max, params).entries *
                      ck::displacement_matrix(beta, n_max, params).entries);
    t.columns[0].push_back(i);
    t.columns[1].push_back(alpha.real());
    t.columns[2].push_back(alpha.imag());
    t.columns[3].push_back(beta.real());
    t.columns[4].push_back(beta.imag());
    t.columns[5].push_back((lhs - rhs)
                               .topLeftCorner(interior, interior)
                               .cwiseAbs()
                               .maxCoeff());
  }
  emit(t, opt, "displacement");
  return kExitOk;
}

int run_bargmann(const RunOptions& opt, const json& cfg) {
  std::mt19937 rng(cfg["seed"].get<unsigned>());
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n_max = geti(cfg, "n_max", 16);

  ck::PositionFunction phi;
  phi.params = osc_params(cfg);
  phi.fock_coeffs = Eigen::VectorXcd(n_max);
  for (int n = 0; n < n_max; ++n)
    phi.fock_coeffs(n) = Complex(gauss(rng), gauss(rng));
  phi.fock_coeffs /= phi.fock_coeffs.norm();
  const ck::BargmannFunction f = ck::sb_transform(phi);
  const double isometry = std::abs(ck::sb_inner(f, f) - Complex(1.0, 0.0));
  const double round_trip =
      (ck::sb_inverse(f, phi.params).fock_coeffs - phi.fock_coeffs).norm();

  Table t;
  t.names = {"quad_order [points]", "resolution_residual [1]",
             "isometry_residual [1]", "round_trip_residual [1]"};
  t.columns.assign(4, {});
  for (int q : {8, 10, 12, 14, 17, 20, 22}) {
    t.columns[0].push_back(q);
    t.columns[1].push_back(ck::resolution_of_identity_check(n_max, q));
    t.columns[2].push_back(isometry);
    t.columns[3].push_back(round_trip);
  }
  emit(t, opt, "bargmann");
  return kExitOk;
}

int run_fringes(const RunOptions& opt, const json& cfg) {
  const int n_points = geti(cfg, "num_points", 120);
  const double d_max = getd(cfg, "path_max", 12.0);

  ck::ModeSpec m1 = ck::default_mode();
  ck::ModeSpec m2 = ck::default_mode();
  m2.k *= getd(cfg, "mode_ratio", 1.15);

  // Single plane-wave mode: constant intensity, so the coherent visibility
  // trace is identically one.
  ck::MultiModeState coh;
  coh.modes = {m1};
  coh.body = ck::ProductCoherent{{Complex(getd(cfg, "alpha", 1.0), 0.0)}};

  ck::MultiModeState fock;
  fock.modes = {m1, m2};
  ck::FockTensor ft;
  ft.truncations = {3, 3};
  ft.coeffs = Eigen::VectorXcd::Zero(9);
  ft.coeffs(4) = 1.0;  // |1,1>
  fock.body = ft;

  const ck::MultiModeState laser =
      ck::laser_state(getd(cfg, "alpha", 1.0), geti(cfg, "laser_n_max", 24));

  Table t;
  t.names = {"path_difference [1/|k|]", "visibility_coherent [1]",
             "visibility_fock11 [1]", "visibility_laser [1]"};
  t.columns.assign(4, {});
  const ck::SpacetimePoint x1{Eigen::Vector3d(0.1, 0.0, 0.2), 0.0};
  for (int i = 0; i < n_points; ++i) {
    const double d = d_max * (i + 1) / n_points;
    const ck::SpacetimePoint x2{Eigen::Vector3d(0.1, 0.0, 0.2 + d), 0.0};
    auto vis = [&](const ck::MultiModeState& s) {
      return ck::visibility(std::real(ck::g1(s, x1, x1)),
                            std::real(ck::g1(s, x2, x2)), ck::g1(s, x1, x2));
    };
    t.columns[0].push_back(d);
    t.columns[1].push_back(vis(coh));
    t.columns[2].push_back(vis(fock));
    t.columns[3].push_back(vis(laser));
  }
  emit(t, opt, "fringes");
  return kExitOk;
}

int run_bloch(const RunOptions& opt, const json& cfg) {
  std::mt19937 rng(cfg["seed"].get<unsigned>());
  const int tj_max = 2 * geti(cfg, "j_max", 5);
  const int n_zeta = geti(cfg, "num_zeta", 50);

  Table t;
  t.names = {"twice_j [1]", "eigen_residual_max [1]",
             "saturation_residual [hbar^2]", "s2_resolution_residual [1]"};
  t.columns.assign(4, {});
  for (int tj = 1; tj <= tj_max; ++tj) {
    const ck::SpinJ j = ck::SpinJ::from_twice(tj);
    double eig = 0.0;
    for (int i = 0; i < n_zeta; ++i)
      eig = std::max(eig,
                     ck::bloch_eigen_residual(ck::bloch_state(j, random_disc(rng, 3.0))));
    const ck::UncertaintyPair p = ck::bloch_uncertainty_check(j);
    ck::SphereQuadratureSpec spec;
    spec.gl_order = tj + 2;
    spec.phi_points = 2 * tj + 6;
    t.columns[0].push_back(tj);
    t.columns[1].push_back(eig);
    t.columns[2].push_back(std::abs(p.product - p.half_mean3));
    t.columns[3].push_back(ck::s2_resolution_check(j, spec));
  }
  emit(t, opt, "bloch");
  return kExitOk;
}

int run_heatkernel(const RunOptions& opt, const json& cfg) {
  std::mt19937 rng(cfg["seed"].get<unsigned>());
  const double tt = getd(cfg, "t", 0.5);
  const ck::Mat2c g = random_su2(rng);

  // Partial sums in j_max, the semigroup defect at (t, t), and a boost scan
  // of the analytically continued kernel.
  Table t;
  t.names = {"j_max [1]", "partial_sum_re [1]", "partial_sum_abs [1]",
             "boost_rapidity [1]", "kernel_sl2c_abs [1]"};
  t.columns.assign(5, {});
  const int steps = geti(cfg, "num_points", 16);
  const double jm_base = ck::heat_kernel_required_jmax(tt, g, 1e-12);
  if (jm_base < 0.0) throw ck::TruncationError("heatkernel: t too small");
  for (int i = 0; i < steps; ++i) {
    const double jm = jm_base + 0.5 * i;
    const Complex v = ck::heat_kernel_su2(tt, g, jm);
    const double rap = 2.0 * i / (steps - 1);
    ck::SL2CElement x;
    x.h << std::exp(0.5 * rap), 0.0, 0.0, std::exp(-0.5 * rap);
    ck::SU2Element ge;
    ge.u = g;
    t.columns[0].push_back(jm);
    t.columns[1].push_back(v.real());
    t.columns[2].push_back(std::abs(v));
    t.columns[3].push_back(rap);
    t.columns[4].push_back(std::abs(ck::heat_kernel_cs(x, tt, ge, 12.0)));
  }
  emit(t, opt, "heatkernel");
  return kExitOk;
}

int run_spinnet(const RunOptions& opt, const json& cfg) {
  std::mt19937 rng(cfg["seed"].get<unsigned>());
  const double tau = getd(cfg, "tau", 1.0);
  const double a = getd(cfg, "a", 2.0);
  const double j_max = getd(cfg, "j_max", 2.0);

  ck::Graph dipole;
  dipole.num_nodes = 2;
  dipole.links = {{0, 1}, {0, 1}, {0, 1}};
  std::vector<ck::TwistedLink> labels(3);
  for (int l = 0; l < 3; ++l) {
    labels[l].zeta_s = random_disc(rng, 0.8);
    labels[l].zeta_t = random_disc(rng, 0.8);
    labels[l].xi = getd(cfg, "xi", 0.2);
    labels[l].a = a;
    labels[l].tau = tau;
  }
  const ck::GraphState state =
      ck::coherent_spin_network(dipole, labels, j_max, getd(cfg, "tail_tol", 1e-3));

  std::vector<ck::SU2Element> us(2);
  us[0].u = random_su2(rng);
  us[1].u = random_su2(rng);
  const double gauge = ck::gauss_invariance_check(state, us, 6,
                                                  cfg["seed"].get<unsigned>());

  std::vector<ck::SpinJ> spins = {ck::SpinJ(1.0), ck::SpinJ(1.0), ck::SpinJ(1.0)};
  std::vector<std::optional<Complex>> zetas = {labels[0].zeta_s,
                                               labels[1].zeta_s,
                                               labels[2].zeta_s};
  const ck::Intertwiner iota =
      ck::coherent_intertwiner(spins, zetas, {1, 1, 1});

  const auto ext = ck::extrinsic_coefficients(a, tau, 0.0, 1.0, j_max);
  Table t;
  t.names = {"twice_j [1]", "extrinsic_weight_abs [1]",
             "sector_coeff_abs [1]", "gauge_residual [1]",
             "intertwiner_norm [1]"};
  t.columns.assign(5, {});
  for (int tj = 0; tj <= static_cast<int>(std::lround(2.0 * j_max)); tj += 2) {
    const Eigen::VectorXcd sector =
        ck::csn_sector(dipole, labels, {tj, tj, tj});
    t.columns[0].push_back(tj);
    t.columns[1].push_back(std::abs(ext[tj]));
    t.columns[2].push_back(sector.size() > 0 ? std::abs(sector(0)) : 0.0);
    t.columns[3].push_back(gauge);
    t.columns[4].push_back(iota.norm());
  }
  emit(t, opt, "spinnet");
  return kExitOk;
}

int run_polyhedron(const RunOptions& opt, const json& cfg) {
  std::mt19937 rng(cfg["seed"].get<unsigned>());
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> ur(0.0, 1.0);
  const int nf = geti(cfg, "num_faces", 6);

  ck::FaceData data;
  while (true) {
    std::vector<Eigen::Vector3d> normals;
    std::vector<double> heights;
    for (int l = 0; l < nf; ++l) {
      Eigen::Vector3d n(gauss(rng), gauss(rng), gauss(rng));
      normals.push_back(n.normalized());
      heights.push_back(1.0 + 0.4 * ur(rng));
    }
    try {
      const std::vector<double> areas = ck::face_areas(normals, heights);
      double amax = 0.0;
      for (double v : areas) amax = std::max(amax, v);
      bool healthy = true;
      for (double v : areas) healthy = healthy && v > 0.05 * amax;
      if (!healthy) continue;
      data.normals = normals;
      data.areas = areas;
      data.signs.assign(nf, 1);
      break;
    } catch (const std::invalid_argument&) {
      continue;
    }
  }

  ck::SolverConfig solver;
  solver.seed = cfg["seed"].get<unsigned>();
  const ck::PolyhedronRealization rec = ck::minkowski_reconstruct(data, solver);

  Table t;
  t.names = {"face [index]", "target_area [L^2]", "measured_area [L^2]",
             "relative_error [1]", "height [L]"};
  t.columns.assign(5, {});
  for (int l = 0; l < nf; ++l) {
    t.columns[0].push_back(l);
    t.columns[1].push_back(data.areas[l]);
    t.columns[2].push_back(rec.areas[l]);
    t.columns[3].push_back(std::abs(rec.areas[l] - data.areas[l]) /
                           data.areas[l]);
    t.columns[4].push_back(rec.heights[l]);
  }
  emit(t, opt, "polyhedron");
  std::filesystem::create_directories(opt.out_dir);
  atomic_write(std::filesystem::path(opt.out_dir) / "polyhedron_realization.json",
               ck::realization_to_json(rec));
  atomic_write(std::filesystem::path(opt.out_dir) / "polyhedron_mesh.obj",
               ck::realization_to_mesh(rec));
  return kExitOk;
}

int run_accept(const RunOptions& opt, const json&) {
  const std::vector<ck::CriterionResult> results = ck::run_acceptance();
  bool all_pass = true;
  json verdict = json::array();
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    std::printf("criterion %2d %-32s %s  worst=%.3e tol=%.1e (%.1fs)\n", r.id,
                r.name.c_str(), r.pass ? "PASS" : "FAIL", r.worst, r.tolerance,
                r.seconds);
    std::printf("             %s\n", r.detail.c_str());
    verdict.push_back({{"id", r.id},
                       {"name", r.name},
                       {"pass", r.pass},
                       {"worst", r.worst},
                       {"tolerance", r.tolerance},
                       {"seconds", r.seconds},
                       {"detail", r.detail}});
  }
  std::filesystem::create_directories(opt.out_dir);
  atomic_write(std::filesystem::path(opt.out_dir) / "accept_verdict.json",
               json{{"pass", all_pass}, {"criteria", verdict}}.dump(2) + "\n");
  std::printf("acceptance: %s\n", all_pass ? "PASS" : "FAIL");
  return all_pass ? kExitOk : kExitAcceptance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coherent-kit: coherent-state numerics toolkit"};
  app.require_subcommand(1);

  RunOptions opt;
  int (*handler)(const RunOptions&, const json&) = nullptr;

  const std::vector<std::pair<std::string, int (*)(const RunOptions&, const json&)>>
      commands = {{"spread", run_spread},
                  {"characterize", run_characterize},
                  {"displacement", run_displacement},
                  {"bargmann", run_bargmann},
                  {"fringes", run_fringes},
                  {"bloch", run_bloch},
                  {"heatkernel", run_heatkernel},
                  {"spinnet", run_spinnet},
                  {"polyhedron", run_polyhedron},
                  {"accept", run_accept}};

  for (const auto& [name, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", opt.config_path, "JSON config file")->required();
    sub->add_option("--out", opt.out_dir, "output directory")
        ->each([&](const std::string&) { opt.out_set = true; });
    sub->add_option("--format", opt.format, "csv or json")
        ->each([&](const std::string&) { opt.format_set = true; });
    sub->add_flag("--svg", opt.svg, "also render SVG plots")
        ->each([&](const std::string&) { opt.svg_set = true; });
    sub->callback([&handler, fn]() { handler = fn; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const json cfg = load_config(opt);
    return handler(opt, cfg);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const ck::TruncationError& e) {
    std::fprintf(stderr, "refused: %s\n", e.what());
    return kExitRefusal;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "refused: %s\n", e.what());
    return kExitRefusal;
  }
}
