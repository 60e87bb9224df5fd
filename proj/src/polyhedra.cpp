#include "ck/polyhedra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ck {

namespace {

struct Geometry {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::vector<int>> face_loops;
  std::vector<double> areas;
};

// Directions probing the recession cone { d : m_l . d <= 0 }.
std::vector<Eigen::Vector3d> probe_directions(
    const std::vector<Eigen::Vector3d>& normals) {
  std::vector<Eigen::Vector3d> dirs;
  for (const auto& n : normals) dirs.push_back(-n);
  for (std::size_t i = 0; i < normals.size(); ++i)
    for (std::size_t j = i + 1; j < normals.size(); ++j) {
      const Eigen::Vector3d c = normals[i].cross(normals[j]);
      if (c.norm() > 1e-12) {
        dirs.push_back(c.normalized());
        dirs.push_back(-c.normalized());
      }
    }
  const int nth = 12, nph = 24;
  for (int it = 1; it < nth; ++it)
    for (int ip = 0; ip < nph; ++ip) {
      const double th = std::numbers::pi * it / nth;
      const double ph = 2.0 * std::numbers::pi * ip / nph;
      dirs.emplace_back(std::sin(th) * std::cos(ph),
                        std::sin(th) * std::sin(ph), std::cos(th));
    }
  dirs.emplace_back(0.0, 0.0, 1.0);
  dirs.emplace_back(0.0, 0.0, -1.0);
  return dirs;
}

Geometry enumerate_polytope(const std::vector<Eigen::Vector3d>& normals,
                            const std::vector<double>& heights) {
  const int nf = static_cast<int>(normals.size());
  if (nf < 4) throw std::invalid_argument("polytope: need at least 4 faces");
  if (nf > 12) throw std::invalid_argument("polytope: capped at 12 faces");

  for (const auto& d : probe_directions(normals)) {
    double worst = -1e300;
    for (const auto& n : normals) worst = std::max(worst, n.dot(d));
    if (worst <= 1e-10)
      throw std::invalid_argument("polytope: unbounded half-space intersection");
  }

  double scale = 0.0;
  for (double h : heights) scale = std::max(scale, std::abs(h));
  scale = std::max(scale, 1.0);
  const double tol = 1e-9 * scale;

  Geometry geo;
  std::vector<std::vector<int>> vertex_faces;
  for (int i = 0; i < nf; ++i)
    for (int j = i + 1; j < nf; ++j)
      for (int k = j + 1; k < nf; ++k) {
        Eigen::Matrix3d m;
        m.row(0) = normals[i];
        m.row(1) = normals[j];
        m.row(2) = normals[k];
        if (std::abs(m.determinant()) < 1e-10) continue;
        const Eigen::Vector3d x =
            m.partialPivLu().solve(Eigen::Vector3d(heights[i], heights[j], heights[k]));
        bool inside = true;
        for (int l = 0; l < nf && inside; ++l)
          inside = normals[l].dot(x) <= heights[l] + tol;
        if (!inside) continue;
        bool duplicate = false;
        for (std::size_t v = 0; v < geo.vertices.size() && !duplicate; ++v)
          duplicate = (geo.vertices[v] - x).norm() < 1e-7 * scale;
        if (duplicate) continue;
        geo.vertices.push_back(x);
      }

  if (geo.vertices.size() < 4)
    throw std::invalid_argument("polytope: degenerate (fewer than 4 vertices)");

  geo.face_loops.resize(nf);
  geo.areas.assign(nf, 0.0);
  for (int l = 0; l < nf; ++l) {
    std::vector<int> on_face;
    for (std::size_t v = 0; v < geo.vertices.size(); ++v)
      if (std::abs(normals[l].dot(geo.vertices[v]) - heights[l]) < 1e-6 * scale)
        on_face.push_back(static_cast<int>(v));
    if (on_face.size() < 3) continue;

    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (int v : on_face) centroid += geo.vertices[v];
    centroid /= static_cast<double>(on_face.size());
    Eigen::Vector3d e1 = normals[l].unitOrthogonal();
    Eigen::Vector3d e2 = normals[l].cross(e1);
    std::vector<std::pair<double, int>> angled;
    for (int v : on_face) {
      const Eigen::Vector3d r = geo.vertices[v] - centroid;
      angled.emplace_back(std::atan2(r.dot(e2), r.dot(e1)), v);
    }
    std::sort(angled.begin(), angled.end());
    std::vector<int> loop;
    for (const auto& [ang, v] : angled) loop.push_back(v);

    double area2 = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const Eigen::Vector3d a = geo.vertices[loop[i]] - centroid;
      const Eigen::Vector3d b =
          geo.vertices[loop[(i + 1) % loop.size()]] - centroid;
      area2 += a.cross(b).dot(normals[l]);
    }
    if (area2 < 0.0) {
      std::reverse(loop.begin(), loop.end());
      area2 = -area2;
    }
    geo.face_loops[l] = std::move(loop);
    geo.areas[l] = 0.5 * area2;
  }
  return geo;
}

// d A_l / d h_k from support-function calculus: moving plane k outward
// sweeps the shared edge across face l at rate (edge length)/sin(theta_lk).
Eigen::MatrixXd area_jacobian(const std::vector<Eigen::Vector3d>& normals,
                              const std::vector<double>& heights,
                              const Geometry& geo, double missing_scale) {
  const int nf = static_cast<int>(normals.size());
  double scale = 1.0;
  for (double h : heights) scale = std::max(scale, std::abs(h));
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(nf, nf);
  for (int l = 0; l < nf; ++l) {
    const auto& loop = geo.face_loops[l];
    if (loop.size() < 3) {
      // Cut-away face: surrogate pull so the solver can bring it back.
      jac(l, l) = -missing_scale;
      continue;
    }
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const Eigen::Vector3d& v0 = geo.vertices[loop[i]];
      const Eigen::Vector3d& v1 = geo.vertices[loop[(i + 1) % loop.size()]];
      const double elen = (v1 - v0).norm();
      if (elen < 1e-12 * scale) continue;
      for (int k = 0; k < nf; ++k) {
        if (k == l) continue;
        if (std::abs(normals[k].dot(v0) - heights[k]) < 1e-6 * scale &&
            std::abs(normals[k].dot(v1) - heights[k]) < 1e-6 * scale) {
          const double c = normals[l].dot(normals[k]);
          const double s = std::sqrt(std::max(1e-12, 1.0 - c * c));
          jac(l, k) += elen / s;
          jac(l, l) -= elen * c / s;
          break;
        }
      }
    }
  }
  return jac;
}

}  // namespace

void FaceData::validate() const {
  if (normals.size() != areas.size() || normals.size() != signs.size())
    throw std::invalid_argument("FaceData: size mismatch");
  for (const auto& n : normals)
    if (std::abs(n.norm() - 1.0) > 1e-12)
      throw std::invalid_argument("FaceData: normals must be unit vectors");
  for (double a : areas)
    if (!(a > 0.0)) throw std::invalid_argument("FaceData: areas must be > 0");
  for (int s : signs)
    if (s != 1 && s != -1)
      throw std::invalid_argument("FaceData: signs must be +1 or -1");
}

double closure_residual(const FaceData& data) {
  data.validate();
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  for (int l = 0; l < data.num_faces(); ++l)
    sum += data.signs[l] * data.areas[l] * data.normals[l];
  return sum.norm();
}

std::vector<double> face_areas(const std::vector<Eigen::Vector3d>& normals,
                               const std::vector<double>& heights) {
  return enumerate_polytope(normals, heights).areas;
}

PolyhedronRealization build_polytope(
    const std::vector<Eigen::Vector3d>& normals,
    const std::vector<double>& heights) {
  Geometry geo = enumerate_polytope(normals, heights);
  PolyhedronRealization r;
  r.outward_normals = normals;
  r.heights = heights;
  r.vertices = std::move(geo.vertices);
  r.face_loops = std::move(geo.face_loops);
  r.areas = std::move(geo.areas);
  r.volume = polytope_volume(r);
  return r;
}

PolyhedronRealization minkowski_reconstruct(const FaceData& data,
                                            const SolverConfig& config) {
  data.validate();
  const int nf = data.num_faces();
  if (nf < 4)
    throw std::invalid_argument("minkowski_reconstruct: need >= 4 faces");
  if (closure_residual(data) > 1e-8)
    throw std::invalid_argument("minkowski_reconstruct: closure violated");

  std::vector<Eigen::Vector3d> outward(nf);
  for (int l = 0; l < nf; ++l) outward[l] = data.signs[l] * data.normals[l];
  for (int i = 0; i < nf; ++i)
    for (int j = i + 1; j < nf; ++j)
      if ((outward[i] - outward[j]).norm() < 1e-10)
        throw std::invalid_argument("minkowski_reconstruct: repeated normals");

  double mean_area = 0.0;
  for (double a : data.areas) mean_area += a;
  mean_area /= nf;
  const double length = std::sqrt(mean_area);

  // Translation-gauge functional tau(h): the shift d with h_l -> h_l + n_l.d
  // maps tau -> tau + d.  Penalizing it makes the least-squares minimum
  // unique (the areas alone are translation invariant).
  Eigen::Matrix3d nn = Eigen::Matrix3d::Zero();
  Eigen::MatrixXd nmat(3, nf);
  for (int l = 0; l < nf; ++l) {
    nn += outward[l] * outward[l].transpose();
    nmat.col(l) = outward[l];
  }
  const Eigen::MatrixXd gauge_rows =
      (mean_area / length) * (nn.inverse() * nmat);  // 3 x nf

  // Residual vector [A_l(h) - a_l ; gauge] and its Jacobian; returns false
  // when the heights describe a degenerate or unbounded polytope.
  auto residual = [&](const Eigen::VectorXd& h, Eigen::VectorXd& r,
                      Eigen::MatrixXd* jac) {
    std::vector<double> hv(h.data(), h.data() + nf);
    Geometry geo;
    try {
      geo = enumerate_polytope(outward, hv);
    } catch (const std::invalid_argument&) {
      return false;
    }
    r.resize(nf + 3);
    for (int l = 0; l < nf; ++l) r(l) = geo.areas[l] - data.areas[l];
    r.segment(nf, 3) = gauge_rows * h;
    if (jac != nullptr) {
      jac->resize(nf + 3, nf);
      jac->topRows(nf) = area_jacobian(outward, hv, geo, mean_area / length);
      jac->bottomRows(3) = gauge_rows;
    }
    return true;
  };

  std::mt19937 rng(config.seed);
  std::uniform_real_distribution<double> jitter(0.85, 1.25);
  double best_obj = 1e300;
  Eigen::VectorXd best_h;
  for (int start = 0; start < config.multi_starts; ++start) {
    Eigen::VectorXd h(nf);
    for (int l = 0; l < nf; ++l) {
      h(l) = std::sqrt(data.areas[l]);
      if (start > 0) h(l) *= jitter(rng);
    }
    Eigen::VectorXd r;
    Eigen::MatrixXd jac;
    if (!residual(h, r, &jac)) continue;
    double obj = r.squaredNorm();
    double lambda = 1e-3;
    for (int iter = 0; iter < config.max_iterations; ++iter) {
      const Eigen::MatrixXd jtj = jac.transpose() * jac;
      const Eigen::VectorXd jtr = jac.transpose() * r;
      if (jtr.norm() < 1e-14 * mean_area) break;
      bool accepted = false;
      for (int damp = 0; damp < 25 && !accepted; ++damp) {
        const Eigen::VectorXd step =
            (jtj + lambda * Eigen::MatrixXd::Identity(nf, nf))
                .ldlt()
                .solve(-jtr);
        const Eigen::VectorXd hnew = h + step;
        Eigen::VectorXd rnew;
        Eigen::MatrixXd jnew;
        if (residual(hnew, rnew, &jnew) && rnew.squaredNorm() < obj) {
          h = hnew;
          r = rnew;
          jac = jnew;
          obj = rnew.squaredNorm();
          lambda = std::max(1e-12, lambda * 0.3);
          accepted = true;
        } else {
          lambda *= 8.0;
        }
      }
      if (!accepted) break;
      if (obj < 1e-28 * mean_area * mean_area) break;
    }
    // Report the area misfit alone (the gauge rows vanish only at tau = 0).
    double area_obj = 0.0;
    for (int l = 0; l < nf; ++l) area_obj += r(l) * r(l);
    if (area_obj < best_obj) {
      best_obj = area_obj;
      best_h = h;
    }
  }

  const double tol = config.area_tolerance * mean_area;
  if (best_h.size() == 0 ||
      std::sqrt(best_obj) > tol * std::sqrt(static_cast<double>(nf))) {
    std::ostringstream msg;
    msg << "minkowski_reconstruct: solver stagnated, best residual "
        << (best_h.size() == 0 ? -1.0 : std::sqrt(best_obj));
    throw std::runtime_error(msg.str());
  }

  std::vector<double> heights(best_h.data(), best_h.data() + nf);
  PolyhedronRealization r = build_polytope(outward, heights);
  r.residual = std::sqrt(best_obj);

  // Translation gauge: centroid of the vertex set at the origin.
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const auto& v : r.vertices) centroid += v;
  centroid /= static_cast<double>(r.vertices.size());
  for (auto& v : r.vertices) v -= centroid;
  for (int l = 0; l < nf; ++l) r.heights[l] -= outward[l].dot(centroid);
  r.volume = polytope_volume(r);
  return r;
}

double polytope_volume(const PolyhedronRealization& realization) {
  double v = 0.0;
  for (std::size_t l = 0; l < realization.areas.size(); ++l)
    v += realization.heights[l] * realization.areas[l];
  return v / 3.0;
}

std::string realization_to_json(const PolyhedronRealization& r) {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : r.vertices) j["vertices"].push_back({v(0), v(1), v(2)});
  j["normals"] = nlohmann::json::array();
  for (const auto& n : r.outward_normals)
    j["normals"].push_back({n(0), n(1), n(2)});
  j["heights"] = r.heights;
  j["areas"] = r.areas;
  j["face_loops"] = r.face_loops;
  j["volume"] = r.volume;
  j["residual"] = r.residual;
  return j.dump(2);
}

std::string realization_to_mesh(const PolyhedronRealization& r) {
  std::ostringstream os;
  os.precision(12);
  for (const auto& v : r.vertices)
    os << "v " << v(0) << " " << v(1) << " " << v(2) << "\n";
  for (const auto& loop : r.face_loops) {
    if (loop.size() < 3) continue;
    os << "f";
    for (int v : loop) os << " " << v + 1;
    os << "\n";
  }
  return os.str();
}

}  // namespace ck
