#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace ck {

/// Face normals, target areas and orientation signs of a closed
/// configuration; the outward normal of face l is signs[l] * normals[l].
struct FaceData {
  std::vector<Eigen::Vector3d> normals;
  std::vector<double> areas;
  std::vector<int> signs;

  int num_faces() const { return static_cast<int>(normals.size()); }
  void validate() const;
};

/// Convex polytope { x : m_l . x <= h_l } with per-face polygons.
struct PolyhedronRealization {
  std::vector<Eigen::Vector3d> outward_normals;
  std::vector<double> heights;
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::vector<int>> face_loops;  // vertex indices, oriented
  std::vector<double> areas;
  double volume = 0.0;
  double residual = 0.0;  // sqrt of the terminal least-squares objective
};

struct SolverConfig {
  int multi_starts = 3;
  int max_iterations = 400;
  double area_tolerance = 1e-6;  // relative to the mean target area
  unsigned seed = 2024;
};

// || sum_l signs[l] * areas[l] * normals[l] ||
double closure_residual(const FaceData& data);

// Areas of the faces of { x : normals[l] . x <= heights[l] }; 0 for faces
// cut away by the others.  Throws if the intersection is unbounded.
std::vector<double> face_areas(const std::vector<Eigen::Vector3d>& normals,
                               const std::vector<double>& heights);

// Full geometry (vertices, oriented face loops, areas, volume).
PolyhedronRealization build_polytope(
    const std::vector<Eigen::Vector3d>& normals,
    const std::vector<double>& heights);

// Heights h minimizing sum_l (A_l(h) - a_l)^2, centroid moved to the origin.
PolyhedronRealization minkowski_reconstruct(const FaceData& data,
                                            const SolverConfig& config = {});

double polytope_volume(const PolyhedronRealization& realization);

std::string realization_to_json(const PolyhedronRealization& realization);

// Wavefront-style "v ..." / "f ..." plain-text mesh.
std::string realization_to_mesh(const PolyhedronRealization& realization);

}  // namespace ck
