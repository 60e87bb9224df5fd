#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ck/su2.hpp"

namespace ck {

/// Finite directed graph; links are (source, target) node indices.
struct Graph {
  int num_nodes = 0;
  std::vector<std::pair<int, int>> links;

  int num_links() const { return static_cast<int>(links.size()); }
  bool has_self_loops() const;
  void validate() const;
};

/// Twisted-geometry label of one link: H = u(zeta_s) e^{-i z s3/2} u(zeta_t),
/// z = xi + i a tau (half-angle convention; xi lives mod 4 pi).
struct TwistedLink {
  Complex zeta_s;
  Complex zeta_t;
  double xi = 0.0;
  double a = 1.0;
  double tau = 1.0;
  double immirzi = 1.0;
  bool degenerate = false;
};

/// Holonomy-flux label: H = h exp(flux_scale * (E . sigma) / 2); the
/// constants 8 pi G hbar gamma are folded into flux_scale.
struct PolarLabel {
  SU2Element h;
  Eigen::Vector3d flux = Eigen::Vector3d::Zero();
  double flux_scale = 1.0;
};

/// Invariant tensor at a node, expressed in the canonical orthonormal
/// (real) basis of Inv(tensor of H_{j_i}).
struct Intertwiner {
  std::vector<SpinJ> spins;
  Eigen::VectorXcd coeffs;
  bool zero_subspace = false;

  double norm() const { return coeffs.norm(); }
};

struct SectorKey {
  std::vector<int> twice_spins;  // per link
  std::vector<int> node_index;   // invariant-basis index per node

  auto operator<=>(const SectorKey&) const = default;
};

/// Gauge-invariant cylindrical function truncated at j <= j_max, stored by
/// spin-network-basis coefficients.
struct GraphState {
  Graph graph;
  double j_max = 0.0;
  std::map<SectorKey, Complex> coeffs;
};

// Wigner 3j symbol, arguments as twice-values.
double wigner_3j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3);

// Invariant bilinear form on H_j (k-indexed antidiagonal signs).
Eigen::MatrixXd epsilon_form(SpinJ j);

// Orthonormal real basis of Inv(tensor of H_{j_i}), columns = basis vectors.
// Closed forms for valence <= 3, total-J^2 null space otherwise.
Eigen::MatrixXd invariant_basis(const std::vector<SpinJ>& spins);

int invariant_rank(const std::vector<SpinJ>& spins);

// Orthogonal projector onto the invariant subspace.
Eigen::MatrixXd invariant_projector(const std::vector<SpinJ>& spins);

// Group-averaged tensor product of Bloch states (projector path).
// orientation +1 takes |j, n>, -1 its dual.
Intertwiner coherent_intertwiner(const std::vector<SpinJ>& spins,
                                 const std::vector<std::optional<Complex>>& zetas,
                                 const std::vector<int>& orientations);

// Independent path: Haar quadrature of the defining group integral.
Intertwiner coherent_intertwiner_quadrature(
    const std::vector<SpinJ>& spins,
    const std::vector<std::optional<Complex>>& zetas,
    const std::vector<int>& orientations);

Complex intertwiner_overlap(const Intertwiner& i1, const Intertwiner& i2);

// Point evaluation of the cylindrical function, one group element per link.
Complex evaluate_graph_state(const GraphState& state,
                             const std::vector<Mat2c>& gs);

// Max |Psi(g) - Psi(gauge-transformed g)| over random sample points.
double gauss_invariance_check(const GraphState& state,
                              const std::vector<SU2Element>& u_per_node,
                              int num_samples = 8, unsigned seed = 1234);

// Gaussian-in-spin weights (2j+1) e^{-tau (j - a/2 + 1/2)^2} e^{-i gamma theta j}
// for j = 0, 1/2, ..., j_max.
std::vector<Complex> extrinsic_coefficients(double a, double tau, double theta,
                                            double immirzi, double j_max);

// Contraction of per-link matrices M_l[target-index, source-index] through
// the invariant bases at the nodes; indexed row-major over node basis
// choices, empty when some node has no invariant subspace.
Eigen::VectorXcd sector_contraction(const Graph& graph,
                                    const std::vector<int>& twice_spins,
                                    const std::vector<Eigen::MatrixXcd>& link_mats);

// Spin-network coefficients of one spin sector of the coherent
// spin-network state (indexed over node-basis combinations).
Eigen::VectorXcd csn_sector(const Graph& graph,
                            const std::vector<TwistedLink>& labels,
                            const std::vector<int>& twice_spins);

GraphState coherent_spin_network(const Graph& graph,
                                 const std::vector<TwistedLink>& labels,
                                 double j_max, double tail_tol = 1e-8);

Mat2c twisted_holonomy(const TwistedLink& label);

TwistedLink twisted_decompose(const SL2CElement& h, double tau);

PolarLabel polar_decompose(const SL2CElement& h, double flux_scale = 1.0);

Mat2c polar_recompose(const PolarLabel& label);

// Truncated SU(2) heat kernel rho_t(x^-1 g) used by the quadrature oracle.
Complex csn_link_kernel(double tau, const Mat2c& arg, double j_max);

// JSON round-trip of GraphState (17 significant digits).
std::string graph_state_to_json(const GraphState& state);
GraphState graph_state_from_json(const std::string& text);

}  // namespace ck
