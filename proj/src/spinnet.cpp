#include "ck/spinnet.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ck {

namespace {
constexpr Complex kI{0.0, 1.0};

double lfact(int n) { return std::lgamma(n + 1.0); }

Mat2c unimodular_inverse(const Mat2c& m) {
  Mat2c inv;
  inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return inv;
}

// Incident (link, is_target) slots of a node, link-ordered, target first.
std::vector<std::pair<int, bool>> node_slots(const Graph& g, int node) {
  std::vector<std::pair<int, bool>> slots;
  for (int l = 0; l < g.num_links(); ++l) {
    if (g.links[l].second == node) slots.emplace_back(l, true);
    if (g.links[l].first == node) slots.emplace_back(l, false);
  }
  return slots;
}

const Eigen::MatrixXd& invariant_basis_cached(const std::vector<SpinJ>& spins) {
  static std::map<std::vector<int>, Eigen::MatrixXd> cache;
  std::vector<int> key(spins.size());
  for (std::size_t i = 0; i < spins.size(); ++i) key[i] = spins[i].twice_j;
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, invariant_basis(spins)).first;
  return it->second;
}

Eigen::MatrixXd kron_real(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// T(..., t, ...) -> sum_t M(t, s) T(..., t, ...); columns are independent.
void apply_into_slot(Eigen::MatrixXcd& t, const std::vector<int>& dims,
                     int slot, const Eigen::MatrixXcd& m) {
  const int d = dims[slot];
  Eigen::Index stride = 1;
  for (std::size_t k = slot + 1; k < dims.size(); ++k) stride *= dims[k];
  const Eigen::Index total = t.rows();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(t.rows(), t.cols());
  for (Eigen::Index col = 0; col < t.cols(); ++col)
    for (Eigen::Index outer = 0; outer < total / (d * stride); ++outer)
      for (Eigen::Index inner = 0; inner < stride; ++inner) {
        const Eigen::Index base = outer * d * stride + inner;
        for (int s = 0; s < d; ++s) {
          Complex acc = 0.0;
          for (int tt = 0; tt < d; ++tt)
            acc += m(tt, s) * t(base + tt * stride, col);
          out(base + s * stride, col) = acc;
        }
      }
  t = std::move(out);
}

struct NodeBlock {
  std::vector<std::pair<int, bool>> slots;
  std::vector<int> dims;
  Eigen::MatrixXcd tensor;  // rows: flat slot index; cols: invariant basis
};

// Contract one spin sector: per-link matrices M_l[t-index, s-index] joined
// through the invariant bases at the nodes.  Result indexed row-major over
// node basis choices; empty when some node has no invariant subspace.
Eigen::VectorXcd contract_graph(const Graph& graph,
                                const std::vector<int>& twice_spins,
                                const std::vector<Eigen::MatrixXcd>& link_mats,
                                std::vector<int>* ranks_out = nullptr) {
  const int nl = graph.num_links();
  std::vector<NodeBlock> blocks(graph.num_nodes);
  std::vector<int> ranks(graph.num_nodes);
  Eigen::Index combos = 1;
  for (int n = 0; n < graph.num_nodes; ++n) {
    auto& b = blocks[n];
    b.slots = node_slots(graph, n);
    std::vector<SpinJ> spins;
    for (const auto& [l, tgt] : b.slots) {
      spins.push_back(SpinJ::from_twice(twice_spins[l]));
      b.dims.push_back(twice_spins[l] + 1);
    }
    const Eigen::MatrixXd& basis = invariant_basis_cached(spins);
    ranks[n] = static_cast<int>(basis.cols());
    combos *= ranks[n];
    b.tensor = basis.cast<Complex>();
  }
  if (ranks_out != nullptr) *ranks_out = ranks;
  if (combos == 0) return Eigen::VectorXcd();

  for (int l = 0; l < nl; ++l) {
    auto& b = blocks[graph.links[l].second];
    for (std::size_t s = 0; s < b.slots.size(); ++s)
      if (b.slots[s] == std::make_pair(l, true))
        apply_into_slot(b.tensor, b.dims, static_cast<int>(s), link_mats[l]);
  }

  // Join: one free index per link, shared by every slot that carries it.
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(combos);
  std::vector<int> idx(nl, 0);
  while (true) {
    Eigen::RowVectorXcd row(1);
    row(0) = 1.0;
    for (int n = 0; n < graph.num_nodes; ++n) {
      Eigen::Index flat = 0;
      for (std::size_t s = 0; s < blocks[n].slots.size(); ++s)
        flat = flat * blocks[n].dims[s] + idx[blocks[n].slots[s].first];
      Eigen::RowVectorXcd next(row.size() * ranks[n]);
      for (Eigen::Index i = 0; i < row.size(); ++i)
        for (int k = 0; k < ranks[n]; ++k)
          next(i * ranks[n] + k) = row(i) * blocks[n].tensor(flat, k);
      row = std::move(next);
    }
    out += row.transpose();

    int pos = nl - 1;
    while (pos >= 0 && ++idx[pos] == twice_spins[pos] + 1) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

Eigen::Index combo_index(const std::vector<int>& node_index,
                         const std::vector<int>& ranks) {
  Eigen::Index flat = 0;
  for (std::size_t n = 0; n < ranks.size(); ++n)
    flat = flat * ranks[n] + node_index[n];
  return flat;
}

std::vector<int> combo_decode(Eigen::Index flat, const std::vector<int>& ranks) {
  std::vector<int> out(ranks.size());
  for (std::size_t n = ranks.size(); n-- > 0;) {
    out[n] = static_cast<int>(flat % ranks[n]);
    flat /= ranks[n];
  }
  return out;
}

}  // namespace

Eigen::VectorXcd sector_contraction(const Graph& graph,
                                    const std::vector<int>& twice_spins,
                                    const std::vector<Eigen::MatrixXcd>& link_mats) {
  return contract_graph(graph, twice_spins, link_mats);
}

bool Graph::has_self_loops() const {
  for (const auto& [s, t] : links)
    if (s == t) return true;
  return false;
}

void Graph::validate() const {
  if (num_nodes <= 0) throw std::invalid_argument("Graph: no nodes");
  for (const auto& [s, t] : links)
    if (s < 0 || s >= num_nodes || t < 0 || t >= num_nodes)
      throw std::invalid_argument("Graph: link endpoint out of range");
}

double wigner_3j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
  if (tm1 + tm2 + tm3 != 0) return 0.0;
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm3) > tj3)
    return 0.0;
  if ((tj1 + tm1) % 2 != 0 || (tj2 + tm2) % 2 != 0 || (tj3 + tm3) % 2 != 0)
    return 0.0;
  if (tj3 < std::abs(tj1 - tj2) || tj3 > tj1 + tj2) return 0.0;
  if ((tj1 + tj2 + tj3) % 2 != 0) return 0.0;

  const int a1 = (tj1 + tj2 - tj3) / 2;
  const int a2 = (tj1 - tj2 + tj3) / 2;
  const int a3 = (-tj1 + tj2 + tj3) / 2;
  const int jtot = (tj1 + tj2 + tj3) / 2;
  const double log_pref =
      0.5 * (lfact(a1) + lfact(a2) + lfact(a3) - lfact(jtot + 1) +
             lfact((tj1 + tm1) / 2) + lfact((tj1 - tm1) / 2) +
             lfact((tj2 + tm2) / 2) + lfact((tj2 - tm2) / 2) +
             lfact((tj3 + tm3) / 2) + lfact((tj3 - tm3) / 2));

  const int kmin = std::max({0, (tj2 - tj3 - tm1) / 2, (tj1 - tj3 + tm2) / 2});
  const int kmax =
      std::min({a1, (tj1 - tm1) / 2, (tj2 + tm2) / 2});
  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    const double log_den = lfact(k) + lfact(a1 - k) +
                           lfact((tj1 - tm1) / 2 - k) +
                           lfact((tj2 + tm2) / 2 - k) +
                           lfact((tj3 - tj2 + tm1) / 2 + k) +
                           lfact((tj3 - tj1 - tm2) / 2 + k);
    sum += ((k % 2 == 0) ? 1.0 : -1.0) * std::exp(log_pref - log_den);
  }
  const int sign_exp = (tj1 - tj2 - tm3) / 2;
  return (((sign_exp % 2) + 2) % 2 == 0 ? 1.0 : -1.0) * sum;
}

Eigen::MatrixXd epsilon_form(SpinJ j) {
  const int d = j.dim();
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < d; ++k) e(k, d - 1 - k) = (k % 2 == 0) ? 1.0 : -1.0;
  return e;
}

Eigen::MatrixXd invariant_basis(const std::vector<SpinJ>& spins) {
  if (spins.empty()) throw std::invalid_argument("invariant_basis: no spins");
  Eigen::Index dim = 1;
  int tj_sum = 0;
  for (const SpinJ& j : spins) {
    dim *= j.dim();
    tj_sum += j.twice_j;
  }
  if (tj_sum % 2 != 0)  // half-integer total spin has no invariants
    return Eigen::MatrixXd(dim, 0);

  if (spins.size() == 1)
    return spins[0].twice_j == 0 ? Eigen::MatrixXd::Ones(1, 1)
                                 : Eigen::MatrixXd(dim, 0);

  if (spins.size() == 2) {
    if (spins[0].twice_j != spins[1].twice_j) return Eigen::MatrixXd(dim, 0);
    const int d = spins[0].dim();
    const Eigen::MatrixXd eps = epsilon_form(spins[0]);
    Eigen::MatrixXd basis(dim, 1);
    for (int k1 = 0; k1 < d; ++k1)
      for (int k2 = 0; k2 < d; ++k2)
        basis(k1 * d + k2, 0) = eps(k1, k2) / std::sqrt(static_cast<double>(d));
    return basis;
  }

  if (spins.size() == 3) {
    const int tj1 = spins[0].twice_j, tj2 = spins[1].twice_j,
              tj3 = spins[2].twice_j;
    if (tj3 < std::abs(tj1 - tj2) || tj3 > tj1 + tj2)
      return Eigen::MatrixXd(dim, 0);
    Eigen::MatrixXd basis(dim, 1);
    Eigen::Index row = 0;
    for (int k1 = 0; k1 <= tj1; ++k1)
      for (int k2 = 0; k2 <= tj2; ++k2)
        for (int k3 = 0; k3 <= tj3; ++k3)
          basis(row++, 0) =
              wigner_3j(tj1, tj2, tj3, tj1 - 2 * k1, tj2 - 2 * k2, tj3 - 2 * k3);
    const double n = basis.norm();
    if (n < 1e-12) return Eigen::MatrixXd(dim, 0);
    return basis / n;
  }

  if (dim > 4096)
    throw std::invalid_argument(
        "invariant_basis: tensor space too large for dense null-space solve");

  // Total J^2 is real symmetric: J2 = i A with A real antisymmetric, so
  // J.J = X^2 - A^2 + Z^2 with all three pieces real.
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t leg = 0; leg < spins.size(); ++leg) {
    const auto ops = angular_momentum_ops(spins[leg]);
    Eigen::MatrixXd xl = ops.j1.entries.real();
    Eigen::MatrixXd al = ops.j2.entries.imag();  // J2 = i * al
    Eigen::MatrixXd zl = ops.j3.entries.real();
    Eigen::MatrixXd lx = Eigen::MatrixXd::Identity(1, 1), la = lx, lz = lx;
    for (std::size_t m = 0; m < spins.size(); ++m) {
      const Eigen::MatrixXd id =
          Eigen::MatrixXd::Identity(spins[m].dim(), spins[m].dim());
      lx = kron_real(lx, m == leg ? xl : id);
      la = kron_real(la, m == leg ? al : id);
      lz = kron_real(lz, m == leg ? zl : id);
    }
    x += lx;
    a += la;
    z += lz;
  }
  const Eigen::MatrixXd jsq = x * x - a * a + z * z;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jsq);
  int rank = 0;
  while (rank < dim && solver.eigenvalues()(rank) < 0.25) ++rank;
  return solver.eigenvectors().leftCols(rank);
}

int invariant_rank(const std::vector<SpinJ>& spins) {
  return static_cast<int>(invariant_basis_cached(spins).cols());
}

Eigen::MatrixXd invariant_projector(const std::vector<SpinJ>& spins) {
  const Eigen::MatrixXd& b = invariant_basis_cached(spins);
  return b * b.transpose();
}

namespace {

Eigen::VectorXcd bloch_leg(SpinJ j, const std::optional<Complex>& zeta,
                           int orientation) {
  Eigen::VectorXcd b = bloch_state(j, zeta).coeffs;
  if (orientation == -1)
    return epsilon_form(j).cast<Complex>() * b.conjugate();
  if (orientation != 1)
    throw std::invalid_argument("orientation must be +1 or -1");
  return b;
}

Eigen::VectorXcd tensor_legs(const std::vector<Eigen::VectorXcd>& legs) {
  Eigen::VectorXcd v(1);
  v(0) = 1.0;
  for (const auto& leg : legs) {
    Eigen::VectorXcd next(v.size() * leg.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
      next.segment(i * leg.size(), leg.size()) = v(i) * leg;
    v = std::move(next);
  }
  return v;
}

}  // namespace

Intertwiner coherent_intertwiner(const std::vector<SpinJ>& spins,
                                 const std::vector<std::optional<Complex>>& zetas,
                                 const std::vector<int>& orientations) {
  if (spins.size() != zetas.size() || spins.size() != orientations.size())
    throw std::invalid_argument("coherent_intertwiner: size mismatch");
  std::vector<Eigen::VectorXcd> legs;
  for (std::size_t i = 0; i < spins.size(); ++i)
    legs.push_back(bloch_leg(spins[i], zetas[i], orientations[i]));
  const Eigen::MatrixXd& basis = invariant_basis_cached(spins);
  Intertwiner out;
  out.spins = spins;
  out.coeffs = basis.transpose().cast<Complex>() * tensor_legs(legs);
  out.zero_subspace = basis.cols() == 0;
  return out;
}

Intertwiner coherent_intertwiner_quadrature(
    const std::vector<SpinJ>& spins,
    const std::vector<std::optional<Complex>>& zetas,
    const std::vector<int>& orientations) {
  if (spins.size() != zetas.size() || spins.size() != orientations.size())
    throw std::invalid_argument("coherent_intertwiner: size mismatch");
  int degree = 0;
  for (const SpinJ& j : spins) degree += j.twice_j;
  std::vector<Eigen::VectorXcd> legs;
  for (std::size_t i = 0; i < spins.size(); ++i)
    legs.push_back(bloch_leg(spins[i], zetas[i], orientations[i]));

  Eigen::Index dim = 1;
  for (const SpinJ& j : spins) dim *= j.dim();
  Eigen::VectorXcd avg = Eigen::VectorXcd::Zero(dim);
  for (const HaarPoint& p : haar_quadrature(degree)) {
    std::vector<Eigen::VectorXcd> rotated;
    for (std::size_t i = 0; i < spins.size(); ++i)
      rotated.push_back(wigner_d(spins[i], p.u) * legs[i]);
    avg += p.weight * tensor_legs(rotated);
  }
  const Eigen::MatrixXd& basis = invariant_basis_cached(spins);
  Intertwiner out;
  out.spins = spins;
  out.coeffs = basis.transpose().cast<Complex>() * avg;
  out.zero_subspace = basis.cols() == 0;
  return out;
}

Complex intertwiner_overlap(const Intertwiner& i1, const Intertwiner& i2) {
  if (i1.spins.size() != i2.spins.size())
    throw std::invalid_argument("intertwiner_overlap: valence mismatch");
  for (std::size_t i = 0; i < i1.spins.size(); ++i)
    if (i1.spins[i].twice_j != i2.spins[i].twice_j)
      throw std::invalid_argument("intertwiner_overlap: spin mismatch");
  return i1.coeffs.dot(i2.coeffs);  // conjugates the left argument
}

Complex evaluate_graph_state(const GraphState& state,
                             const std::vector<Mat2c>& gs) {
  if (static_cast<int>(gs.size()) != state.graph.num_links())
    throw std::invalid_argument("evaluate_graph_state: wrong number of gs");
  Complex total = 0.0;
  std::vector<int> current_spins;
  Eigen::VectorXcd psi;
  std::vector<int> ranks;
  for (const auto& [key, coeff] : state.coeffs) {
    if (key.twice_spins != current_spins) {
      current_spins = key.twice_spins;
      std::vector<Eigen::MatrixXcd> mats;
      for (int l = 0; l < state.graph.num_links(); ++l) {
        const SpinJ j = SpinJ::from_twice(current_spins[l]);
        mats.push_back(wigner_d(j, gs[l]) *
                       epsilon_form(j).transpose().cast<Complex>());
      }
      psi = contract_graph(state.graph, current_spins, mats, &ranks);
    }
    if (psi.size() == 0) continue;
    total += coeff * psi(combo_index(key.node_index, ranks));
  }
  return total;
}

double gauss_invariance_check(const GraphState& state,
                              const std::vector<SU2Element>& u_per_node,
                              int num_samples, unsigned seed) {
  if (static_cast<int>(u_per_node.size()) != state.graph.num_nodes)
    throw std::invalid_argument("gauss_invariance_check: need one u per node");
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uphi(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> upsi(0.0, 4.0 * std::numbers::pi);
  std::uniform_real_distribution<double> uct(-1.0, 1.0);
  double worst = 0.0;
  for (int s = 0; s < num_samples; ++s) {
    std::vector<Mat2c> gs, gauged;
    for (int l = 0; l < state.graph.num_links(); ++l) {
      const Mat2c g = su2_euler(uphi(rng), std::acos(uct(rng)), upsi(rng));
      gs.push_back(g);
      const auto& [src, tgt] = state.graph.links[l];
      gauged.push_back(u_per_node[tgt].u * g *
                       unimodular_inverse(u_per_node[src].u));
    }
    worst = std::max(worst, std::abs(evaluate_graph_state(state, gs) -
                                     evaluate_graph_state(state, gauged)));
  }
  return worst;
}

std::vector<Complex> extrinsic_coefficients(double a, double tau, double theta,
                                            double immirzi, double j_max) {
  std::vector<Complex> out;
  for (int tj = 0; tj <= static_cast<int>(std::lround(2.0 * j_max)); ++tj) {
    const double j = 0.5 * tj;
    const double arg = j - 0.5 * a + 0.5;
    out.push_back((tj + 1.0) * std::exp(-tau * arg * arg) *
                  std::exp(-kI * (immirzi * theta * j)));
  }
  return out;
}

Mat2c twisted_holonomy(const TwistedLink& label) {
  // Half-angle convention e^{-i z sigma3 / 2}: the matrix is 4pi-periodic
  // in xi and the spin-j weights grow as e^{j a tau}, which is what the
  // large-a Gaussian peak at j = a/2 - 1/2 requires.
  const Complex z = label.xi + kI * (label.a * label.tau);
  Mat2c core = Mat2c::Zero();
  core(0, 0) = std::exp(-kI * (0.5 * z));
  core(1, 1) = std::exp(kI * (0.5 * z));
  return perelomov_u(label.zeta_s).u * core * perelomov_u(label.zeta_t).u;
}

Eigen::VectorXcd csn_sector(const Graph& graph,
                            const std::vector<TwistedLink>& labels,
                            const std::vector<int>& twice_spins) {
  graph.validate();
  if (static_cast<int>(labels.size()) != graph.num_links() ||
      static_cast<int>(twice_spins.size()) != graph.num_links())
    throw std::invalid_argument("csn_sector: one label and spin per link");
  std::vector<Eigen::MatrixXcd> mats;
  double weight = 1.0;
  for (int l = 0; l < graph.num_links(); ++l) {
    const SpinJ j = SpinJ::from_twice(twice_spins[l]);
    const double jv = j.value();
    weight *= (twice_spins[l] + 1.0) *
              std::exp(-jv * (jv + 1.0) * labels[l].tau);
    const Mat2c hinv = unimodular_inverse(twisted_holonomy(labels[l]));
    const Eigen::MatrixXd eps = epsilon_form(j);
    // eps^{-1} = (-1)^{2j} eps
    const double sgn = (twice_spins[l] % 2 == 0) ? 1.0 : -1.0;
    mats.push_back(wigner_d(j, hinv).transpose() *
                   (sgn * eps).cast<Complex>());
  }
  return weight * contract_graph(graph, twice_spins, mats);
}

GraphState coherent_spin_network(const Graph& graph,
                                 const std::vector<TwistedLink>& labels,
                                 double j_max, double tail_tol) {
  graph.validate();
  if (static_cast<int>(labels.size()) != graph.num_links())
    throw std::invalid_argument("coherent_spin_network: one label per link");
  for (int l = 0; l < graph.num_links(); ++l) {
    const Mat2c hinv = unimodular_inverse(twisted_holonomy(labels[l]));
    const double req =
        heat_kernel_required_jmax(labels[l].tau, hinv, tail_tol);
    if (req < 0.0 || req > j_max)
      throw TruncationError("coherent_spin_network: tail above bound on link " +
                            std::to_string(l) + ", need j_max >= " +
                            std::to_string(req));
  }

  GraphState state;
  state.graph = graph;
  state.j_max = j_max;
  const int tj_max = static_cast<int>(std::lround(2.0 * j_max));
  const int nl = graph.num_links();
  std::vector<int> spins(nl, 0);
  while (true) {
    Eigen::VectorXcd sector = csn_sector(graph, labels, spins);
    if (sector.size() > 0) {
      std::vector<int> ranks(graph.num_nodes);
      for (int n = 0; n < graph.num_nodes; ++n) {
        std::vector<SpinJ> node_spins;
        for (const auto& [l, tgt] : node_slots(graph, n))
          node_spins.push_back(SpinJ::from_twice(spins[l]));
        ranks[n] = invariant_rank(node_spins);
      }
      for (Eigen::Index c = 0; c < sector.size(); ++c)
        if (std::abs(sector(c)) > 0.0)
          state.coeffs[{spins, combo_decode(c, ranks)}] = sector(c);
    }
    int pos = nl - 1;
    while (pos >= 0 && ++spins[pos] > tj_max) spins[pos--] = 0;
    if (pos < 0) break;
  }
  return state;
}

TwistedLink twisted_decompose(const SL2CElement& h, double tau) {
  h.validate();
  if (!(tau > 0.0)) throw std::invalid_argument("twisted_decompose: tau <= 0");
  Eigen::JacobiSVD<Mat2c> svd(h.h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double s1 = svd.singularValues()(0);
  const double s2 = svd.singularValues()(1);

  TwistedLink out;
  out.tau = tau;
  if (s1 - s2 < 1e-10) {
    out.degenerate = true;
    out.a = 0.0;
    out.xi = std::fmod(-2.0 * std::arg(h.h(0, 0)) + 8.0 * std::numbers::pi,
                       4.0 * std::numbers::pi);
    return out;
  }

  Mat2c u = svd.matrixU() / std::sqrt(svd.matrixU().determinant());
  Mat2c v = svd.matrixV() / std::sqrt(svd.matrixV().determinant());
  // Branch mismatch of the two square roots shows up as an overall -1.
  const Complex phase = std::sqrt(svd.matrixU().determinant()) *
                        std::conj(std::sqrt(svd.matrixV().determinant()));
  if (std::real(phase) < 0.0) u = -u;

  // u = u(zeta_s) diag(e^{-i mu}, e^{i mu})
  const Complex alpha = u(0, 0), beta = u(0, 1);
  out.zeta_s = beta / std::conj(alpha);
  const double mu = -std::arg(alpha);

  // v^dag = diag(e^{-i nu}, e^{i nu}) u(zeta_t)
  const Mat2c w = v.adjoint();
  out.zeta_t = w(0, 1) / w(0, 0);
  const double nu = -std::arg(w(0, 0));

  out.a = 2.0 * std::log(s1) / tau;
  out.xi = std::fmod(2.0 * (mu + nu) + 16.0 * std::numbers::pi,
                     4.0 * std::numbers::pi);
  return out;
}

PolarLabel polar_decompose(const SL2CElement& h, double flux_scale) {
  h.validate();
  if (!(flux_scale > 0.0))
    throw std::invalid_argument("polar_decompose: flux_scale must be > 0");
  Eigen::SelfAdjointEigenSolver<Mat2c> solver(h.h.adjoint() * h.h);
  const Eigen::Vector2d ev = solver.eigenvalues();
  const Mat2c vec = solver.eigenvectors();
  // H = h_u * P with P = (H^dag H)^{1/2};  X = log P is Hermitian traceless.
  Mat2c p = Mat2c::Zero(), pinv = Mat2c::Zero(), x = Mat2c::Zero();
  for (int i = 0; i < 2; ++i) {
    const Mat2c proj = vec.col(i) * vec.col(i).adjoint();
    p += std::sqrt(ev(i)) * proj;
    pinv += proj / std::sqrt(ev(i));
    x += 0.5 * std::log(ev(i)) * proj;
  }
  PolarLabel out;
  out.h.u = h.h * pinv;
  out.flux_scale = flux_scale;
  // X = (flux_scale/2) E.sigma  =>  E_i = Tr(X sigma_i) / flux_scale
  out.flux(0) = std::real(x(0, 1) + x(1, 0)) / flux_scale;
  out.flux(1) = std::real(kI * (x(0, 1) - x(1, 0))) / flux_scale;
  out.flux(2) = std::real(x(0, 0) - x(1, 1)) / flux_scale;
  return out;
}

Mat2c polar_recompose(const PolarLabel& label) {
  Mat2c x;
  const double s = 0.5 * label.flux_scale;
  x << s * label.flux(2), s * (label.flux(0) - kI * label.flux(1)),
      s * (label.flux(0) + kI * label.flux(1)), -s * label.flux(2);
  Eigen::SelfAdjointEigenSolver<Mat2c> solver(x);
  Mat2c e = Mat2c::Zero();
  for (int i = 0; i < 2; ++i)
    e += std::exp(solver.eigenvalues()(i)) * solver.eigenvectors().col(i) *
         solver.eigenvectors().col(i).adjoint();
  return label.h.u * e;
}

Complex csn_link_kernel(double tau, const Mat2c& arg, double j_max) {
  Complex acc = 0.0;
  for (int tj = 0; tj <= static_cast<int>(std::lround(2.0 * j_max)); ++tj) {
    const double j = 0.5 * tj;
    acc += (tj + 1.0) * std::exp(-j * (j + 1.0) * tau) *
           su2_character(SpinJ::from_twice(tj), arg);
  }
  return acc;
}

namespace {

std::string num17(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string graph_state_to_json(const GraphState& state) {
  nlohmann::json j;
  j["num_nodes"] = state.graph.num_nodes;
  j["links"] = nlohmann::json::array();
  for (const auto& [s, t] : state.graph.links) j["links"].push_back({s, t});
  j["j_max"] = state.j_max;
  j["coeffs"] = nlohmann::json::array();
  for (const auto& [key, c] : state.coeffs)
    j["coeffs"].push_back({{"twice_spins", key.twice_spins},
                           {"node_index", key.node_index},
                           {"re", num17(std::real(c))},
                           {"im", num17(std::imag(c))}});
  return j.dump(2);
}

GraphState graph_state_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  GraphState state;
  state.graph.num_nodes = j.at("num_nodes").get<int>();
  for (const auto& link : j.at("links"))
    state.graph.links.emplace_back(link.at(0).get<int>(), link.at(1).get<int>());
  state.j_max = j.at("j_max").get<double>();
  for (const auto& entry : j.at("coeffs")) {
    SectorKey key;
    key.twice_spins = entry.at("twice_spins").get<std::vector<int>>();
    key.node_index = entry.at("node_index").get<std::vector<int>>();
    state.coeffs[key] = Complex(std::stod(entry.at("re").get<std::string>()),
                                std::stod(entry.at("im").get<std::string>()));
  }
  return state;
}

}  // namespace ck
