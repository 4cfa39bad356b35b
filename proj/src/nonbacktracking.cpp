#include "hyperbh/nonbacktracking.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <stdexcept>
#include <string>

#include "hyperbh/bethe_hessian.hpp"

namespace hyperbh {

Eigen::MatrixXd NonBacktracking::to_dense() const {
  const auto d = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t r = 0; r < dim(); ++r) {
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(cols[k])) = 1.0;
  }
  return m;
}

NonBacktracking build_nonbacktracking(const Hypergraph& h, std::size_t max_dim) {
  if (h.total_incidences() > max_dim) {
    throw std::length_error("non-backtracking matrix of dimension " + std::to_string(h.total_incidences()) +
                            " exceeds the limit " + std::to_string(max_dim));
  }
  NonBacktracking nb;
  nb.arcs.reserve(h.total_incidences());
  // arc_of[e] gives the first arc index of hyperedge e; node order within e
  // follows the sorted node list.
  std::vector<std::size_t> arc_of(h.num_edges());
  for (int k : h.orders()) {
    for (std::size_t e : h.edges_of_order(k)) {
      arc_of[e] = nb.arcs.size();
      for (Node v : h.edge(e)) nb.arcs.emplace_back(v, e);
    }
  }
  auto arc_index = [&](Node j, std::size_t e) {
    const auto nodes = h.edge(e);
    return arc_of[e] + static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), j) - nodes.begin());
  };
  nb.row_ptr.reserve(nb.arcs.size() + 1);
  nb.row_ptr.push_back(0);
  std::vector<std::size_t> row;
  for (const auto& [i, e1] : nb.arcs) {
    row.clear();
    for (Node j : h.edge(e1)) {
      if (j == i) continue;
      for (std::size_t e2 : h.incident(j)) {
        if (e2 != e1) row.push_back(arc_index(j, e2));
      }
    }
    std::sort(row.begin(), row.end());
    nb.cols.insert(nb.cols.end(), row.begin(), row.end());
    nb.row_ptr.push_back(nb.cols.size());
  }
  return nb;
}

NbSpectrum nb_spectrum(const NonBacktracking& nb, bool with_vectors) {
  NbSpectrum s;
  if (nb.dim() == 0) return s;
  Eigen::EigenSolver<Eigen::MatrixXd> es(nb.to_dense(), with_vectors);
  if (es.info() != Eigen::Success) throw std::runtime_error("non-backtracking eigensolver failed");
  s.values = es.eigenvalues();
  if (with_vectors) s.vectors = es.eigenvectors();
  return s;
}

std::vector<double> real_eigenvalues_outside(const Eigen::VectorXcd& values, double radius, double imag_tol) {
  std::vector<double> out;
  for (const auto& z : values) {
    if (std::abs(z.imag()) <= imag_tol * std::max(1.0, std::abs(z)) && std::abs(z.real()) > radius) {
      out.push_back(z.real());
    }
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

Eigen::VectorXcd pool(const NonBacktracking& nb, std::size_t n, const Eigen::VectorXcd& nu) {
  Eigen::VectorXcd mu = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t a = 0; a < nb.dim(); ++a) mu(nb.arcs[a].first) += nu(static_cast<Eigen::Index>(a));
  return mu;
}

Correspondence verify_nb_bh_correspondence(const Hypergraph& h, double lambda) {
  if (h.num_nodes() > 5000) throw std::length_error("verify_nb_bh_correspondence: instance too large");
  const Eigen::MatrixXd b = build_bethe_hessian(h, lambda).matrix.to_dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
  Correspondence c;
  Eigen::Index arg = 0;
  const Eigen::VectorXd mag = es.eigenvalues().cwiseAbs();
  c.sigma_min = mag.minCoeff(&arg);
  c.norm = mag.maxCoeff();
  c.null_vector = es.eigenvectors().col(arg);
  return c;
}

CostReport cost_report(const Hypergraph& h) {
  CostReport r;
  r.bh_dim = static_cast<double>(h.num_nodes());
  r.bh_nonzeros_bound = static_cast<double>(h.num_nodes());
  for (int k : h.orders()) r.bh_nonzeros_bound += static_cast<double>(h.count_of_order(k)) * k * (k - 1) / 2.0;
  for (std::size_t i = 0; i < h.num_nodes(); ++i) {
    const Node v = static_cast<Node>(i);
    const double di = static_cast<double>(h.degree(v));
    r.nb_dim += di;
    for (int k : h.orders()) r.nb_nonzeros += static_cast<double>(h.degree(v, k)) * (k - 1) * (di - 1);
  }
  return r;
}

}  // namespace hyperbh
