#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "hyperbh/hypergraph.hpp"

namespace hyperbh {

// Non-backtracking operator on directed hyperedges i->e. Rows/columns are
// grouped by hyperedge order, then hyperedge index, then node. Row (i->e1)
// has ones at (j->e2) for j in e1 \ {i}, e2 containing j, e2 != e1.
struct NonBacktracking {
  std::vector<std::pair<Node, std::size_t>> arcs;  // (i, e)
  std::vector<std::size_t> row_ptr;
  std::vector<std::size_t> cols;

  std::size_t dim() const { return arcs.size(); }
  std::size_t nonzeros() const { return cols.size(); }
  Eigen::MatrixXd to_dense() const;
};

// Throws std::length_error when sum_i d_i exceeds max_dim.
NonBacktracking build_nonbacktracking(const Hypergraph& h, std::size_t max_dim = 5000);

struct NbSpectrum {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;  // empty unless requested
};
NbSpectrum nb_spectrum(const NonBacktracking& nb, bool with_vectors = false);

// Real eigenvalues (|Im| <= imag_tol * max(1, |lambda|)) with modulus above
// radius, descending.
std::vector<double> real_eigenvalues_outside(const Eigen::VectorXcd& values, double radius, double imag_tol = 1e-6);

// mu_i = sum over e containing i of nu_{i->e}.
Eigen::VectorXcd pool(const NonBacktracking& nb, std::size_t n, const Eigen::VectorXcd& nu);

struct Correspondence {
  double sigma_min = 0.0;   // smallest singular value of B_lambda
  double norm = 0.0;        // spectral norm of B_lambda
  Eigen::VectorXd null_vector;  // right singular vector for sigma_min
};

// Evaluates the Bethe Hessian at eta = lambda densely. Small instances only.
Correspondence verify_nb_bh_correspondence(const Hypergraph& h, double lambda);

struct CostReport {
  double nb_dim = 0;
  double nb_nonzeros = 0;
  double bh_dim = 0;
  double bh_nonzeros_bound = 0;  // diagonal plus one triangle
};
// Closed-form sizes; nothing is materialised.
CostReport cost_report(const Hypergraph& h);

}  // namespace hyperbh
