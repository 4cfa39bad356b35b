#pragma once

#include "hyperbh/hypergraph.hpp"
#include "hyperbh/sparse.hpp"

namespace hyperbh {

struct BetheHessian {
  double eta = 0.0;
  SparseSymMatrix matrix;
};

// Bulk radius sum_k sqrt(d^(k) (k-1)) from the empirical per-order degrees.
double bulk_radius(const Hypergraph& h);

// bulk_radius(h), or std::domain_error if it does not exceed 1 + tol.
double select_eta(const Hypergraph& h, double tol = 1e-9);

// Per-order coefficients of D^(k) and A^(k):
//   B = I - sum_k alpha_k D^(k) + sum_k beta_k A^(k)
//   alpha_k = (k-1) / ((1-eta)(eta+k-1)),  beta_k = eta / ((1-eta)(eta+k-1)).
struct BhCoefficients {
  double alpha;
  double beta;
};
BhCoefficients bh_coefficients(int k, double eta);

// Throws std::domain_error when eta is (numerically) a pole: 1 or 1-k.
BetheHessian build_bethe_hessian(const Hypergraph& h, double eta);

}  // namespace hyperbh
