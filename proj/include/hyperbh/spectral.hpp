#pragma once

#include <optional>

#include "hyperbh/bethe_hessian.hpp"
#include "hyperbh/eigensolver.hpp"
#include "hyperbh/kmeans.hpp"

namespace hyperbh {

struct SpectralOptions {
  std::optional<double> eta;  // overrides the bulk radius
  std::optional<int> fixed_q;
  double negative_tol = 1e-8;  // relative to max |B_ii|
  bool row_normalize = false;
  EigenOptions eigen;
  KMeansOptions kmeans;
};

struct SpectralResult {
  double eta = 0.0;
  std::vector<double> eigenvalues;  // ascending, all that were extracted
  int q_hat = 0;                    // negative eigenvalues found
  Eigen::MatrixXd embedding;        // n x q, unit-norm orthogonal columns
  Partition labels;
};

struct NegativeSpectrum {
  int count = 0;
  EigenPairs pairs;  // lowest eigenpairs, at least count + 1 of them unless count == n
};

// Eigenvalues below -tol, found by extracting the lowest 4, 8, 16, ...
// eigenpairs until one of them is not negative. tol < 0 selects the default
// 1e-8 * max |B_ii|.
NegativeSpectrum negative_spectrum(const SparseSymMatrix& b, double tol = -1.0, const EigenOptions& opts = {});
int count_negative(const SparseSymMatrix& b, double tol = -1.0, const EigenOptions& opts = {});

// Bethe Hessian spectral clustering. Throws std::runtime_error("no detectable
// structure") when no eigenvalue is negative and q is not fixed.
SpectralResult cluster(const Hypergraph& h, const SpectralOptions& opts = {});

// Clusters the rows of an embedding into q groups (q == 1 gives one group).
Partition embed_and_cluster(const Eigen::MatrixXd& embedding, int q, bool row_normalize, const KMeansOptions& opts);

}  // namespace hyperbh
