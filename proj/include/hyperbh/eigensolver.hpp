#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hyperbh/sparse.hpp"

namespace hyperbh {

struct EigenOptions {
  double tol = 1e-10;           // residual bound relative to the Gershgorin norm estimate
  int max_restarts = 1000;
  int basis = 0;                // Krylov basis size; 0 picks max(2k + 20, 40) capped at n
  std::uint64_t seed = 0x1234;  // start vector
  std::size_t dense_cutoff = 300;  // n at or below this uses a dense solver
};

// Ascending eigenvalues; vectors are unit-norm columns whose largest-magnitude
// entry is positive.
struct EigenPairs {
  std::vector<double> values;
  Eigen::MatrixXd vectors;
  std::vector<double> residuals;  // ||A v - lambda v||
  int restarts = 0;
};

class EigenConvergenceError : public std::runtime_error {
 public:
  EigenConvergenceError(const std::string& what, std::vector<double> residuals)
      : std::runtime_error(what), residuals_(std::move(residuals)) {}
  const std::vector<double>& residuals() const { return residuals_; }

 private:
  std::vector<double> residuals_;
};

// k algebraically smallest eigenpairs by thick-restart Lanczos with full
// reorthogonalisation (dense solve for small n).
EigenPairs eigensolve_lowest(const SparseSymMatrix& a, std::size_t k, const EigenOptions& opts = {});

// Dense reference path, used for small n and by tests.
EigenPairs eigensolve_dense(const SparseSymMatrix& a, std::size_t k);

// Makes the largest-magnitude entry of every column positive.
void fix_signs(Eigen::MatrixXd& vectors);

}  // namespace hyperbh
