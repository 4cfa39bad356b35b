#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hyperbh/simd.hpp"

namespace hyperbh {

struct Triplet {
  std::int32_t row;
  std::int32_t col;
  double value;
};

// Symmetric sparse matrix. Both triangles are stored in CSR form so that the
// product is a plain row sweep.
class SparseSymMatrix {
 public:
  SparseSymMatrix() = default;

  // Each triplet (i, j, v) with i != j contributes v at (i, j) and (j, i);
  // with i == j it contributes v to the diagonal. Duplicates are summed.
  static SparseSymMatrix from_triplets(std::size_t n, std::vector<Triplet> entries);
  static SparseSymMatrix identity(std::size_t n);

  std::size_t dim() const { return n_; }
  std::size_t stored_nonzeros() const { return vals_.size(); }

  void multiply(std::span<const double> x, std::span<double> y) const;
  double at(std::size_t i, std::size_t j) const;
  std::vector<double> diagonal() const;
  double max_abs_diagonal() const;
  // Upper bound on the spectral radius (max absolute row sum).
  double gershgorin_bound() const;
  // Smallest Gershgorin lower bound, min_i (a_ii - sum_{j != i} |a_ij|).
  double gershgorin_lower() const;
  double row_sum(std::size_t i) const;

  Eigen::MatrixXd to_dense() const;
  simd::CsrView view() const { return {n_, row_ptr_, cols_, vals_}; }

  std::span<const std::size_t> row_ptr() const { return row_ptr_; }
  std::span<const std::int32_t> cols() const { return cols_; }
  std::span<const double> values() const { return vals_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::int32_t> cols_;
  std::vector<double> vals_;
};

}  // namespace hyperbh
