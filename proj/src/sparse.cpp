#include "hyperbh/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hyperbh {

SparseSymMatrix SparseSymMatrix::from_triplets(std::size_t n, std::vector<Triplet> entries) {
  const std::size_t off = std::count_if(entries.begin(), entries.end(),
                                        [](const Triplet& t) { return t.row != t.col; });
  entries.reserve(entries.size() + off);
  const std::size_t original = entries.size();
  for (std::size_t k = 0; k < original; ++k) {
    const Triplet t = entries[k];
    if (t.row < 0 || t.col < 0 || static_cast<std::size_t>(t.row) >= n ||
        static_cast<std::size_t>(t.col) >= n) {
      throw std::out_of_range("SparseSymMatrix: triplet index outside dimension");
    }
    if (t.row != t.col) entries.push_back({t.col, t.row, t.value});
  }
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseSymMatrix m;
  m.n_ = n;
  m.row_ptr_.assign(n + 1, 0);
  m.cols_.reserve(entries.size());
  m.vals_.reserve(entries.size());
  std::size_t k = 0;
  for (std::size_t r = 0; r < n; ++r) {
    while (k < entries.size() && static_cast<std::size_t>(entries[k].row) == r) {
      const std::int32_t c = entries[k].col;
      double v = 0.0;
      while (k < entries.size() && static_cast<std::size_t>(entries[k].row) == r && entries[k].col == c) {
        v += entries[k].value;
        ++k;
      }
      if (v != 0.0) {
        m.cols_.push_back(c);
        m.vals_.push_back(v);
      }
    }
    m.row_ptr_[r + 1] = m.cols_.size();
  }
  return m;
}

SparseSymMatrix SparseSymMatrix::identity(std::size_t n) {
  std::vector<Triplet> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = {static_cast<std::int32_t>(i), static_cast<std::int32_t>(i), 1.0};
  return from_triplets(n, std::move(t));
}

void SparseSymMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != n_ || y.size() != n_) throw std::invalid_argument("SparseSymMatrix::multiply: size mismatch");
  simd::spmv(view(), x, y);
}

double SparseSymMatrix::at(std::size_t i, std::size_t j) const {
  const auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  const auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  const auto it = std::lower_bound(first, last, static_cast<std::int32_t>(j));
  if (it == last || *it != static_cast<std::int32_t>(j)) return 0.0;
  return vals_[static_cast<std::size_t>(it - cols_.begin())];
}

std::vector<double> SparseSymMatrix::diagonal() const {
  std::vector<double> d(n_);
  for (std::size_t i = 0; i < n_; ++i) d[i] = at(i, i);
  return d;
}

double SparseSymMatrix::max_abs_diagonal() const {
  double m = 0.0;
  for (double v : diagonal()) m = std::max(m, std::abs(v));
  return m;
}

double SparseSymMatrix::row_sum(std::size_t i) const {
  double s = 0.0;
  for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += vals_[k];
  return s;
}

double SparseSymMatrix::gershgorin_bound() const {
  double b = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += std::abs(vals_[k]);
    b = std::max(b, s);
  }
  return b;
}

double SparseSymMatrix::gershgorin_lower() const {
  double b = n_ == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_; ++i) {
    double diag = 0.0;
    double off = 0.0;
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (static_cast<std::size_t>(cols_[k]) == i) {
        diag = vals_[k];
      } else {
        off += std::abs(vals_[k]);
      }
    }
    b = std::min(b, diag - off);
  }
  return b;
}

Eigen::MatrixXd SparseSymMatrix::to_dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      d(static_cast<Eigen::Index>(i), cols_[k]) = vals_[k];
    }
  }
  return d;
}

}  // namespace hyperbh
