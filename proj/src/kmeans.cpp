#include "hyperbh/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

#include "hyperbh/simd.hpp"

namespace hyperbh {
namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::span<const double> row(const RowMatrix& m, Eigen::Index i) {
  return {m.data() + i * m.cols(), static_cast<std::size_t>(m.cols())};
}

struct Run {
  std::vector<int> labels;
  RowMatrix centers;
  double inertia;
  int iterations;
};

RowMatrix seed_plus_plus(const RowMatrix& x, int k, std::mt19937_64& rng) {
  const Eigen::Index n = x.rows();
  RowMatrix c(k, x.cols());
  std::uniform_int_distribution<Eigen::Index> first(0, n - 1);
  c.row(0) = x.row(first(rng));
  std::vector<double> dist(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) dist[i] = simd::sqdist(row(x, i), row(c, 0));
  for (int j = 1; j < k; ++j) {
    double total = 0.0;
    for (double d : dist) total += d;
    Eigen::Index pick = 0;
    if (total > 0) {
      std::uniform_real_distribution<double> u(0.0, total);
      double r = u(rng);
      for (pick = 0; pick < n - 1; ++pick) {
        r -= dist[pick];
        if (r <= 0) break;
      }
    } else {
      pick = first(rng);
    }
    c.row(j) = x.row(pick);
    for (Eigen::Index i = 0; i < n; ++i) dist[i] = std::min(dist[i], simd::sqdist(row(x, i), row(c, j)));
  }
  return c;
}

Run lloyd(const RowMatrix& x, RowMatrix c, int max_iter) {
  const Eigen::Index n = x.rows();
  const int k = static_cast<int>(c.rows());
  std::vector<int> labels(static_cast<std::size_t>(n), -1);
  std::vector<double> best(static_cast<std::size_t>(n));
  int it = 0;
  for (; it < max_iter; ++it) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      int arg = 0;
      double bd = std::numeric_limits<double>::infinity();
      for (int j = 0; j < k; ++j) {
        const double d = simd::sqdist(row(x, i), row(c, j));
        if (d < bd) {
          bd = d;
          arg = j;
        }
      }
      best[i] = bd;
      if (labels[i] != arg) {
        labels[i] = arg;
        changed = true;
      }
    }
    if (!changed && it > 0) break;

    RowMatrix sum = RowMatrix::Zero(k, x.cols());
    std::vector<Eigen::Index> count(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sum.row(labels[i]) += x.row(i);
      ++count[labels[i]];
    }
    for (int j = 0; j < k; ++j) {
      if (count[j] > 0) {
        c.row(j) = sum.row(j) / static_cast<double>(count[j]);
      } else {
        // Empty cluster: move it onto the worst-served point.
        const auto far = std::max_element(best.begin(), best.end()) - best.begin();
        c.row(j) = x.row(far);
        best[far] = 0.0;
      }
    }
  }
  double inertia = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    inertia += simd::sqdist(row(x, i), row(c, labels[i]));
  }
  return {std::move(labels), std::move(c), inertia, it};
}

}  // namespace

KMeansResult kmeans(const Eigen::MatrixXd& points, int k, const KMeansOptions& opts) {
  if (k < 1) throw std::invalid_argument("kmeans: k must be >= 1");
  if (points.rows() < k) throw std::invalid_argument("kmeans: fewer points than clusters");
  if (opts.restarts < 1) throw std::invalid_argument("kmeans: restarts must be >= 1");
  const RowMatrix x = points;
  std::mt19937_64 rng(opts.seed);
  Run best{{}, {}, std::numeric_limits<double>::infinity(), 0};
  for (int r = 0; r < opts.restarts; ++r) {
    Run run = lloyd(x, seed_plus_plus(x, k, rng), opts.max_iter);
    if (run.inertia < best.inertia) best = std::move(run);
  }
  return {std::move(best.labels), Eigen::MatrixXd(best.centers), best.inertia, best.iterations};
}

}  // namespace hyperbh
