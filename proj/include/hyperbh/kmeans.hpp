#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace hyperbh {

struct KMeansOptions {
  int restarts = 20;
  int max_iter = 300;
  std::uint64_t seed = 7;
};

struct KMeansResult {
  std::vector<int> labels;
  Eigen::MatrixXd centers;  // k x dim
  double inertia = 0.0;
  int iterations = 0;  // of the winning restart
};

// Lloyd iterations from k-means++ seeds; the restart with the lowest inertia
// wins (earliest on ties). Rows of `points` are the observations.
KMeansResult kmeans(const Eigen::MatrixXd& points, int k, const KMeansOptions& opts = {});

}  // namespace hyperbh
