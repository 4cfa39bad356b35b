#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "hyperbh/hypergraph.hpp"

namespace hyperbh {

struct Contingency {
  Eigen::MatrixXd counts;  // a.q x b.q
  Eigen::VectorXd rows;
  Eigen::VectorXd cols;
  double n = 0.0;
};

Contingency contingency(const Partition& a, const Partition& b);

// Natural-log entropy and mutual information.
double entropy(const Partition& p);
double mutual_information(const Contingency& c);
// Expected MI under the hypergeometric (fixed-marginals permutation) model,
// summed exactly.
double expected_mutual_information(const Contingency& c);

// (MI - E[MI]) / ((H(a) + H(b)) / 2 - E[MI]); 1.0 when both partitions put
// every node in one cluster. Not clamped, so it can be slightly negative.
double ami(const Partition& a, const Partition& b);

// Counts (or row proportions) of nodes with label r in a and label s in b.
// Empty rows stay zero when normalising.
Eigen::MatrixXd confusion(const Partition& a, const Partition& b, bool row_normalize);

struct CompositionHistogram {
  // by_order[k][m] = number of k-hyperedges whose largest same-community
  // member count is m (m = 0..k).
  std::map<int, std::vector<std::size_t>> by_order;
  std::map<int, std::size_t> order_counts;
};

CompositionHistogram hyperedge_composition(const Hypergraph& h, const Partition& p);

}  // namespace hyperbh
