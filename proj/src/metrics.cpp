#include "hyperbh/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyperbh {
namespace {

double xlogx_sum(const Eigen::VectorXd& counts, double n) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < counts.size(); ++i) {
    if (counts(i) > 0) h -= counts(i) / n * std::log(counts(i) / n);
  }
  return h;
}

void check_same_size(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) throw std::invalid_argument("partitions differ in size");
  if (a.size() == 0) throw std::invalid_argument("partitions are empty");
}

}  // namespace

Contingency contingency(const Partition& a, const Partition& b) {
  check_same_size(a, b);
  Contingency c;
  c.counts = Eigen::MatrixXd::Zero(a.q, b.q);
  for (std::size_t i = 0; i < a.size(); ++i) c.counts(a.labels[i], b.labels[i]) += 1.0;
  c.rows = c.counts.rowwise().sum();
  c.cols = c.counts.colwise().sum().transpose();
  c.n = static_cast<double>(a.size());
  return c;
}

double entropy(const Partition& p) {
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(p.q);
  for (int v : p.labels) counts(v) += 1.0;
  return xlogx_sum(counts, static_cast<double>(p.size()));
}

double mutual_information(const Contingency& c) {
  double mi = 0.0;
  for (Eigen::Index r = 0; r < c.counts.rows(); ++r) {
    for (Eigen::Index s = 0; s < c.counts.cols(); ++s) {
      const double nij = c.counts(r, s);
      if (nij > 0) mi += nij / c.n * std::log(c.n * nij / (c.rows(r) * c.cols(s)));
    }
  }
  return std::max(mi, 0.0);
}

double expected_mutual_information(const Contingency& c) {
  const double n = c.n;
  const double lg_n = std::lgamma(n + 1);
  double emi = 0.0;
  for (Eigen::Index r = 0; r < c.rows.size(); ++r) {
    const double a = c.rows(r);
    if (a == 0) continue;
    for (Eigen::Index s = 0; s < c.cols.size(); ++s) {
      const double b = c.cols(s);
      if (b == 0) continue;
      const double fixed = std::lgamma(a + 1) + std::lgamma(b + 1) + std::lgamma(n - a + 1) + std::lgamma(n - b + 1) - lg_n;
      const double lo = std::max(1.0, a + b - n);
      const double hi = std::min(a, b);
      for (double nij = lo; nij <= hi; nij += 1.0) {
        const double log_p = fixed - std::lgamma(nij + 1) - std::lgamma(a - nij + 1) - std::lgamma(b - nij + 1) -
                             std::lgamma(n - a - b + nij + 1);
        emi += nij / n * std::log(n * nij / (a * b)) * std::exp(log_p);
      }
    }
  }
  return emi;
}

double ami(const Partition& a, const Partition& b) {
  const Contingency c = contingency(a, b);
  auto occupied = [](const Eigen::VectorXd& v) { return (v.array() > 0).count(); };
  if (occupied(c.rows) == 1 && occupied(c.cols) == 1) return 1.0;
  const double mi = mutual_information(c);
  const double emi = expected_mutual_information(c);
  const double mean_h = 0.5 * (xlogx_sum(c.rows, c.n) + xlogx_sum(c.cols, c.n));
  const double denom = mean_h - emi;
  if (denom == 0.0) return 1.0;
  return (mi - emi) / denom;
}

Eigen::MatrixXd confusion(const Partition& a, const Partition& b, bool row_normalize) {
  Eigen::MatrixXd m = contingency(a, b).counts;
  if (row_normalize) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const double s = m.row(r).sum();
      if (s > 0) m.row(r) /= s;
    }
  }
  return m;
}

CompositionHistogram hyperedge_composition(const Hypergraph& h, const Partition& p) {
  if (p.size() != h.num_nodes()) throw std::invalid_argument("hyperedge_composition: partition size mismatch");
  CompositionHistogram out;
  std::vector<int> count(static_cast<std::size_t>(p.q), 0);
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    const auto nodes = h.edge(e);
    const int k = static_cast<int>(nodes.size());
    int best = 0;
    for (Node v : nodes) best = std::max(best, ++count[p.labels[v]]);
    for (Node v : nodes) count[p.labels[v]] = 0;
    auto& hist = out.by_order[k];
    if (hist.empty()) hist.assign(static_cast<std::size_t>(k) + 1, 0);
    ++hist[best];
    ++out.order_counts[k];
  }
  return out;
}

}  // namespace hyperbh
