#include "hyperbh/hypergraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hyperbh {

Hypergraph Hypergraph::from_edges(std::size_t n, const std::vector<std::vector<Node>>& edges,
                                  bool merge_duplicates) {
  std::vector<std::vector<Node>> canon;
  canon.reserve(edges.size());
  std::size_t dropped = 0;
  for (const auto& e : edges) {
    std::vector<Node> c = e;
    for (Node v : c) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        throw std::out_of_range("hyperedge node " + std::to_string(v) + " outside [0, " + std::to_string(n) + ")");
      }
    }
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    if (c.size() < 2) {
      ++dropped;
      continue;
    }
    canon.push_back(std::move(c));
  }
  if (merge_duplicates) {
    std::sort(canon.begin(), canon.end());
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  }

  Hypergraph h;
  h.n_ = n;
  h.dropped_ = dropped;
  h.edge_ptr_.reserve(canon.size() + 1);
  for (const auto& c : canon) {
    h.edge_nodes_.insert(h.edge_nodes_.end(), c.begin(), c.end());
    h.edge_ptr_.push_back(h.edge_nodes_.size());
    h.orders_.push_back(static_cast<int>(c.size()));
  }
  std::sort(h.orders_.begin(), h.orders_.end());
  h.orders_.erase(std::unique(h.orders_.begin(), h.orders_.end()), h.orders_.end());

  const std::size_t nk = h.orders_.size();
  h.order_edges_.assign(nk, {});
  h.order_degree_.assign(n * nk, 0);
  h.inc_ptr_.assign(n + 1, 0);
  for (std::size_t e = 0; e < canon.size(); ++e) {
    const std::size_t slot = h.order_slot(static_cast<int>(h.edge_order(e)));
    h.order_edges_[slot].push_back(e);
    for (Node v : h.edge(e)) {
      ++h.inc_ptr_[v + 1];
      ++h.order_degree_[static_cast<std::size_t>(v) * nk + slot];
    }
  }
  for (std::size_t i = 0; i < n; ++i) h.inc_ptr_[i + 1] += h.inc_ptr_[i];
  h.inc_edges_.resize(h.inc_ptr_[n]);
  std::vector<std::size_t> fill(h.inc_ptr_.begin(), h.inc_ptr_.end() - 1);
  for (std::size_t e = 0; e < canon.size(); ++e) {
    for (Node v : h.edge(e)) h.inc_edges_[fill[v]++] = e;
  }
  return h;
}

std::size_t Hypergraph::order_slot(int k) const {
  const auto it = std::lower_bound(orders_.begin(), orders_.end(), k);
  if (it == orders_.end() || *it != k) return orders_.size();
  return static_cast<std::size_t>(it - orders_.begin());
}

bool Hypergraph::has_order(int k) const { return order_slot(k) < orders_.size(); }

std::span<const std::size_t> Hypergraph::edges_of_order(int k) const {
  const std::size_t s = order_slot(k);
  if (s == orders_.size()) return {};
  return order_edges_[s];
}

std::size_t Hypergraph::degree(Node i, int k) const {
  const std::size_t s = order_slot(k);
  if (s == orders_.size()) return 0;
  return order_degree_[static_cast<std::size_t>(i) * orders_.size() + s];
}

Hypergraph Hypergraph::relabeled(std::span<const Node> perm) const {
  if (perm.size() != n_) throw std::invalid_argument("relabeled: permutation size mismatch");
  std::vector<std::vector<Node>> edges(num_edges());
  for (std::size_t e = 0; e < num_edges(); ++e) {
    for (Node v : edge(e)) edges[e].push_back(perm[v]);
  }
  return from_edges(n_, edges);
}

Partition::Partition(std::vector<int> l, int q_) : labels(std::move(l)), q(q_) {
  if (q < 1) throw std::invalid_argument("Partition: q must be >= 1");
  for (int v : labels) {
    if (v < 0 || v >= q) throw std::invalid_argument("Partition: label " + std::to_string(v) + " outside [0, q)");
  }
}

Partition Partition::from_labels(std::vector<int> l) {
  int q = 1;
  for (int v : l) q = std::max(q, v + 1);
  return Partition(std::move(l), q);
}

OrderProjection projection(const Hypergraph& h, int k) {
  if (!h.has_order(k)) throw std::invalid_argument("projection: order " + std::to_string(k) + " not present");
  OrderProjection p;
  p.order = k;
  p.degree_diag.resize(h.num_nodes());
  for (std::size_t i = 0; i < h.num_nodes(); ++i) p.degree_diag[i] = static_cast<double>(h.degree(static_cast<Node>(i), k));
  std::vector<Triplet> t;
  const auto edges = h.edges_of_order(k);
  t.reserve(edges.size() * static_cast<std::size_t>(k * (k - 1) / 2));
  for (std::size_t e : edges) {
    const auto nodes = h.edge(e);
    for (std::size_t a = 0; a < nodes.size(); ++a) {
      for (std::size_t b = a + 1; b < nodes.size(); ++b) t.push_back({nodes[b], nodes[a], 1.0});
    }
  }
  p.comat = SparseSymMatrix::from_triplets(h.num_nodes(), std::move(t));
  return p;
}

DegreeStats degrees(const Hypergraph& h) {
  DegreeStats s;
  const std::size_t n = h.num_nodes();
  s.node_degree.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.node_degree[i] = h.degree(static_cast<Node>(i));
  for (int k : h.orders()) {
    const double dk = n == 0 ? 0.0 : static_cast<double>(k) * static_cast<double>(h.count_of_order(k)) / static_cast<double>(n);
    s.order_mean[k] = dk;
    s.mean += dk;
  }
  if (h.num_edges() > 0) {
    s.mean_order = static_cast<double>(h.total_incidences()) / static_cast<double>(h.num_edges());
  }
  return s;
}

}  // namespace hyperbh
