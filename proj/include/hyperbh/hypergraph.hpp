#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "hyperbh/sparse.hpp"

namespace hyperbh {

using Node = std::int32_t;

// Immutable multiset of hyperedges over nodes [0, n). Every hyperedge holds at
// least two distinct nodes, stored ascending. Repeated hyperedges are kept as
// separate entries (multiplicity) unless merged at construction.
class Hypergraph {
 public:
  Hypergraph() = default;

  // Canonicalizes each edge (sort + dedup nodes). Edges left with fewer than
  // two nodes are dropped and counted in dropped_edges(). Throws on a node
  // index outside [0, n).
  static Hypergraph from_edges(std::size_t n, const std::vector<std::vector<Node>>& edges,
                               bool merge_duplicates = false);

  std::size_t num_nodes() const { return n_; }
  std::size_t num_edges() const { return edge_ptr_.size() - 1; }
  std::size_t dropped_edges() const { return dropped_; }

  std::span<const Node> edge(std::size_t e) const {
    return {edge_nodes_.data() + edge_ptr_[e], edge_ptr_[e + 1] - edge_ptr_[e]};
  }
  std::size_t edge_order(std::size_t e) const { return edge_ptr_[e + 1] - edge_ptr_[e]; }
  // Offset of edge e in the flat (edge, member) sequence; member t of edge e
  // is incidence number edge_begin(e) + t.
  std::size_t edge_begin(std::size_t e) const { return edge_ptr_[e]; }

  // Sorted distinct orders present (the order set K).
  const std::vector<int>& orders() const { return orders_; }
  bool has_order(int k) const;
  // Indices of the hyperedges of order k (empty span if k is absent).
  std::span<const std::size_t> edges_of_order(int k) const;
  std::size_t count_of_order(int k) const { return edges_of_order(k).size(); }

  std::span<const std::size_t> incident(Node i) const {
    return {inc_edges_.data() + inc_ptr_[i], inc_ptr_[i + 1] - inc_ptr_[i]};
  }
  std::size_t degree(Node i) const { return inc_ptr_[i + 1] - inc_ptr_[i]; }
  std::size_t degree(Node i, int k) const;

  std::size_t total_incidences() const { return edge_nodes_.size(); }

  // Same edge multiset with node i renamed to perm[i].
  Hypergraph relabeled(std::span<const Node> perm) const;

 private:
  std::size_t order_slot(int k) const;

  std::size_t n_ = 0;
  std::size_t dropped_ = 0;
  std::vector<std::size_t> edge_ptr_{0};
  std::vector<Node> edge_nodes_;
  std::vector<int> orders_;
  std::vector<std::vector<std::size_t>> order_edges_;
  std::vector<std::size_t> inc_ptr_;
  std::vector<std::size_t> inc_edges_;
  std::vector<std::uint32_t> order_degree_;  // n x |K|, row-major
};

struct Partition {
  std::vector<int> labels;
  int q = 1;

  Partition() = default;
  // Throws if any label is outside [0, q) or q < 1.
  Partition(std::vector<int> labels, int q);
  // q = max label + 1.
  static Partition from_labels(std::vector<int> labels);
  std::size_t size() const { return labels.size(); }
};

struct OrderProjection {
  int order = 0;
  std::vector<double> degree_diag;  // d_i^(k)
  SparseSymMatrix comat;            // co-membership counts, zero diagonal
};

// Throws std::invalid_argument if k is not in h.orders().
OrderProjection projection(const Hypergraph& h, int k);

struct DegreeStats {
  std::vector<std::size_t> node_degree;
  std::map<int, double> order_mean;  // d^(k) = k m^(k) / n
  double mean = 0.0;                 // d
  double mean_order = 0.0;           // kappa-hat = sum |e| / m
};

DegreeStats degrees(const Hypergraph& h);

}  // namespace hyperbh
