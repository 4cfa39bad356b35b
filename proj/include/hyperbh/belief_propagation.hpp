#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hyperbh/hsbm.hpp"
#include "hyperbh/hypergraph.hpp"

namespace hyperbh {

struct BpConfig {
  enum class Init { uniform, random, planted };

  int max_sweeps = 500;
  double tol = 1e-6;      // on the max absolute message change
  double damping = 0.0;   // weight of the previous message, in [0, 1)
  Init init = Init::random;
  double noise = 1e-2;             // random init amplitude
  double planted_smoothing = 1e-3;  // planted init: (1-s) one-hot + s/q
  std::uint64_t seed = 0;

  void validate() const;
};

// Messages live on incidences (edge e, member i); incidence numbering follows
// Hypergraph::edge_begin. Both message families are stored as normalised
// log-probabilities, floored at -700.
struct BpState {
  int q = 0;
  Rates rates;
  std::vector<int> orders;
  std::size_t n = 0;
  std::vector<double> log_msg;    // b^{i->e}, incidences x q
  std::vector<double> log_hat;    // b-hat^{e->i}, incidences x q
  std::vector<double> marginals;  // b^i, n x q, probabilities
  std::vector<double> mass;       // sum_i b^i_psi
  std::vector<double> field;      // h_psi, kept in step with mass
  std::size_t sweeps_done = 0;
  // Incidences of each node, CSR.
  std::vector<std::size_t> node_inc_ptr;
  std::vector<std::size_t> node_inc;
  std::vector<std::size_t> inc_edge;  // hyperedge of each incidence

  std::span<const double> marginal(std::size_t i) const {
    return {marginals.data() + i * static_cast<std::size_t>(q), static_cast<std::size_t>(q)};
  }
};

constexpr double kLogFloor = -700.0;

// planted is required for Init::planted and ignored otherwise.
BpState bp_init(const Hypergraph& h, int q, const Rates& rates, const BpConfig& cfg,
                const Partition* planted = nullptr);

// Unnormalised hyperedge-to-node weights for the symmetric rate tensor:
//   out[psi] = sum over assignments of the other members of C(psi, ...) prod_j b_j
// with C = c_in when every member shares psi and c_out otherwise. `incoming`
// holds one row of q weights per other member (rows need not sum to one).
void hyperedge_message(const Rates& rates, int q, std::span<const double> incoming, std::span<double> out);

// h_psi = sum_k [c_out + (c_in - c_out) (sum_j b^j_psi / n)^(k-1) / (k-1)!].
std::vector<double> external_field(std::span<const double> marginals, std::size_t n, int q, const Rates& rates,
                                   const std::vector<int>& orders);

// One sweep over the nodes in random order: refresh the hyperedge messages
// into the node, then its outgoing messages, marginal and the field. Returns
// the largest absolute change over all message entries (probability scale).
double bp_sweep(const Hypergraph& h, BpState& state, const BpConfig& cfg);

struct BpResult {
  Partition labels;
  std::vector<double> marginals;
  int sweeps = 0;
  bool converged = false;
  double last_delta = 0.0;
};

BpResult bp_run(const Hypergraph& h, int q, const Rates& rates, const BpConfig& cfg,
                const Partition* planted = nullptr);

// Argmax per row, ties to the lowest index.
Partition argmax_labels(std::span<const double> marginals, std::size_t n, int q);

}  // namespace hyperbh
