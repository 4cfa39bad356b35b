#include "hyperbh/belief_propagation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace hyperbh {
namespace {

// Normalises log-weights to log-probabilities and applies the floor.
void log_normalize(std::span<double> x) {
  const double m = *std::max_element(x.begin(), x.end());
  if (!std::isfinite(m)) {
    // Every weight vanished: fall back to uniform.
    std::fill(x.begin(), x.end(), -std::log(static_cast<double>(x.size())));
    return;
  }
  double s = 0.0;
  for (double v : x) s += std::exp(v - m);
  const double shift = m + std::log(s);
  for (double& v : x) v = std::max(v - shift, kLogFloor);
}

void set_row(std::span<double> row, std::span<const double> probs) {
  for (std::size_t p = 0; p < row.size(); ++p) row[p] = std::max(std::log(probs[p]), kLogFloor);
}

}  // namespace

void BpConfig::validate() const {
  if (!(tol > 0)) throw std::invalid_argument("BP: tolerance must be positive");
  if (damping < 0 || damping >= 1) throw std::invalid_argument("BP: damping must lie in [0, 1)");
  if (max_sweeps < 0) throw std::invalid_argument("BP: max_sweeps must be >= 0");
}

void hyperedge_message(const Rates& rates, int q, std::span<const double> incoming, std::span<double> out) {
  const std::size_t qq = static_cast<std::size_t>(q);
  const std::size_t others = incoming.size() / qq;
  std::vector<double> sums(others, 0.0);
  for (std::size_t j = 0; j < others; ++j) {
    for (std::size_t p = 0; p < qq; ++p) sums[j] += incoming[j * qq + p];
  }
  const double delta = rates.c_out - rates.c_in;
  for (std::size_t psi = 0; psi < qq; ++psi) {
    if (others == 0) {
      out[psi] = rates.c_in;
      continue;
    }
    // Two-member base case, then add members one at a time:
    //   E_{t+1} = E_t s_{t+1} + (c_out - c_in) P_t (s_{t+1} - b_{t+1,psi}),
    // where P_t is the product of the first t members' weights on psi.
    const double b0 = incoming[psi];
    double e = rates.c_in * b0 + rates.c_out * (sums[0] - b0);
    double prod = b0;
    for (std::size_t j = 1; j < others; ++j) {
      const double bj = incoming[j * qq + psi];
      e = e * sums[j] + delta * prod * (sums[j] - bj);
      prod *= bj;
    }
    out[psi] = e;
  }
}

std::vector<double> field_from_mass(std::span<const double> mass, std::size_t n, const Rates& rates,
                                    const std::vector<int>& orders) {
  std::vector<double> h(mass.size(), 0.0);
  const double nd = static_cast<double>(n);
  for (std::size_t p = 0; p < mass.size(); ++p) {
    for (int k : orders) {
      double term = 0.0;
      if (mass[p] > 0) term = std::exp((k - 1) * std::log(mass[p] / nd) - std::lgamma(static_cast<double>(k)));
      h[p] += rates.c_out + (rates.c_in - rates.c_out) * term;
    }
  }
  return h;
}

std::vector<double> external_field(std::span<const double> marginals, std::size_t n, int q, const Rates& rates,
                                   const std::vector<int>& orders) {
  const std::size_t qq = static_cast<std::size_t>(q);
  std::vector<double> mass(qq, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < qq; ++p) mass[p] += marginals[i * qq + p];
  }
  return field_from_mass(mass, n, rates, orders);
}

BpState bp_init(const Hypergraph& h, int q, const Rates& rates, const BpConfig& cfg, const Partition* planted) {
  cfg.validate();
  if (q < 2) throw std::invalid_argument("BP: q must be >= 2");
  if (rates.c_in < 0 || rates.c_out < 0) throw std::invalid_argument("BP: rates must be nonnegative");
  BpState s;
  s.q = q;
  s.rates = rates;
  s.orders = h.orders();
  s.n = h.num_nodes();
  const std::size_t qq = static_cast<std::size_t>(q);
  const std::size_t inc = h.total_incidences();

  s.node_inc_ptr.assign(s.n + 1, 0);
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    for (Node v : h.edge(e)) ++s.node_inc_ptr[v + 1];
  }
  for (std::size_t i = 0; i < s.n; ++i) s.node_inc_ptr[i + 1] += s.node_inc_ptr[i];
  s.node_inc.resize(inc);
  s.inc_edge.resize(inc);
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    for (std::size_t t = 0; t < h.edge_order(e); ++t) s.inc_edge[h.edge_begin(e) + t] = e;
  }
  std::vector<std::size_t> fill(s.node_inc_ptr.begin(), s.node_inc_ptr.end() - 1);
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    const auto nodes = h.edge(e);
    for (std::size_t t = 0; t < nodes.size(); ++t) s.node_inc[fill[nodes[t]]++] = h.edge_begin(e) + t;
  }

  const double uniform = -std::log(static_cast<double>(q));
  s.log_msg.assign(inc * qq, uniform);
  s.log_hat.assign(inc * qq, uniform);
  s.marginals.assign(s.n * qq, 1.0 / q);

  std::vector<double> row(qq);
  if (cfg.init == BpConfig::Init::random) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(-cfg.noise, cfg.noise);
    auto perturbed = [&](std::span<double> out) {
      double sum = 0.0;
      for (std::size_t p = 0; p < qq; ++p) {
        row[p] = 1.0 / q + u(rng);
        sum += row[p];
      }
      for (std::size_t p = 0; p < qq; ++p) row[p] /= sum;
      set_row(out, row);
    };
    for (std::size_t a = 0; a < inc; ++a) perturbed({s.log_msg.data() + a * qq, qq});
    for (std::size_t i = 0; i < s.n; ++i) {
      perturbed({row.data(), qq});
      for (std::size_t p = 0; p < qq; ++p) s.marginals[i * qq + p] = std::exp(row[p]);
    }
  } else if (cfg.init == BpConfig::Init::planted) {
    if (planted == nullptr || planted->size() != s.n || planted->q > q) {
      throw std::invalid_argument("BP: planted init needs a partition over the same nodes with at most q labels");
    }
    const double sm = cfg.planted_smoothing;
    for (std::size_t i = 0; i < s.n; ++i) {
      for (std::size_t p = 0; p < qq; ++p) {
        row[p] = (1.0 - sm) * (static_cast<int>(p) == planted->labels[i] ? 1.0 : 0.0) + sm / q;
        s.marginals[i * qq + p] = row[p];
      }
      for (std::size_t k = s.node_inc_ptr[i]; k < s.node_inc_ptr[i + 1]; ++k) {
        set_row({s.log_msg.data() + s.node_inc[k] * qq, qq}, row);
      }
    }
  }
  s.mass.assign(qq, 0.0);
  for (std::size_t i = 0; i < s.n; ++i) {
    for (std::size_t p = 0; p < qq; ++p) s.mass[p] += s.marginals[i * qq + p];
  }
  s.field = field_from_mass(s.mass, s.n, rates, s.orders);
  return s;
}

double bp_sweep(const Hypergraph& h, BpState& s, const BpConfig& cfg) {
  const std::size_t qq = static_cast<std::size_t>(s.q);
  double max_delta = 0.0;

  // Random sequential schedule. A synchronous update of all nodes lets the
  // global field overshoot and settle into a period-two flip of every
  // marginal, so the field follows each node update instead.
  std::vector<std::size_t> order(s.n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(cfg.seed ^ (0x5bd1e995ULL * (s.sweeps_done + 1)));
  std::shuffle(order.begin(), order.end(), rng);
  ++s.sweeps_done;

  const double prior = -std::log(static_cast<double>(s.q));
  std::vector<double> incoming;
  std::vector<double> out(qq);
  std::vector<double> total(qq);
  std::vector<double> row(qq);
  for (std::size_t i : order) {
    // Hyperedge-to-node messages into i from the current messages of the
    // other members.
    for (std::size_t k = s.node_inc_ptr[i]; k < s.node_inc_ptr[i + 1]; ++k) {
      const std::size_t a = s.node_inc[k];
      const std::size_t e = s.inc_edge[a];
      const std::size_t base = h.edge_begin(e);
      const std::size_t ord = h.edge_order(e);
      incoming.resize((ord - 1) * qq);
      std::size_t w = 0;
      for (std::size_t j = base; j < base + ord; ++j) {
        if (j == a) continue;
        for (std::size_t p = 0; p < qq; ++p) incoming[w * qq + p] = std::exp(s.log_msg[j * qq + p]);
        ++w;
      }
      hyperedge_message(s.rates, s.q, incoming, out);
      std::span<double> dst(row.data(), qq);
      for (std::size_t p = 0; p < qq; ++p) dst[p] = out[p] > 0 ? std::log(out[p]) : -std::numeric_limits<double>::infinity();
      log_normalize(dst);
      double* hat = s.log_hat.data() + a * qq;
      for (std::size_t p = 0; p < qq; ++p) {
        max_delta = std::max(max_delta, std::abs(std::exp(dst[p]) - std::exp(hat[p])));
        hat[p] = dst[p];
      }
    }

    // Node-to-hyperedge messages and the marginal of i.
    for (std::size_t p = 0; p < qq; ++p) total[p] = prior - s.field[p];
    for (std::size_t k = s.node_inc_ptr[i]; k < s.node_inc_ptr[i + 1]; ++k) {
      const double* hat = s.log_hat.data() + s.node_inc[k] * qq;
      for (std::size_t p = 0; p < qq; ++p) total[p] += hat[p];
    }
    for (std::size_t k = s.node_inc_ptr[i]; k < s.node_inc_ptr[i + 1]; ++k) {
      const std::size_t a = s.node_inc[k];
      const double* hat = s.log_hat.data() + a * qq;
      for (std::size_t p = 0; p < qq; ++p) row[p] = total[p] - hat[p];
      log_normalize(row);
      std::span<double> msg(s.log_msg.data() + a * qq, qq);
      for (std::size_t p = 0; p < qq; ++p) {
        const double old = std::exp(msg[p]);
        double fresh = std::exp(row[p]);
        if (cfg.damping > 0) fresh = (1.0 - cfg.damping) * fresh + cfg.damping * old;
        max_delta = std::max(max_delta, std::abs(fresh - old));
        row[p] = fresh;
      }
      if (cfg.damping > 0) {
        double sum = 0.0;
        for (double v : row) sum += v;
        for (double& v : row) v /= sum;
      }
      set_row(msg, row);
    }
    row = total;
    log_normalize(row);
    for (std::size_t p = 0; p < qq; ++p) {
      const double fresh = std::exp(row[p]);
      s.mass[p] += fresh - s.marginals[i * qq + p];
      s.marginals[i * qq + p] = fresh;
    }
    s.field = field_from_mass(s.mass, s.n, s.rates, s.orders);
  }
  return max_delta;
}

Partition argmax_labels(std::span<const double> marginals, std::size_t n, int q) {
  const std::size_t qq = static_cast<std::size_t>(q);
  std::vector<int> labels(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    int best = 0;
    for (std::size_t p = 1; p < qq; ++p) {
      if (marginals[i * qq + p] > marginals[i * qq + static_cast<std::size_t>(best)]) best = static_cast<int>(p);
    }
    labels[i] = best;
  }
  return Partition(std::move(labels), q);
}

BpResult bp_run(const Hypergraph& h, int q, const Rates& rates, const BpConfig& cfg, const Partition* planted) {
  BpState s = bp_init(h, q, rates, cfg, planted);
  BpResult r;
  for (r.sweeps = 0; r.sweeps < cfg.max_sweeps;) {
    r.last_delta = bp_sweep(h, s, cfg);
    ++r.sweeps;
    if (r.last_delta < cfg.tol) {
      r.converged = true;
      break;
    }
  }
  r.labels = argmax_labels(s.marginals, s.n, q);
  r.marginals = std::move(s.marginals);
  return r;
}

}  // namespace hyperbh
