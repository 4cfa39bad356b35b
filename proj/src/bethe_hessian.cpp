#include "hyperbh/bethe_hessian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hyperbh {
namespace {

constexpr double kPoleGap = 1e-12;

void check_pole(double eta, int k) {
  const double scale = std::max(1.0, std::abs(eta));
  if (std::abs(1.0 - eta) <= kPoleGap * scale || std::abs(eta + k - 1) <= kPoleGap * scale) {
    std::ostringstream msg;
    msg << "Bethe Hessian undefined at eta=" << eta << " (pole for order " << k << ")";
    throw std::domain_error(msg.str());
  }
}

}  // namespace

double bulk_radius(const Hypergraph& h) {
  const auto stats = degrees(h);
  double eta = 0.0;
  for (const auto& [k, dk] : stats.order_mean) eta += std::sqrt(dk * (k - 1));
  return eta;
}

double select_eta(const Hypergraph& h, double tol) {
  if (h.num_edges() == 0) throw std::domain_error("select_eta: hypergraph has no hyperedges");
  const double eta = bulk_radius(h);
  if (eta <= 1.0 + tol) {
    std::ostringstream msg;
    msg << "select_eta: bulk radius " << eta << " <= 1; hypergraph too sparse (per-order degrees:";
    for (const auto& [k, dk] : degrees(h).order_mean) msg << " d^(" << k << ")=" << dk;
    msg << ")";
    throw std::domain_error(msg.str());
  }
  return eta;
}

BhCoefficients bh_coefficients(int k, double eta) {
  check_pole(eta, k);
  const double denom = (1.0 - eta) * (eta + k - 1);
  return {(k - 1) / denom, eta / denom};
}

BetheHessian build_bethe_hessian(const Hypergraph& h, double eta) {
  if (std::abs(1.0 - eta) <= kPoleGap * std::max(1.0, std::abs(eta))) check_pole(eta, 2);
  const std::size_t n = h.num_nodes();
  std::vector<double> diag(n, 1.0);
  std::vector<Triplet> t;
  std::size_t pairs = 0;
  for (int k : h.orders()) pairs += h.count_of_order(k) * static_cast<std::size_t>(k * (k - 1) / 2);
  t.reserve(pairs + n);
  for (int k : h.orders()) {
    const auto c = bh_coefficients(k, eta);
    for (std::size_t i = 0; i < n; ++i) diag[i] -= c.alpha * static_cast<double>(h.degree(static_cast<Node>(i), k));
    for (std::size_t e : h.edges_of_order(k)) {
      const auto nodes = h.edge(e);
      for (std::size_t a = 0; a < nodes.size(); ++a) {
        for (std::size_t b = a + 1; b < nodes.size(); ++b) t.push_back({nodes[b], nodes[a], c.beta});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) t.push_back({static_cast<std::int32_t>(i), static_cast<std::int32_t>(i), diag[i]});
  return {eta, SparseSymMatrix::from_triplets(n, std::move(t))};
}

}  // namespace hyperbh
