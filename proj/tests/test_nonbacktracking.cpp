#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <complex>
#include <map>

#include "hyperbh/bethe_hessian.hpp"
#include "hyperbh/hsbm.hpp"
#include "hyperbh/nonbacktracking.hpp"
#include "support.hpp"

using namespace hyperbh;

namespace {

// Classical graph non-backtracking matrix on directed edges u->v:
// (u->v) -> (v->w) whenever w != u. Edges are indexed by (edge id, direction).
Eigen::MatrixXd classical_nb(const Hypergraph& g, std::vector<std::pair<Node, std::size_t>>& arcs) {
  arcs.clear();
  std::vector<std::pair<Node, Node>> dir;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const Node a = g.edge(e)[0], b = g.edge(e)[1];
    dir.emplace_back(a, b);
    arcs.emplace_back(a, e);
    dir.emplace_back(b, a);
    arcs.emplace_back(b, e);
  }
  const auto m = static_cast<Eigen::Index>(dir.size());
  Eigen::MatrixXd nb = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index x = 0; x < m; ++x) {
    for (Eigen::Index y = 0; y < m; ++y) {
      // Parallel edges are distinct edges, so only the exact reverse is excluded.
      if (dir[x].second == dir[y].first && y != (x ^ 1)) nb(x, y) = 1;
    }
  }
  return nb;
}

std::vector<std::complex<double>> sorted(const Eigen::VectorXcd& v) {
  std::vector<std::complex<double>> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end(), [](auto a, auto b) {
    return std::abs(a.real() - b.real()) > 1e-7 ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

}  // namespace

TEST_CASE("2-uniform non-backtracking matrix equals the classical graph one") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto g = testing::random_hypergraph(30, 45, {2}, seed);
    const auto nb = build_nonbacktracking(g);
    std::vector<std::pair<Node, std::size_t>> arcs;
    const auto oracle = classical_nb(g, arcs);
    REQUIRE(nb.dim() == arcs.size());
    // Map classical arc index to library arc index through (node, edge).
    std::map<std::pair<Node, std::size_t>, Eigen::Index> lib;
    for (std::size_t a = 0; a < nb.dim(); ++a) lib[nb.arcs[a]] = static_cast<Eigen::Index>(a);
    const auto dense = nb.to_dense();
    const auto m = static_cast<Eigen::Index>(arcs.size());
    for (Eigen::Index x = 0; x < m; ++x) {
      for (Eigen::Index y = 0; y < m; ++y) CHECK(dense(lib[arcs[x]], lib[arcs[y]]) == oracle(x, y));
    }
    const auto a = sorted(nb_spectrum(nb).values);
    Eigen::EigenSolver<Eigen::MatrixXd> es(oracle, false);
    const auto b = sorted(es.eigenvalues());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-6);
  }
}

TEST_CASE("hyperedge transitions follow the definition") {
  const auto h = Hypergraph::from_edges(4, {{0, 1, 2}, {2, 3}});
  const auto nb = build_nonbacktracking(h);
  CHECK(nb.dim() == 5);
  const auto d = nb.to_dense();
  // From (0, {0,1,2}) one can continue only from node 2 into {2,3}.
  std::map<std::pair<Node, std::size_t>, Eigen::Index> idx;
  for (std::size_t a = 0; a < nb.dim(); ++a) idx[nb.arcs[a]] = static_cast<Eigen::Index>(a);
  const std::size_t e3 = h.edge_order(0) == 3 ? 0 : 1;
  const std::size_t e2 = 1 - e3;
  CHECK(d.row(idx[{0, e3}]).sum() == 1);
  CHECK(d(idx[{0, e3}], idx[{2, e2}]) == 1);
  CHECK(d.row(idx[{2, e3}]).sum() == 0);
  CHECK(d.row(idx[{3, e2}]).sum() == 1);
  CHECK(d(idx[{3, e2}], idx[{2, e3}]) == 1);
}

TEST_CASE("cost report matches the built operator") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto h = testing::random_hypergraph(80, 200, {2, 3, 5}, seed);
    const auto nb = build_nonbacktracking(h);
    const auto c = cost_report(h);
    CHECK(c.nb_dim == static_cast<double>(nb.dim()));
    CHECK(c.nb_nonzeros == static_cast<double>(nb.nonzeros()));
    CHECK(c.bh_dim == 80);
    const auto b = build_bethe_hessian(h, select_eta(h)).matrix;
    CHECK(c.bh_nonzeros_bound >= (static_cast<double>(b.stored_nonzeros()) + 80) / 2);
  }
}

TEST_CASE("size guard") {
  const auto h = testing::random_hypergraph(100, 300, {3}, 1);
  CHECK_THROWS_AS(build_nonbacktracking(h, 100), std::length_error);
}

TEST_CASE("informative eigenvalues are roots of det B_lambda and pool to the communities") {
  SymmetricHsbmSpec s{100, 2, {3}, SymmetricHsbmSpec::Mode::rates, {80.0, 8.0}, 0, 0, 3};
  const auto smp = sample_symmetric(s);
  const auto nb = build_nonbacktracking(smp.graph);
  const auto sp = nb_spectrum(nb, true);
  const double r = bulk_radius(smp.graph);
  const auto outside = real_eigenvalues_outside(sp.values, r);
  REQUIRE(outside.size() >= 2);
  for (double lam : outside) {
    const auto c = verify_nb_bh_correspondence(smp.graph, lam);
    CHECK(c.sigma_min <= 1e-8 * c.norm);
  }
  // The second real eigenvector pooled onto nodes separates the blocks.
  Eigen::Index second = -1;
  for (Eigen::Index i = 0; i < sp.values.size(); ++i) {
    if (std::abs(sp.values(i) - std::complex<double>(outside[1], 0)) < 1e-9) second = i;
  }
  REQUIRE(second >= 0);
  const Eigen::VectorXcd mu = pool(nb, 100, sp.vectors.col(second));
  int agree = 0;
  for (int i = 0; i < 100; ++i) agree += ((mu(i).real() > 0) == (smp.planted.labels[i] == 0)) ? 1 : 0;
  CHECK(std::max(agree, 100 - agree) >= 90);
}

TEST_CASE("real eigenvalue filter") {
  Eigen::VectorXcd v(5);
  v << std::complex<double>(3, 0), std::complex<double>(0.5, 0), std::complex<double>(2.5, 1e-9),
      std::complex<double>(2.5, 0.3), std::complex<double>(-4, 0);
  CHECK(real_eigenvalues_outside(v, 2.0) == std::vector<double>{3, 2.5, -4});
}
