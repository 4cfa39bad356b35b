#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "hyperbh/bethe_hessian.hpp"
#include "hyperbh/eigensolver.hpp"
#include "hyperbh/hsbm.hpp"

using namespace hyperbh;

namespace {

SparseSymMatrix random_sparse(std::size_t n, std::size_t nnz, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int32_t> node(0, static_cast<std::int32_t>(n - 1));
  std::normal_distribution<double> val;
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < nnz; ++i) t.push_back({node(rng), node(rng), val(rng)});
  return SparseSymMatrix::from_triplets(n, t);
}

void check_against_dense(const SparseSymMatrix& a, std::size_t k, const EigenOptions& opts) {
  const auto got = eigensolve_lowest(a, k, opts);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.to_dense());
  const double scale = a.gershgorin_bound();
  REQUIRE(got.values.size() == k);
  for (std::size_t i = 0; i < k; ++i) {
    CHECK(std::abs(got.values[i] - es.eigenvalues()(static_cast<Eigen::Index>(i))) < 1e-8 * scale);
    CHECK(got.residuals[i] <= 1e-9 * scale);
    const Eigen::VectorXd v = got.vectors.col(static_cast<Eigen::Index>(i));
    CHECK(std::abs(v.norm() - 1) < 1e-10);
  }
  // Orthonormal columns.
  const Eigen::MatrixXd g = got.vectors.transpose() * got.vectors;
  CHECK((g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff() < 1e-9);
}

}  // namespace

TEST_CASE("Lanczos matches a dense solver on random sparse matrices") {
  EigenOptions opts;
  opts.dense_cutoff = 0;  // force the iterative path
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    check_against_dense(random_sparse(400, 2500, seed), 5, opts);
  }
}

TEST_CASE("Lanczos on a Bethe Hessian with clustered low eigenvalues") {
  SymmetricHsbmSpec s{900, 4, {2, 3}, SymmetricHsbmSpec::Mode::degree_eps, {}, 10.0, 0.05, 2};
  const auto smp = sample_symmetric(s);
  const auto b = build_bethe_hessian(smp.graph, select_eta(smp.graph)).matrix;
  EigenOptions opts;
  opts.dense_cutoff = 0;
  check_against_dense(b, 6, opts);
}

TEST_CASE("dense path and small basis sizes") {
  const auto a = random_sparse(120, 600, 9);
  check_against_dense(a, 3, {});
  EigenOptions tiny;
  tiny.dense_cutoff = 0;
  tiny.basis = 12;
  check_against_dense(a, 3, tiny);
}

TEST_CASE("diagonal matrix with repeated eigenvalues") {
  std::vector<Triplet> t;
  for (std::int32_t i = 0; i < 500; ++i) t.push_back({i, i, static_cast<double>(i % 50)});
  const auto a = SparseSymMatrix::from_triplets(500, t);
  EigenOptions opts;
  opts.dense_cutoff = 0;
  const auto got = eigensolve_lowest(a, 4, opts);
  for (double v : got.values) CHECK(std::abs(v) < 1e-8);
}

TEST_CASE("argument checks and sign convention") {
  const auto a = random_sparse(30, 80, 3);
  CHECK_THROWS_AS(eigensolve_lowest(a, 0), std::invalid_argument);
  CHECK_THROWS_AS(eigensolve_lowest(a, 31), std::invalid_argument);
  const auto got = eigensolve_dense(a, 5);
  for (Eigen::Index c = 0; c < got.vectors.cols(); ++c) {
    Eigen::Index arg = 0;
    got.vectors.col(c).cwiseAbs().maxCoeff(&arg);
    CHECK(got.vectors(arg, c) > 0);
  }
  Eigen::MatrixXd m(2, 2);
  m << 1, -3, -2, 1;
  fix_signs(m);
  CHECK(m(1, 0) == 2);
  CHECK(m(0, 1) == 3);
}

TEST_CASE("deterministic for a fixed seed") {
  const auto a = random_sparse(500, 3000, 5);
  EigenOptions opts;
  opts.dense_cutoff = 0;
  const auto x = eigensolve_lowest(a, 4, opts);
  const auto y = eigensolve_lowest(a, 4, opts);
  CHECK(x.values == y.values);
  CHECK(x.vectors == y.vectors);
}
