#include "hyperbh/eigensolver.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "hyperbh/simd.hpp"

namespace hyperbh {
namespace {

using Index = Eigen::Index;

std::span<const double> col(const Eigen::MatrixXd& m, Index j) {
  return {m.data() + j * m.rows(), static_cast<std::size_t>(m.rows())};
}
std::span<double> col(Eigen::MatrixXd& m, Index j) {
  return {m.data() + j * m.rows(), static_cast<std::size_t>(m.rows())};
}

// Two passes of classical Gram-Schmidt against the first `cols` columns of v.
// Returns the norm of what is left.
double orthogonalize(const Eigen::MatrixXd& v, Index cols, std::span<double> w) {
  std::vector<double> h(static_cast<std::size_t>(cols));
  for (int pass = 0; pass < 2; ++pass) {
    for (Index j = 0; j < cols; ++j) h[j] = simd::dot(col(v, j), w);
    for (Index j = 0; j < cols; ++j) simd::axpy(-h[j], col(v, j), w);
  }
  return simd::norm2(w);
}

void random_unit(std::mt19937_64& rng, std::span<double> w) {
  std::normal_distribution<double> g;
  for (double& x : w) x = g(rng);
  simd::scale(1.0 / simd::norm2(w), w);
}

// Fills w with a unit vector orthogonal to the first `cols` columns of v.
void random_orthogonal(std::mt19937_64& rng, const Eigen::MatrixXd& v, Index cols, std::span<double> w) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    random_unit(rng, w);
    const double nrm = orthogonalize(v, cols, w);
    if (nrm > 1e-8) {
      simd::scale(1.0 / nrm, w);
      return;
    }
  }
  throw EigenConvergenceError("Lanczos: cannot extend basis (invariant subspace exhausted)", {});
}

}  // namespace

void fix_signs(Eigen::MatrixXd& vectors) {
  for (Index j = 0; j < vectors.cols(); ++j) {
    Index best = 0;
    for (Index i = 1; i < vectors.rows(); ++i) {
      if (std::abs(vectors(i, j)) > std::abs(vectors(best, j))) best = i;
    }
    if (vectors.rows() > 0 && vectors(best, j) < 0) vectors.col(j) *= -1.0;
  }
}

EigenPairs eigensolve_dense(const SparseSymMatrix& a, std::size_t k) {
  const std::size_t n = a.dim();
  if (k < 1 || k > n) throw std::invalid_argument("eigensolve: need 1 <= k <= n");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.to_dense());
  if (es.info() != Eigen::Success) throw EigenConvergenceError("dense eigensolver failed", {});
  EigenPairs out;
  const Index kk = static_cast<Index>(k);
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + kk);
  out.vectors = es.eigenvectors().leftCols(kk);
  fix_signs(out.vectors);
  std::vector<double> av(n);
  for (Index j = 0; j < kk; ++j) {
    a.multiply(col(out.vectors, j), av);
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = av[i] - out.values[j] * out.vectors(static_cast<Index>(i), j);
      r += d * d;
    }
    out.residuals.push_back(std::sqrt(r));
  }
  return out;
}

namespace {

using Apply = std::function<void(std::span<const double>, std::span<double>)>;

// Thick-restart Lanczos on a symmetric operator; m <= n is assumed.
EigenPairs lanczos(const Apply& apply, std::size_t n, std::size_t k, double norm_est, const EigenOptions& opts,
                   std::uint64_t seed) {
  const Index kk = static_cast<Index>(k);
  Index m = opts.basis > 0 ? opts.basis : static_cast<Index>(std::max<std::size_t>(2 * k + 20, 40));
  m = std::min<Index>(std::max<Index>(m, kk + 2), static_cast<Index>(n));
  // Ritz vectors kept across a restart.
  const Index keep = std::min<Index>(m - 2, kk + (m - kk) / 2);

  const double threshold = opts.tol * norm_est;

  const Index nn = static_cast<Index>(n);
  Eigen::MatrixXd v(nn, m);
  Eigen::MatrixXd w(nn, m);
  std::mt19937_64 rng(seed);
  random_unit(rng, col(v, 0));
  apply(col(v, 0), col(w, 0));
  Index cur = 1;

  std::vector<double> residuals(k);
  Eigen::VectorXd next(nn);
  std::span<double> next_span(next.data(), n);
  for (int restart = 0; restart <= opts.max_restarts; ++restart) {
    while (cur < m) {
      std::copy_n(w.col(cur - 1).data(), n, next.data());
      const double nrm = orthogonalize(v, cur, next_span);
      if (nrm > 1e-10 * norm_est) {
        simd::scale(1.0 / nrm, next_span);
      } else {
        random_orthogonal(rng, v, cur, next_span);
      }
      v.col(cur) = next;
      apply(col(v, cur), col(w, cur));
      ++cur;
    }

    Eigen::MatrixXd h = v.transpose() * w;
    h = 0.5 * (h + h.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const Eigen::MatrixXd s = es.eigenvectors().leftCols(keep);
    Eigen::MatrixXd y = v * s;
    Eigen::MatrixXd ay = w * s;

    bool converged = true;
    for (Index j = 0; j < kk; ++j) {
      residuals[j] = (ay.col(j) - es.eigenvalues()(j) * y.col(j)).norm();
      converged = converged && residuals[j] <= threshold;
    }
    if (converged) {
      EigenPairs out;
      out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + kk);
      out.vectors = y.leftCols(kk);
      // Re-normalise against round-off accumulated in long runs.
      for (Index j = 0; j < kk; ++j) out.vectors.col(j).normalize();
      fix_signs(out.vectors);
      out.residuals = residuals;
      out.restarts = restart;
      return out;
    }

    // Continuation direction: the part of A v_last outside the current basis.
    std::copy_n(w.col(m - 1).data(), n, next.data());
    const double nrm = orthogonalize(v, m, next_span);
    v.leftCols(keep) = y;
    w.leftCols(keep) = ay;
    if (nrm > 1e-10 * norm_est) {
      simd::scale(1.0 / nrm, next_span);
      v.col(keep) = next;
    } else {
      random_orthogonal(rng, v, keep, next_span);
      v.col(keep) = next;
    }
    apply(col(v, keep), col(w, keep));
    cur = keep + 1;
  }

  std::ostringstream msg;
  msg << "Lanczos did not converge after " << opts.max_restarts << " restarts; residuals:";
  for (double r : residuals) msg << ' ' << r;
  msg << " (threshold " << threshold << ")";
  throw EigenConvergenceError(msg.str(), residuals);
}


// Ritz pairs of a on the span of the columns of basis.
EigenPairs rayleigh_ritz(const SparseSymMatrix& a, const Eigen::MatrixXd& basis, std::size_t k) {
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(basis.rows(), basis.cols());
  Eigen::MatrixXd aq(q.rows(), q.cols());
  for (Index j = 0; j < q.cols(); ++j) a.multiply(col(q, j), col(aq, j));
  Eigen::MatrixXd h = q.transpose() * aq;
  h = 0.5 * (h + h.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  const Index kk = static_cast<Index>(k);
  EigenPairs out;
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + kk);
  out.vectors = q * es.eigenvectors().leftCols(kk);
  const Eigen::MatrixXd av = aq * es.eigenvectors().leftCols(kk);
  for (Index j = 0; j < kk; ++j) {
    out.vectors.col(j).normalize();
    out.residuals.push_back((av.col(j) - out.values[j] * out.vectors.col(j)).norm());
  }
  fix_signs(out.vectors);
  return out;
}

}  // namespace

EigenPairs eigensolve_lowest(const SparseSymMatrix& a, std::size_t k, const EigenOptions& opts) {
  const std::size_t n = a.dim();
  if (k < 1 || k > n) throw std::invalid_argument("eigensolve: need 1 <= k <= n");
  if (n <= opts.dense_cutoff) return eigensolve_dense(a, k);
  Index m = opts.basis > 0 ? opts.basis : static_cast<Index>(std::max<std::size_t>(2 * k + 20, 40));
  m = std::min<Index>(std::max<Index>(m, static_cast<Index>(k) + 2), static_cast<Index>(n));
  if (m <= static_cast<Index>(k) + 1) return eigensolve_dense(a, k);

  const double norm_est = std::max(a.gershgorin_bound(), std::numeric_limits<double>::min());
  const Apply plain = [&a](std::span<const double> x, std::span<double> y) { a.multiply(x, y); };
  EigenPairs pairs = lanczos(plain, n, k, norm_est, opts, opts.seed);

  // A single Krylov space sees one copy of a repeated eigenvalue. Look for
  // further copies below the k-th value in the complement of what was found,
  // with the found directions shifted above the spectrum.
  const double sigma = 3.0 * norm_est;
  for (std::size_t round = 0; round < k && pairs.vectors.cols() + 1 < static_cast<Index>(n); ++round) {
    const Eigen::MatrixXd locked = pairs.vectors;
    const Apply deflated = [&](std::span<const double> x, std::span<double> y) {
      a.multiply(x, y);
      const Eigen::VectorXd c = locked.transpose() * Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Index>(n));
      Eigen::Map<Eigen::VectorXd>(y.data(), static_cast<Index>(n)) += sigma * (locked * c);
    };
    EigenOptions one = opts;
    one.basis = 0;
    const EigenPairs extra = lanczos(deflated, n, 1, norm_est + sigma, one, opts.seed ^ (0x9e3779b97f4a7c15ULL * (round + 1)));
    if (extra.values[0] >= pairs.values.back() - opts.tol * norm_est * 10) break;
    Eigen::MatrixXd basis(static_cast<Index>(n), locked.cols() + 1);
    basis << locked, extra.vectors.col(0);
    const int restarts = pairs.restarts;
    pairs = rayleigh_ritz(a, basis, k);
    pairs.restarts = restarts;
  }
  return pairs;
}

}  // namespace hyperbh
