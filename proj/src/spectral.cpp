#include "hyperbh/spectral.hpp"

#include <algorithm>
#include <stdexcept>

namespace hyperbh {

NegativeSpectrum negative_spectrum(const SparseSymMatrix& b, double tol, const EigenOptions& opts) {
  const std::size_t n = b.dim();
  if (n == 0) return {};
  if (tol < 0) tol = 1e-8 * b.max_abs_diagonal();
  std::size_t k = std::min<std::size_t>(4, n);
  while (true) {
    NegativeSpectrum out;
    out.pairs = eigensolve_lowest(b, k, opts);
    out.count = static_cast<int>(std::count_if(out.pairs.values.begin(), out.pairs.values.end(),
                                               [tol](double v) { return v < -tol; }));
    if (static_cast<std::size_t>(out.count) < k || k == n) return out;
    k = std::min(2 * k, n);
  }
}

int count_negative(const SparseSymMatrix& b, double tol, const EigenOptions& opts) {
  return negative_spectrum(b, tol, opts).count;
}

Partition embed_and_cluster(const Eigen::MatrixXd& embedding, int q, bool row_normalize, const KMeansOptions& opts) {
  const std::size_t n = static_cast<std::size_t>(embedding.rows());
  if (q <= 1) return Partition(std::vector<int>(n, 0), 1);
  Eigen::MatrixXd x = embedding;
  if (row_normalize) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const double nrm = x.row(i).norm();
      if (nrm > 0) x.row(i) /= nrm;
    }
  }
  return Partition(kmeans(x, q, opts).labels, q);
}

SpectralResult cluster(const Hypergraph& h, const SpectralOptions& opts) {
  if (h.num_edges() == 0) throw std::invalid_argument("cluster: hypergraph has no hyperedges");
  if (opts.fixed_q && (*opts.fixed_q < 1 || static_cast<std::size_t>(*opts.fixed_q) > h.num_nodes())) {
    throw std::invalid_argument("cluster: fixed q outside [1, n]");
  }
  SpectralResult r;
  r.eta = opts.eta ? *opts.eta : select_eta(h);
  const BetheHessian bh = build_bethe_hessian(h, r.eta);
  NegativeSpectrum neg = negative_spectrum(bh.matrix, opts.negative_tol * bh.matrix.max_abs_diagonal(), opts.eigen);
  r.q_hat = neg.count;
  const int q = opts.fixed_q ? *opts.fixed_q : r.q_hat;
  if (q == 0) throw std::runtime_error("no detectable structure");
  if (static_cast<std::size_t>(q) > neg.pairs.values.size()) {
    neg.pairs = eigensolve_lowest(bh.matrix, static_cast<std::size_t>(q), opts.eigen);
  }
  r.eigenvalues = neg.pairs.values;
  r.embedding = neg.pairs.vectors.leftCols(q);
  r.labels = embed_and_cluster(r.embedding, q, opts.row_normalize, opts.kmeans);
  return r;
}

}  // namespace hyperbh
