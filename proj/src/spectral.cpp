#include "schain/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "schain/error.hpp"
#include "schain/kernels.hpp"
#include "schain/parallel.hpp"

namespace schain {

std::vector<std::vector<int>> ClusterIndicators::members() const {
  std::vector<std::vector<int>> out(k);
  for (std::size_t i = 0; i < labels.size(); ++i) out[labels[i]].push_back(static_cast<int>(i));
  return out;
}

std::vector<int> ClusterIndicators::sizes() const {
  std::vector<int> out(k, 0);
  for (const int l : labels) ++out[l];
  return out;
}

void ClusterIndicators::validate() const {
  if (k < 1) throw Error(ErrorKind::InvariantViolation, "cluster count must be positive");
  std::vector<int> counts(k, 0);
  for (const int l : labels) {
    if (l < 0 || l >= k)
      throw Error(ErrorKind::InvariantViolation, "cluster label out of range");
    ++counts[l];
  }
  for (const int c : counts)
    if (c == 0) throw Error(ErrorKind::InvariantViolation, "empty cluster in partition");
}

Matrix build_affinity(const Matrix& S, const Matrix& WS, std::span<const double> D) {
  const std::size_t n = S.rows();
  if (WS.rows() != n || WS.cols() != n || S.cols() != n || D.size() != n)
    throw Error(ErrorKind::DimensionMismatch, "affinity inputs disagree on n");
  if (!is_symmetric(S, 1e-9) || !is_symmetric(WS, 1e-9))
    throw Error(ErrorKind::NonSymmetric, "similarity inputs are not symmetric within 1e-9");
  std::vector<double> inv_sqrt(n);
  for (std::size_t u = 0; u < n; ++u) {
    if (!(D[u] > 0.0))
      throw Error(ErrorKind::InvariantViolation, "degree diagonal must be positive");
    inv_sqrt[u] = 1.0 / std::sqrt(D[u]);
  }
  Matrix A(n, n, 0.0);
  // A = S + WS, then K(u,.) = A(u,.) * inv_sqrt * inv_sqrt[u]
  for (std::size_t u = 0; u < n; ++u) {
    auto out = A.row(u);
    std::copy(S.row(u).begin(), S.row(u).end(), out.begin());
    kernels::axpy(1.0, WS.row(u).data(), out.data(), n);
    kernels::scale3(out.data(), inv_sqrt.data(), inv_sqrt[u], out.data(), n);
  }
  return A;
}

EigenBasis top_k_eigvecs(const Matrix& K, int k) {
  const std::size_t n = K.rows();
  if (k < 1 || static_cast<std::size_t>(k) > n)
    throw Error(ErrorKind::BadConfig, "need 1 <= k <= n for the eigen basis");
  if (!is_symmetric(K, 1e-9))
    throw Error(ErrorKind::NonSymmetric, "affinity matrix is not symmetric within 1e-9");

  Eigen::Map<const Eigen::MatrixXd> mapped(K.data(), n, n);  // symmetric: layout irrelevant
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mapped);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::EigenFailure, "symmetric eigendecomposition failed");

  EigenBasis basis{Matrix(n, static_cast<std::size_t>(k)), std::vector<double>(k)};
  // Eigen returns eigenvalues ascending; take the top k, descending.
  for (int c = 0; c < k; ++c) {
    const Eigen::Index src = static_cast<Eigen::Index>(n) - 1 - c;
    basis.eigenvalues[c] = solver.eigenvalues()(src);
    auto col = solver.eigenvectors().col(src);
    // Deterministic sign: largest-magnitude component positive.
    Eigen::Index arg = 0;
    col.cwiseAbs().maxCoeff(&arg);
    const double flip = col(arg) < 0.0 ? -1.0 : 1.0;
    for (std::size_t r = 0; r < n; ++r) basis.vectors(r, c) = flip * col(static_cast<Eigen::Index>(r));
  }
  return basis;
}

Matrix relax_to_features(const Matrix& Z, std::span<const double> D) {
  const std::size_t n = Z.rows();
  const std::size_t k = Z.cols();
  if (D.size() != n) throw Error(ErrorKind::DimensionMismatch, "degree length mismatch");
  Matrix U(n, k, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    const double scale = 1.0 / std::sqrt(D[u]);
    for (std::size_t c = 0; c < k; ++c) U(u, c) = scale * Z(u, c);
  }
  for (std::size_t c = 0; c < k; ++c) {
    double sq = 0.0;
    for (std::size_t u = 0; u < n; ++u) sq += U(u, c) * U(u, c);
    if (sq > 0.0) {
      const double inv = 1.0 / std::sqrt(sq);
      for (std::size_t u = 0; u < n; ++u) U(u, c) *= inv;
    }
  }
  for (std::size_t u = 0; u < n; ++u) {
    auto row = U.row(u);
    const double sq = kernels::dot(row.data(), row.data(), k);
    if (sq > 0.0) kernels::scale_inplace(row.data(), 1.0 / std::sqrt(sq), k);
  }
  return U;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct LloydRun {
  std::vector<int> labels;
  double wcss = std::numeric_limits<double>::infinity();
};

// Greedy farthest-point seeding: random first center, then repeatedly the
// point farthest from its nearest chosen center (ties to the lowest index).
std::vector<std::size_t> seed_centers(const Matrix& U, int k, std::mt19937_64& rng) {
  const std::size_t n = U.rows();
  std::vector<std::size_t> centers;
  centers.reserve(k);
  std::uniform_int_distribution<std::size_t> uniform(0, n - 1);
  centers.push_back(uniform(rng));
  std::vector<double> min_sq(n, std::numeric_limits<double>::infinity());
  for (int c = 1; c < k; ++c) {
    const auto last = U.row(centers.back());
    for (std::size_t i = 0; i < n; ++i)
      min_sq[i] = std::min(min_sq[i], kernels::sqdist(U.row(i).data(), last.data(), U.cols()));
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (min_sq[i] > min_sq[best]) best = i;
    centers.push_back(best);
  }
  return centers;
}

LloydRun lloyd(const Matrix& U, int k, std::uint64_t seed, int max_iters) {
  const std::size_t n = U.rows();
  const std::size_t dim = U.cols();
  std::mt19937_64 rng(seed);
  const auto center_idx = seed_centers(U, k, rng);

  Matrix centroids(k, dim, 0.0);
  for (int c = 0; c < k; ++c)
    std::copy(U.row(center_idx[c]).begin(), U.row(center_idx[c]).end(),
              centroids.row(c).begin());

  LloydRun run;
  run.labels.assign(n, 0);
  std::vector<int> counts(k, 0);
  for (int iter = 0; iter < max_iters; ++iter) {
    bool changed = iter == 0;
    for (std::size_t i = 0; i < n; ++i) {
      int best = 0;
      double best_sq = kernels::sqdist(U.row(i).data(), centroids.row(0).data(), dim);
      for (int c = 1; c < k; ++c) {
        const double sq = kernels::sqdist(U.row(i).data(), centroids.row(c).data(), dim);
        if (sq < best_sq) {
          best_sq = sq;
          best = c;
        }
      }
      if (run.labels[i] != best || iter == 0) {
        run.labels[i] = best;
        changed = true;
      }
    }

    // Repair empty clusters: move the farthest member of the largest cluster.
    std::fill(counts.begin(), counts.end(), 0);
    for (const int l : run.labels) ++counts[l];
    for (int c = 0; c < k; ++c) {
      while (counts[c] == 0) {
        int donor = 0;
        for (int d = 1; d < k; ++d)
          if (counts[d] > counts[donor]) donor = d;
        std::size_t far_idx = 0;
        double far_sq = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
          if (run.labels[i] != donor) continue;
          const double sq = kernels::sqdist(U.row(i).data(), centroids.row(donor).data(), dim);
          if (sq > far_sq) {
            far_sq = sq;
            far_idx = i;
          }
        }
        run.labels[far_idx] = c;
        --counts[donor];
        ++counts[c];
        changed = true;
      }
    }

    // Recompute centroids.
    std::fill(centroids.data(), centroids.data() + centroids.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      kernels::axpy(1.0, U.row(i).data(), centroids.row(run.labels[i]).data(), dim);
    for (int c = 0; c < k; ++c)
      kernels::scale_inplace(centroids.row(c).data(), 1.0 / counts[c], dim);

    if (!changed) break;
  }

  run.wcss = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    run.wcss += kernels::sqdist(U.row(i).data(), centroids.row(run.labels[i]).data(), dim);
  return run;
}

}  // namespace

ClusterIndicators kmeans_assign(const Matrix& U, int k, std::uint64_t seed,
                                const KMeansOptions& options) {
  const std::size_t n = U.rows();
  if (k < 1 || static_cast<std::size_t>(k) > n)
    throw Error(ErrorKind::TooFewObjects, "k-means needs 1 <= k <= n");
  const int restarts = std::max(1, options.restarts);
  std::vector<LloydRun> runs(restarts);
  parallel_for(restarts, [&](std::size_t r) {
    runs[r] = lloyd(U, k, splitmix64(seed) + r, options.max_iters);
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].wcss < runs[best].wcss) best = r;

  ClusterIndicators out{k, std::move(runs[best].labels)};
  out.validate();
  return out;
}

}  // namespace schain
