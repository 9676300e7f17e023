#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "schain/matrix.hpp"

namespace schain {

/// Hard partition of n objects into k non-empty clusters, stored as one
/// label per object (the k binary indicator vectors in compact form).
struct ClusterIndicators {
  int k = 0;
  std::vector<int> labels;

  std::vector<std::vector<int>> members() const;
  std::vector<int> sizes() const;
  /// Throws unless labels form an exact partition with no empty cluster.
  void validate() const;
  bool operator==(const ClusterIndicators&) const = default;
};

/// K = D^(-1/2) (S + W o S) D^(-1/2). Inputs must be symmetric within 1e-9.
Matrix build_affinity(const Matrix& S, const Matrix& WS, std::span<const double> D);

struct EigenBasis {
  Matrix vectors;                   // n x k, orthonormal columns
  std::vector<double> eigenvalues;  // descending
};

/// Orthonormal basis of the invariant subspace of the k largest eigenvalues.
/// Column signs are fixed so the largest-magnitude component is positive.
EigenBasis top_k_eigvecs(const Matrix& K, int k);

/// U = D^(-1/2) Z, normalized by column and then by row; zero rows stay zero.
Matrix relax_to_features(const Matrix& Z, std::span<const double> D);

struct KMeansOptions {
  int restarts = 10;
  int max_iters = 300;
};

/// Lloyd iterations over the rows of U with greedy farthest-point seeding,
/// best of `restarts` runs by within-cluster sum of squares. Deterministic
/// given the seed; empty clusters are repaired by splitting the largest
/// cluster at its farthest member.
ClusterIndicators kmeans_assign(const Matrix& U, int k, std::uint64_t seed,
                                const KMeansOptions& options = {});

}  // namespace schain
