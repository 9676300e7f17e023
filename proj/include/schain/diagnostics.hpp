#pragma once

#include <span>
#include <string>
#include <vector>

#include "schain/matrix.hpp"

namespace schain {

/// Symmetric non-negative weight matrix over one object type; the edge set
/// is the off-diagonal pairs with positive weight.
struct ConnectivityGraph {
  Matrix weights;

  std::size_t n() const { return weights.rows(); }
  /// Throws on asymmetry (1e-9) or negative weights.
  void validate() const;
};

/// Total labeling of n objects with labels 0..k-1.
struct Labeling {
  int k = 0;
  std::vector<int> labels;

  void validate() const;
  std::vector<int> sizes() const;
};

/// Cohesiveness of the cluster pair (i, j): with h_i intra edges of weight
/// w_i in each cluster and h_ij inter edges of weight w_ij between them,
/// rho_i = h_i/(h_ij+h_i), eta_i = w_i/(w_ij+w_i), and the score is
/// rho_i * rho_j * eta_i * eta_j. Ratios with empty numerator and
/// denominator count as 0.
double pairwise_cohesiveness(const ConnectivityGraph& g, const Labeling& labeling, int i, int j);

struct CohesivenessReport {
  std::vector<double> per_cluster;  // mean of the pairwise scores vs the others
  double graph = 0.0;               // cluster-size weighted average
};
CohesivenessReport cohesiveness(const ConnectivityGraph& g, const Labeling& labeling);

struct ConnectednessReport {
  std::vector<int> ndc;             // components under intra-cluster edges only
  std::vector<double> per_cluster;  // 1 if ndc == 1 else 1 - ndc/size
  double graph = 0.0;
};
ConnectednessReport connectedness(const ConnectivityGraph& g, const Labeling& labeling);

/// Weighted averages of per-graph cohesiveness and connectedness over a set
/// of connectivity graphs (e.g. one per meta-path); theta must be a
/// probability vector.
std::pair<double, double> composite_quality(std::span<const ConnectivityGraph> graphs,
                                            const Labeling& labeling,
                                            std::span<const double> theta);

/// Normalized mutual information, 2 I / (H_a + H_b) with natural logs.
/// Both labelings constant -> 1; exactly one constant -> 0.
double nmi(const Labeling& a, const Labeling& b);

}  // namespace schain
