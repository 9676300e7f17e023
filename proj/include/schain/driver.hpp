#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "schain/composite.hpp"
#include "schain/fractional.hpp"
#include "schain/hin.hpp"
#include "schain/spectral.hpp"

namespace schain {

struct SchainConfig {
  int k = 2;
  double alpha = 0.5;
  double gamma = 0.5;
  double epsilon = 1e-4;   // convergence threshold on |J_t - J_{t-1}|
  int max_iter = 20;
  std::uint64_t seed = 0;
  double tol_f = 1e-6;     // ratio-solver tolerance, relative to f at uniform weights
  int max_dinkelbach = 50;
  int kmeans_restarts = 10;

  void validate() const;
};

struct IterationRecord {
  double J_after_spectral = 0.0;  // penalty after the partition update
  double J_after_weights = 0.0;   // penalty after the weight update
  DinkelbachTrace trace;
};

struct ClusteringResult {
  std::vector<std::vector<std::string>> clusters;  // object ids, k lists
  std::vector<int> labels;                         // per target object
  std::vector<double> lambda, omega;
  std::vector<double> J_history;                   // J after each full iteration
  std::vector<IterationRecord> records;
  int iterations = 0;
  bool converged = false;
};

/// Penalty of a partition at given weights: sum over clusters of
/// (volume - within-cluster affinity) / volume, plus the L2 regularizer.
/// Evaluated directly from the assembled matrices (independent of the
/// polynomial route used by the weight step).
double penalty(const CompositeModel& model, const ClusterIndicators& z,
               std::span<const double> lambda, std::span<const double> omega);

/// Builds the composite model for one target type: per-meta-path PathSim
/// matrices, per-attribute components, and the constraint matrix.
CompositeModel build_model(const Hin& hin, const std::vector<MetaPath>& metapaths,
                           const ConstraintSet& constraints, const std::string& target_type,
                           double alpha, double gamma);

/// Alternates the spectral partition update with the ratio-program weight
/// update until |dJ| <= epsilon or max_iter. Deterministic given the seed.
ClusteringResult schain_run(const Hin& hin, const std::vector<MetaPath>& metapaths,
                            const ConstraintSet& constraints, const std::string& target_type,
                            const SchainConfig& config);

}  // namespace schain
