#include "schain/driver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "schain/error.hpp"
#include "schain/kernels.hpp"
#include "schain/metapath_sim.hpp"
#include "schain/parallel.hpp"

namespace schain {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t x = seed ^ (salt * 0x9e3779b97f4a7c15ULL);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

void SchainConfig::validate() const {
  if (k < 2) throw Error(ErrorKind::BadConfig, "k must be at least 2");
  if (!(epsilon > 0.0)) throw Error(ErrorKind::BadConfig, "epsilon must be positive");
  if (max_iter < 1) throw Error(ErrorKind::BadConfig, "max_iter must be at least 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorKind::BadConfig, "alpha must lie in [0,1]");
  if (!(gamma >= 0.0)) throw Error(ErrorKind::BadConfig, "gamma must be nonnegative");
  if (!(tol_f > 0.0)) throw Error(ErrorKind::BadConfig, "tol_f must be positive");
  if (max_dinkelbach < 1) throw Error(ErrorKind::BadConfig, "max_dinkelbach must be at least 1");
  if (kmeans_restarts < 1) throw Error(ErrorKind::BadConfig, "kmeans_restarts must be at least 1");
}

double penalty(const CompositeModel& model, const ClusterIndicators& z,
               std::span<const double> lambda, std::span<const double> omega) {
  z.validate();
  if (z.labels.size() != model.n())
    throw Error(ErrorKind::DimensionMismatch, "partition size does not match the model");
  const auto ev = model.evaluate(lambda, omega);
  const int k = z.k;
  std::vector<double> within(k, 0.0), volume(k, 0.0);
  const std::size_t n = model.n();
  for (std::size_t u = 0; u < n; ++u) {
    const int r = z.labels[u];
    volume[r] += ev.D[u];
    const auto s_row = ev.S.row(u);
    const auto ws_row = ev.WS.row(u);
    for (std::size_t v = 0; v < n; ++v)
      if (z.labels[v] == r) within[r] += s_row[v] + ws_row[v];
  }
  double J = 0.0;
  for (int r = 0; r < k; ++r) J += (volume[r] - within[r]) / volume[r];
  const double reg = kernels::dot(lambda.data(), lambda.data(), lambda.size()) +
                     kernels::dot(omega.data(), omega.data(), omega.size());
  return J + model.gamma() * reg;
}

CompositeModel build_model(const Hin& hin, const std::vector<MetaPath>& metapaths,
                           const ConstraintSet& constraints, const std::string& target_type,
                           double alpha, double gamma) {
  const int target = hin.type_index_or_throw(target_type);
  for (const auto& path : metapaths) {
    if (path.types.empty() || path.types.front() != target_type)
      throw Error(ErrorKind::AsymmetricPath,
                  "meta-path " + path.joined() + " does not start at type " + target_type);
    if (!path.symmetric())
      throw Error(ErrorKind::AsymmetricPath,
                  "meta-path " + path.joined() + " is not symmetric");
  }

  std::vector<Tssn> sims(metapaths.size());
  parallel_for(metapaths.size(), [&](std::size_t p) { sims[p] = tssn(hin, metapaths[p]); });

  std::vector<Matrix> attrs;
  if (!hin.attributes[target].empty()) attrs = attribute_components(hin.attributes[target]);

  const std::size_t n = hin.object_count(target);
  return CompositeModel::assemble(std::move(sims), std::move(attrs),
                                  constraint_matrix(constraints, n), alpha, gamma);
}

ClusteringResult schain_run(const Hin& hin, const std::vector<MetaPath>& metapaths,
                            const ConstraintSet& constraints, const std::string& target_type,
                            const SchainConfig& config) {
  config.validate();
  const int target = hin.type_index_or_throw(target_type);
  const std::size_t n = hin.object_count(target);
  if (n < static_cast<std::size_t>(config.k))
    throw Error(ErrorKind::TooFewObjects,
                "target type " + target_type + " has fewer objects than clusters");

  const CompositeModel model =
      build_model(hin, metapaths, constraints, target_type, config.alpha, config.gamma);

  ClusteringResult result;
  result.lambda = model.uniform_lambda();
  result.omega = model.uniform_omega();

  ClusterIndicators z, z_prev;
  double j_prev = std::numeric_limits<double>::infinity();
  for (int t = 0; t < config.max_iter; ++t) {
    const auto ev = model.evaluate(result.lambda, result.omega);
    const Matrix affinity = build_affinity(ev.S, ev.WS, ev.D);
    const EigenBasis basis = top_k_eigvecs(affinity, config.k);
    const Matrix features = relax_to_features(basis.vectors, ev.D);
    z = kmeans_assign(features, config.k, mix_seed(config.seed, 2 * t + 1),
                      {config.kmeans_restarts, 300});

    IterationRecord record;
    record.J_after_spectral = penalty(model, z, result.lambda, result.omega);

    const FracProgram program(model, z);
    std::vector<double> current(result.lambda);
    current.insert(current.end(), result.omega.begin(), result.omega.end());
    DinkelbachOptions opts;
    opts.tol_rel = config.tol_f;
    opts.max_iters = config.max_dinkelbach;
    opts.seed = mix_seed(config.seed, 2 * t + 2);
    const DinkelbachResult solved = dinkelbach(program, current, opts);
    record.trace = solved.trace;

    std::vector<double> new_lambda(solved.x.begin(), solved.x.begin() + model.num_metapaths());
    std::vector<double> new_omega(solved.x.begin() + model.num_metapaths(), solved.x.end());
    const double j_new = penalty(model, z, new_lambda, new_omega);

    double weight_shift = 0.0;
    // Keep the better of old and new weights; the previous point is among
    // the solver starts, so a regression only signals inner-solver noise.
    if (j_new <= record.J_after_spectral) {
      for (std::size_t i = 0; i < new_lambda.size(); ++i)
        weight_shift = std::max(weight_shift, std::abs(new_lambda[i] - result.lambda[i]));
      for (std::size_t i = 0; i < new_omega.size(); ++i)
        weight_shift = std::max(weight_shift, std::abs(new_omega[i] - result.omega[i]));
      result.lambda = std::move(new_lambda);
      result.omega = std::move(new_omega);
      record.J_after_weights = j_new;
    } else {
      record.J_after_weights = record.J_after_spectral;
    }

    result.J_history.push_back(record.J_after_weights);
    result.records.push_back(std::move(record));
    result.iterations = t + 1;

    const double delta = std::abs(result.J_history.back() - j_prev);
    const bool fixed_point = t > 0 && z == z_prev && weight_shift < 1e-9;
    if (delta <= config.epsilon || fixed_point) {
      result.converged = true;
      break;
    }
    j_prev = result.J_history.back();
    z_prev = z;
  }

  result.labels = z.labels;
  result.clusters.assign(config.k, {});
  for (std::size_t i = 0; i < n; ++i)
    result.clusters[z.labels[i]].push_back(hin.objects[target][i]);
  return result;
}

}  // namespace schain
