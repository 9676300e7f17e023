#include "schain/diagnostics.hpp"

#include <cmath>
#include <numeric>

#include "schain/error.hpp"

namespace schain {

namespace {

// Union-find with path halving; enough for component counts.
struct DisjointSets {
  std::vector<int> parent;

  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[b] = a;
  }
};

double ratio_or_zero(double numerator, double denominator) {
  return denominator > 0.0 ? numerator / denominator : 0.0;
}

}  // namespace

void ConnectivityGraph::validate() const {
  if (weights.rows() != weights.cols())
    throw Error(ErrorKind::DimensionMismatch, "connectivity matrix must be square");
  if (!is_symmetric(weights, 1e-9))
    throw Error(ErrorKind::NonSymmetric, "connectivity matrix is not symmetric within 1e-9");
  for (std::size_t u = 0; u < weights.rows(); ++u)
    for (std::size_t v = 0; v < weights.cols(); ++v)
      if (weights(u, v) < 0.0)
        throw Error(ErrorKind::InvariantViolation, "connectivity weights must be nonnegative");
}

void Labeling::validate() const {
  if (k < 1) throw Error(ErrorKind::InvariantViolation, "label set must be non-empty");
  std::vector<int> counts(k, 0);
  for (const int l : labels) {
    if (l < 0 || l >= k) throw Error(ErrorKind::InvariantViolation, "label out of range");
    ++counts[l];
  }
  for (const int c : counts)
    if (c == 0) throw Error(ErrorKind::InvariantViolation, "unused label in labeling");
}

std::vector<int> Labeling::sizes() const {
  std::vector<int> out(k, 0);
  for (const int l : labels) ++out[l];
  return out;
}

double pairwise_cohesiveness(const ConnectivityGraph& g, const Labeling& labeling, int i, int j) {
  if (i == j) throw Error(ErrorKind::BadConfig, "cluster pair must be distinct");
  const std::size_t n = g.n();
  if (labeling.labels.size() != n)
    throw Error(ErrorKind::ObjectSetMismatch, "labeling does not cover the graph");
  double intra_count_i = 0, intra_count_j = 0, inter_count = 0;
  double intra_weight_i = 0, intra_weight_j = 0, inter_weight = 0;
  for (std::size_t u = 0; u < n; ++u) {
    const int lu = labeling.labels[u];
    if (lu != i && lu != j) continue;
    for (std::size_t v = u + 1; v < n; ++v) {
      const double w = g.weights(u, v);
      if (w <= 0.0) continue;
      const int lv = labeling.labels[v];
      if (lu == i && lv == i) {
        ++intra_count_i;
        intra_weight_i += w;
      } else if (lu == j && lv == j) {
        ++intra_count_j;
        intra_weight_j += w;
      } else if ((lu == i && lv == j) || (lu == j && lv == i)) {
        ++inter_count;
        inter_weight += w;
      }
    }
  }
  const double edge_ratio_i = ratio_or_zero(intra_count_i, inter_count + intra_count_i);
  const double edge_ratio_j = ratio_or_zero(intra_count_j, inter_count + intra_count_j);
  const double weight_ratio_i = ratio_or_zero(intra_weight_i, inter_weight + intra_weight_i);
  const double weight_ratio_j = ratio_or_zero(intra_weight_j, inter_weight + intra_weight_j);
  return edge_ratio_i * edge_ratio_j * weight_ratio_i * weight_ratio_j;
}

CohesivenessReport cohesiveness(const ConnectivityGraph& g, const Labeling& labeling) {
  labeling.validate();
  if (labeling.k < 2) throw Error(ErrorKind::SingleCluster, "cohesiveness needs k >= 2");
  CohesivenessReport report;
  report.per_cluster.assign(labeling.k, 0.0);
  for (int i = 0; i < labeling.k; ++i) {
    double total = 0.0;
    for (int j = 0; j < labeling.k; ++j)
      if (j != i) total += pairwise_cohesiveness(g, labeling, i, j);
    report.per_cluster[i] = total / static_cast<double>(labeling.k - 1);
  }
  const auto sizes = labeling.sizes();
  const double population = static_cast<double>(labeling.labels.size());
  for (int i = 0; i < labeling.k; ++i)
    report.graph += static_cast<double>(sizes[i]) / population * report.per_cluster[i];
  return report;
}

ConnectednessReport connectedness(const ConnectivityGraph& g, const Labeling& labeling) {
  labeling.validate();
  const std::size_t n = g.n();
  if (labeling.labels.size() != n)
    throw Error(ErrorKind::ObjectSetMismatch, "labeling does not cover the graph");
  DisjointSets sets(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (g.weights(u, v) > 0.0 && labeling.labels[u] == labeling.labels[v])
        sets.unite(static_cast<int>(u), static_cast<int>(v));

  ConnectednessReport report;
  report.ndc.assign(labeling.k, 0);
  std::vector<bool> root_seen(n, false);
  for (std::size_t u = 0; u < n; ++u) {
    const int root = sets.find(static_cast<int>(u));
    if (!root_seen[root]) {
      root_seen[root] = true;
      ++report.ndc[labeling.labels[u]];
    }
  }
  const auto sizes = labeling.sizes();
  report.per_cluster.assign(labeling.k, 0.0);
  const double population = static_cast<double>(labeling.labels.size());
  for (int i = 0; i < labeling.k; ++i) {
    report.per_cluster[i] =
        report.ndc[i] == 1
            ? 1.0
            : 1.0 - static_cast<double>(report.ndc[i]) / static_cast<double>(sizes[i]);
    report.graph += static_cast<double>(sizes[i]) / population * report.per_cluster[i];
  }
  return report;
}

std::pair<double, double> composite_quality(std::span<const ConnectivityGraph> graphs,
                                            const Labeling& labeling,
                                            std::span<const double> theta) {
  if (graphs.size() != theta.size())
    throw Error(ErrorKind::DimensionMismatch, "theta length must match the graph count");
  double total = 0.0;
  for (const double t : theta) {
    if (t < 0.0) throw Error(ErrorKind::BadConfig, "theta weights must be nonnegative");
    total += t;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw Error(ErrorKind::BadConfig, "theta weights must sum to 1");
  double coh = 0.0, conn = 0.0;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    coh += theta[i] * cohesiveness(graphs[i], labeling).graph;
    conn += theta[i] * connectedness(graphs[i], labeling).graph;
  }
  return {coh, conn};
}

double nmi(const Labeling& a, const Labeling& b) {
  if (a.labels.size() != b.labels.size())
    throw Error(ErrorKind::ObjectSetMismatch, "labelings cover different object sets");
  a.validate();
  b.validate();
  const double n = static_cast<double>(a.labels.size());
  if (a.labels.empty()) throw Error(ErrorKind::ObjectSetMismatch, "empty labelings");

  Grid<double> joint(a.k, b.k, 0.0);
  std::vector<double> row(a.k, 0.0), col(b.k, 0.0);
  for (std::size_t i = 0; i < a.labels.size(); ++i) {
    joint(a.labels[i], b.labels[i]) += 1.0;
    row[a.labels[i]] += 1.0;
    col[b.labels[i]] += 1.0;
  }
  double h_a = 0.0, h_b = 0.0, mutual = 0.0;
  for (int i = 0; i < a.k; ++i)
    if (row[i] > 0.0) h_a -= row[i] / n * std::log(row[i] / n);
  for (int j = 0; j < b.k; ++j)
    if (col[j] > 0.0) h_b -= col[j] / n * std::log(col[j] / n);
  for (int i = 0; i < a.k; ++i)
    for (int j = 0; j < b.k; ++j) {
      const double nij = joint(i, j);
      if (nij > 0.0) mutual += nij / n * std::log(nij * n / (row[i] * col[j]));
    }
  if (h_a + h_b == 0.0) return 1.0;  // both single-cluster
  if (h_a == 0.0 || h_b == 0.0) return 0.0;
  return 2.0 * mutual / (h_a + h_b);
}

}  // namespace schain
