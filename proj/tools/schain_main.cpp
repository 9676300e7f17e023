// Command-line front end: cluster / pathsim / diagnose / eval-nmi.
// Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical failure.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "schain/config.hpp"
#include "schain/diagnostics.hpp"
#include "schain/driver.hpp"
#include "schain/error.hpp"
#include "schain/json_writer.hpp"
#include "schain/metapath_sim.hpp"
#include "schain/text_io.hpp"
#include "schain/version.hpp"

namespace fs = std::filesystem;
using namespace schain;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

int exit_code_for(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::Usage: return kExitUsage;
    case ErrorCategory::Data: return kExitData;
    case ErrorCategory::Numerical: return kExitNumerical;
  }
  return kExitData;
}

struct DataDir {
  fs::path root;
  TextTable nodes, edges, constraints;
  std::vector<std::string> metapath_lines;
  std::map<std::string, TextTable> attrs;
  bool has_constraints = false;
};

std::vector<std::string> read_metapath_lines(const fs::path& path) {
  std::vector<std::string> lines;
  for (const auto& rec : read_table(path.string())) {
    if (rec.fields.size() != 1 || rec.fields[0].empty())
      throw Error(ErrorKind::MalformedRecord, "metapaths.txt: one type sequence per line");
    lines.push_back(rec.fields[0]);
  }
  return lines;
}

DataDir load_data_dir(const std::string& dir, bool need_metapaths) {
  DataDir data;
  data.root = dir;
  data.nodes = read_table((data.root / "nodes.tsv").string());
  data.edges = read_table((data.root / "edges.tsv").string());
  if (need_metapaths) data.metapath_lines = read_metapath_lines(data.root / "metapaths.txt");
  const fs::path constraints_path = data.root / "constraints.tsv";
  if (fs::exists(constraints_path)) {
    data.constraints = read_table(constraints_path.string());
    data.has_constraints = true;
  }
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(data.root, ec)) {
    const std::string name = entry.path().filename().string();
    if (name.starts_with("attrs.") && name.ends_with(".tsv")) {
      const std::string type = name.substr(6, name.size() - 6 - 4);
      if (!type.empty()) data.attrs[type] = read_table(entry.path().string());
    }
  }
  return data;
}

Hin parse_dir(const DataDir& data) {
  const NetworkSchema schema = infer_schema(data.nodes, data.edges);
  return parse_hin(data.nodes, data.edges, data.attrs, schema);
}

std::vector<MetaPath> parse_metapaths(const DataDir& data, const NetworkSchema& schema) {
  std::vector<MetaPath> paths;
  paths.reserve(data.metapath_lines.size());
  for (const auto& line : data.metapath_lines) paths.push_back(parse_metapath(line, schema));
  return paths;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::FileNotFound, "cannot write " + path);
  out << contents;
}

std::string result_to_json(const ClusteringResult& result) {
  JsonWriter w;
  w.begin_object();
  w.key("clusters").begin_array();
  for (const auto& cluster : result.clusters) w.value(std::span<const std::string>(cluster));
  w.end_array();
  w.key("lambda").value(std::span<const double>(result.lambda));
  w.key("omega").value(std::span<const double>(result.omega));
  w.key("J_history").value(std::span<const double>(result.J_history));
  w.key("converged").value(result.converged);
  w.key("iterations").value(result.iterations);
  w.key("mu_traces").begin_array();
  for (const auto& rec : result.records) w.value(std::span<const double>(rec.trace.mus));
  w.end_array();
  w.key("F_traces").begin_array();
  for (const auto& rec : result.records) w.value(std::span<const double>(rec.trace.f_minus_mu_g));
  w.end_array();
  w.end_object();
  return w.str() + "\n";
}

struct LabelFile {
  std::vector<std::string> ids;
  std::vector<std::string> names;  // label per id
};

LabelFile read_label_file(const std::string& path) {
  LabelFile out;
  for (const auto& rec : read_table(path)) {
    if (rec.fields.size() != 2)
      throw Error(ErrorKind::MalformedRecord, path + ": expected <id>\\t<label>");
    out.ids.push_back(rec.fields[0]);
    out.names.push_back(rec.fields[1]);
  }
  return out;
}

Labeling compact_labels(const std::vector<std::string>& names) {
  Labeling labeling;
  std::map<std::string, int> index;
  for (const auto& name : names) {
    auto [it, inserted] = index.emplace(name, labeling.k);
    if (inserted) ++labeling.k;
    labeling.labels.push_back(it->second);
  }
  return labeling;
}

/// Aligns a label file to the target-type object order.
Labeling align_labels(const LabelFile& file, const Hin& hin, int target) {
  const auto& index_of = hin.ids[target];
  const std::size_t n = hin.object_count(target);
  std::vector<std::string> per_object(n);
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < file.ids.size(); ++i) {
    const auto it = index_of.find(file.ids[i]);
    if (it == index_of.end())
      throw Error(ErrorKind::UnknownId, "label for unknown object '" + file.ids[i] + "'");
    if (seen[it->second])
      throw Error(ErrorKind::DuplicateId, "repeated label for '" + file.ids[i] + "'");
    seen[it->second] = true;
    per_object[it->second] = file.names[i];
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!seen[i])
      throw Error(ErrorKind::PartialLabeling,
                  "object '" + hin.objects[target][i] + "' has no label");
  return compact_labels(per_object);
}

int cmd_cluster(const std::string& dir, const std::string& target, SchainConfig config,
                const std::string& out_path, const std::string& manifest_path,
                const std::optional<std::string>& config_path) {
  const auto started = std::chrono::steady_clock::now();
  const DataDir data = load_data_dir(dir, /*need_metapaths=*/true);
  const Hin hin = parse_dir(data);
  const auto metapaths = parse_metapaths(data, hin.schema);
  ConstraintSet constraints;
  if (data.has_constraints) constraints = parse_constraints(data.constraints, hin, target);

  const ClusteringResult result = schain_run(hin, metapaths, constraints, target, config);
  for (const auto& rec : result.records)
    if (rec.trace.warning || !rec.trace.converged)
      std::cerr << "warning: ratio solver hit an iteration cap; result may be local\n";
  write_file(out_path, result_to_json(result));

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  JsonWriter m;
  m.begin_object();
  m.key("tool_version").value(std::string_view(kVersion));
  m.key("data_dir").value(std::string_view(fs::absolute(data.root).string()));
  m.key("target_type").value(std::string_view(target));
  if (config_path) m.key("config_file").value(std::string_view(*config_path));
  m.key("config").begin_object();
  m.key("k").value(config.k);
  m.key("alpha").value(config.alpha);
  m.key("gamma").value(config.gamma);
  m.key("epsilon").value(config.epsilon);
  m.key("max_iter").value(config.max_iter);
  m.key("seed").value(config.seed);
  m.key("tol_f").value(config.tol_f);
  m.key("kmeans_restarts").value(config.kmeans_restarts);
  m.end_object();
  m.key("result_file").value(std::string_view(out_path));
  m.key("wall_time_seconds").value(seconds);
  m.end_object();
  write_file(manifest_path, m.str() + "\n");
  return 0;
}

int cmd_pathsim(const std::string& dir, const std::string& path_spec, const std::string& target) {
  const DataDir data = load_data_dir(dir, /*need_metapaths=*/false);
  const Hin hin = parse_dir(data);
  const MetaPath path = parse_metapath(path_spec, hin.schema);
  if (!target.empty() && path.types.front() != target)
    throw Error(ErrorKind::AsymmetricPath,
                "meta-path " + path.joined() + " does not start at type " + target);
  const Tssn network = tssn(hin, path);
  const int type = hin.type_index_or_throw(path.types.front());
  const auto& ids = hin.objects[type];
  std::string out;
  for (std::size_t u = 0; u < network.weights.rows(); ++u)
    for (std::size_t v = u + 1; v < network.weights.cols(); ++v)
      if (network.weights(u, v) > 0.0) {
        out += ids[u];
        out += '\t';
        out += ids[v];
        out += '\t';
        out += format_double(network.weights(u, v));
        out += '\n';
      }
  std::fwrite(out.data(), 1, out.size(), stdout);
  return 0;
}

int cmd_diagnose(const std::string& dir, const std::string& target,
                 const std::string& labels_path, std::vector<double> theta,
                 const std::string& out_path) {
  const DataDir data = load_data_dir(dir, /*need_metapaths=*/true);
  const Hin hin = parse_dir(data);
  const int type = hin.type_index_or_throw(target);
  const auto metapaths = parse_metapaths(data, hin.schema);
  if (metapaths.empty())
    throw Error(ErrorKind::MalformedRecord, "metapaths.txt lists no meta-paths");
  for (const auto& path : metapaths)
    if (path.types.front() != target)
      throw Error(ErrorKind::AsymmetricPath,
                  "meta-path " + path.joined() + " does not start at type " + target);
  const Labeling labeling = align_labels(read_label_file(labels_path), hin, type);

  if (theta.empty()) theta = uniform_weights(metapaths.size());
  if (theta.size() != metapaths.size())
    throw Error(ErrorKind::BadConfig, "theta length must match the meta-path count");
  double total = 0.0;
  for (const double t : theta) {
    if (t < 0.0) throw Error(ErrorKind::BadConfig, "theta weights must be nonnegative");
    total += t;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw Error(ErrorKind::BadConfig, "theta weights must sum to 1");

  std::vector<ConnectivityGraph> graphs;
  graphs.reserve(metapaths.size());
  for (const auto& path : metapaths) graphs.push_back({tssn(hin, path).weights});

  JsonWriter w;
  w.begin_object();
  w.key("target_type").value(std::string_view(target));
  w.key("num_clusters").value(labeling.k);
  w.key("theta").value(std::span<const double>(theta));
  w.key("per_metapath").begin_array();
  double coh_total = 0.0, conn_total = 0.0;
  for (std::size_t p = 0; p < graphs.size(); ++p) {
    const auto coh = cohesiveness(graphs[p], labeling);
    const auto conn = connectedness(graphs[p], labeling);
    coh_total += theta[p] * coh.graph;
    conn_total += theta[p] * conn.graph;
    w.begin_object();
    w.key("metapath").value(std::string_view(metapaths[p].joined()));
    w.key("cohesiveness").value(coh.graph);
    w.key("connectedness").value(conn.graph);
    w.key("per_cluster_cohesiveness").value(std::span<const double>(coh.per_cluster));
    w.key("per_cluster_connectedness").value(std::span<const double>(conn.per_cluster));
    w.key("ndc").begin_array();
    for (const int c : conn.ndc) w.value(c);
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.key("cohesiveness").value(coh_total);
  w.key("connectedness").value(conn_total);
  w.end_object();

  const std::string text = w.str() + "\n";
  if (out_path.empty())
    std::fwrite(text.data(), 1, text.size(), stdout);
  else
    write_file(out_path, text);
  return 0;
}

int cmd_eval_nmi(const std::string& path_a, const std::string& path_b) {
  const LabelFile a = read_label_file(path_a);
  const LabelFile b = read_label_file(path_b);
  std::map<std::string, std::string> by_id;
  for (std::size_t i = 0; i < a.ids.size(); ++i) {
    if (!by_id.emplace(a.ids[i], a.names[i]).second)
      throw Error(ErrorKind::DuplicateId, path_a + ": repeated id '" + a.ids[i] + "'");
  }
  if (a.ids.size() != b.ids.size())
    throw Error(ErrorKind::ObjectSetMismatch, "label files cover different object sets");
  std::vector<std::string> a_names, b_names;
  std::map<std::string, std::string> b_by_id;
  for (std::size_t i = 0; i < b.ids.size(); ++i) {
    if (!b_by_id.emplace(b.ids[i], b.names[i]).second)
      throw Error(ErrorKind::DuplicateId, path_b + ": repeated id '" + b.ids[i] + "'");
    const auto it = by_id.find(b.ids[i]);
    if (it == by_id.end())
      throw Error(ErrorKind::ObjectSetMismatch, "id '" + b.ids[i] + "' is missing from " + path_a);
    a_names.push_back(it->second);
    b_names.push_back(b.names[i]);
  }
  const double value = nmi(compact_labels(a_names), compact_labels(b_names));
  std::printf("%.6f\n", value);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-supervised clustering of attributed heterogeneous information networks"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // cluster
  auto* cluster = app.add_subcommand("cluster", "Cluster a target object type");
  std::string cl_dir, cl_target, cl_out = "result.json", cl_manifest = "manifest.json";
  std::optional<std::string> cl_config;
  std::optional<int> cl_k, cl_max_iter, cl_restarts;
  std::optional<double> cl_alpha, cl_gamma, cl_epsilon, cl_tol_f;
  std::optional<std::uint64_t> cl_seed;
  cluster->add_option("dir", cl_dir, "Data directory")->required();
  cluster->add_option("--target", cl_target, "Object type to cluster")->required();
  cluster->add_option("--config", cl_config, "Config file (key = value)");
  cluster->add_option("--k", cl_k, "Number of clusters");
  cluster->add_option("--alpha", cl_alpha, "Attribute/link balance in [0,1]");
  cluster->add_option("--gamma", cl_gamma, "Weight regularizer");
  cluster->add_option("--epsilon", cl_epsilon, "Convergence threshold on the penalty change");
  cluster->add_option("--max-iter", cl_max_iter, "Outer iteration cap");
  cluster->add_option("--seed", cl_seed, "RNG seed");
  cluster->add_option("--tol-f", cl_tol_f, "Ratio-solver tolerance");
  cluster->add_option("--kmeans-restarts", cl_restarts, "k-means restarts");
  cluster->add_option("--out", cl_out, "Result JSON path");
  cluster->add_option("--manifest", cl_manifest, "Manifest JSON path");

  // pathsim
  auto* pathsim = app.add_subcommand("pathsim", "Dump a meta-path similarity network as TSV");
  std::string ps_dir, ps_path, ps_target;
  pathsim->add_option("dir", ps_dir, "Data directory")->required();
  pathsim->add_option("--path", ps_path, "Meta-path, e.g. A-P-A")->required();
  pathsim->add_option("--target", ps_target, "Expected start type (optional check)");

  // diagnose
  auto* diagnose = app.add_subcommand("diagnose", "Cohesiveness/connectedness of a labeling");
  std::string dg_dir, dg_target, dg_labels, dg_out;
  std::vector<double> dg_theta;
  diagnose->add_option("dir", dg_dir, "Data directory")->required();
  diagnose->add_option("--target", dg_target, "Labeled object type")->required();
  diagnose->add_option("--labels", dg_labels, "Label file (<id>\\t<label>)")->required();
  diagnose->add_option("--theta", dg_theta, "Meta-path weights (default uniform)")
      ->delimiter(',');
  diagnose->add_option("--out", dg_out, "Report path (default stdout)");

  // eval-nmi
  auto* evalnmi = app.add_subcommand("eval-nmi", "NMI between two label files");
  std::string nm_a, nm_b;
  evalnmi->add_option("labels_a", nm_a, "First label file")->required();
  evalnmi->add_option("labels_b", nm_b, "Second label file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cluster->parsed()) {
      SchainConfig config;
      if (cl_config) apply_config_file(*cl_config, config);
      if (cl_k) config.k = *cl_k;
      if (cl_alpha) config.alpha = *cl_alpha;
      if (cl_gamma) config.gamma = *cl_gamma;
      if (cl_epsilon) config.epsilon = *cl_epsilon;
      if (cl_max_iter) config.max_iter = *cl_max_iter;
      if (cl_seed) config.seed = *cl_seed;
      if (cl_tol_f) config.tol_f = *cl_tol_f;
      if (cl_restarts) config.kmeans_restarts = *cl_restarts;
      return cmd_cluster(cl_dir, cl_target, config, cl_out, cl_manifest, cl_config);
    }
    if (pathsim->parsed()) return cmd_pathsim(ps_dir, ps_path, ps_target);
    if (diagnose->parsed()) return cmd_diagnose(dg_dir, dg_target, dg_labels, dg_theta, dg_out);
    if (evalnmi->parsed()) return cmd_eval_nmi(nm_a, nm_b);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
