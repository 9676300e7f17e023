#include "support/fixtures.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace schain::test {

Hin make_hin(const std::string& nodes_tsv, const std::string& edges_tsv,
             const std::map<std::string, std::string>& attr_tsvs) {
  const TextTable nodes = parse_table(nodes_tsv);
  const TextTable edges = parse_table(edges_tsv);
  std::map<std::string, TextTable> attrs;
  for (const auto& [type, text] : attr_tsvs) attrs[type] = parse_table(text);
  return parse_hin(nodes, edges, attrs, infer_schema(nodes, edges));
}

Tssn tssn_from_matrix(Matrix weights) {
  return Tssn{std::move(weights), MetaPath{{"A", "P", "A"}}};
}

namespace {

struct GraphSpec {
  std::ostringstream nodes, edges;
  std::set<std::pair<std::string, std::string>> seen;

  void node(const std::string& id, const std::string& type) { nodes << id << '\t' << type << '\n'; }
  void edge(const std::string& a, const std::string& b) {
    if (seen.insert({a, b}).second) edges << a << '\t' << b << '\n';
  }
};

std::string obj_id(const char* prefix, int i) { return prefix + std::to_string(i); }

}  // namespace

Hin random_hin(std::mt19937_64& rng, int max_target) {
  std::uniform_int_distribution<int> target_count(2, max_target);
  std::uniform_int_distribution<int> mid_count(1, 6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n_a = target_count(rng);
  const int n_p = mid_count(rng);
  const bool with_v = unit(rng) < 0.5;
  const int n_v = with_v ? mid_count(rng) : 0;

  GraphSpec spec;
  for (int i = 0; i < n_a; ++i) spec.node(obj_id("a", i), "A");
  for (int i = 0; i < n_p; ++i) spec.node(obj_id("p", i), "P");
  for (int i = 0; i < n_v; ++i) spec.node(obj_id("v", i), "V");

  const double p_edge = 0.2 + 0.4 * unit(rng);
  for (int i = 0; i < n_a; ++i)
    for (int j = 0; j < n_p; ++j)
      if (unit(rng) < p_edge) spec.edge(obj_id("a", i), obj_id("p", j));
  // keep at least one A-P edge so the A-P link type exists
  spec.edge("a0", "p0");
  for (int j = 0; j < n_p; ++j)
    for (int l = 0; l < n_v; ++l)
      if (unit(rng) < 0.4) spec.edge(obj_id("p", j), obj_id("v", l));
  if (with_v) spec.edge("p0", "v0");

  return make_hin(spec.nodes.str(), spec.edges.str());
}

MetaPath random_metapath(std::mt19937_64& rng, const Hin& hin, int max_types) {
  const bool has_v = hin.schema.type_index("V").has_value() &&
                     hin.schema.has_link("P", "V");
  std::vector<std::vector<std::string>> options = {{"A", "P", "A"}};
  if (max_types >= 5) {
    options.push_back({"A", "P", "A", "P", "A"});
    if (has_v) options.push_back({"A", "P", "V", "P", "A"});
  }
  std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
  return validate_metapath(options[pick(rng)], hin.schema);
}

RandomInstance random_instance(std::mt19937_64& rng, int max_target, int max_paths,
                               int max_attrs) {
  std::uniform_int_distribution<int> target_count(6, max_target);
  std::uniform_int_distribution<int> mid_count(3, 10);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n_a = target_count(rng);
  const int n_p = mid_count(rng);
  const bool with_v = unit(rng) < 0.4;
  const int n_v = with_v ? 4 : 0;
  std::uniform_int_distribution<int> attr_count(0, max_attrs);
  const int n_attrs = attr_count(rng);

  GraphSpec spec;
  for (int i = 0; i < n_a; ++i) spec.node(obj_id("a", i), "A");
  for (int i = 0; i < n_p; ++i) spec.node(obj_id("p", i), "P");
  for (int i = 0; i < n_v; ++i) spec.node(obj_id("v", i), "V");

  const double p_edge = 0.15 + 0.3 * unit(rng);
  for (int i = 0; i < n_a; ++i) {
    spec.edge(obj_id("a", i), obj_id("p", i % n_p));  // no fully isolated rows
    for (int j = 0; j < n_p; ++j)
      if (unit(rng) < p_edge) spec.edge(obj_id("a", i), obj_id("p", j));
  }
  for (int j = 0; j < n_p; ++j) {
    if (with_v) spec.edge(obj_id("p", j), obj_id("v", j % n_v));
    for (int l = 0; l < n_v; ++l)
      if (unit(rng) < 0.3) spec.edge(obj_id("p", j), obj_id("v", l));
  }

  std::map<std::string, std::string> attr_tsvs;
  if (n_attrs > 0) {
    std::ostringstream table;
    for (int i = 0; i < n_a; ++i) {
      table << obj_id("a", i);
      for (int c = 0; c < n_attrs; ++c) table << '\t' << 10.0 * unit(rng);
      table << '\n';
    }
    attr_tsvs["A"] = table.str();
  }

  RandomInstance inst;
  inst.hin = make_hin(spec.nodes.str(), spec.edges.str(), attr_tsvs);
  std::uniform_int_distribution<int> path_count(1, max_paths);
  const int wanted = path_count(rng);
  std::set<std::string> taken;
  for (int p = 0; p < wanted; ++p) {
    MetaPath path = random_metapath(rng, inst.hin, 5);
    if (taken.insert(path.joined()).second) inst.paths.push_back(std::move(path));
  }
  std::uniform_int_distribution<int> k_pick(2, 3);
  inst.k = std::min(k_pick(rng), n_a);

  // a few random constraints, kept consistent
  if (unit(rng) < 0.5 && n_a >= 4) {
    std::uniform_int_distribution<int> obj(0, n_a - 1);
    std::set<std::pair<int, int>> used;
    const int wanted_pairs = 1 + static_cast<int>(2 * unit(rng));
    for (int c = 0; c < wanted_pairs; ++c) {
      int u = obj(rng), v = obj(rng);
      if (u == v) continue;
      const auto pair = std::minmax(u, v);
      if (!used.insert({pair.first, pair.second}).second) continue;
      if (unit(rng) < 0.5)
        inst.constraints.must_link.push_back({pair.first, pair.second});
      else
        inst.constraints.cannot_link.push_back({pair.first, pair.second});
    }
  }
  return inst;
}

BlockInstance block_instance(std::mt19937_64& rng, int k) {
  std::uniform_int_distribution<int> group_size(3, 6);
  std::uniform_int_distribution<int> papers_per_group(1, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  BlockInstance inst;
  inst.k = k;
  GraphSpec spec;
  int author_idx = 0, paper_idx = 0;
  for (int g = 0; g < k; ++g) {
    const int authors = group_size(rng);
    const int papers = papers_per_group(rng);
    const int paper_base = paper_idx;
    for (int jp = 0; jp < papers; ++jp) spec.node(obj_id("p", paper_idx++), "P");
    for (int ia = 0; ia < authors; ++ia) {
      const std::string id = obj_id("a", author_idx++);
      spec.node(id, "A");
      inst.truth.push_back(g);
      // hub paper keeps the group connected; extras add texture
      spec.edge(id, obj_id("p", paper_base));
      for (int jp = 1; jp < papers; ++jp)
        if (unit(rng) < 0.5) spec.edge(id, obj_id("p", paper_base + jp));
    }
  }
  inst.hin = make_hin(spec.nodes.str(), spec.edges.str());
  inst.paths.push_back(validate_metapath({"A", "P", "A"}, inst.hin.schema));
  if (unit(rng) < 0.5)
    inst.paths.push_back(validate_metapath({"A", "P", "A", "P", "A"}, inst.hin.schema));
  return inst;
}

ConstraintFixture constraint_fixture() {
  ConstraintFixture fx;
  GraphSpec spec;
  // A chain of author groups G1 = {a0,a1,a2}, G2 = {a3,a4,a5},
  // G3 = {a6..a9}. Ground truth puts G1 and G2 together, but the G1-G2
  // coupling (five single-paper pairs) is weaker than the G2-G3 bridges
  // (three-paper pairs), so the unsupervised cut peels G1 off and splits
  // cluster 0. Must-links on the five spanning pairs double those entries
  // in S + W o S and flip the optimal cut back to the truth.
  for (int i = 0; i < 10; ++i) {
    spec.node(obj_id("a", i), "A");
    fx.truth.push_back(i < 6 ? 0 : 1);
  }
  int paper = 0;
  auto share = [&](std::initializer_list<int> authors) {
    const std::string id = obj_id("p", paper++);
    spec.nodes << id << "\tP\n";
    for (const int a : authors) spec.edge(obj_id("a", a), id);
  };
  for (int t = 0; t < 3; ++t) share({0, 1, 2});     // G1 core
  share({0});                                       // private papers damp the
  share({1});                                       // spanning PathSim weights
  for (int t = 0; t < 3; ++t) share({3, 4, 5});     // G2 core
  for (int t = 0; t < 3; ++t) share({6, 7, 8, 9});  // G3 core
  share({0, 3});                                    // G1-G2 spanning pairs
  share({1, 4});
  share({2, 5});
  share({0, 4});
  share({1, 3});
  for (int t = 0; t < 3; ++t) share({3, 6});        // G2-G3 bridges
  for (int t = 0; t < 3; ++t) share({4, 7});
  for (int t = 0; t < 3; ++t) share({5, 8});

  fx.hin = make_hin(spec.nodes.str(), spec.edges.str());
  fx.paths.push_back(validate_metapath({"A", "P", "A"}, fx.hin.schema));
  fx.must_links = {{"a0", "a3"}, {"a1", "a4"}, {"a2", "a5"}, {"a0", "a4"}, {"a1", "a3"}};
  return fx;
}

Matrix separated_blocks(std::mt19937_64& rng, std::size_t n, std::vector<int>& truth) {
  std::uniform_real_distribution<double> intra(0.9, 1.0);
  std::uniform_real_distribution<double> inter(0.0, 0.1);
  std::uniform_int_distribution<std::size_t> split(1, n - 1);
  const std::size_t cut = split(rng);
  truth.assign(n, 0);
  for (std::size_t i = cut; i < n; ++i) truth[i] = 1;
  Matrix s(n, n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    s(u, u) = 1.0;
    for (std::size_t v = u + 1; v < n; ++v) {
      const double w = truth[u] == truth[v] ? intra(rng) : inter(rng);
      s(u, v) = s(v, u) = w;
    }
  }
  return s;
}

}  // namespace schain::test
