#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "schain/composite.hpp"
#include "schain/hin.hpp"
#include "schain/metapath_sim.hpp"

namespace schain::test {

/// Builds an Hin through the real parsing path from inline TSV text.
Hin make_hin(const std::string& nodes_tsv, const std::string& edges_tsv,
             const std::map<std::string, std::string>& attr_tsvs = {});

/// Wraps a designed similarity matrix as a meta-path network so it can feed
/// CompositeModel::assemble directly.
Tssn tssn_from_matrix(Matrix weights);

/// Random two- or three-type HIN for path-counting property tests.
Hin random_hin(std::mt19937_64& rng, int max_target = 12);

/// Random valid symmetric meta-path over the schema (target type "A").
MetaPath random_metapath(std::mt19937_64& rng, const Hin& hin, int max_types = 5);

/// A full random clustering instance: HIN over types A/P (and sometimes V),
/// 1..max_paths symmetric meta-paths, 0..max_attrs attributes on A, and a
/// few non-contradictory constraints.
struct RandomInstance {
  Hin hin;
  std::vector<MetaPath> paths;
  ConstraintSet constraints;
  std::string target = "A";
  int k = 2;
};
RandomInstance random_instance(std::mt19937_64& rng, int max_target = 30, int max_paths = 3,
                               int max_attrs = 3);

/// HIN whose target-type similarity graph has exactly k connected
/// components; `truth` holds the component labels.
struct BlockInstance {
  Hin hin;
  std::vector<MetaPath> paths;
  std::vector<int> truth;
  int k = 2;
};
BlockInstance block_instance(std::mt19937_64& rng, int k);

/// Fixture for the constraint-effect check: ground-truth cluster 0 is two
/// weakly bridged halves that unsupervised clustering splits; `must_links`
/// are five pairs spanning the halves.
struct ConstraintFixture {
  Hin hin;
  std::vector<MetaPath> paths;
  std::vector<int> truth;
  std::vector<std::pair<std::string, std::string>> must_links;
  std::string target = "A";
};
ConstraintFixture constraint_fixture();

/// Well-separated two-block similarity matrix: intra >= 0.9, inter <= 0.1.
Matrix separated_blocks(std::mt19937_64& rng, std::size_t n, std::vector<int>& truth);

}  // namespace schain::test
