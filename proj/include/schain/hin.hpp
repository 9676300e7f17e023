#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "schain/matrix.hpp"
#include "schain/text_io.hpp"

namespace schain {

/// Declares the object types and the (unordered) type pairs that may be
/// linked. Type order is significant: it fixes per-type indices.
struct NetworkSchema {
  std::vector<std::string> object_types;
  std::vector<std::pair<std::string, std::string>> link_types;

  std::optional<int> type_index(const std::string& name) const;
  bool has_link(const std::string& a, const std::string& b) const;
  /// Throws on duplicate/empty type names or link types over undeclared types.
  void validate() const;
};

/// Unweighted links between one type pair, stored as adjacency lists on
/// both sides so either orientation of a walk is cheap.
struct LinkMatrix {
  int type_a = 0, type_b = 0;  // schema type indices, type_a <= type_b
  std::vector<std::vector<int>> adj_ab;  // per a-object: neighbor indices in b
  std::vector<std::vector<int>> adj_ba;
  std::size_t edge_count = 0;
};

/// Typed multigraph with per-type attribute tables. Immutable once parsed;
/// safe to share read-only across workers.
struct Hin {
  NetworkSchema schema;
  std::vector<std::vector<std::string>> objects;          // per type, first-appearance order
  std::vector<std::unordered_map<std::string, int>> ids;  // per type: id -> index
  std::vector<LinkMatrix> links;                          // one per schema link type
  std::vector<Matrix> attributes;                         // per type: n_i x |A_i| (cols may be 0)

  int type_index_or_throw(const std::string& name) const;
  std::size_t object_count(int type) const { return objects[type].size(); }
  /// nullptr when the pair is not a declared link type.
  const LinkMatrix* link_between(int a, int b) const;
};

/// Object type sequence; consecutive pairs must be schema link types.
struct MetaPath {
  std::vector<std::string> types;

  std::string joined() const;  // "A-P-A"
  bool palindrome() const;
  /// Symmetric for PathSim use: palindrome with an even number of hops,
  /// so instance counts form a Gram matrix.
  bool symmetric() const { return palindrome() && types.size() % 2 == 1; }
};

/// Supervision pairs over target-type object indices (u < v in each pair).
struct ConstraintSet {
  std::vector<std::pair<int, int>> must_link;
  std::vector<std::pair<int, int>> cannot_link;

  bool empty() const { return must_link.empty() && cannot_link.empty(); }
};

/// Derives a schema from the data files: object types in first-appearance
/// order of nodes, link types from edge endpoint types.
NetworkSchema infer_schema(const TextTable& node_records, const TextTable& edge_records);

Hin parse_hin(const TextTable& node_records, const TextTable& edge_records,
              const std::map<std::string, TextTable>& attribute_tables,
              const NetworkSchema& schema);

MetaPath validate_metapath(const std::vector<std::string>& type_names,
                           const NetworkSchema& schema, bool require_symmetric = true);

/// Splits "A-P-A" and validates against the schema.
MetaPath parse_metapath(const std::string& joined, const NetworkSchema& schema,
                        bool require_symmetric = true);

ConstraintSet parse_constraints(const TextTable& records, const Hin& hin,
                                const std::string& target_type);

}  // namespace schain
