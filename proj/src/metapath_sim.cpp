#include "schain/metapath_sim.hpp"

#include <cstdint>
#include <vector>

#include "schain/error.hpp"

namespace schain {

namespace {

// Adjacency view of one hop, oriented from `from_type` objects.
const std::vector<std::vector<int>>& hop_adjacency(const Hin& hin, int from_type, int to_type) {
  const LinkMatrix* lm = hin.link_between(from_type, to_type);
  if (lm == nullptr)
    throw Error(ErrorKind::NoSuchLinkType, "no link between '" +
                                               hin.schema.object_types[from_type] + "' and '" +
                                               hin.schema.object_types[to_type] + "'");
  return from_type == lm->type_a ? lm->adj_ab : lm->adj_ba;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b, const MetaPath& path) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out))
    throw Error(ErrorKind::CountOverflow,
                "instance counts for " + path.joined() + " exceed 64 bits");
  return out;
}

}  // namespace

CountMatrix commuting_matrix(const Hin& hin, const MetaPath& path) {
  if (path.types.size() < 2)
    throw Error(ErrorKind::MalformedRecord, "meta-path needs at least two types");
  std::vector<int> type_seq;
  type_seq.reserve(path.types.size());
  for (const auto& name : path.types) type_seq.push_back(hin.type_index_or_throw(name));

  const int target = type_seq.front();
  const std::size_t n = hin.object_count(target);
  CountMatrix result{CountGrid(n, n, 0), path};

  // Row-wise DP: push a unit frontier through the hops. Equivalent to the
  // left-to-right incidence-matrix product, one row at a time.
  std::vector<std::int64_t> frontier, next;
  for (std::size_t u = 0; u < n; ++u) {
    frontier.assign(n, 0);
    frontier[u] = 1;
    for (std::size_t hop = 0; hop + 1 < type_seq.size(); ++hop) {
      const auto& adj = hop_adjacency(hin, type_seq[hop], type_seq[hop + 1]);
      next.assign(hin.object_count(type_seq[hop + 1]), 0);
      for (std::size_t v = 0; v < frontier.size(); ++v) {
        if (frontier[v] == 0) continue;
        for (const int w : adj[v]) next[w] = checked_add(next[w], frontier[v], path);
      }
      frontier.swap(next);
    }
    for (std::size_t v = 0; v < n; ++v) result.values(u, v) = frontier[v];
  }
  return result;
}

Tssn pathsim_matrix(const CountMatrix& counts) {
  const std::size_t n = counts.values.rows();
  Tssn out{Matrix(n, n, 0.0), counts.path};
  for (std::size_t u = 0; u < n; ++u) {
    const std::int64_t cu = counts.values(u, u);
    if (cu == 0) continue;  // isolated under this path: zero row by convention
    for (std::size_t v = 0; v < n; ++v) {
      const std::int64_t cv = counts.values(v, v);
      if (cv == 0) continue;
      out.weights(u, v) =
          2.0 * static_cast<double>(counts.values(u, v)) / static_cast<double>(cu + cv);
    }
  }
  return out;
}

Tssn tssn(const Hin& hin, const MetaPath& path) { return pathsim_matrix(commuting_matrix(hin, path)); }

}  // namespace schain
