#pragma once

#include "schain/hin.hpp"
#include "schain/matrix.hpp"

namespace schain {

/// Meta-path instance counts between target-type objects (n x n, symmetric
/// for symmetric paths). 64-bit with overflow detection.
struct CountMatrix {
  CountGrid values;
  MetaPath path;
};

/// Type-specific sub-network: PathSim weights in [0,1]; the edge set is the
/// off-diagonal pairs with count > 0.
struct Tssn {
  Matrix weights;
  MetaPath path;
};

/// Entry (u,v) = number of path instances from u to v, computed by sparse
/// products of the incidence matrices along the type sequence.
CountMatrix commuting_matrix(const Hin& hin, const MetaPath& path);

/// s(u,v) = 2*count(u,v) / (count(u,u) + count(v,v)); objects with
/// count(u,u) = 0 get a zero row and column (including the diagonal).
Tssn pathsim_matrix(const CountMatrix& counts);

Tssn tssn(const Hin& hin, const MetaPath& path);

}  // namespace schain
