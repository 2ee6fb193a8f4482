#pragma once

#include <vector>

#include "rpclust/adjacency.hpp"
#include "rpclust/synth.hpp"

namespace rpclust {

struct TscConfig {
  int q = 4;
  /// Rank neighbors by |<x_j, x_i>| / (||x_j|| ||x_i||) instead of the raw
  /// |<x_j, x_i>|. Off by default; the two agree on unit-norm data.
  bool normalize_selection = false;
};

/// For each j, the q indices i != j with the largest |<x_j, x_i>|, in
/// descending order of that score; ties go to the lower index.
std::vector<std::vector<int>> tsc_neighbors(const DataSet& data, int q, bool normalize_selection = false);

/// Z_ij = exp(-2 acos(|<x_j,x_i>| / (||x_j|| ||x_i||))) for i in S_j, A = Z + Z^T.
Adjacency tsc_adjacency(const DataSet& data, const TscConfig& cfg = {});

}  // namespace rpclust
