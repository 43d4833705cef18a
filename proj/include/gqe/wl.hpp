#pragma once

#include <vector>

#include "gqe/graph.hpp"

namespace gqe {

/// Weisfeiler-Lehman color refinement. Round-0 colors are canonical ids of
/// the per-node feature vectors (the label for non-vector graphs); round
/// t+1 colors canonicalize (own color, sorted multiset of neighbor colors).
/// Ids are dense integers assigned by first occurrence in node-index order,
/// so runs are reproducible. Returns rounds+1 rows.
std::vector<std::vector<int>> wl_colors(const Graph& g, int rounds);

}  // namespace gqe
