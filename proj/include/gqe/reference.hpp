#pragma once

#include <cstdint>
#include <vector>

#include "gqe/gnn.hpp"
#include "gqe/product.hpp"

namespace gqe::reference {

/// Serial counterparts of the parallel kernels, kept around for equality
/// tests and as the baseline in the benchmark. bc_all_serial also takes a
/// different algorithmic route (all-pairs relaxation with path counts
/// instead of per-source BFS), which makes the parity tests meaningful.

std::vector<double> bc_all_serial(const Graph& g);

std::uint64_t count_exact_serial(const DfaProduct& p, int len);

std::vector<FeatureSnapshot> run_layers_serial(const Graph& g, const Gnn& gnn);

std::vector<std::vector<int>> wl_colors_serial(const Graph& g, int rounds);

}  // namespace gqe::reference
