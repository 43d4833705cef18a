#pragma once

#include <cstdint>
#include <vector>

#include "gqe/engine.hpp"

namespace gqe {

/// Directed betweenness centrality: sum over ordered pairs (a,b) with
/// a != b, a != x, b != x of (#shortest a->b paths through x) /
/// (#shortest a->b paths); pairs without a path contribute 0. Parallel
/// across sources with a pair-ordered reduction, so results are bitwise
/// reproducible.
double bc(const Graph& g, int x);
std::vector<double> bc_all(const Graph& g);

/// Regex-restricted variant: S_{a,b,r} is the set of minimal-length
/// conforming a->b paths; a path counts as through-x when it visits x
/// anywhere, computed as |S_{a,b,r}| minus the conforming-path count at the
/// same length in the graph with x deleted. Throws CapExceeded when the
/// deterministic product does not fit (use bc_r_approx).
double bc_r(const Graph& g, int x, const RegexAst& r,
            std::size_t cap = kDefaultCap);
std::vector<double> bc_r_all(const Graph& g, const RegexAst& r,
                             std::size_t cap = kDefaultCap);

/// bc_r with every exact per-pair count replaced by the run-sampling
/// estimator at that pair's minimal conforming length.
double bc_r_approx(const Graph& g, int x, const RegexAst& r, double epsilon,
                   std::uint64_t seed);

}  // namespace gqe
