#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "gqe/product.hpp"

namespace gqe {

/// Hard ceiling on requested path lengths; the length is semantically a
/// small number even though the interface takes a machine integer.
inline constexpr int kMaxPathLength = 1'000'000;

struct CountRequest {
  const Graph* graph = nullptr;
  RegexPtr regex;
  int length = 0;             // exact path length k
  double epsilon = 0.1;       // approximate mode only, in (0,1)
  std::uint64_t seed = 0;     // approximate mode only
  std::size_t cap = kDefaultCap;
};

/// Nodes satisfying a test, ascending index.
std::vector<int> select_nodes(const Graph& g, const TestAst& t);

/// Lazy answer stream ordered by length, then lexicographically on the
/// interleaved (node-id, edge-id) sequence. Each emitted path conforms to
/// the regex; there are no duplicates.
class PathEnumerator {
 public:
  PathEnumerator(const Graph& g, const RegexAst& r, int max_len);
  std::optional<Path> next();

 private:
  bool descend();

  const Graph* g_;
  DfaProduct dfa_;
  std::vector<std::vector<std::uint8_t>> alive_;  // [remaining][vertex]
  int max_len_;
  int target_len_ = 0;
  std::size_t start_pos_ = 0;  // position in nodes_by_id order
  struct Frame {
    int vertex;
    std::size_t next_step;
  };
  std::vector<Frame> stack_;
  Path current_;
  bool exhausted_ = false;
};

/// All conforming paths with |p| <= max_len in the documented order.
std::vector<Path> enumerate_paths(const Graph& g, const RegexAst& r, int max_len);

/// { start(p) | p in the evaluation of r }, ascending node index; computed
/// by product reachability, never by enumeration.
std::vector<int> reachable_from(const Graph& g, const RegexAst& r);

/// { (start(p), end(p)) }, sorted; finite even when the path set is not.
std::vector<std::pair<int, int>> pairs(const Graph& g, const RegexAst& r);

/// |{ p : |p| = k }| by length-k walk DP over the deterministic product.
/// Throws CapExceeded (fall back to count_approx) or CountOverflow.
std::uint64_t count_exact(const CountRequest& req);

struct ApproxCount {
  double estimate = 0.0;
  std::uint64_t samples = 0;
  double epsilon = 0.0;
};

/// Unbiased run-sampling estimator: R = exact accepting-run count via DP on
/// the NFA product; runs are drawn uniformly through the DP tables and each
/// contributes 1/amb(path). Returns R * mean(1/amb).
ApproxCount count_approx(const CountRequest& req);

/// Same estimator restricted to paths from src_node to dst_node (-1 = any);
/// the centrality approximation uses the restricted form per node pair.
ApproxCount approx_count_pair(const NfaProduct& p, int src_node,
                              int dst_node, int len, double epsilon,
                              std::mt19937_64& rng);

/// Uniform sampler over { p : |p| = k }. Preprocessing builds DP count
/// tables: exact uniform draws over the deterministic product when it fits
/// the cap, otherwise uniform run draws with 1/amb rejection. Draws are
/// i.i.d. and deterministic given (seed, inputs).
class PathSampler {
 public:
  PathSampler(const Graph& g, const RegexAst& r, int len, std::uint64_t seed,
              std::size_t cap = kDefaultCap);

  bool empty() const;
  /// Exact number of conforming paths when the deterministic route was
  /// taken, 0 otherwise (unknown under rejection sampling).
  std::uint64_t exact_support() const { return exact_support_; }
  Path draw();  // throws EmptySupport when the conforming set is empty

 private:
  const Graph* g_;
  bool deterministic_route_ = false;
  std::uint64_t exact_support_ = 0;
  int len_;
  DfaProduct dfa_;
  NfaProduct nfa_;
  // suffix_[t][v]: walks of length t from v ending at an accepting vertex.
  std::vector<std::vector<std::uint64_t>> suffix_;
  std::mt19937_64 rng_;
};

}  // namespace gqe
