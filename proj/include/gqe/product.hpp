#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gqe/automaton.hpp"
#include "gqe/graph.hpp"

namespace gqe {

inline constexpr std::size_t kDefaultCap = 4096;

/// One transition of a product graph: consuming `edge` in the recorded
/// direction lands on product vertex `to`.
struct ProductStep {
  int edge;
  bool backward;
  int to;
};

/// Graph x automaton product over single automaton states. Guard closures
/// are folded into steps and acceptance, so walks from start vertices stand
/// in 1:1 correspondence with accepting runs; a path may be witnessed by
/// several walks (run ambiguity). Vertices with no accepting continuation
/// are pruned.
struct NfaProduct {
  std::vector<int> vertex_node;   // vertex -> graph node
  std::vector<int> vertex_state;  // vertex -> automaton state
  std::vector<std::vector<ProductStep>> out;
  std::vector<std::vector<ProductStep>> in;  // reversed; `to` is the source
  std::vector<std::uint8_t> accepting;
  std::vector<int> start_vertex;  // node -> vertex, -1 when pruned

  int vertex_count() const { return static_cast<int>(vertex_node.size()); }
};

/// Per-node subset construction. From any vertex each concrete edge leads to
/// at most one successor (the two traversal directions of a self-loop are
/// merged), so conforming graph paths are in bijection with walks. Out-steps
/// are sorted by edge id string, fixing the enumeration order.
struct DfaProduct {
  std::vector<int> vertex_node;
  std::vector<std::vector<ProductStep>> out;
  std::vector<std::vector<ProductStep>> in;
  std::vector<std::uint8_t> accepting;
  std::vector<int> start_vertex;

  int vertex_count() const { return static_cast<int>(vertex_node.size()); }
};

/// `excluded_node` (when >= 0) removes that node and its incident edges from
/// the product, leaving graph indices untouched; used by the centrality
/// through-counts.
NfaProduct build_nfa_product(const Graph& g, const PathAutomaton& a,
                             int excluded_node = -1);

/// Throws CapExceeded when more than `cap` product vertices arise.
DfaProduct build_dfa_product(const Graph& g, const PathAutomaton& a,
                             std::size_t cap = kDefaultCap,
                             int excluded_node = -1);

std::string to_dot(const Graph& g, const NfaProduct& p);
std::string to_dot(const Graph& g, const DfaProduct& p);

}  // namespace gqe
