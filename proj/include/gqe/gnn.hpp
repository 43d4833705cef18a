#pragma once

#include <string>
#include <vector>

#include "gqe/ast.hpp"

namespace gqe {

enum class Direction { Undirected, Directed };

/// Which neighbor multiset a rule quantifies over in directed mode: the
/// successors (Out), the predecessors (In), or their union (Both, the
/// undirected behavior).
enum class RuleScope { Both, Out, In };

/// A rule fires for node u when its self condition matches u's current
/// vector and some neighbor (and, when set, the connecting edge's feature
/// vector) matches; it then writes `value` into feature `feature`.
/// The first matching rule wins; otherwise the vector is kept unchanged.
struct GnnRule {
  TestPtr self_cond;
  TestPtr neighbor_cond;
  TestPtr edge_cond;  // optional, requires edge_features
  RuleScope scope = RuleScope::Both;
  int feature = 0;  // 1-based
  Atom value;
};

/// Numeric layer u' = clamp01(A u + B sum(neighbors) + b); features must
/// parse as decimals.
struct LinearLayer {
  std::vector<std::vector<double>> a, b;
  std::vector<double> bias;
};

struct GnnLayer {
  enum class Kind { Rule, Linear };
  Kind kind = Kind::Rule;
  std::vector<GnnRule> rules;
  LinearLayer linear;
};

/// Aggregate-combine network over vector-labeled graphs, finished by a
/// feature-test classifier.
struct Gnn {
  int dimension = 0;
  Direction direction = Direction::Undirected;
  bool edge_features = false;
  std::vector<GnnLayer> layers;
  TestPtr csl;
};

/// Model JSON:
///   {"dimension":d, "direction":"undirected"|"directed",
///    "edge_features":bool?,
///    "layers":[{"kind":"rule","rules":[{"self":test,"neighbor":test,
///               "edge":test?,"scope":"out"|"in"?,"set":[j,"v"]}]}
///              |{"kind":"linear","A":[[...]],"B":[[...]],"b":[...]}],
///    "csl":{"feature":j,"equals":"v"} | {"test":testexpr}}
Gnn gnn_from_json(const std::string& text);
Gnn load_gnn_file(const std::string& path);

using FeatureSnapshot = std::vector<std::vector<Atom>>;  // per node

/// Layer-by-layer evaluation; snapshot 0 is the input labeling, one more
/// snapshot per layer. Nodes within a layer are independent (parallel
/// kernel with a strict layer barrier).
std::vector<FeatureSnapshot> run_layers(const Graph& g, const Gnn& gnn);

/// Nodes whose final-layer vector satisfies the classifier.
std::vector<int> classify(const Graph& g, const Gnn& gnn);

}  // namespace gqe
