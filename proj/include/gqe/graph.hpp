#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gqe/errors.hpp"

namespace gqe {

/// Atoms are opaque strings: identifiers, labels, property names and values,
/// feature values. The reserved sentinel kBottom marks a missing feature
/// entry and may appear only inside feature vectors.
using Atom = std::string;
inline const Atom kBottom = "⊥";

enum class Flavor { Labeled, Property, Vector };

/// Flavor plus the feature dimension (Vector only); gates which test atoms
/// are legal in queries over a given graph.
struct FlavorInfo {
  Flavor flavor = Flavor::Labeled;
  int dimension = 0;
};

using PropMap = std::map<Atom, Atom>;

/// Unvalidated node/edge data as it appears in files. `label`/`props` are
/// used by the Labeled and Property flavors, `features` by Vector.
struct RawObject {
  std::string id;
  Atom label;
  PropMap props;
  std::vector<Atom> features;
};

struct RawEdge {
  std::string id;
  std::string src;
  std::string dst;
  Atom label;
  PropMap props;
  std::vector<Atom> features;
};

/// A graph as loaded from a file, before invariant checking.
struct RawGraph {
  Flavor flavor = Flavor::Labeled;
  int dimension = 0;
  std::vector<RawObject> nodes;
  std::vector<RawEdge> edges;
};

/// Returns the first violated invariant (dangling endpoint, duplicate id,
/// missing label, wrong vector dimension, reserved atom misuse) or nullopt.
std::optional<std::string> validate(const RawGraph& raw);

/// Immutable multigraph with per-object labels, properties, or fixed-width
/// feature vectors depending on flavor. Construction goes through from_raw,
/// which enforces every data-model invariant; after that all reads are safe
/// under arbitrary concurrent access.
class Graph {
 public:
  /// Validates `raw` and builds the indexed form. Throws ContractViolation
  /// with the first violation message on invalid input.
  static Graph from_raw(const RawGraph& raw);

  Flavor flavor() const { return flavor_; }
  int dimension() const { return dimension_; }
  FlavorInfo flavor_info() const { return {flavor_, dimension_}; }

  int node_count() const { return static_cast<int>(node_ids_.size()); }
  int edge_count() const { return static_cast<int>(edge_ids_.size()); }

  const std::string& node_id(int n) const { return node_ids_[n]; }
  const std::string& edge_id(int e) const { return edge_ids_[e]; }

  /// Index lookup by id; -1 when absent.
  int node_index(const std::string& id) const;
  int edge_index(const std::string& id) const;

  std::pair<int, int> endpoints(int e) const { return endpoints_[e]; }

  const Atom& node_label(int n) const { return node_labels_[n]; }
  const Atom& edge_label(int e) const { return edge_labels_[e]; }
  const PropMap& node_props(int n) const { return node_props_[n]; }
  const PropMap& edge_props(int e) const { return edge_props_[e]; }
  std::span<const Atom> node_features(int n) const { return node_features_[n]; }
  std::span<const Atom> edge_features(int e) const { return edge_features_[e]; }

  const std::vector<int>& out_edges(int n) const { return out_edges_[n]; }
  const std::vector<int>& in_edges(int n) const { return in_edges_[n]; }
  /// Distinct adjacent nodes (either direction), ascending index. This is
  /// the neighbor notion shared by the GNN evaluator and WL refinement.
  const std::vector<int>& neighbors(int n) const { return neighbors_[n]; }

  /// Node indices ordered by id string; fixes enumeration order.
  const std::vector<int>& nodes_by_id() const { return nodes_by_id_; }

  RawGraph to_raw() const;

 private:
  Graph() = default;

  Flavor flavor_ = Flavor::Labeled;
  int dimension_ = 0;
  std::vector<std::string> node_ids_, edge_ids_;
  std::unordered_map<std::string, int> node_index_, edge_index_;
  std::vector<std::pair<int, int>> endpoints_;
  std::vector<Atom> node_labels_, edge_labels_;
  std::vector<PropMap> node_props_, edge_props_;
  std::vector<std::vector<Atom>> node_features_, edge_features_;
  std::vector<std::vector<int>> out_edges_, in_edges_, neighbors_;
  std::vector<int> nodes_by_id_;
};

/// A walk n0 e1 n1 ... ek nk through a graph; nodes/edges hold indices.
/// Edges may be traversed against their direction (inverse steps), so the
/// only shape requirement is that each edge connects its flanking nodes in
/// one direction or the other. Node and edge repetition is allowed.
struct Path {
  std::vector<int> nodes;  // size >= 1
  std::vector<int> edges;  // size == nodes.size() - 1

  int length() const { return static_cast<int>(edges.size()); }
  int start() const { return nodes.front(); }
  int end() const { return nodes.back(); }

  bool operator==(const Path&) const = default;
};

/// True iff every consecutive (node, edge, node) triple is consistent with
/// the edge's endpoints in some direction.
bool path_valid(const Graph& g, const Path& p);

/// Joins two paths sharing the junction node once.
/// Throws ContractViolation when end(p) != start(q).
Path concat(const Path& p, const Path& q);

/// Interleaved id sequence (n0, e1, n1, ...); the comparison key for the
/// documented answer order and for set-equality in tests.
std::vector<std::string> path_key(const Graph& g, const Path& p);

/// Orders by length, then lexicographically on the interleaved id sequence.
bool path_less(const Graph& g, const Path& a, const Path& b);

/// Property graph -> vector-labeled graph of dimension 1 + #property names.
/// Column 1 is the label; the remaining columns follow `property_order` when
/// given (it must list every distinct property name exactly once), otherwise
/// the names sorted lexicographically. Missing values become kBottom.
/// Returns the graph and the column header (used to invert the mapping).
std::pair<Graph, std::vector<Atom>> to_vector_labeled(
    const Graph& g,
    const std::optional<std::vector<Atom>>& property_order = std::nullopt);

/// Inverse of to_vector_labeled given the column header.
Graph from_vector_labeled(const Graph& g, std::span<const Atom> columns);

struct Triple {
  Atom s, p, o;
};

/// Set-semantics RDF import: one node per distinct subject/object labeled
/// with its own identifier, one edge "t<i>" per distinct triple in first-
/// appearance order.
Graph import_rdf(const std::vector<Triple>& triples);

}  // namespace gqe
