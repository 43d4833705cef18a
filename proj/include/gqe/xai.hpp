#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gqe/graph.hpp"

namespace gqe {

/// Partial or total 0/1 assignment to decision-model variables.
using Assignment = std::map<Atom, int>;

/// Rooted read-once binary decision graph: variable nodes carry variable
/// names, leaves carry "0"/"1", edges carry the assigned value. Read-once
/// makes every root-to-leaf path consistent with a partial assignment stand
/// for the full set of its completions, which the sufficiency queries rely
/// on; non-read-once inputs are rejected at load.
class DecisionModel {
 public:
  static DecisionModel from_graph(Graph g, const std::string& root_id);

  const Graph& graph() const { return graph_; }
  int root() const { return root_; }
  /// Distinct variable names, sorted; fixes the deterministic orders below.
  const std::vector<Atom>& variables() const { return variables_; }

 private:
  DecisionModel(Graph g, int root, std::vector<Atom> vars)
      : graph_(std::move(g)), root_(root), variables_(std::move(vars)) {}

  Graph graph_;
  int root_;
  std::vector<Atom> variables_;
};

inline constexpr std::size_t kXaiVariableLimit = 20;

/// Follows the instance's edges from the root; the instance must assign
/// every variable encountered.
int classify_instance(const DecisionModel& m, const Assignment& inst);

/// Some completion of `partial` classifying to `target`; the witness is a
/// total instance.
std::optional<Assignment> exists_instance(const DecisionModel& m, int target,
                                          const Assignment& partial);

/// Every completion classifies to `target`. Under read-once this is the
/// absence of a consistent path to an opposite leaf.
bool is_sufficient_reason(const DecisionModel& m, const Assignment& partial,
                          int target);

enum class ReasonMode { SubsetMinimal, MinimumCardinality };

/// Sub-assignment of a total instance that stays sufficient for its class.
/// SubsetMinimal: greedy removal in lexicographic variable order.
/// MinimumCardinality: smallest sufficient subset, lexicographic tie-break.
Assignment minimal_sufficient_reason(const DecisionModel& m,
                                     const Assignment& inst, ReasonMode mode);

/// All subset-minimal partial assignments sufficient for `target`.
std::vector<Assignment> all_minimal_sufficient_reasons(const DecisionModel& m,
                                                       int target);

struct BiasWitness {
  bool biased = false;
  Assignment one, other;  // differ exactly on the protected feature
};

/// Some total instance flips its class when only `feature` is flipped.
BiasWitness is_biased(const DecisionModel& m, const Atom& feature);

}  // namespace gqe
