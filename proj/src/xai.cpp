#include "gqe/xai.hpp"

#include <algorithm>
#include <set>

namespace gqe {

namespace {

bool is_leaf_label(const Atom& l) { return l == "0" || l == "1"; }

void check_var_limit(const DecisionModel& m) {
  if (m.variables().size() > kXaiVariableLimit)
    throw VariableLimitExceeded(m.variables().size(), kXaiVariableLimit);
}

// Out-edge of an internal node for the given value.
int value_edge(const Graph& g, int node, int value) {
  for (int e : g.out_edges(node))
    if (g.edge_label(e) == (value ? "1" : "0")) return e;
  throw Error("decision model lost an edge");
}

}  // namespace

DecisionModel DecisionModel::from_graph(Graph g, const std::string& root_id) {
  if (g.flavor() != Flavor::Labeled)
    throw ContractViolation("decision models are labeled graphs");
  int root = g.node_index(root_id);
  if (root == -1) throw ContractViolation("root node " + root_id + " not found");

  for (int n = 0; n < g.node_count(); ++n) {
    const Atom& l = g.node_label(n);
    if (is_leaf_label(l)) {
      if (!g.out_edges(n).empty())
        throw ContractViolation("leaf " + g.node_id(n) + " has outgoing edges");
      continue;
    }
    if (g.out_edges(n).size() != 2)
      throw ContractViolation("variable node " + g.node_id(n) +
                              " needs exactly one 0-edge and one 1-edge");
    std::set<Atom> labels;
    for (int e : g.out_edges(n)) {
      if (!is_leaf_label(g.edge_label(e)))
        throw ContractViolation("edge " + g.edge_id(e) + " must be labeled 0 or 1");
      labels.insert(g.edge_label(e));
    }
    if (labels.size() != 2)
      throw ContractViolation("variable node " + g.node_id(n) +
                              " needs exactly one 0-edge and one 1-edge");
  }

  // Reachability plus per-path read-once and leaf-termination checks; the
  // DFS also rejects cycles (a cycle would revisit a variable).
  std::set<Atom> vars;
  std::vector<std::uint8_t> reached(g.node_count(), 0);
  struct Item {
    int node;
    std::set<Atom> seen;
  };
  std::vector<Item> stack{{root, {}}};
  while (!stack.empty()) {
    Item it = std::move(stack.back());
    stack.pop_back();
    reached[it.node] = 1;
    const Atom& l = g.node_label(it.node);
    if (is_leaf_label(l)) continue;
    if (it.seen.count(l))
      throw ContractViolation("variable " + l + " is read twice on a path");
    if (it.seen.size() > kXaiVariableLimit)
      throw ContractViolation("path exceeds the variable limit");
    vars.insert(l);
    auto seen = it.seen;
    seen.insert(l);
    for (int e : g.out_edges(it.node))
      stack.push_back({g.endpoints(e).second, seen});
  }
  for (int n = 0; n < g.node_count(); ++n)
    if (!reached[n])
      throw ContractViolation("node " + g.node_id(n) + " unreachable from the root");

  return DecisionModel(std::move(g), root,
                       std::vector<Atom>(vars.begin(), vars.end()));
}

int classify_instance(const DecisionModel& m, const Assignment& inst) {
  const Graph& g = m.graph();
  int node = m.root();
  while (!is_leaf_label(g.node_label(node))) {
    const Atom& var = g.node_label(node);
    auto it = inst.find(var);
    if (it == inst.end())
      throw ContractViolation("instance does not assign variable " + var);
    node = g.endpoints(value_edge(g, node, it->second)).second;
  }
  return g.node_label(node) == "1" ? 1 : 0;
}

std::optional<Assignment> exists_instance(const DecisionModel& m, int target,
                                          const Assignment& partial) {
  for (const auto& [var, value] : partial) {
    if (std::find(m.variables().begin(), m.variables().end(), var) ==
        m.variables().end())
      throw ContractViolation("unknown variable " + var);
    if (value != 0 && value != 1)
      throw ContractViolation("assignments are 0/1");
  }
  const Graph& g = m.graph();
  struct Item {
    int node;
    Assignment picked;
  };
  std::vector<Item> stack{{m.root(), {}}};
  while (!stack.empty()) {
    Item it = std::move(stack.back());
    stack.pop_back();
    const Atom& l = g.node_label(it.node);
    if (is_leaf_label(l)) {
      if ((l == "1" ? 1 : 0) != target) continue;
      Assignment witness = partial;
      for (const auto& [v, val] : it.picked) witness[v] = val;
      for (const auto& v : m.variables())
        if (!witness.count(v)) witness[v] = 0;
      return witness;
    }
    auto fixed = partial.find(l);
    for (int value = 1; value >= 0; --value) {
      if (fixed != partial.end() && fixed->second != value) continue;
      Assignment picked = it.picked;
      picked[l] = value;
      stack.push_back({g.endpoints(value_edge(g, it.node, value)).second,
                       std::move(picked)});
    }
  }
  return std::nullopt;
}

bool is_sufficient_reason(const DecisionModel& m, const Assignment& partial,
                          int target) {
  return !exists_instance(m, 1 - target, partial).has_value();
}

Assignment minimal_sufficient_reason(const DecisionModel& m,
                                     const Assignment& inst, ReasonMode mode) {
  for (const auto& v : m.variables())
    if (!inst.count(v))
      throw ContractViolation("instance must be total (missing " + v + ")");
  int target = classify_instance(m, inst);

  if (mode == ReasonMode::SubsetMinimal) {
    Assignment keep = inst;
    for (const auto& var : m.variables()) {
      Assignment trial = keep;
      trial.erase(var);
      if (is_sufficient_reason(m, trial, target)) keep = std::move(trial);
    }
    return keep;
  }

  check_var_limit(m);
  const auto& vars = m.variables();
  int n = static_cast<int>(vars.size());
  for (int size = 0; size <= n; ++size) {
    // Lexicographically first combination of each cardinality wins ties.
    std::vector<int> combo(size);
    for (int i = 0; i < size; ++i) combo[i] = i;
    while (true) {
      Assignment trial;
      for (int idx : combo) trial[vars[idx]] = inst.at(vars[idx]);
      if (is_sufficient_reason(m, trial, target)) return trial;
      int i = size - 1;
      while (i >= 0 && combo[i] == n - size + i) --i;
      if (i < 0) break;
      ++combo[i];
      for (int j = i + 1; j < size; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
  throw Error("the total instance itself must be sufficient");
}

namespace {

void enumerate_reasons(const DecisionModel& m, int target,
                       const std::vector<Atom>& vars, std::size_t from,
                       Assignment& partial, std::vector<Assignment>& out) {
  if (is_sufficient_reason(m, partial, target)) {
    // Monotonicity makes the single-drop check complete for minimality.
    for (const auto& [var, value] : partial) {
      Assignment trial = partial;
      trial.erase(var);
      if (is_sufficient_reason(m, trial, target)) return;
    }
    out.push_back(partial);
    return;
  }
  for (std::size_t i = from; i < vars.size(); ++i)
    for (int value = 0; value <= 1; ++value) {
      partial[vars[i]] = value;
      enumerate_reasons(m, target, vars, i + 1, partial, out);
      partial.erase(vars[i]);
    }
}

}  // namespace

std::vector<Assignment> all_minimal_sufficient_reasons(const DecisionModel& m,
                                                       int target) {
  check_var_limit(m);
  Assignment partial;
  std::vector<Assignment> out;
  enumerate_reasons(m, target, m.variables(), 0, partial, out);
  std::sort(out.begin(), out.end());
  return out;
}

BiasWitness is_biased(const DecisionModel& m, const Atom& feature) {
  const auto& vars = m.variables();
  auto pos = std::find(vars.begin(), vars.end(), feature);
  if (pos == vars.end()) throw ContractViolation("unknown feature " + feature);
  check_var_limit(m);
  int n = static_cast<int>(vars.size());
  int fi = static_cast<int>(pos - vars.begin());
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Assignment inst;
    for (int i = 0; i < n; ++i) inst[vars[i]] = (mask >> i) & 1;
    Assignment flipped = inst;
    flipped[vars[fi]] = 1 - flipped[vars[fi]];
    if (classify_instance(m, inst) != classify_instance(m, flipped))
      return {true, inst, flipped};
  }
  return {};
}

}  // namespace gqe
