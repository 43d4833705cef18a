#include "gqe/graph.hpp"

#include <algorithm>
#include <set>

namespace gqe {

namespace {

bool atom_ok(const Atom& a) { return !a.empty() && a != kBottom; }

std::optional<std::string> check_object(const RawGraph& raw, const RawObject& o,
                                        const std::string& what) {
  if (o.id.empty()) return what + " with empty id";
  if (o.id == kBottom) return what + " id is the reserved atom";
  switch (raw.flavor) {
    case Flavor::Labeled:
    case Flavor::Property:
      if (!atom_ok(o.label))
        return "missing label on " + what + " " + o.id;
      if (raw.flavor == Flavor::Labeled && !o.props.empty())
        return "properties on labeled-graph " + what + " " + o.id;
      for (const auto& [p, v] : o.props)
        if (!atom_ok(p) || v == kBottom)
          return "reserved or empty property atom on " + what + " " + o.id;
      if (!o.features.empty())
        return "features on non-vector " + what + " " + o.id;
      break;
    case Flavor::Vector:
      if (!o.label.empty() || !o.props.empty())
        return "label/properties on vector-graph " + what + " " + o.id;
      if (static_cast<int>(o.features.size()) != raw.dimension)
        return "dimension mismatch on " + what + " " + o.id + ": expected " +
               std::to_string(raw.dimension) + ", got " +
               std::to_string(o.features.size());
      for (const auto& f : o.features)
        if (f.empty()) return "empty feature value on " + what + " " + o.id;
      break;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> validate(const RawGraph& raw) {
  if (raw.flavor == Flavor::Vector && raw.dimension < 1)
    return "vector graph dimension must be >= 1";
  std::set<std::string> ids;
  std::set<std::string> node_ids;
  for (const auto& n : raw.nodes) {
    if (auto v = check_object(raw, n, "node")) return v;
    if (!ids.insert(n.id).second) return "duplicate id " + n.id;
    node_ids.insert(n.id);
  }
  for (const auto& e : raw.edges) {
    RawObject as_obj{e.id, e.label, e.props, e.features};
    if (auto v = check_object(raw, as_obj, "edge")) return v;
    if (!ids.insert(e.id).second) return "duplicate id " + e.id;
    if (!node_ids.count(e.src))
      return "dangling endpoint: edge " + e.id + " source " + e.src;
    if (!node_ids.count(e.dst))
      return "dangling endpoint: edge " + e.id + " target " + e.dst;
  }
  return std::nullopt;
}

Graph Graph::from_raw(const RawGraph& raw) {
  if (auto v = validate(raw)) throw ContractViolation("invalid graph: " + *v);
  Graph g;
  g.flavor_ = raw.flavor;
  g.dimension_ = raw.flavor == Flavor::Vector ? raw.dimension : 0;
  for (const auto& n : raw.nodes) {
    int idx = static_cast<int>(g.node_ids_.size());
    g.node_ids_.push_back(n.id);
    g.node_index_.emplace(n.id, idx);
    g.node_labels_.push_back(n.label);
    g.node_props_.push_back(n.props);
    g.node_features_.push_back(n.features);
  }
  g.out_edges_.resize(g.node_ids_.size());
  g.in_edges_.resize(g.node_ids_.size());
  for (const auto& e : raw.edges) {
    int idx = static_cast<int>(g.edge_ids_.size());
    g.edge_ids_.push_back(e.id);
    g.edge_index_.emplace(e.id, idx);
    int s = g.node_index_.at(e.src);
    int d = g.node_index_.at(e.dst);
    g.endpoints_.emplace_back(s, d);
    g.edge_labels_.push_back(e.label);
    g.edge_props_.push_back(e.props);
    g.edge_features_.push_back(e.features);
    g.out_edges_[s].push_back(idx);
    g.in_edges_[d].push_back(idx);
  }
  g.neighbors_.resize(g.node_ids_.size());
  for (int n = 0; n < g.node_count(); ++n) {
    std::set<int> adj;
    for (int e : g.out_edges_[n]) adj.insert(g.endpoints_[e].second);
    for (int e : g.in_edges_[n]) adj.insert(g.endpoints_[e].first);
    g.neighbors_[n].assign(adj.begin(), adj.end());
  }
  g.nodes_by_id_.resize(g.node_ids_.size());
  for (int n = 0; n < g.node_count(); ++n) g.nodes_by_id_[n] = n;
  std::sort(g.nodes_by_id_.begin(), g.nodes_by_id_.end(),
            [&](int a, int b) { return g.node_ids_[a] < g.node_ids_[b]; });
  return g;
}

int Graph::node_index(const std::string& id) const {
  auto it = node_index_.find(id);
  return it == node_index_.end() ? -1 : it->second;
}

int Graph::edge_index(const std::string& id) const {
  auto it = edge_index_.find(id);
  return it == edge_index_.end() ? -1 : it->second;
}

RawGraph Graph::to_raw() const {
  RawGraph raw;
  raw.flavor = flavor_;
  raw.dimension = dimension_;
  for (int n = 0; n < node_count(); ++n)
    raw.nodes.push_back(
        {node_ids_[n], node_labels_[n], node_props_[n], node_features_[n]});
  for (int e = 0; e < edge_count(); ++e)
    raw.edges.push_back({edge_ids_[e], node_ids_[endpoints_[e].first],
                         node_ids_[endpoints_[e].second], edge_labels_[e],
                         edge_props_[e], edge_features_[e]});
  return raw;
}

bool path_valid(const Graph& g, const Path& p) {
  if (p.nodes.empty() || p.edges.size() + 1 != p.nodes.size()) return false;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    auto [s, d] = g.endpoints(p.edges[i]);
    bool fwd = s == p.nodes[i] && d == p.nodes[i + 1];
    bool bwd = d == p.nodes[i] && s == p.nodes[i + 1];
    if (!fwd && !bwd) return false;
  }
  return true;
}

Path concat(const Path& p, const Path& q) {
  if (p.nodes.empty() || q.nodes.empty())
    throw ContractViolation("concat of empty path");
  if (p.end() != q.start())
    throw ContractViolation("concat endpoint mismatch");
  Path r = p;
  r.nodes.insert(r.nodes.end(), q.nodes.begin() + 1, q.nodes.end());
  r.edges.insert(r.edges.end(), q.edges.begin(), q.edges.end());
  return r;
}

std::vector<std::string> path_key(const Graph& g, const Path& p) {
  std::vector<std::string> key;
  key.reserve(p.nodes.size() + p.edges.size());
  key.push_back(g.node_id(p.nodes[0]));
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    key.push_back(g.edge_id(p.edges[i]));
    key.push_back(g.node_id(p.nodes[i + 1]));
  }
  return key;
}

bool path_less(const Graph& g, const Path& a, const Path& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return path_key(g, a) < path_key(g, b);
}

std::pair<Graph, std::vector<Atom>> to_vector_labeled(
    const Graph& g, const std::optional<std::vector<Atom>>& property_order) {
  if (g.flavor() != Flavor::Property)
    throw ContractViolation("to_vector_labeled expects a property graph");

  std::set<Atom> names;
  for (int n = 0; n < g.node_count(); ++n)
    for (const auto& [p, v] : g.node_props(n)) names.insert(p);
  for (int e = 0; e < g.edge_count(); ++e)
    for (const auto& [p, v] : g.edge_props(e)) names.insert(p);

  std::vector<Atom> order;
  if (property_order) {
    order = *property_order;
    if (std::set<Atom>(order.begin(), order.end()) != names ||
        order.size() != names.size())
      throw ContractViolation(
          "property_order must list each distinct property name exactly once");
  } else {
    order.assign(names.begin(), names.end());
  }

  std::vector<Atom> columns;
  columns.push_back("label");
  columns.insert(columns.end(), order.begin(), order.end());

  auto to_vec = [&](const Atom& label, const PropMap& props) {
    std::vector<Atom> v;
    v.push_back(label);
    for (const auto& name : order) {
      auto it = props.find(name);
      v.push_back(it == props.end() ? kBottom : it->second);
    }
    return v;
  };

  RawGraph raw;
  raw.flavor = Flavor::Vector;
  raw.dimension = static_cast<int>(columns.size());
  for (int n = 0; n < g.node_count(); ++n)
    raw.nodes.push_back(
        {g.node_id(n), "", {}, to_vec(g.node_label(n), g.node_props(n))});
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [s, d] = g.endpoints(e);
    raw.edges.push_back({g.edge_id(e), g.node_id(s), g.node_id(d), "", {},
                         to_vec(g.edge_label(e), g.edge_props(e))});
  }
  return {Graph::from_raw(raw), columns};
}

Graph from_vector_labeled(const Graph& g, std::span<const Atom> columns) {
  if (g.flavor() != Flavor::Vector)
    throw ContractViolation("from_vector_labeled expects a vector graph");
  if (static_cast<int>(columns.size()) != g.dimension())
    throw ContractViolation("column header size does not match dimension");

  auto to_props = [&](std::span<const Atom> vec) {
    PropMap props;
    for (std::size_t i = 1; i < columns.size(); ++i)
      if (vec[i] != kBottom) props[columns[i]] = vec[i];
    return props;
  };

  RawGraph raw;
  raw.flavor = Flavor::Property;
  for (int n = 0; n < g.node_count(); ++n) {
    auto vec = g.node_features(n);
    raw.nodes.push_back({g.node_id(n), vec[0], to_props(vec), {}});
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [s, d] = g.endpoints(e);
    auto vec = g.edge_features(e);
    raw.edges.push_back(
        {g.edge_id(e), g.node_id(s), g.node_id(d), vec[0], to_props(vec), {}});
  }
  return Graph::from_raw(raw);
}

Graph import_rdf(const std::vector<Triple>& triples) {
  RawGraph raw;
  raw.flavor = Flavor::Labeled;
  std::set<std::string> seen_nodes;
  std::set<std::tuple<Atom, Atom, Atom>> seen_triples;
  auto add_node = [&](const Atom& id) {
    if (seen_nodes.insert(id).second) raw.nodes.push_back({id, id, {}, {}});
  };
  int index = 0;
  for (const auto& t : triples) {
    if (!seen_triples.insert({t.s, t.p, t.o}).second) continue;
    add_node(t.s);
    add_node(t.o);
    raw.edges.push_back(
        {"t" + std::to_string(index++), t.s, t.o, t.p, {}, {}});
  }
  return Graph::from_raw(raw);
}

}  // namespace gqe
