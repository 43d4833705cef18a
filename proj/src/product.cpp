#include "gqe/product.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace gqe {

namespace {

// Least state set containing `init` and closed under guards that hold at
// `node`. Returned sorted.
std::vector<int> guard_closure(const Graph& g, const PathAutomaton& a,
                               int node, const std::vector<int>& init) {
  std::vector<std::uint8_t> in_set(a.state_count, 0);
  std::vector<int> stack;
  for (int s : init)
    if (!in_set[s]) {
      in_set[s] = 1;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (int gi : a.guards_from[s]) {
      const auto& gd = a.guards[gi];
      if (!in_set[gd.to] && matches_node(g, *gd.test, node)) {
        in_set[gd.to] = 1;
        stack.push_back(gd.to);
      }
    }
  }
  std::vector<int> out;
  for (int s = 0; s < a.state_count; ++s)
    if (in_set[s]) out.push_back(s);
  return out;
}

bool any_final(const PathAutomaton& a, const std::vector<int>& states) {
  for (int s : states)
    if (a.is_final[s]) return true;
  return false;
}

// Vertices that can still reach an accepting vertex; everything else is
// dead weight for every operation built on the product.
std::vector<int> coaccessible_remap(
    const std::vector<std::vector<ProductStep>>& out,
    const std::vector<std::uint8_t>& accepting, int& kept) {
  int n = static_cast<int>(out.size());
  std::vector<std::vector<int>> rev(n);
  for (int v = 0; v < n; ++v)
    for (const auto& s : out[v]) rev[s.to].push_back(v);
  std::vector<std::uint8_t> keep(n, 0);
  std::vector<int> stack;
  for (int v = 0; v < n; ++v)
    if (accepting[v]) {
      keep[v] = 1;
      stack.push_back(v);
    }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : rev[v])
      if (!keep[u]) {
        keep[u] = 1;
        stack.push_back(u);
      }
  }
  std::vector<int> remap(n, -1);
  kept = 0;
  for (int v = 0; v < n; ++v)
    if (keep[v]) remap[v] = kept++;
  return remap;
}

struct PrunedCore {
  std::vector<std::vector<ProductStep>> out, in;
  std::vector<std::uint8_t> accepting;
  std::vector<int> start_vertex;
  std::vector<int> remap;
  int count = 0;
};

PrunedCore prune(const std::vector<std::vector<ProductStep>>& out,
                 const std::vector<std::uint8_t>& accepting,
                 const std::vector<int>& start) {
  PrunedCore core;
  core.remap = coaccessible_remap(out, accepting, core.count);
  core.out.resize(core.count);
  core.in.resize(core.count);
  core.accepting.resize(core.count);
  for (int v = 0; v < static_cast<int>(out.size()); ++v) {
    int w = core.remap[v];
    if (w == -1) continue;
    core.accepting[w] = accepting[v];
    for (const auto& s : out[v])
      if (core.remap[s.to] != -1)
        core.out[w].push_back({s.edge, s.backward, core.remap[s.to]});
  }
  for (int v = 0; v < core.count; ++v)
    for (const auto& s : core.out[v])
      core.in[s.to].push_back({s.edge, s.backward, v});
  core.start_vertex.reserve(start.size());
  for (int sv : start)
    core.start_vertex.push_back(sv == -1 ? -1 : core.remap[sv]);
  return core;
}

template <class T>
std::vector<T> apply_remap(const std::vector<T>& values,
                           const std::vector<int>& remap, int count) {
  std::vector<T> out(count);
  for (std::size_t v = 0; v < values.size(); ++v)
    if (remap[v] != -1) out[remap[v]] = values[v];
  return out;
}

}  // namespace

NfaProduct build_nfa_product(const Graph& g, const PathAutomaton& a,
                             int excluded_node) {
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> verts;
  std::vector<std::vector<ProductStep>> out;
  std::vector<std::uint8_t> accepting;

  auto intern = [&](int node, int state) {
    auto [it, fresh] =
        index.try_emplace({node, state}, static_cast<int>(verts.size()));
    if (fresh) {
      verts.emplace_back(node, state);
      out.emplace_back();
      accepting.push_back(0);
    }
    return it->second;
  };

  std::vector<int> start(g.node_count(), -1);
  for (int n = 0; n < g.node_count(); ++n)
    if (n != excluded_node) start[n] = intern(n, a.initial);

  for (int v = 0; v < static_cast<int>(verts.size()); ++v) {
    auto [node, state] = verts[v];
    std::vector<int> closed = guard_closure(g, a, node, {state});
    if (any_final(a, closed)) accepting[v] = 1;
    // Distinct closure witnesses for the same transition collapse to one
    // step; the step relation is a set.
    std::set<std::tuple<int, bool, int>> steps;
    for (int s : closed) {
      for (int mi : a.moves_from[s]) {
        const auto& m = a.moves[mi];
        const auto& edges = m.backward ? g.in_edges(node) : g.out_edges(node);
        for (int e : edges) {
          auto [src, dst] = g.endpoints(e);
          int target = m.backward ? src : dst;
          if (target == excluded_node) continue;
          if (matches_edge(g, *m.test, e)) steps.insert({e, m.backward, m.to});
        }
      }
    }
    for (const auto& [e, backward, to_state] : steps) {
      int target = backward ? g.endpoints(e).first : g.endpoints(e).second;
      // intern may grow `out`; take the successor index before indexing.
      int to = intern(target, to_state);
      out[v].push_back({e, backward, to});
    }
  }

  PrunedCore core = prune(out, accepting, start);
  NfaProduct p;
  std::vector<int> nodes(verts.size()), states(verts.size());
  for (std::size_t v = 0; v < verts.size(); ++v) {
    nodes[v] = verts[v].first;
    states[v] = verts[v].second;
  }
  p.vertex_node = apply_remap(nodes, core.remap, core.count);
  p.vertex_state = apply_remap(states, core.remap, core.count);
  p.out = std::move(core.out);
  p.in = std::move(core.in);
  p.accepting = std::move(core.accepting);
  p.start_vertex = std::move(core.start_vertex);
  return p;
}

DfaProduct build_dfa_product(const Graph& g, const PathAutomaton& a,
                             std::size_t cap, int excluded_node) {
  std::map<std::pair<int, std::vector<int>>, int> index;
  std::vector<std::pair<int, std::vector<int>>> verts;
  std::vector<std::vector<ProductStep>> out;
  std::vector<std::uint8_t> accepting;

  auto intern = [&](int node, std::vector<int> states) {
    auto key = std::make_pair(node, std::move(states));
    auto [it, fresh] = index.try_emplace(key, static_cast<int>(verts.size()));
    if (fresh) {
      if (verts.size() >= cap) throw CapExceeded(cap);
      verts.push_back(it->first);
      out.emplace_back();
      accepting.push_back(0);
    }
    return it->second;
  };

  std::vector<int> start(g.node_count(), -1);
  for (int n = 0; n < g.node_count(); ++n)
    if (n != excluded_node)
      start[n] = intern(n, guard_closure(g, a, n, {a.initial}));

  for (int v = 0; v < static_cast<int>(verts.size()); ++v) {
    int node = verts[v].first;
    const std::vector<int> states = verts[v].second;  // copy: verts may grow
    if (any_final(a, states)) accepting[v] = 1;

    std::set<int> incident;
    for (int e : g.out_edges(node)) incident.insert(e);
    for (int e : g.in_edges(node)) incident.insert(e);
    for (int e : incident) {
      auto [src, dst] = g.endpoints(e);
      int target = src == node ? dst : src;
      if (target == excluded_node) continue;
      // Both directions apply for a self-loop; the successor sets merge so
      // the literal path step keeps a single product step.
      std::set<int> next;
      for (int s : states) {
        for (int mi : a.moves_from[s]) {
          const auto& m = a.moves[mi];
          bool applies = m.backward ? dst == node : src == node;
          if (applies && matches_edge(g, *m.test, e)) next.insert(m.to);
        }
      }
      if (next.empty()) continue;
      std::vector<int> closed = guard_closure(
          g, a, target, std::vector<int>(next.begin(), next.end()));
      int to = intern(target, std::move(closed));
      out[v].push_back({e, src != node, to});
    }
  }

  PrunedCore core = prune(out, accepting, start);
  DfaProduct p;
  std::vector<int> nodes(verts.size());
  for (std::size_t v = 0; v < verts.size(); ++v) nodes[v] = verts[v].first;
  p.vertex_node = apply_remap(nodes, core.remap, core.count);
  p.out = std::move(core.out);
  p.in = std::move(core.in);
  p.accepting = std::move(core.accepting);
  p.start_vertex = std::move(core.start_vertex);
  // Enumeration order: steps ascending by edge id string (one step per edge).
  for (auto& steps : p.out)
    std::sort(steps.begin(), steps.end(),
              [&](const ProductStep& x, const ProductStep& y) {
                return g.edge_id(x.edge) < g.edge_id(y.edge);
              });
  return p;
}

std::string to_dot(const Graph& g, const NfaProduct& p) {
  std::ostringstream os;
  os << "digraph nfa_product {\n";
  for (int v = 0; v < p.vertex_count(); ++v)
    os << "  v" << v << " [label=\"" << g.node_id(p.vertex_node[v]) << ",q"
       << p.vertex_state[v] << "\"" << (p.accepting[v] ? ", shape=doublecircle" : "")
       << "];\n";
  for (int v = 0; v < p.vertex_count(); ++v)
    for (const auto& s : p.out[v])
      os << "  v" << v << " -> v" << s.to << " [label=\"" << g.edge_id(s.edge)
         << (s.backward ? "^-" : "") << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string to_dot(const Graph& g, const DfaProduct& p) {
  std::ostringstream os;
  os << "digraph dfa_product {\n";
  for (int v = 0; v < p.vertex_count(); ++v)
    os << "  v" << v << " [label=\"" << g.node_id(p.vertex_node[v]) << "\""
       << (p.accepting[v] ? ", shape=doublecircle" : "") << "];\n";
  for (int v = 0; v < p.vertex_count(); ++v)
    for (const auto& s : p.out[v])
      os << "  v" << v << " -> v" << s.to << " [label=\"" << g.edge_id(s.edge)
         << (s.backward ? "^-" : "") << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace gqe
