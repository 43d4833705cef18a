#include "gqe/automaton.hpp"

#include <algorithm>
#include <sstream>

#include "gqe/printer.hpp"

namespace gqe {

namespace {

struct Builder {
  int states = 0;
  std::vector<AutomatonMove> moves;
  std::vector<AutomatonGuard> guards;

  int fresh() { return states++; }
  void eps(int a, int b) { guards.push_back({a, TestAst::any(), b}); }

  // Returns (start, accept) of the fragment for r.
  std::pair<int, int> build(const RegexAst& r) {
    switch (r.kind) {
      case RegexAst::Kind::NodeTest: {
        int s = fresh(), f = fresh();
        guards.push_back({s, r.test, f});
        return {s, f};
      }
      case RegexAst::Kind::Fwd: {
        int s = fresh(), f = fresh();
        moves.push_back({s, false, r.test, f});
        return {s, f};
      }
      case RegexAst::Kind::Bwd: {
        int s = fresh(), f = fresh();
        moves.push_back({s, true, r.test, f});
        return {s, f};
      }
      case RegexAst::Kind::Alt: {
        auto [s1, f1] = build(*r.lhs);
        auto [s2, f2] = build(*r.rhs);
        int s = fresh(), f = fresh();
        eps(s, s1);
        eps(s, s2);
        eps(f1, f);
        eps(f2, f);
        return {s, f};
      }
      case RegexAst::Kind::Seq: {
        auto [s1, f1] = build(*r.lhs);
        auto [s2, f2] = build(*r.rhs);
        eps(f1, s2);
        return {s1, f2};
      }
      case RegexAst::Kind::Star: {
        auto [s1, f1] = build(*r.lhs);
        int s = fresh(), f = fresh();
        eps(s, f);   // the all-nodes length-0 component
        eps(s, s1);
        eps(f1, f);
        eps(f, s);   // loop
        return {s, f};
      }
    }
    throw Error("corrupt regex");
  }
};

}  // namespace

PathAutomaton compile(const RegexAst& r) {
  Builder b;
  auto [start, accept] = b.build(r);

  // Reachability from the start and co-reachability to the accept state over
  // the move/guard skeleton, ignoring tests.
  std::vector<std::vector<int>> fwd(b.states), rev(b.states);
  auto link = [&](int u, int v) {
    fwd[u].push_back(v);
    rev[v].push_back(u);
  };
  for (const auto& m : b.moves) link(m.from, m.to);
  for (const auto& g : b.guards) link(g.from, g.to);

  auto closure = [&](int root, const std::vector<std::vector<int>>& adj) {
    std::vector<std::uint8_t> seen(b.states, 0);
    std::vector<int> stack{root};
    seen[root] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[u])
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
    }
    return seen;
  };
  auto reach = closure(start, fwd);
  auto coreach = closure(accept, rev);

  std::vector<int> remap(b.states, -1);
  PathAutomaton a;
  for (int s = 0; s < b.states; ++s)
    if (reach[s] && coreach[s]) remap[s] = a.state_count++;
  if (remap[start] == -1) {
    // Degenerate: nothing is structurally acceptable.
    a.state_count = 1;
    a.initial = 0;
    a.is_final.assign(1, 0);
    a.moves_from.resize(1);
    a.guards_from.resize(1);
    return a;
  }
  a.initial = remap[start];
  a.is_final.assign(a.state_count, 0);
  a.is_final[remap[accept]] = 1;
  for (const auto& m : b.moves)
    if (remap[m.from] != -1 && remap[m.to] != -1)
      a.moves.push_back({remap[m.from], m.backward, m.test, remap[m.to]});
  for (const auto& g : b.guards)
    if (remap[g.from] != -1 && remap[g.to] != -1)
      a.guards.push_back({remap[g.from], g.test, remap[g.to]});
  a.moves_from.resize(a.state_count);
  a.guards_from.resize(a.state_count);
  for (std::size_t i = 0; i < a.moves.size(); ++i)
    a.moves_from[a.moves[i].from].push_back(static_cast<int>(i));
  for (std::size_t i = 0; i < a.guards.size(); ++i)
    a.guards_from[a.guards[i].from].push_back(static_cast<int>(i));
  return a;
}

std::string to_dot(const PathAutomaton& a) {
  std::ostringstream out;
  out << "digraph automaton {\n  rankdir=LR;\n";
  for (int s = 0; s < a.state_count; ++s) {
    out << "  q" << s << " [shape=" << (a.is_final[s] ? "doublecircle" : "circle");
    if (s == a.initial) out << ", style=bold";
    out << "];\n";
  }
  for (const auto& g : a.guards)
    out << "  q" << g.from << " -> q" << g.to << " [label=\"?" << to_string(*g.test)
        << "\", style=dashed];\n";
  for (const auto& m : a.moves)
    out << "  q" << m.from << " -> q" << m.to << " [label=\"" << to_string(*m.test)
        << (m.backward ? "^-" : "") << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace gqe
