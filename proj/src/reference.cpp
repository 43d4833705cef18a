#include "gqe/reference.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace gqe::reference {

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw CountOverflow();
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw CountOverflow();
  return r;
}

}  // namespace

std::vector<double> bc_all_serial(const Graph& g) {
  int n = g.node_count();
  std::vector<std::vector<long long>> dist(n, std::vector<long long>(n, kInf));
  std::vector<std::vector<std::uint64_t>> spnum(
      n, std::vector<std::uint64_t>(n, 0));
  for (int v = 0; v < n; ++v) {
    dist[v][v] = 0;
    spnum[v][v] = 1;
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [s, d] = g.endpoints(e);
    if (s == d) continue;  // a shortest path never uses a self-loop
    dist[s][d] = 1;
    spnum[s][d] = checked_add(spnum[s][d], 1);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (dist[i][k] == kInf || i == k) continue;
      for (int j = 0; j < n; ++j) {
        if (dist[k][j] == kInf || j == k || j == i) continue;
        long long via = dist[i][k] + dist[k][j];
        if (via < dist[i][j]) {
          dist[i][j] = via;
          spnum[i][j] = checked_mul(spnum[i][k], spnum[k][j]);
        } else if (via == dist[i][j]) {
          spnum[i][j] =
              checked_add(spnum[i][j], checked_mul(spnum[i][k], spnum[k][j]));
        }
      }
    }
  std::vector<double> out(n, 0.0);
  for (int x = 0; x < n; ++x) {
    double total = 0.0;
    for (int a = 0; a < n; ++a) {
      if (a == x || dist[a][x] == kInf) continue;
      double sum = 0.0;
      for (int b = 0; b < n; ++b) {
        if (b == a || b == x) continue;
        if (dist[a][b] == kInf || dist[x][b] == kInf) continue;
        if (dist[a][x] + dist[x][b] != dist[a][b]) continue;
        sum += static_cast<double>(checked_mul(spnum[a][x], spnum[x][b])) /
               static_cast<double>(spnum[a][b]);
      }
      total += sum;
    }
    out[x] = total;
  }
  return out;
}

std::uint64_t count_exact_serial(const DfaProduct& p, int len) {
  int n = p.vertex_count();
  std::vector<std::uint64_t> cur(n, 0);
  for (int sv : p.start_vertex)
    if (sv != -1) cur[sv] = checked_add(cur[sv], 1);
  for (int t = 0; t < len; ++t) {
    std::vector<std::uint64_t> next(n, 0);
    for (int v = 0; v < n; ++v) {
      if (cur[v] == 0) continue;
      for (const auto& s : p.out[v])
        next[s.to] = checked_add(next[s.to], cur[v]);
    }
    cur = std::move(next);
  }
  std::uint64_t total = 0;
  for (int v = 0; v < n; ++v)
    if (p.accepting[v]) total = checked_add(total, cur[v]);
  return total;
}

std::vector<FeatureSnapshot> run_layers_serial(const Graph& g, const Gnn& gnn) {
  // Plain restatement of the layer semantics, one node at a time.
  if (g.flavor() != Flavor::Vector || g.dimension() != gnn.dimension)
    throw ContractViolation("model/graph dimension mismatch");
  std::vector<FeatureSnapshot> snaps;
  FeatureSnapshot inputs(g.node_count());
  for (int u = 0; u < g.node_count(); ++u) {
    auto f = g.node_features(u);
    inputs[u].assign(f.begin(), f.end());
  }
  snaps.push_back(std::move(inputs));
  for (const auto& layer : gnn.layers) {
    const FeatureSnapshot& prev = snaps.back();
    FeatureSnapshot next(g.node_count());
    for (int u = 0; u < g.node_count(); ++u) {
      if (layer.kind == GnnLayer::Kind::Rule) {
        next[u] = prev[u];
        for (const auto& rule : layer.rules) {
          if (!matches_vector(*rule.self_cond, prev[u])) continue;
          bool fired = false;
          RuleScope scope = gnn.direction == Direction::Undirected
                                ? RuleScope::Both
                                : rule.scope;
          if (rule.edge_cond) {
            auto scan = [&](const std::vector<int>& edges, bool outgoing) {
              for (int e : edges) {
                int v = outgoing ? g.endpoints(e).second : g.endpoints(e).first;
                if (matches_vector(*rule.edge_cond, g.edge_features(e)) &&
                    matches_vector(*rule.neighbor_cond, prev[v]))
                  return true;
              }
              return false;
            };
            if (scope != RuleScope::In && scan(g.out_edges(u), true)) fired = true;
            if (!fired && scope != RuleScope::Out && scan(g.in_edges(u), false))
              fired = true;
          } else {
            std::set<int> candidates;
            if (scope != RuleScope::In)
              for (int e : g.out_edges(u)) candidates.insert(g.endpoints(e).second);
            if (scope != RuleScope::Out)
              for (int e : g.in_edges(u)) candidates.insert(g.endpoints(e).first);
            for (int v : candidates)
              if (matches_vector(*rule.neighbor_cond, prev[v])) {
                fired = true;
                break;
              }
          }
          if (fired) {
            next[u][rule.feature - 1] = rule.value;
            break;
          }
        }
      } else {
        int d = gnn.dimension;
        auto num = [](const Atom& a) {
          std::size_t used = 0;
          double v = std::stod(a, &used);
          if (used != a.size()) throw ContractViolation("non-numeric feature");
          return v;
        };
        std::vector<double> agg(d, 0.0);
        for (int v : g.neighbors(u))
          for (int i = 0; i < d; ++i) agg[i] += num(prev[v][i]);
        next[u].resize(d);
        for (int i = 0; i < d; ++i) {
          double acc = layer.linear.bias[i];
          for (int j = 0; j < d; ++j)
            acc += layer.linear.a[i][j] * num(prev[u][j]) +
                   layer.linear.b[i][j] * agg[j];
          acc = std::min(1.0, std::max(0.0, acc));
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.17g", acc);
          next[u][i] = buf;
        }
      }
    }
    snaps.push_back(std::move(next));
  }
  return snaps;
}

std::vector<std::vector<int>> wl_colors_serial(const Graph& g, int rounds) {
  int n = g.node_count();
  std::vector<std::vector<int>> out;
  std::map<std::vector<Atom>, int> seed_ids;
  std::vector<int> colors(n);
  for (int u = 0; u < n; ++u) {
    std::vector<Atom> key;
    if (g.flavor() == Flavor::Vector) {
      auto f = g.node_features(u);
      key.assign(f.begin(), f.end());
    } else {
      key.push_back(g.node_label(u));
    }
    colors[u] = seed_ids.try_emplace(key, static_cast<int>(seed_ids.size()))
                    .first->second;
  }
  out.push_back(colors);
  for (int round = 1; round <= rounds; ++round) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> next(n);
    for (int u = 0; u < n; ++u) {
      std::vector<int> sig{colors[u]};
      std::vector<int> nb;
      for (int v : g.neighbors(u)) nb.push_back(colors[v]);
      std::sort(nb.begin(), nb.end());
      sig.insert(sig.end(), nb.begin(), nb.end());
      next[u] = ids.try_emplace(sig, static_cast<int>(ids.size())).first->second;
    }
    colors = next;
    out.push_back(colors);
  }
  return out;
}

}  // namespace gqe::reference
