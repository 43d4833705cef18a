#include "gqe/analytics.hpp"

#include <limits>
#include <optional>

#include "omp_util.hpp"

namespace gqe {

namespace {

constexpr int kUnreached = std::numeric_limits<int>::max();

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

struct SpRow {
  std::vector<int> dist;             // kUnreached when absent
  std::vector<std::uint64_t> sigma;  // shortest-path counts
};

// Layered BFS with per-edge count accumulation (parallel edges are distinct
// paths).
SpRow bfs_counts(const Graph& g, int src) {
  int n = g.node_count();
  SpRow row{std::vector<int>(n, kUnreached), std::vector<std::uint64_t>(n, 0)};
  row.dist[src] = 0;
  row.sigma[src] = 1;
  std::vector<int> frontier{src};
  int d = 0;
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int u : frontier) {
      for (int e : g.out_edges(u)) {
        int v = g.endpoints(e).second;
        if (row.dist[v] == kUnreached) {
          row.dist[v] = d + 1;
          next.push_back(v);
        }
        if (row.dist[v] == d + 1)
          row.sigma[v] = checked_add(row.sigma[v], row.sigma[u]);
      }
    }
    frontier = std::move(next);
    ++d;
  }
  return row;
}

std::vector<SpRow> all_rows(const Graph& g) {
  std::vector<SpRow> rows(g.node_count());
  detail::parallel_for(g.node_count(), [&](int a) { rows[a] = bfs_counts(g, a); });
  return rows;
}

double bc_from_rows(const Graph& g, const std::vector<SpRow>& rows, int x) {
  int n = g.node_count();
  std::vector<double> partial(n, 0.0);
  detail::parallel_for(n, [&](int a) {
    if (a == x) return;
    const SpRow& ra = rows[a];
    const SpRow& rx = rows[x];
    if (ra.dist[x] == kUnreached) return;
    double sum = 0.0;
    for (int b = 0; b < n; ++b) {
      if (b == a || b == x) continue;
      if (ra.dist[b] == kUnreached || rx.dist[b] == kUnreached) continue;
      if (ra.dist[x] + rx.dist[b] != ra.dist[b]) continue;
      std::uint64_t through = checked_mul(ra.sigma[x], rx.sigma[b]);
      sum += static_cast<double>(through) / static_cast<double>(ra.sigma[b]);
    }
    partial[a] = sum;
  });
  double total = 0.0;
  for (int a = 0; a < n; ++a) total += partial[a];
  return total;
}

void check_node(const Graph& g, int x) {
  if (x < 0 || x >= g.node_count())
    throw ContractViolation("unknown node index");
}

// Shortest-walk BFS with counts over a product, from one start vertex.
template <class Product>
SpRow product_bfs(const Product& p, int start) {
  int n = p.vertex_count();
  SpRow row{std::vector<int>(n, kUnreached), std::vector<std::uint64_t>(n, 0)};
  row.dist[start] = 0;
  row.sigma[start] = 1;
  std::vector<int> frontier{start};
  int d = 0;
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int u : frontier) {
      for (const auto& s : p.out[u]) {
        if (row.dist[s.to] == kUnreached) {
          row.dist[s.to] = d + 1;
          next.push_back(s.to);
        }
        if (row.dist[s.to] == d + 1)
          row.sigma[s.to] = checked_add(row.sigma[s.to], row.sigma[u]);
      }
    }
    frontier = std::move(next);
    ++d;
  }
  return row;
}

struct PairCounts {
  std::vector<int> min_len;            // per target node, kUnreached if none
  std::vector<std::uint64_t> count;    // minimal-length conforming paths
};

// Minimal conforming-path length and count per target node, from one source.
// On the deterministic product shortest walks are in bijection with minimal
// conforming paths.
PairCounts pair_counts(const DfaProduct& p, int n_nodes, int start) {
  PairCounts pc{std::vector<int>(n_nodes, kUnreached),
                std::vector<std::uint64_t>(n_nodes, 0)};
  SpRow row = product_bfs(p, start);
  for (int v = 0; v < p.vertex_count(); ++v) {
    if (!p.accepting[v] || row.dist[v] == kUnreached) continue;
    int b = p.vertex_node[v];
    if (row.dist[v] < pc.min_len[b]) {
      pc.min_len[b] = row.dist[v];
      pc.count[b] = row.sigma[v];
    } else if (row.dist[v] == pc.min_len[b]) {
      pc.count[b] = checked_add(pc.count[b], row.sigma[v]);
    }
  }
  return pc;
}

double bc_r_core(const Graph& g, int x, const DfaProduct& full,
                 const DfaProduct& del) {
  int n = g.node_count();
  std::vector<double> partial(n, 0.0);
  detail::parallel_for(n, [&](int a) {
    if (a == x) return;
    int sv = full.start_vertex[a];
    if (sv == -1) return;
    PairCounts pf = pair_counts(full, n, sv);
    std::optional<PairCounts> pd;
    if (del.start_vertex[a] != -1)
      pd = pair_counts(del, n, del.start_vertex[a]);
    double sum = 0.0;
    for (int b = 0; b < n; ++b) {
      if (b == a || b == x) continue;
      if (pf.min_len[b] == kUnreached) continue;
      std::uint64_t cnt = pf.count[b];
      std::uint64_t avoid = 0;
      if (pd && pd->min_len[b] == pf.min_len[b]) avoid = pd->count[b];
      if (avoid > cnt)
        throw Error("through-count invariant violated");
      sum += static_cast<double>(cnt - avoid) / static_cast<double>(cnt);
    }
    partial[a] = sum;
  });
  double total = 0.0;
  for (int a = 0; a < n; ++a) total += partial[a];
  return total;
}

}  // namespace

double bc(const Graph& g, int x) {
  check_node(g, x);
  return bc_from_rows(g, all_rows(g), x);
}

std::vector<double> bc_all(const Graph& g) {
  auto rows = all_rows(g);
  std::vector<double> out(g.node_count());
  detail::parallel_for(g.node_count(),
                       [&](int x) { out[x] = bc_from_rows(g, rows, x); });
  return out;
}

double bc_r(const Graph& g, int x, const RegexAst& r, std::size_t cap) {
  check_node(g, x);
  PathAutomaton a = compile(r);
  DfaProduct full = build_dfa_product(g, a, cap);
  DfaProduct del = build_dfa_product(g, a, cap, x);
  return bc_r_core(g, x, full, del);
}

std::vector<double> bc_r_all(const Graph& g, const RegexAst& r,
                             std::size_t cap) {
  PathAutomaton a = compile(r);
  DfaProduct full = build_dfa_product(g, a, cap);
  std::vector<double> out(g.node_count());
  // The deleted-node product differs per x; keep x serial and let the
  // per-source loops inside bc_r_core parallelize.
  for (int x = 0; x < g.node_count(); ++x) {
    DfaProduct del = build_dfa_product(g, a, cap, x);
    out[x] = bc_r_core(g, x, full, del);
  }
  return out;
}

double bc_r_approx(const Graph& g, int x, const RegexAst& r, double epsilon,
                   std::uint64_t seed) {
  check_node(g, x);
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ContractViolation("epsilon must lie in (0,1)");
  PathAutomaton a = compile(r);
  NfaProduct full = build_nfa_product(g, a);
  NfaProduct del = build_nfa_product(g, a, x);
  int n = g.node_count();
  std::mt19937_64 rng(seed);
  double total = 0.0;
  // Serial pair order keeps the rng stream, and so the result, reproducible.
  for (int src = 0; src < n; ++src) {
    if (src == x) continue;
    int sv = full.start_vertex[src];
    if (sv == -1) continue;
    SpRow row = product_bfs(full, sv);
    std::vector<int> min_len(n, kUnreached);
    for (int v = 0; v < full.vertex_count(); ++v)
      if (full.accepting[v] && row.dist[v] != kUnreached)
        min_len[full.vertex_node[v]] =
            std::min(min_len[full.vertex_node[v]], row.dist[v]);
    for (int b = 0; b < n; ++b) {
      if (b == src || b == x || min_len[b] == kUnreached) continue;
      double est =
          approx_count_pair(full, src, b, min_len[b], epsilon, rng).estimate;
      double est_del =
          approx_count_pair(del, src, b, min_len[b], epsilon, rng).estimate;
      if (est <= 0.0) continue;
      double through = std::min(std::max(est - est_del, 0.0), est);
      total += through / est;
    }
  }
  return total;
}

}  // namespace gqe
