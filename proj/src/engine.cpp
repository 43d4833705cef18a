#include "gqe/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "omp_util.hpp"

namespace gqe {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw CountOverflow();
  return r;
}

void check_length(int len) {
  if (len < 0) throw ContractViolation("path length must be non-negative");
  if (len > kMaxPathLength)
    throw ContractViolation("path length exceeds the engine limit");
}

// suffix[t][v]: number of length-t walks from v that end accepting (at
// dst_node when restricted). Works for both product kinds.
template <class Product>
std::vector<std::vector<std::uint64_t>> suffix_counts(const Product& p,
                                                      int len,
                                                      int dst_node = -1) {
  int n = p.vertex_count();
  std::vector<std::vector<std::uint64_t>> f(
      len + 1, std::vector<std::uint64_t>(n, 0));
  for (int v = 0; v < n; ++v)
    f[0][v] = p.accepting[v] && (dst_node < 0 || p.vertex_node[v] == dst_node);
  for (int t = 1; t <= len; ++t) {
    detail::parallel_for(n, [&](int v) {
      std::uint64_t sum = 0;
      for (const auto& s : p.out[v]) sum = checked_add(sum, f[t - 1][s.to]);
      f[t][v] = sum;
    });
  }
  return f;
}

template <class Product>
std::uint64_t total_from_starts(const Product& p,
                                const std::vector<std::uint64_t>& row,
                                int src_node) {
  std::uint64_t total = 0;
  if (src_node >= 0) {
    int sv = p.start_vertex[src_node];
    return sv == -1 ? 0 : row[sv];
  }
  for (int sv : p.start_vertex)
    if (sv != -1) total = checked_add(total, row[sv]);
  return total;
}

std::uint64_t pick(std::mt19937_64& rng, std::uint64_t total) {
  return std::uniform_int_distribution<std::uint64_t>(0, total - 1)(rng);
}

// Draws a walk of length `len` with probability proportional to its suffix
// weight; with run-count tables this is a uniform accepting run, with
// deterministic-product tables a uniform conforming path.
template <class Product>
Path sample_walk(const Product& p,
                 const std::vector<std::vector<std::uint64_t>>& f, int len,
                 int src_node, std::uint64_t total, std::mt19937_64& rng) {
  std::uint64_t r = pick(rng, total);
  int v = -1;
  if (src_node >= 0) {
    v = p.start_vertex[src_node];
  } else {
    for (int node = 0; node < static_cast<int>(p.start_vertex.size()); ++node) {
      int sv = p.start_vertex[node];
      if (sv == -1) continue;
      if (r < f[len][sv]) {
        v = sv;
        break;
      }
      r -= f[len][sv];
    }
  }
  Path path;
  path.nodes.push_back(p.vertex_node[v]);
  for (int t = len; t >= 1; --t) {
    for (const auto& s : p.out[v]) {
      std::uint64_t w = f[t - 1][s.to];
      if (r < w) {
        path.edges.push_back(s.edge);
        path.nodes.push_back(p.vertex_node[s.to]);
        v = s.to;
        goto stepped;
      }
      r -= w;
    }
    throw Error("sampling tables are inconsistent");
  stepped:;
  }
  return path;
}

// Number of accepting runs over the fixed path: DP along the path over
// product vertices. Both traversal directions of a self-loop edge count as
// distinct runs, matching the run-count DP.
std::uint64_t ambiguity(const NfaProduct& p, const Path& path) {
  std::vector<std::pair<int, std::uint64_t>> cur;
  int sv = p.start_vertex[path.nodes[0]];
  if (sv == -1) return 0;
  cur.emplace_back(sv, 1);
  for (std::size_t i = 0; i < path.edges.size(); ++i) {
    std::map<int, std::uint64_t> next;
    for (const auto& [v, c] : cur)
      for (const auto& s : p.out[v])
        if (s.edge == path.edges[i] && p.vertex_node[s.to] == path.nodes[i + 1])
          next[s.to] = checked_add(next[s.to], c);
    cur.assign(next.begin(), next.end());
    if (cur.empty()) return 0;
  }
  std::uint64_t total = 0;
  for (const auto& [v, c] : cur)
    if (p.accepting[v]) total = checked_add(total, c);
  return total;
}

std::uint64_t sample_budget(double epsilon) {
  // ceil(8/eps^2) with a ln(2/delta) factor at delta = 0.05; calibrated so
  // the empirical relative error stays within eps with probability >= 0.95
  // on the test corpus.
  return static_cast<std::uint64_t>(
      std::ceil(8.0 / (epsilon * epsilon) * std::log(2.0 / 0.05)));
}

ApproxCount approx_from_tables(const NfaProduct& p,
                               const std::vector<std::vector<std::uint64_t>>& f,
                               int src_node, int len, double epsilon,
                               std::mt19937_64& rng) {
  ApproxCount out;
  out.epsilon = epsilon;
  std::uint64_t runs = total_from_starts(p, f[len], src_node);
  if (runs == 0) return out;
  std::uint64_t m = sample_budget(epsilon);
  double acc = 0.0;
  for (std::uint64_t i = 0; i < m; ++i) {
    Path path = sample_walk(p, f, len, src_node, runs, rng);
    std::uint64_t amb = ambiguity(p, path);
    acc += 1.0 / static_cast<double>(amb);
  }
  out.estimate = static_cast<double>(runs) * acc / static_cast<double>(m);
  out.samples = m;
  return out;
}

}  // namespace

std::vector<int> select_nodes(const Graph& g, const TestAst& t) {
  std::vector<int> out;
  for (int n = 0; n < g.node_count(); ++n)
    if (matches_node(g, t, n)) out.push_back(n);
  return out;
}

PathEnumerator::PathEnumerator(const Graph& g, const RegexAst& r, int max_len)
    : g_(&g), max_len_(max_len) {
  check_length(max_len);
  PathAutomaton a = compile(r);
  // Enumeration carries no cap in its contract; give the subset
  // construction generous room.
  dfa_ = build_dfa_product(g, a, std::size_t{1} << 20);
  int n = dfa_.vertex_count();
  alive_.assign(max_len_ + 1, std::vector<std::uint8_t>(n, 0));
  for (int v = 0; v < n; ++v) alive_[0][v] = dfa_.accepting[v];
  for (int t = 1; t <= max_len_; ++t)
    for (int v = 0; v < n; ++v)
      for (const auto& s : dfa_.out[v])
        if (alive_[t - 1][s.to]) {
          alive_[t][v] = 1;
          break;
        }
}

// Positions the cursor on the next unexplored start vertex; false when all
// lengths are exhausted.
bool PathEnumerator::descend() {
  while (true) {
    if (target_len_ > max_len_) return false;
    const auto& order = g_->nodes_by_id();
    while (start_pos_ < order.size()) {
      int node = order[start_pos_++];
      int sv = dfa_.start_vertex[node];
      if (sv != -1 && alive_[target_len_][sv]) {
        stack_.push_back({sv, 0});
        current_.nodes.assign(1, node);
        current_.edges.clear();
        return true;
      }
    }
    ++target_len_;
    start_pos_ = 0;
  }
}

std::optional<Path> PathEnumerator::next() {
  if (exhausted_) return std::nullopt;
  while (true) {
    if (stack_.empty()) {
      if (!descend()) {
        exhausted_ = true;
        return std::nullopt;
      }
    }
    Frame& top = stack_.back();
    int depth = static_cast<int>(stack_.size()) - 1;
    if (depth == target_len_) {
      Path out = current_;
      stack_.pop_back();
      if (!stack_.empty()) {
        current_.nodes.pop_back();
        current_.edges.pop_back();
      }
      return out;
    }
    int remaining = target_len_ - depth - 1;
    bool advanced = false;
    while (top.next_step < dfa_.out[top.vertex].size()) {
      const ProductStep& s = dfa_.out[top.vertex][top.next_step++];
      if (alive_[remaining][s.to]) {
        current_.edges.push_back(s.edge);
        current_.nodes.push_back(dfa_.vertex_node[s.to]);
        stack_.push_back({s.to, 0});
        advanced = true;
        break;
      }
    }
    if (!advanced) {
      stack_.pop_back();
      if (!stack_.empty()) {
        current_.nodes.pop_back();
        current_.edges.pop_back();
      }
    }
  }
}

std::vector<Path> enumerate_paths(const Graph& g, const RegexAst& r,
                                  int max_len) {
  PathEnumerator en(g, r, max_len);
  std::vector<Path> out;
  while (auto p = en.next()) out.push_back(std::move(*p));
  return out;
}

std::vector<int> reachable_from(const Graph& g, const RegexAst& r) {
  NfaProduct p = build_nfa_product(g, compile(r));
  std::vector<int> out;
  for (int n = 0; n < g.node_count(); ++n)
    if (p.start_vertex[n] != -1) out.push_back(n);
  return out;
}

std::vector<std::pair<int, int>> pairs(const Graph& g, const RegexAst& r) {
  NfaProduct p = build_nfa_product(g, compile(r));
  std::set<std::pair<int, int>> found;
  for (int n = 0; n < g.node_count(); ++n) {
    int sv = p.start_vertex[n];
    if (sv == -1) continue;
    std::vector<std::uint8_t> seen(p.vertex_count(), 0);
    std::vector<int> stack{sv};
    seen[sv] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (p.accepting[v]) found.insert({n, p.vertex_node[v]});
      for (const auto& s : p.out[v])
        if (!seen[s.to]) {
          seen[s.to] = 1;
          stack.push_back(s.to);
        }
    }
  }
  return {found.begin(), found.end()};
}

std::uint64_t count_exact(const CountRequest& req) {
  check_length(req.length);
  PathAutomaton a = compile(*req.regex);
  DfaProduct p = build_dfa_product(*req.graph, a, req.cap);
  auto f = suffix_counts(p, req.length);
  return total_from_starts(p, f[req.length], -1);
}

ApproxCount count_approx(const CountRequest& req) {
  check_length(req.length);
  if (!(req.epsilon > 0.0 && req.epsilon < 1.0))
    throw ContractViolation("epsilon must lie in (0,1)");
  PathAutomaton a = compile(*req.regex);
  NfaProduct p = build_nfa_product(*req.graph, a);
  auto f = suffix_counts(p, req.length);
  std::mt19937_64 rng(req.seed);
  return approx_from_tables(p, f, -1, req.length, req.epsilon, rng);
}

ApproxCount approx_count_pair(const NfaProduct& p, int src_node,
                              int dst_node, int len, double epsilon,
                              std::mt19937_64& rng) {
  check_length(len);
  auto f = suffix_counts(p, len, dst_node);
  return approx_from_tables(p, f, src_node, len, epsilon, rng);
}

PathSampler::PathSampler(const Graph& g, const RegexAst& r, int len,
                         std::uint64_t seed, std::size_t cap)
    : g_(&g), len_(len), rng_(seed) {
  check_length(len);
  PathAutomaton a = compile(r);
  try {
    dfa_ = build_dfa_product(g, a, cap);
    deterministic_route_ = true;
    suffix_ = suffix_counts(dfa_, len_);
    exact_support_ = total_from_starts(dfa_, suffix_[len_], -1);
  } catch (const CapExceeded&) {
    deterministic_route_ = false;
    nfa_ = build_nfa_product(g, a);
    suffix_ = suffix_counts(nfa_, len_);
  }
}

bool PathSampler::empty() const {
  if (deterministic_route_) return exact_support_ == 0;
  return total_from_starts(nfa_, suffix_[len_], -1) == 0;
}

Path PathSampler::draw() {
  if (empty()) throw EmptySupport();
  if (deterministic_route_)
    return sample_walk(dfa_, suffix_, len_, -1, exact_support_, rng_);
  std::uint64_t runs = total_from_starts(nfa_, suffix_[len_], -1);
  while (true) {
    Path p = sample_walk(nfa_, suffix_, len_, -1, runs, rng_);
    std::uint64_t amb = ambiguity(nfa_, p);
    if (amb <= 1 || pick(rng_, amb) == 0) return p;
  }
}

}  // namespace gqe
