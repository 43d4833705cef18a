#include "gqe/wl.hpp"

#include <algorithm>
#include <map>

#include "omp_util.hpp"

namespace gqe {

namespace {

std::vector<int> canonicalize(const std::vector<std::vector<int>>& signatures) {
  std::map<std::vector<int>, int> ids;
  std::vector<int> colors(signatures.size());
  for (std::size_t n = 0; n < signatures.size(); ++n) {
    auto [it, fresh] =
        ids.try_emplace(signatures[n], static_cast<int>(ids.size()));
    colors[n] = it->second;
    (void)fresh;
  }
  return colors;
}

}  // namespace

std::vector<std::vector<int>> wl_colors(const Graph& g, int rounds) {
  if (rounds < 0) throw ContractViolation("rounds must be non-negative");
  int n = g.node_count();

  // Round 0: canonical ids of the initial vectors/labels.
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
    auto [it, fresh] = seed_ids.try_emplace(key, static_cast<int>(seed_ids.size()));
    colors[u] = it->second;
    (void)fresh;
  }

  std::vector<std::vector<int>> out;
  out.push_back(colors);
  for (int round = 1; round <= rounds; ++round) {
    std::vector<std::vector<int>> sig(n);
    detail::parallel_for(n, [&](int u) {
      std::vector<int> s;
      s.push_back(colors[u]);
      std::vector<int> nb;
      for (int v : g.neighbors(u)) nb.push_back(colors[v]);
      std::sort(nb.begin(), nb.end());
      s.insert(s.end(), nb.begin(), nb.end());
      sig[u] = std::move(s);
    });
    colors = canonicalize(sig);
    out.push_back(colors);
  }
  return out;
}

}  // namespace gqe
