#include <doctest.h>

#include "gqe/gnn.hpp"
#include "gqe/reference.hpp"
#include "gqe/wl.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace gqe;
using gqe::testing::fixture;
using gqe::testing::fixture_path;

TEST_CASE("symmetric twins share colors forever") {
  RawGraph raw;
  raw.flavor = Flavor::Vector;
  raw.dimension = 2;
  for (const char* id : {"x", "y", "x2", "y2"})
    raw.nodes.push_back({id, "", {}, {"p", "0"}});
  raw.edges.push_back({"e1", "x", "y", "", {}, {"a", "0"}});
  raw.edges.push_back({"e2", "x2", "y2", "", {}, {"a", "0"}});
  Graph g = Graph::from_raw(raw);
  auto colors = wl_colors(g, 5);
  for (const auto& round : colors) {
    CHECK(round[g.node_index("x")] == round[g.node_index("x2")]);
    CHECK(round[g.node_index("y")] == round[g.node_index("y2")]);
  }
}

TEST_CASE("refinement on the contagion fixture") {
  Graph g = fixture("fig2.json");
  auto colors = wl_colors(g, 2);
  int n1 = g.node_index("n1"), n2 = g.node_index("n2"), n4 = g.node_index("n4"),
      n5 = g.node_index("n5");
  // n2 is infected, n5 is a person: distinct from the start and at round 1
  CHECK(colors[0][n2] != colors[0][n5]);
  CHECK(colors[1][n2] != colors[1][n5]);
  // the two buses agree initially but their neighborhoods differ
  CHECK(colors[0][n1] == colors[0][n4]);
  CHECK(colors[1][n1] != colors[1][n4]);
  CHECK(colors[2][n1] != colors[2][n4]);
}

namespace {

std::vector<std::vector<int>> partition_of(const std::vector<int>& colors) {
  std::map<int, std::vector<int>> groups;
  for (std::size_t n = 0; n < colors.size(); ++n)
    groups[colors[n]].push_back(static_cast<int>(n));
  std::vector<std::vector<int>> out;
  for (auto& [c, members] : groups) out.push_back(members);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("colors stabilize within |N| rounds") {
  std::mt19937 rng(11);
  for (int i = 0; i < 30; ++i) {
    Graph g = gqe::testing::random_vector_graph(rng, 8, 12);
    int n = g.node_count();
    auto colors = wl_colors(g, n + 3);
    int stable_at = -1;
    for (int round = 1; round <= n + 3; ++round) {
      if (partition_of(colors[round]) == partition_of(colors[round - 1])) {
        stable_at = round;
        break;
      }
    }
    REQUIRE(stable_at != -1);
    CHECK(stable_at <= n);
    for (int round = stable_at; round <= n + 3; ++round)
      CHECK(partition_of(colors[round]) == partition_of(colors[stable_at]));
  }
}

TEST_CASE("runs are reproducible") {
  std::mt19937 rng(13);
  Graph g = gqe::testing::random_vector_graph(rng, 8, 12);
  CHECK(wl_colors(g, 4) == wl_colors(g, 4));
  CHECK(wl_colors(g, 4) == reference::wl_colors_serial(g, 4));
}

TEST_CASE("color equality bounds every aggregate-combine network") {
  // WL-equal nodes at round t carry equal feature vectors at layer t.
  std::mt19937 rng(19);
  Gnn fig2 = load_gnn_file(fixture_path("fig2_gnn.json"));
  Gnn flip = gnn_from_json(R"({"dimension": 2, "layers": [
      {"kind": "rule", "rules": [
        {"self": "f2=0", "neighbor": "f1=person", "set": [2, "1"]},
        {"self": "f2=1", "neighbor": "f1=bus", "set": [1, "seen"]}]},
      {"kind": "rule", "rules": [
        {"self": "_", "neighbor": "f1=seen", "set": [2, "0"]}]}],
    "csl": {"feature": 2, "equals": "1"}})");
  int violations = 0;
  for (int i = 0; i < 100; ++i) {
    Graph g = gqe::testing::random_vector_graph(rng, 8, 12);
    for (const Gnn& model : {fig2, flip}) {
      auto snaps = run_layers(g, model);
      auto colors = wl_colors(g, static_cast<int>(model.layers.size()));
      for (std::size_t t = 0; t < snaps.size(); ++t)
        for (int u = 0; u < g.node_count(); ++u)
          for (int v = u + 1; v < g.node_count(); ++v)
            if (colors[t][u] == colors[t][v] && snaps[t][u] != snaps[t][v])
              ++violations;
    }
  }
  CHECK(violations == 0);
}
