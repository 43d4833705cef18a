#include <doctest.h>

#include <cmath>

#include "gqe/analytics.hpp"
#include "gqe/parser.hpp"
#include "gqe/reference.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace gqe;
using gqe::testing::fixture;

namespace {

const FlavorInfo kLabeled{Flavor::Labeled, 0};

Graph chain_abc() {
  RawGraph raw;
  raw.flavor = Flavor::Labeled;
  raw.nodes.push_back({"a", "p", {}, {}});
  raw.nodes.push_back({"b", "p", {}, {}});
  raw.nodes.push_back({"c", "p", {}, {}});
  raw.edges.push_back({"e1", "a", "b", "l", {}, {}});
  raw.edges.push_back({"e2", "b", "c", "l", {}, {}});
  return Graph::from_raw(raw);
}

Graph diamond() {
  RawGraph raw;
  raw.flavor = Flavor::Labeled;
  for (const char* id : {"a", "b", "c", "d"})
    raw.nodes.push_back({id, "p", {}, {}});
  raw.edges.push_back({"e1", "a", "b", "l", {}, {}});
  raw.edges.push_back({"e2", "b", "d", "l", {}, {}});
  raw.edges.push_back({"e3", "a", "c", "l", {}, {}});
  raw.edges.push_back({"e4", "c", "d", "l", {}, {}});
  return Graph::from_raw(raw);
}

}  // namespace

TEST_CASE("bc base cases") {
  Graph chain = chain_abc();
  CHECK(bc(chain, chain.node_index("b")) == doctest::Approx(1.0));

  Graph d = diamond();
  CHECK(bc(d, d.node_index("b")) == doctest::Approx(0.5));
  CHECK(bc(d, d.node_index("c")) == doctest::Approx(0.5));

  RawGraph raw = chain.to_raw();
  raw.nodes.push_back({"iso", "p", {}, {}});
  Graph with_isolated = Graph::from_raw(raw);
  CHECK(bc(with_isolated, with_isolated.node_index("iso")) == 0.0);
  CHECK_THROWS_AS(bc(chain, 17), ContractViolation);
}

TEST_CASE("bc agrees with the brute-force oracle and the serial reference") {
  std::mt19937 rng(31);
  for (int i = 0; i < 40; ++i) {
    Graph g = gqe::testing::random_labeled_graph(rng, 7, 12);
    auto kernel = bc_all(g);
    auto serial = reference::bc_all_serial(g);
    REQUIRE(kernel.size() == serial.size());
    for (int x = 0; x < g.node_count(); ++x) {
      CHECK(kernel[x] == doctest::Approx(serial[x]).epsilon(1e-12));
      CHECK(kernel[x] ==
            doctest::Approx(gqe::testing::oracle_bc(g, x)).epsilon(1e-9));
    }
  }
}

TEST_CASE("bc_r on the fixture") {
  Graph g = fixture("fig1a.json");
  RegexPtr r = parse_regex("?person/rides/?bus/rides^-/?person", kLabeled);
  CHECK(bc_r(g, g.node_index("n3"), *r) == doctest::Approx(2.0));

  RegexPtr none = parse_regex("?nosuchlabel", kLabeled);
  for (int x = 0; x < g.node_count(); ++x) CHECK(bc_r(g, x, *none) == 0.0);
}

TEST_CASE("the universal regex recovers plain betweenness") {
  std::mt19937 rng(47);
  RegexPtr universal = parse_regex("((_))*", kLabeled);
  for (int i = 0; i < 25; ++i) {
    Graph g = gqe::testing::random_labeled_graph(rng, 6, 10);
    auto plain = bc_all(g);
    auto restricted = bc_r_all(g, *universal);
    for (int x = 0; x < g.node_count(); ++x)
      CHECK(std::fabs(plain[x] - restricted[x]) <= 1e-9);
  }
}

TEST_CASE("bc and bc_r are invariant under id relabeling") {
  std::mt19937 rng(53);
  RegexPtr r = parse_regex("((a))*/b", kLabeled);
  for (int i = 0; i < 10; ++i) {
    Graph g = gqe::testing::random_labeled_graph(rng, 6, 9);
    RawGraph renamed = g.to_raw();
    auto rename = [](const std::string& id) { return "z_" + id; };
    for (auto& n : renamed.nodes) n.id = rename(n.id);
    for (auto& e : renamed.edges) {
      e.id = rename(e.id);
      e.src = rename(e.src);
      e.dst = rename(e.dst);
    }
    Graph h = Graph::from_raw(renamed);
    for (int x = 0; x < g.node_count(); ++x) {
      int hx = h.node_index("z_" + g.node_id(x));
      CHECK(bc(g, x) == doctest::Approx(bc(h, hx)));
      CHECK(bc_r(g, x, *r) == doctest::Approx(bc_r(h, hx, *r)));
    }
  }
}

TEST_CASE("bc_r_approx hits the fixture value within epsilon") {
  Graph g = fixture("fig1a.json");
  RegexPtr r = parse_regex("?person/rides/?bus/rides^-/?person", kLabeled);
  int x = g.node_index("n3");
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    double est = bc_r_approx(g, x, *r, 0.1, seed);
    if (est >= 1.8 && est <= 2.2) ++hits;
  }
  CHECK(hits >= 95);

  RegexPtr none = parse_regex("?nosuchlabel", kLabeled);
  CHECK(bc_r_approx(g, x, *none, 0.1, 0) == 0.0);
}

TEST_CASE("bc_r_approx tracks bc_r on random instances") {
  std::mt19937 rng(61);
  int compared = 0;
  for (int i = 0; i < 20; ++i) {
    Graph g = gqe::testing::random_labeled_graph(rng, 6, 9);
    RegexPtr r = gqe::testing::random_regex(rng, 3, false);
    int x = std::uniform_int_distribution<int>(0, g.node_count() - 1)(rng);
    double truth = bc_r(g, x, *r);
    double est = bc_r_approx(g, x, *r, 0.1, 1000 + i);
    if (truth == 0.0) {
      CHECK(est <= 1e-9);
    } else {
      CHECK(std::fabs(est - truth) / truth <= 0.25);
    }
    ++compared;
  }
  CHECK(compared == 20);
}

TEST_CASE("capacity errors propagate from bc_r") {
  RawGraph raw;
  raw.flavor = Flavor::Labeled;
  for (int i = 0; i < 4; ++i)
    raw.nodes.push_back({"n" + std::to_string(i), "p", {}, {}});
  int e = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      raw.edges.push_back({"e" + std::to_string(e++), "n" + std::to_string(i),
                           "n" + std::to_string(j), i == j ? "a" : "b",
                           {},
                           {}});
  Graph g = Graph::from_raw(raw);
  RegexPtr r = parse_regex("((a+b))*/a/((a+b))/((a+b))", kLabeled);
  CHECK_THROWS_AS(bc_r(g, 0, *r, /*cap=*/4), CapExceeded);
}
