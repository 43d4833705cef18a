#include <doctest.h>

#include <chrono>

#include "gqe/engine.hpp"
#include "gqe/parser.hpp"
#include "gqe/printer.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace gqe;
using gqe::testing::fixture;
using gqe::testing::keys_of;
using gqe::testing::oracle_eval;
using gqe::testing::PathKey;

namespace {

const FlavorInfo kLabeled{Flavor::Labeled, 0};

std::set<std::string> ids(const Graph& g, const std::vector<int>& nodes) {
  std::set<std::string> out;
  for (int n : nodes) out.insert(g.node_id(n));
  return out;
}

}  // namespace

TEST_CASE("select_nodes on the three fixtures") {
  Graph a = fixture("fig1a.json");
  CHECK(ids(a, select_nodes(a, *parse_test("person", a.flavor_info()))) ==
        std::set<std::string>{"n1", "n2", "n4"});

  Graph b = fixture("fig1b.json");
  CHECK(ids(b, select_nodes(b, *parse_test("(name=\"Claire\")", b.flavor_info()))) ==
        std::set<std::string>{"n5"});

  Graph c = fixture("fig1c.json");
  CHECK(ids(c, select_nodes(c, *parse_test("f1=infected & f6=covid19",
                                           c.flavor_info()))) ==
        std::set<std::string>{"n5"});
}

TEST_CASE("enumerate honors the documented order") {
  Graph g = fixture("fig1a.json");
  auto got = enumerate_paths(
      g, *parse_regex("?person/rides/?bus/rides^-/?person", kLabeled), 2);
  REQUIRE(got.size() == 4);
  std::vector<PathKey> expected = {{"n1", "e2", "n3", "e2", "n1"},
                                   {"n1", "e2", "n3", "e3", "n4"},
                                   {"n4", "e3", "n3", "e2", "n1"},
                                   {"n4", "e3", "n3", "e3", "n4"}};
  for (std::size_t i = 0; i < got.size(); ++i)
    CHECK(path_key(g, got[i]) == expected[i]);

  // the all-nodes layer of star at max_len 0
  auto star0 = enumerate_paths(g, *parse_regex("(contact)*", kLabeled), 0);
  CHECK(star0.size() == 5);
  for (const auto& p : star0) CHECK(p.length() == 0);

  auto eq2 = enumerate_paths(g, *parse_regex("?person/contact/?infected", kLabeled), 3);
  REQUIRE(eq2.size() == 1);
  CHECK(path_key(g, eq2[0]) == PathKey{"n1", "e4", "n5"});
}

TEST_CASE("enumerate emits ascending and duplicate-free") {
  std::mt19937 rng(17);
  for (int i = 0; i < 30; ++i) {
    Graph g = gqe::testing::random_labeled_graph(rng, 6, 9);
    RegexPtr r = gqe::testing::random_regex(rng, 3, true);
    auto paths = enumerate_paths(g, *r, 4);
    for (std::size_t k = 1; k < paths.size(); ++k)
      CHECK(path_less(g, paths[k - 1], paths[k]));
  }
}

TEST_CASE("reachable_from") {
  Graph a = fixture("fig1a.json");
  CHECK(ids(a, reachable_from(a, *parse_regex("?person/contact/?infected", kLabeled))) ==
        std::set<std::string>{"n1"});
  CHECK(reachable_from(a, *parse_regex("?person/rides/?bus/rides^-/?infected",
                                       kLabeled))
            .empty());

  Graph f2 = fixture("fig2.json");
  CHECK(ids(f2, reachable_from(
                    f2, *parse_regex("?(f1=person)/(f1=rides)/?(f1=bus)/"
                                     "(f1=rides)^-/?(f1=infected)",
                                     f2.flavor_info()))) ==
        std::set<std::string>{"n3"});
}

TEST_CASE("pairs") {
  Graph g = fixture("fig1a.json");
  auto to_ids = [&](const std::vector<std::pair<int, int>>& ps) {
    std::set<std::pair<std::string, std::string>> out;
    for (auto [s, d] : ps) out.insert({g.node_id(s), g.node_id(d)});
    return out;
  };
  CHECK(to_ids(pairs(g, *parse_regex("?person/rides/?bus/rides^-/?person", kLabeled))) ==
        std::set<std::pair<std::string, std::string>>{
            {"n1", "n4"}, {"n4", "n1"}, {"n1", "n1"}, {"n4", "n4"}});
  CHECK(pairs(g, *parse_regex("?nosuchlabel", kLabeled)).empty());
  CHECK(to_ids(pairs(g, *parse_regex("?person", kLabeled))) ==
        std::set<std::pair<std::string, std::string>>{
            {"n1", "n1"}, {"n2", "n2"}, {"n4", "n4"}});
  // finite even with an unbounded conforming set
  RawGraph raw;
  raw.flavor = Flavor::Labeled;
  raw.nodes.push_back({"a", "p", {}, {}});
  raw.edges.push_back({"e", "a", "a", "l", {}, {}});
  Graph loop = Graph::from_raw(raw);
  CHECK(pairs(loop, *parse_regex("(l)*", kLabeled)).size() == 1);
}

TEST_CASE("semantic laws on the random corpus") {
  std::mt19937 rng(77);
  for (int i = 0; i < 60; ++i) {
    Graph g = gqe::testing::random_labeled_graph(rng, 6, 9);
    RegexPtr r1 = gqe::testing::random_regex(rng, 3, true);
    RegexPtr r2 = gqe::testing::random_regex(rng, 3, true);
    int k = std::uniform_int_distribution<int>(0, 4)(rng);

    auto union_got = keys_of(g, enumerate_paths(g, *RegexAst::alt(r1, r2), k));
    auto lhs = keys_of(g, enumerate_paths(g, *r1, k));
    auto rhs = keys_of(g, enumerate_paths(g, *r2, k));
    std::set<PathKey> union_expected = lhs;
    union_expected.insert(rhs.begin(), rhs.end());
    CHECK(union_got == union_expected);

    auto seq_got = keys_of(g, enumerate_paths(g, *RegexAst::seq(r1, r2), k));
    CHECK(seq_got == oracle_eval(g, *RegexAst::seq(r1, r2), k));

    auto star_got = keys_of(g, enumerate_paths(g, *RegexAst::star(r1), k));
    CHECK(star_got == oracle_eval(g, *RegexAst::star(r1), k));
  }
}

TEST_CASE("reachable_from equals enumeration at the pumping bound") {
  std::mt19937 rng(555);
  int usable = 0;
  for (int i = 0; i < 120 && usable < 40; ++i) {
    Graph g = gqe::testing::random_labeled_graph(rng, 5, 6);
    RegexPtr r = gqe::testing::random_regex(rng, 3, true);
    int bound = g.node_count() * compile(*r).state_count;
    PathEnumerator en(g, *r, bound);
    std::set<int> starts;
    bool complete = true;
    int emitted = 0;
    while (auto p = en.next()) {
      starts.insert(p->start());
      if (++emitted > 50000) {
        complete = false;
        break;
      }
    }
    if (!complete) continue;  // cyclic blowup; the bound is still sound
    ++usable;
    auto reach = reachable_from(g, *r);
    CHECK(std::set<int>(reach.begin(), reach.end()) == starts);
  }
  CHECK(usable >= 40);
}

TEST_CASE("enumeration delay stays flat") {
  // star over a dense graph: many answers; no emission gap may grow with
  // the output index (generous absolute bound, the contract is empirical)
  RawGraph raw;
  raw.flavor = Flavor::Labeled;
  for (int i = 0; i < 6; ++i)
    raw.nodes.push_back({"n" + std::to_string(i), "p", {}, {}});
  int e = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      raw.edges.push_back({"e" + std::to_string(e++), "n" + std::to_string(i),
                           "n" + std::to_string(j), "a", {}, {}});
  Graph g = Graph::from_raw(raw);
  PathEnumerator en(g, *parse_regex("((a))*", kLabeled), 5);
  int count = 0;
  auto last = std::chrono::steady_clock::now();
  double max_gap_ms = 0.0;
  while (auto p = en.next()) {
    auto now = std::chrono::steady_clock::now();
    max_gap_ms = std::max(
        max_gap_ms,
        std::chrono::duration<double, std::milli>(now - last).count());
    last = now;
    if (++count > 200000) break;
  }
  CHECK(count > 9000);
  CHECK(max_gap_ms < 50.0);
}

TEST_CASE("length guard") {
  Graph g = fixture("fig1a.json");
  RegexPtr r = parse_regex("?person", kLabeled);
  CHECK_THROWS_AS(enumerate_paths(g, *r, -1), ContractViolation);
  CountRequest req{&g, r, kMaxPathLength + 1, 0.1, 0, kDefaultCap};
  CHECK_THROWS_AS(count_exact(req), ContractViolation);
}
