#include <doctest.h>

#include <functional>

#include "gqe/parser.hpp"
#include "gqe/printer.hpp"
#include "support/oracle.hpp"

using namespace gqe;

namespace {

const FlavorInfo kLabeled{Flavor::Labeled, 0};
const FlavorInfo kProperty{Flavor::Property, 0};
const FlavorInfo kVector6{Flavor::Vector, 6};

}  // namespace

TEST_CASE("parsing the printed expressions") {
  RegexPtr r = parse_regex("?person/contact/?infected", kLabeled);
  RegexPtr expected = RegexAst::seq(
      RegexAst::seq(RegexAst::node_test(TestAst::label("person")),
                    RegexAst::fwd(TestAst::label("contact"))),
      RegexAst::node_test(TestAst::label("infected")));
  CHECK(equal(*r, *expected));

  RegexPtr pg =
      parse_regex("?person/(contact & date=\"3/4/21\")/?infected", kProperty);
  RegexPtr pg_expected = RegexAst::seq(
      RegexAst::seq(RegexAst::node_test(TestAst::label("person")),
                    RegexAst::fwd(TestAst::conj(
                        TestAst::label("contact"),
                        TestAst::prop_eq("date", "3/4/21")))),
      RegexAst::node_test(TestAst::label("infected")));
  CHECK(equal(*pg, *pg_expected));

  RegexPtr inv = parse_regex("?person/rides/?bus/rides^-/?person", kLabeled);
  int bwd_count = 0;
  std::function<void(const RegexAst&)> walk = [&](const RegexAst& node) {
    if (node.kind == RegexAst::Kind::Bwd) ++bwd_count;
    if (node.lhs) walk(*node.lhs);
    if (node.rhs) walk(*node.rhs);
  };
  walk(*inv);
  CHECK(bwd_count == 1);

  RegexPtr star = parse_regex("((lives+contact))*", kLabeled);
  RegexPtr star_expected = RegexAst::star(RegexAst::alt(
      RegexAst::fwd(TestAst::label("lives")), RegexAst::fwd(TestAst::label("contact"))));
  CHECK(equal(*star, *star_expected));
}

TEST_CASE("feature tests parse with flavor gating") {
  RegexPtr r = parse_regex(
      "?(f1=person)/(f1=contact & f5=\"3/4/21\")/?(f1=infected)", kVector6);
  CHECK(r->kind == RegexAst::Kind::Seq);
  // the infection-propagation expression with a starred group
  CHECK_NOTHROW(parse_regex(
      "?infected/rides/?bus/rides^-/((?person/(lives+contact)))*/?person",
      kLabeled));
}

TEST_CASE("printing") {
  RegexPtr r = parse_regex("?person/contact/?infected", kLabeled);
  CHECK(to_string(*r) == "?person/contact/?infected");
  CHECK(to_string(*RegexAst::node_test(TestAst::any())) == "?_");
  // minimal parentheses keep structure
  RegexPtr nested = RegexAst::alt(
      RegexAst::fwd(TestAst::label("a")),
      RegexAst::alt(RegexAst::fwd(TestAst::label("b")),
                    RegexAst::fwd(TestAst::label("c"))));
  RegexPtr reparsed = parse_regex(to_string(*nested), kLabeled);
  CHECK(equal(*nested, *reparsed));
}

TEST_CASE("round-trip over random asts") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    RegexPtr ast = gqe::testing::random_regex(rng, 6, true);
    std::string printed = to_string(*ast);
    RegexPtr back = parse_regex(printed, kLabeled);
    REQUIRE_MESSAGE(equal(*ast, *back), "failed on: ", printed);
  }
}

TEST_CASE("negative corpus") {
  const char* bad[] = {
      "a/",             // dangling concatenation
      "(a/b)^-",        // inverse on a group
      "(a",             // unmatched paren
      "a)",             // unmatched paren
      "⊥",         // bottom literal as label
      "p=\"⊥\"",   // bottom literal as value (property flavor below)
      "a*",             // star on a bare atom
      "?person*",       // star on a node test
      "a+",             // dangling alternation
      "/a",             // leading concatenation
      "a^",             // incomplete inverse
      "a^-^-",          // doubled inverse
      "()",             // empty group
      "?*",             // star on nothing
      "",               // empty input
      "!",              // bare negation
      "a b",            // juxtaposition
      "(a))",           // extra paren
      "a=\"x",          // unterminated quote
      "(a)^-*",         // star after inverse without a group
  };
  int rejected = 0;
  for (const char* text : bad) {
    FlavorInfo flavor =
        std::string(text).find('=') != std::string::npos ? kProperty : kLabeled;
    try {
      parse_regex(text, flavor);
      FAIL_CHECK("accepted: ", text);
    } catch (const ParseError&) {
      ++rejected;
    }
  }
  CHECK(rejected == 20);
}

TEST_CASE("flavor gating errors") {
  CHECK_THROWS_WITH_AS(parse_regex("f1=x", kLabeled),
                       doctest::Contains("feature test on a labeled graph"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_regex("p=v", kLabeled),
                       doctest::Contains("property test on a labeled graph"),
                       ParseError);
  CHECK_THROWS_AS(parse_regex("person", FlavorInfo{Flavor::Vector, 2}),
                  ParseError);
  CHECK_THROWS_AS(parse_regex("p=v", FlavorInfo{Flavor::Vector, 2}), ParseError);
  CHECK_THROWS_WITH_AS(parse_regex("f7=x", kVector6),
                       doctest::Contains("exceeds dimension"), ParseError);
  CHECK_THROWS_WITH_AS(parse_regex("f0=x", FlavorInfo{Flavor::Vector, 2}),
                       doctest::Contains("at least 1"), ParseError);
  // PropEq parses on property graphs even when it looks like a feature name
  RegexPtr r = parse_regex("f1=x", kProperty);
  CHECK(r->test->kind == TestAst::Kind::PropEq);
}

TEST_CASE("parse errors carry byte offsets") {
  try {
    parse_regex("?person/(contact", kLabeled);
    FAIL("expected failure");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 16);
  }
}

TEST_CASE("quoted atoms with escapes") {
  RegexPtr r = parse_regex("p=\"a\\\"b\\\\c\"", kProperty);
  CHECK(r->test->value == "a\"b\\c");
  RegexPtr back = parse_regex(to_string(*r), kProperty);
  CHECK(equal(*r, *back));
}
