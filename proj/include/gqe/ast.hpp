#pragma once

#include <memory>
#include <span>
#include <string>

#include "gqe/graph.hpp"

namespace gqe {

struct TestAst;
using TestPtr = std::shared_ptr<const TestAst>;

/// Boolean test over a single node or edge. Label applies to the Labeled and
/// Property flavors, PropEq to Property, FeatEq to Vector; Any matches every
/// object (artifact extension, written `_`).
struct TestAst {
  enum class Kind { Label, PropEq, FeatEq, Any, Not, And, Or };

  Kind kind;
  Atom atom;     // Label: the label; PropEq: the property name
  Atom value;    // PropEq / FeatEq comparison value
  int feature = 0;  // FeatEq index, 1-based
  TestPtr lhs, rhs;  // Not uses lhs only

  static TestPtr label(Atom l);
  static TestPtr prop_eq(Atom p, Atom v);
  static TestPtr feat_eq(int i, Atom v);
  static TestPtr any();
  static TestPtr negate(TestPtr t);
  static TestPtr conj(TestPtr a, TestPtr b);
  static TestPtr disj(TestPtr a, TestPtr b);
};

bool equal(const TestAst& a, const TestAst& b);

struct RegexAst;
using RegexPtr = std::shared_ptr<const RegexAst>;

/// Regular path expression:
///   NodeTest(?t) | Fwd(t) | Bwd(t^-) | Alt(r+r) | Seq(r/r) | Star((r)*).
/// Fwd/Bwd/NodeTest carry a test, never a sub-regex.
struct RegexAst {
  enum class Kind { NodeTest, Fwd, Bwd, Alt, Seq, Star };

  Kind kind;
  TestPtr test;       // NodeTest / Fwd / Bwd
  RegexPtr lhs, rhs;  // Alt / Seq; Star uses lhs only

  static RegexPtr node_test(TestPtr t);
  static RegexPtr fwd(TestPtr t);
  static RegexPtr bwd(TestPtr t);
  static RegexPtr alt(RegexPtr a, RegexPtr b);
  static RegexPtr seq(RegexPtr a, RegexPtr b);
  static RegexPtr star(RegexPtr r);
};

bool equal(const RegexAst& a, const RegexAst& b);

/// True when the regex contains no Star (the FO²-translatable fragment).
bool star_free(const RegexAst& r);

/// Test evaluation against graph objects. Throws FlavorError when the test
/// kind is illegal for the graph's flavor (the parser normally prevents
/// such trees from existing).
bool matches_node(const Graph& g, const TestAst& t, int node);
bool matches_edge(const Graph& g, const TestAst& t, int edge);

/// Test evaluation against a bare feature vector (GNN layer snapshots).
/// Only FeatEq/Any and boolean combinations are meaningful here.
bool matches_vector(const TestAst& t, std::span<const Atom> features);

}  // namespace gqe
