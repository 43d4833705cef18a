#include "gqe/ast.hpp"

namespace gqe {

TestPtr TestAst::label(Atom l) {
  return std::make_shared<TestAst>(TestAst{Kind::Label, std::move(l), "", 0, nullptr, nullptr});
}
TestPtr TestAst::prop_eq(Atom p, Atom v) {
  return std::make_shared<TestAst>(TestAst{Kind::PropEq, std::move(p), std::move(v), 0, nullptr, nullptr});
}
TestPtr TestAst::feat_eq(int i, Atom v) {
  return std::make_shared<TestAst>(TestAst{Kind::FeatEq, "", std::move(v), i, nullptr, nullptr});
}
TestPtr TestAst::any() {
  return std::make_shared<TestAst>(TestAst{Kind::Any, "", "", 0, nullptr, nullptr});
}
TestPtr TestAst::negate(TestPtr t) {
  return std::make_shared<TestAst>(TestAst{Kind::Not, "", "", 0, std::move(t), nullptr});
}
TestPtr TestAst::conj(TestPtr a, TestPtr b) {
  return std::make_shared<TestAst>(TestAst{Kind::And, "", "", 0, std::move(a), std::move(b)});
}
TestPtr TestAst::disj(TestPtr a, TestPtr b) {
  return std::make_shared<TestAst>(TestAst{Kind::Or, "", "", 0, std::move(a), std::move(b)});
}

bool equal(const TestAst& a, const TestAst& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case TestAst::Kind::Label: return a.atom == b.atom;
    case TestAst::Kind::PropEq: return a.atom == b.atom && a.value == b.value;
    case TestAst::Kind::FeatEq: return a.feature == b.feature && a.value == b.value;
    case TestAst::Kind::Any: return true;
    case TestAst::Kind::Not: return equal(*a.lhs, *b.lhs);
    case TestAst::Kind::And:
    case TestAst::Kind::Or:
      return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
  }
  return false;
}

RegexPtr RegexAst::node_test(TestPtr t) {
  return std::make_shared<RegexAst>(RegexAst{Kind::NodeTest, std::move(t), nullptr, nullptr});
}
RegexPtr RegexAst::fwd(TestPtr t) {
  return std::make_shared<RegexAst>(RegexAst{Kind::Fwd, std::move(t), nullptr, nullptr});
}
RegexPtr RegexAst::bwd(TestPtr t) {
  return std::make_shared<RegexAst>(RegexAst{Kind::Bwd, std::move(t), nullptr, nullptr});
}
RegexPtr RegexAst::alt(RegexPtr a, RegexPtr b) {
  return std::make_shared<RegexAst>(RegexAst{Kind::Alt, nullptr, std::move(a), std::move(b)});
}
RegexPtr RegexAst::seq(RegexPtr a, RegexPtr b) {
  return std::make_shared<RegexAst>(RegexAst{Kind::Seq, nullptr, std::move(a), std::move(b)});
}
RegexPtr RegexAst::star(RegexPtr r) {
  return std::make_shared<RegexAst>(RegexAst{Kind::Star, nullptr, std::move(r), nullptr});
}

bool equal(const RegexAst& a, const RegexAst& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case RegexAst::Kind::NodeTest:
    case RegexAst::Kind::Fwd:
    case RegexAst::Kind::Bwd:
      return equal(*a.test, *b.test);
    case RegexAst::Kind::Alt:
    case RegexAst::Kind::Seq:
      return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
    case RegexAst::Kind::Star:
      return equal(*a.lhs, *b.lhs);
  }
  return false;
}

bool star_free(const RegexAst& r) {
  switch (r.kind) {
    case RegexAst::Kind::Star: return false;
    case RegexAst::Kind::Alt:
    case RegexAst::Kind::Seq:
      return star_free(*r.lhs) && star_free(*r.rhs);
    default: return true;
  }
}

namespace {

// Shared structural recursion; `label`, `prop`, `feat` provide the object
// access for the three leaf kinds.
template <class LabelFn, class PropFn, class FeatFn>
bool eval_test(const TestAst& t, LabelFn&& label, PropFn&& prop, FeatFn&& feat) {
  switch (t.kind) {
    case TestAst::Kind::Label: return label(t.atom);
    case TestAst::Kind::PropEq: return prop(t.atom, t.value);
    case TestAst::Kind::FeatEq: return feat(t.feature, t.value);
    case TestAst::Kind::Any: return true;
    case TestAst::Kind::Not: return !eval_test(*t.lhs, label, prop, feat);
    case TestAst::Kind::And:
      return eval_test(*t.lhs, label, prop, feat) &&
             eval_test(*t.rhs, label, prop, feat);
    case TestAst::Kind::Or:
      return eval_test(*t.lhs, label, prop, feat) ||
             eval_test(*t.rhs, label, prop, feat);
  }
  return false;
}

bool matches_object(const Graph& g, const TestAst& t, const Atom& label,
                    const PropMap& props, std::span<const Atom> features) {
  return eval_test(
      t,
      [&](const Atom& l) {
        if (g.flavor() == Flavor::Vector)
          throw FlavorError("label test on a vector-labeled graph");
        return label == l;
      },
      [&](const Atom& p, const Atom& v) {
        if (g.flavor() != Flavor::Property)
          throw FlavorError("property test on a non-property graph");
        auto it = props.find(p);
        return it != props.end() && it->second == v;
      },
      [&](int i, const Atom& v) {
        if (g.flavor() != Flavor::Vector)
          throw FlavorError("feature test on a non-vector graph");
        if (i < 1 || i > static_cast<int>(features.size()))
          throw FlavorError("feature index out of range");
        return features[i - 1] == v;
      });
}

}  // namespace

bool matches_node(const Graph& g, const TestAst& t, int node) {
  return matches_object(g, t, g.node_label(node), g.node_props(node),
                        g.node_features(node));
}

bool matches_edge(const Graph& g, const TestAst& t, int edge) {
  return matches_object(g, t, g.edge_label(edge), g.edge_props(edge),
                        g.edge_features(edge));
}

bool matches_vector(const TestAst& t, std::span<const Atom> features) {
  return eval_test(
      t,
      [&](const Atom&) -> bool {
        throw FlavorError("label test on a feature vector");
      },
      [&](const Atom&, const Atom&) -> bool {
        throw FlavorError("property test on a feature vector");
      },
      [&](int i, const Atom& v) {
        if (i < 1 || i > static_cast<int>(features.size()))
          throw FlavorError("feature index out of range");
        return features[i - 1] == v;
      });
}

}  // namespace gqe
