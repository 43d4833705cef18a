#include "gqe/gnn.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gqe/parser.hpp"
#include "omp_util.hpp"

namespace gqe {

namespace {

using nlohmann::json;

std::vector<std::vector<double>> matrix_from_json(const json& j, int d,
                                                  const char* name) {
  std::vector<std::vector<double>> m;
  for (const auto& row : j) m.push_back(row.get<std::vector<double>>());
  if (static_cast<int>(m.size()) != d)
    throw ParseError(std::string(name) + " must be dimension x dimension", 0);
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != d)
      throw ParseError(std::string(name) + " must be dimension x dimension", 0);
  return m;
}

double numeric(const Atom& a) {
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(a, &used);
  } catch (const std::exception&) {
    throw ContractViolation("non-numeric feature \"" + a + "\" under a linear layer");
  }
  if (used != a.size())
    throw ContractViolation("non-numeric feature \"" + a + "\" under a linear layer");
  return v;
}

Atom format_numeric(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Incident (edge, neighbor) pairs for the rule scope; neighbor NODES are
// deduplicated when no edge condition is involved, matching the multiset
// the aggregate sees.
bool rule_fires(const Graph& g, const Gnn& gnn, const GnnRule& rule,
                const FeatureSnapshot& snap, int u) {
  if (!matches_vector(*rule.self_cond, snap[u])) return false;
  RuleScope scope =
      gnn.direction == Direction::Undirected ? RuleScope::Both : rule.scope;
  if (rule.edge_cond) {
    auto try_edges = [&](const std::vector<int>& edges, bool outgoing) {
      for (int e : edges) {
        auto [s, d] = g.endpoints(e);
        int v = outgoing ? d : s;
        if (matches_vector(*rule.edge_cond, g.edge_features(e)) &&
            matches_vector(*rule.neighbor_cond, snap[v]))
          return true;
      }
      return false;
    };
    if (scope != RuleScope::In && try_edges(g.out_edges(u), true)) return true;
    if (scope != RuleScope::Out && try_edges(g.in_edges(u), false)) return true;
    return false;
  }
  auto try_nodes = [&](auto&& nodes) {
    for (int v : nodes)
      if (matches_vector(*rule.neighbor_cond, snap[v])) return true;
    return false;
  };
  switch (scope) {
    case RuleScope::Both:
      return try_nodes(g.neighbors(u));
    case RuleScope::Out: {
      std::set<int> succ;
      for (int e : g.out_edges(u)) succ.insert(g.endpoints(e).second);
      return try_nodes(succ);
    }
    case RuleScope::In: {
      std::set<int> pred;
      for (int e : g.in_edges(u)) pred.insert(g.endpoints(e).first);
      return try_nodes(pred);
    }
  }
  return false;
}

std::vector<Atom> apply_rule_layer(const Graph& g, const Gnn& gnn,
                                   const GnnLayer& layer,
                                   const FeatureSnapshot& snap, int u) {
  for (const auto& rule : layer.rules) {
    if (rule_fires(g, gnn, rule, snap, u)) {
      std::vector<Atom> out = snap[u];
      out[rule.feature - 1] = rule.value;
      return out;
    }
  }
  return snap[u];
}

std::vector<Atom> apply_linear_layer(const Graph& g, const GnnLayer& layer,
                                     const FeatureSnapshot& snap, int u) {
  int d = static_cast<int>(snap[u].size());
  std::vector<double> self(d), agg(d, 0.0);
  for (int i = 0; i < d; ++i) self[i] = numeric(snap[u][i]);
  for (int v : g.neighbors(u))
    for (int i = 0; i < d; ++i) agg[i] += numeric(snap[v][i]);
  std::vector<Atom> out(d);
  for (int i = 0; i < d; ++i) {
    double acc = layer.linear.bias[i];
    for (int j = 0; j < d; ++j)
      acc += layer.linear.a[i][j] * self[j] + layer.linear.b[i][j] * agg[j];
    // truncated ReLU
    acc = std::min(1.0, std::max(0.0, acc));
    out[i] = format_numeric(acc);
  }
  return out;
}

}  // namespace

Gnn gnn_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("bad JSON: ") + e.what(), e.byte);
  }
  Gnn gnn;
  try {
    gnn.dimension = j.at("dimension").get<int>();
    FlavorInfo fl{Flavor::Vector, gnn.dimension};
    if (j.contains("direction"))
      gnn.direction = j["direction"] == "directed" ? Direction::Directed
                                                   : Direction::Undirected;
    gnn.edge_features = j.value("edge_features", false);
    for (const auto& jl : j.at("layers")) {
      GnnLayer layer;
      std::string kind = jl.at("kind").get<std::string>();
      if (kind == "rule") {
        layer.kind = GnnLayer::Kind::Rule;
        for (const auto& jr : jl.at("rules")) {
          GnnRule rule;
          rule.self_cond = parse_test(jr.at("self").get<std::string>(), fl);
          rule.neighbor_cond =
              parse_test(jr.at("neighbor").get<std::string>(), fl);
          if (jr.contains("edge")) {
            if (!gnn.edge_features)
              throw ParseError("edge condition requires edge_features", 0);
            rule.edge_cond = parse_test(jr["edge"].get<std::string>(), fl);
          }
          if (jr.contains("scope")) {
            std::string scope = jr["scope"].get<std::string>();
            rule.scope = scope == "out"  ? RuleScope::Out
                         : scope == "in" ? RuleScope::In
                                         : RuleScope::Both;
          }
          rule.feature = jr.at("set").at(0).get<int>();
          if (rule.feature < 1 || rule.feature > gnn.dimension)
            throw ParseError("rule sets a feature outside the dimension", 0);
          rule.value = jr.at("set").at(1).get<std::string>();
          layer.rules.push_back(std::move(rule));
        }
      } else if (kind == "linear") {
        layer.kind = GnnLayer::Kind::Linear;
        layer.linear.a = matrix_from_json(jl.at("A"), gnn.dimension, "A");
        layer.linear.b = matrix_from_json(jl.at("B"), gnn.dimension, "B");
        layer.linear.bias = jl.at("b").get<std::vector<double>>();
        if (static_cast<int>(layer.linear.bias.size()) != gnn.dimension)
          throw ParseError("b must have one entry per dimension", 0);
      } else {
        throw ParseError("unknown layer kind \"" + kind + "\"", 0);
      }
      gnn.layers.push_back(std::move(layer));
    }
    const auto& jc = j.at("csl");
    if (jc.contains("test")) {
      gnn.csl = parse_test(jc["test"].get<std::string>(), fl);
    } else {
      gnn.csl = TestAst::feat_eq(jc.at("feature").get<int>(),
                                 jc.at("equals").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad model JSON: ") + e.what(), 0);
  }
  if (gnn.layers.empty()) throw ParseError("model needs at least one layer", 0);
  return gnn;
}

Gnn load_gnn_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return gnn_from_json(ss.str());
}

std::vector<FeatureSnapshot> run_layers(const Graph& g, const Gnn& gnn) {
  if (g.flavor() != Flavor::Vector)
    throw ContractViolation("GNN evaluation needs a vector-labeled graph");
  if (g.dimension() != gnn.dimension)
    throw ContractViolation("model dimension " + std::to_string(gnn.dimension) +
                            " does not match graph dimension " +
                            std::to_string(g.dimension()));
  std::vector<FeatureSnapshot> snaps;
  FeatureSnapshot inputs(g.node_count());
  for (int n = 0; n < g.node_count(); ++n) {
    auto f = g.node_features(n);
    inputs[n].assign(f.begin(), f.end());
  }
  snaps.push_back(std::move(inputs));
  for (const auto& layer : gnn.layers) {
    const FeatureSnapshot& prev = snaps.back();
    FeatureSnapshot next(g.node_count());
    detail::parallel_for(g.node_count(), [&](int u) {
      next[u] = layer.kind == GnnLayer::Kind::Rule
                    ? apply_rule_layer(g, gnn, layer, prev, u)
                    : apply_linear_layer(g, layer, prev, u);
    });
    snaps.push_back(std::move(next));
  }
  return snaps;
}

std::vector<int> classify(const Graph& g, const Gnn& gnn) {
  auto snaps = run_layers(g, gnn);
  const FeatureSnapshot& last = snaps.back();
  std::vector<int> out;
  for (int n = 0; n < g.node_count(); ++n)
    if (matches_vector(*gnn.csl, last[n])) out.push_back(n);
  return out;
}

}  // namespace gqe
