#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gqe/analytics.hpp"
#include "gqe/dispatch.hpp"
#include "gqe/engine.hpp"
#include "gqe/gnn.hpp"
#include "gqe/graph_io.hpp"
#include "gqe/logic.hpp"
#include "gqe/parser.hpp"
#include "gqe/printer.hpp"
#include "gqe/wl.hpp"
#include "gqe/xai.hpp"

namespace {

using gqe::Graph;
using ordered_json = nlohmann::ordered_json;

struct Output {
  std::string format = "json";  // json | tsv

  void emit(const ordered_json& j) const {
    if (format == "json") {
      std::cout << j.dump() << "\n";
      return;
    }
    // tsv: flatten values in insertion order
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      (void)key;
      if (!first) std::cout << '\t';
      first = false;
      if (value.is_string())
        std::cout << value.get<std::string>();
      else
        std::cout << value.dump();
    }
    std::cout << "\n";
  }
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("GQE_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 0;
}

ordered_json path_json(const Graph& g, const gqe::Path& p) {
  ordered_json j;
  j["nodes"] = ordered_json::array();
  j["edges"] = ordered_json::array();
  for (int n : p.nodes) j["nodes"].push_back(g.node_id(n));
  for (int e : p.edges) j["edges"].push_back(g.edge_id(e));
  return j;
}

gqe::Assignment parse_assignment(const std::string& text) {
  gqe::Assignment out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw gqe::ContractViolation("assignments look like x=1,y=0");
    std::string var = item.substr(0, eq);
    std::string val = item.substr(eq + 1);
    if (val != "0" && val != "1")
      throw gqe::ContractViolation("assignments are 0/1");
    out[var] = val == "1" ? 1 : 0;
  }
  return out;
}

ordered_json assignment_json(const gqe::Assignment& a) {
  ordered_json j = ordered_json::object();
  for (const auto& [var, value] : a) j[var] = value;
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gqe::Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void dump_dot(const std::string& path, const Graph& g, const gqe::RegexAst& r) {
  std::ofstream out(path);
  if (!out) throw gqe::Error("cannot write " + path);
  gqe::PathAutomaton a = gqe::compile(r);
  out << gqe::to_dot(a);
  out << gqe::to_dot(g, gqe::build_nfa_product(g, a));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gqe: regular path queries, counting/sampling, centrality, "
               "GNN and two-variable logic evaluation, decision-model queries"};
  app.require_subcommand(1);
  Output out;
  app.add_option("--format", out.format, "json (default) or tsv")
      ->check(CLI::IsMember({"json", "tsv"}));

  std::string graph_file, query, test, model_file, out_file, formula,
      formula_file, from_regex, rdf_file, dot_file, xai_op, instance_arg,
      partial_arg, feature, mode = "subset", node_id;
  int max_len = 0, len = 0, rounds = 0, draws = 1, target = 1;
  double epsilon = 0.1;
  std::uint64_t seed = default_seed();
  std::size_t cap = gqe::kDefaultCap;
  bool approx = false, all_nodes = false, trace = false, print_formula = false,
       to_vector = false, to_property = false;

  auto add_graph = [&](CLI::App* cmd) {
    cmd->add_option("-g,--graph", graph_file, "graph JSON file")->required();
  };

  CLI::App* validate_cmd = app.add_subcommand("validate", "check graph invariants");
  add_graph(validate_cmd);

  CLI::App* nodes_cmd = app.add_subcommand("nodes", "select nodes by test");
  add_graph(nodes_cmd);
  nodes_cmd->add_option("-t,--test", test, "test expression")->required();

  CLI::App* paths_cmd = app.add_subcommand("paths", "enumerate conforming paths");
  add_graph(paths_cmd);
  paths_cmd->add_option("-q,--query", query, "path regex")->required();
  paths_cmd->add_option("--max-len", max_len, "maximum path length")->required();
  paths_cmd->add_option("--dot", dot_file, "dump automaton+product DOT");

  CLI::App* reach_cmd = app.add_subcommand("reach", "nodes starting a conforming path");
  add_graph(reach_cmd);
  reach_cmd->add_option("-q,--query", query, "path regex")->required();

  CLI::App* pairs_cmd = app.add_subcommand("pairs", "start/end pairs of conforming paths");
  add_graph(pairs_cmd);
  pairs_cmd->add_option("-q,--query", query, "path regex")->required();

  CLI::App* count_cmd = app.add_subcommand("count", "count length-k conforming paths");
  add_graph(count_cmd);
  count_cmd->add_option("-q,--query", query, "path regex")->required();
  count_cmd->add_option("--len", len, "exact path length k")->required();
  count_cmd->add_flag("--approx", approx, "randomized estimator");
  count_cmd->add_option("--epsilon", epsilon, "target relative error");
  count_cmd->add_option("--seed", seed, "rng seed");
  count_cmd->add_option("--cap", cap, "determinization vertex cap");
  count_cmd->add_option("--dot", dot_file, "dump automaton+product DOT");

  CLI::App* sample_cmd = app.add_subcommand("sample", "draw uniform conforming paths");
  add_graph(sample_cmd);
  sample_cmd->add_option("-q,--query", query, "path regex")->required();
  sample_cmd->add_option("--len", len, "exact path length k")->required();
  sample_cmd->add_option("-n,--draws", draws, "number of draws");
  sample_cmd->add_option("--seed", seed, "rng seed");
  sample_cmd->add_option("--cap", cap, "determinization vertex cap");

  CLI::App* cent_cmd = app.add_subcommand("centrality", "betweenness centrality");
  add_graph(cent_cmd);
  cent_cmd->add_option("-x,--node", node_id, "node id (omit with --all)");
  cent_cmd->add_flag("--all", all_nodes, "all nodes, sorted by value");
  cent_cmd->add_option("-q,--query", query, "restrict to regex-conforming paths");
  cent_cmd->add_flag("--approx", approx, "randomized per-pair counts");
  cent_cmd->add_option("--epsilon", epsilon, "target relative error");
  cent_cmd->add_option("--seed", seed, "rng seed");
  cent_cmd->add_option("--cap", cap, "determinization vertex cap");

  CLI::App* gnn_cmd = app.add_subcommand("gnn", "evaluate an aggregate-combine model");
  add_graph(gnn_cmd);
  gnn_cmd->add_option("-m,--model", model_file, "model JSON file")->required();
  gnn_cmd->add_flag("--trace", trace, "emit per-layer snapshots");

  CLI::App* wl_cmd = app.add_subcommand("wl", "Weisfeiler-Lehman color refinement");
  add_graph(wl_cmd);
  wl_cmd->add_option("--rounds", rounds, "refinement rounds")->required();

  CLI::App* fo2_cmd = app.add_subcommand("fo2", "two-variable logic queries");
  add_graph(fo2_cmd);
  fo2_cmd->add_option("-f,--formula", formula, "formula text");
  fo2_cmd->add_option("--formula-file", formula_file, "one formula per line");
  fo2_cmd->add_option("--from-regex", from_regex, "translate a star-free regex");
  fo2_cmd->add_flag("--print-formula", print_formula, "print the translation");

  CLI::App* xai_cmd = app.add_subcommand("xai", "decision-model queries");
  xai_cmd->add_option("-m,--model", model_file, "decision model JSON (graph + root)")
      ->required();
  xai_cmd->add_option("--op", xai_op,
                      "classify|exists|suffreason|minreason|allminreasons|bias")
      ->required();
  xai_cmd->add_option("--instance", instance_arg, "total instance, e.g. x=1,y=0");
  xai_cmd->add_option("--partial", partial_arg, "partial instance");
  xai_cmd->add_option("--target", target, "target class (default 1)");
  xai_cmd->add_option("--mode", mode, "subset (default) or cardinality");
  xai_cmd->add_option("--feature", feature, "protected feature for bias");

  CLI::App* convert_cmd = app.add_subcommand("convert", "model conversions");
  convert_cmd->add_option("-g,--graph", graph_file, "input graph JSON");
  convert_cmd->add_flag("--to-vector", to_vector, "property -> vector-labeled");
  convert_cmd->add_flag("--to-property", to_property, "vector-labeled -> property");
  convert_cmd->add_option("--from-rdf", rdf_file, "N-Triples file -> labeled graph");
  convert_cmd->add_option("-o,--out", out_file, "output graph JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(validate_cmd)) {
      gqe::RawGraph raw = gqe::graph_from_json(read_file(graph_file));
      if (auto violation = gqe::validate(raw)) {
        out.emit({{"ok", false}, {"violation", *violation}});
        return 1;
      }
      out.emit({{"ok", true}});
      return 0;
    }

    if (app.got_subcommand(xai_cmd)) {
      const std::string text = read_file(model_file);
      gqe::RawGraph raw = gqe::graph_from_json(text);
      std::string root = nlohmann::json::parse(text).at("root").get<std::string>();
      gqe::DecisionModel m =
          gqe::DecisionModel::from_graph(Graph::from_raw(raw), root);
      gqe::Assignment instance = parse_assignment(instance_arg);
      gqe::Assignment partial = parse_assignment(partial_arg);
      if (xai_op == "classify") {
        out.emit({{"class", gqe::classify_instance(m, instance)}});
      } else if (xai_op == "exists") {
        auto witness = gqe::exists_instance(m, target, partial);
        ordered_json j{{"exists", witness.has_value()}};
        if (witness) j["witness"] = assignment_json(*witness);
        out.emit(j);
      } else if (xai_op == "suffreason") {
        out.emit({{"sufficient", gqe::is_sufficient_reason(m, partial, target)}});
      } else if (xai_op == "minreason") {
        auto reason = gqe::minimal_sufficient_reason(
            m, instance,
            mode == "cardinality" ? gqe::ReasonMode::MinimumCardinality
                                  : gqe::ReasonMode::SubsetMinimal);
        out.emit({{"reason", assignment_json(reason)}});
      } else if (xai_op == "allminreasons") {
        ordered_json arr = ordered_json::array();
        for (const auto& r : gqe::all_minimal_sufficient_reasons(m, target))
          arr.push_back(assignment_json(r));
        out.emit({{"reasons", arr}});
      } else if (xai_op == "bias") {
        auto w = gqe::is_biased(m, feature);
        ordered_json j{{"biased", w.biased}};
        if (w.biased) {
          j["witness"] = ordered_json::array(
              {assignment_json(w.one), assignment_json(w.other)});
        }
        out.emit(j);
      } else {
        std::cerr << "{\"error\":\"unknown xai op\"}\n";
        return 2;
      }
      return 0;
    }

    if (app.got_subcommand(convert_cmd)) {
      if (!rdf_file.empty()) {
        gqe::save_graph_file(gqe::import_rdf(gqe::load_ntriples_file(rdf_file)),
                             out_file);
      } else if (to_vector) {
        Graph g = gqe::load_graph_file(graph_file);
        auto [vg, columns] = gqe::to_vector_labeled(g);
        gqe::save_graph_file(vg, out_file);
        ordered_json j{{"columns", columns}};
        out.emit(j);
      } else if (to_property) {
        Graph g = gqe::load_graph_file(graph_file);
        std::vector<gqe::Atom> columns{"label"};
        for (int i = 2; i <= g.dimension(); ++i)
          columns.push_back("p" + std::to_string(i));
        gqe::save_graph_file(gqe::from_vector_labeled(g, columns), out_file);
      } else {
        std::cerr << "{\"error\":\"pick --to-vector, --to-property, or --from-rdf\"}\n";
        return 2;
      }
      return 0;
    }

    Graph g = gqe::load_graph_file(graph_file);

    if (app.got_subcommand(nodes_cmd)) {
      gqe::TestPtr t = gqe::parse_test(test, g.flavor_info());
      for (int n : gqe::select_nodes(g, *t)) out.emit({{"node", g.node_id(n)}});
      return 0;
    }

    if (app.got_subcommand(paths_cmd)) {
      gqe::RegexPtr r = gqe::parse_regex(query, g.flavor_info());
      if (!dot_file.empty()) dump_dot(dot_file, g, *r);
      gqe::PathEnumerator en(g, *r, max_len);
      while (auto p = en.next()) out.emit(path_json(g, *p));
      return 0;
    }

    if (app.got_subcommand(reach_cmd)) {
      gqe::RegexPtr r = gqe::parse_regex(query, g.flavor_info());
      std::vector<std::string> ids;
      for (int n : gqe::reachable_from(g, *r)) ids.push_back(g.node_id(n));
      std::sort(ids.begin(), ids.end());
      for (const auto& id : ids) out.emit({{"node", id}});
      return 0;
    }

    if (app.got_subcommand(pairs_cmd)) {
      gqe::RegexPtr r = gqe::parse_regex(query, g.flavor_info());
      std::vector<std::pair<std::string, std::string>> ids;
      for (auto [a, b] : gqe::pairs(g, *r))
        ids.emplace_back(g.node_id(a), g.node_id(b));
      std::sort(ids.begin(), ids.end());
      for (const auto& [a, b] : ids) out.emit({{"src", a}, {"dst", b}});
      return 0;
    }

    if (app.got_subcommand(count_cmd)) {
      gqe::RegexPtr r = gqe::parse_regex(query, g.flavor_info());
      if (!dot_file.empty()) dump_dot(dot_file, g, *r);
      gqe::CountRequest req{&g, r, len, epsilon, seed, cap};
      if (approx) {
        gqe::ApproxCount est = gqe::count_approx(req);
        out.emit({{"estimate", est.estimate},
                  {"samples", est.samples},
                  {"epsilon", est.epsilon}});
      } else {
        out.emit({{"exact", gqe::count_exact(req)}});
      }
      return 0;
    }

    if (app.got_subcommand(sample_cmd)) {
      gqe::RegexPtr r = gqe::parse_regex(query, g.flavor_info());
      gqe::PathSampler sampler(g, *r, len, seed, cap);
      for (int i = 0; i < draws; ++i) out.emit(path_json(g, sampler.draw()));
      return 0;
    }

    if (app.got_subcommand(cent_cmd)) {
      gqe::RegexPtr r;
      if (!query.empty()) r = gqe::parse_regex(query, g.flavor_info());
      auto value_of = [&](int x) {
        if (!r) return gqe::bc(g, x);
        if (approx) return gqe::bc_r_approx(g, x, *r, epsilon, seed);
        return gqe::bc_r(g, x, *r, cap);
      };
      if (all_nodes) {
        std::vector<std::pair<std::string, double>> rows;
        if (!r && !approx) {
          auto values = gqe::bc_all(g);
          for (int n = 0; n < g.node_count(); ++n)
            rows.emplace_back(g.node_id(n), values[n]);
        } else if (r && !approx) {
          auto values = gqe::bc_r_all(g, *r, cap);
          for (int n = 0; n < g.node_count(); ++n)
            rows.emplace_back(g.node_id(n), values[n]);
        } else {
          for (int n = 0; n < g.node_count(); ++n)
            rows.emplace_back(g.node_id(n), value_of(n));
        }
        std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
          if (a.second != b.second) return a.second > b.second;
          return a.first < b.first;
        });
        for (const auto& [id, v] : rows) out.emit({{"node", id}, {"bc", v}});
        return 0;
      }
      int x = g.node_index(node_id);
      if (x == -1) throw gqe::ContractViolation("unknown node id " + node_id);
      out.emit({{"node", node_id}, {"bc", value_of(x)}});
      return 0;
    }

    if (app.got_subcommand(gnn_cmd)) {
      gqe::Gnn model = gqe::load_gnn_file(model_file);
      if (trace) {
        auto snaps = gqe::run_layers(g, model);
        for (std::size_t layer = 0; layer < snaps.size(); ++layer) {
          ordered_json features = ordered_json::object();
          for (int n : g.nodes_by_id()) {
            ordered_json vec = ordered_json::array();
            for (const auto& a : snaps[layer][n]) {
              if (a == gqe::kBottom)
                vec.push_back(nullptr);
              else
                vec.push_back(a);
            }
            features[g.node_id(n)] = vec;
          }
          out.emit({{"layer", layer}, {"features", features}});
        }
      }
      ordered_json ids = ordered_json::array();
      for (int n : gqe::classify(g, model)) ids.push_back(g.node_id(n));
      out.emit({{"true", ids}});
      return 0;
    }

    if (app.got_subcommand(wl_cmd)) {
      auto colors = gqe::wl_colors(g, rounds);
      for (std::size_t round = 0; round < colors.size(); ++round) {
        ordered_json by_node = ordered_json::object();
        for (int n : g.nodes_by_id()) by_node[g.node_id(n)] = colors[round][n];
        out.emit({{"round", round}, {"colors", by_node}});
      }
      return 0;
    }

    if (app.got_subcommand(fo2_cmd)) {
      std::vector<std::string> formulas;
      if (!formula.empty()) formulas.push_back(formula);
      if (!formula_file.empty()) {
        std::istringstream in(read_file(formula_file));
        std::string line;
        while (std::getline(in, line))
          if (!line.empty()) formulas.push_back(line);
      }
      if (!from_regex.empty()) {
        gqe::RegexPtr r = gqe::parse_regex(from_regex, g.flavor_info());
        gqe::FormulaPtr f = gqe::regex_to_fo2(*r);
        if (print_formula) out.emit({{"formula", gqe::to_string(*f)}});
        formulas.push_back(gqe::to_string(*f));
      }
      if (formulas.empty()) {
        std::cerr << "{\"error\":\"no formula given\"}\n";
        return 2;
      }
      for (const auto& text : formulas) {
        gqe::FormulaPtr f = gqe::parse_formula(text, g.flavor_info());
        gqe::EvalResult r = gqe::eval(g, *f);
        if (r.arity == 0) {
          out.emit({{"value", r.value}});
        } else if (r.arity == 1) {
          ordered_json ids = ordered_json::array();
          std::vector<std::string> sorted;
          for (int n = 0; n < g.node_count(); ++n)
            if (r.set[n]) sorted.push_back(g.node_id(n));
          std::sort(sorted.begin(), sorted.end());
          for (const auto& id : sorted) ids.push_back(id);
          out.emit({{"var", r.var}, {"nodes", ids}});
        } else {
          std::vector<std::pair<std::string, std::string>> rows;
          int n = g.node_count();
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              if (r.rel[static_cast<std::size_t>(i) * n + j])
                rows.emplace_back(g.node_id(i), g.node_id(j));
          std::sort(rows.begin(), rows.end());
          for (const auto& [a, b] : rows) out.emit({{"x", a}, {"y", b}});
        }
      }
      return 0;
    }

    std::cerr << "{\"error\":\"no subcommand\"}\n";
    return 2;
  } catch (const gqe::Error& e) {
    std::cerr << ordered_json{{"error", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << ordered_json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
}
