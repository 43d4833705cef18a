#include "gqe/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gqe {

using ordered_json = nlohmann::ordered_json;

namespace {

Flavor flavor_from_string(const std::string& s) {
  if (s == "labeled") return Flavor::Labeled;
  if (s == "property") return Flavor::Property;
  if (s == "vector") return Flavor::Vector;
  throw ParseError("unknown graph model \"" + s + "\"", 0);
}

std::string flavor_to_string(Flavor f) {
  switch (f) {
    case Flavor::Labeled: return "labeled";
    case Flavor::Property: return "property";
    case Flavor::Vector: return "vector";
  }
  return "";
}

std::vector<Atom> features_from_json(const ordered_json& arr) {
  std::vector<Atom> out;
  for (const auto& v : arr)
    out.push_back(v.is_null() ? kBottom : v.get<std::string>());
  return out;
}

ordered_json features_to_json(std::span<const Atom> feats) {
  ordered_json arr = ordered_json::array();
  for (const auto& f : feats) {
    if (f == kBottom)
      arr.push_back(nullptr);
    else
      arr.push_back(f);
  }
  return arr;
}

void fill_object(const ordered_json& j, RawObject& o) {
  o.id = j.at("id").get<std::string>();
  if (j.contains("label")) o.label = j["label"].get<std::string>();
  if (j.contains("props"))
    for (const auto& [k, v] : j["props"].items())
      o.props[k] = v.is_string() ? v.get<std::string>() : v.dump();
  if (j.contains("features")) o.features = features_from_json(j["features"]);
}

}  // namespace

RawGraph graph_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("bad JSON: ") + e.what(), e.byte);
  }
  RawGraph raw;
  try {
    raw.flavor = flavor_from_string(j.at("model").get<std::string>());
    if (raw.flavor == Flavor::Vector) raw.dimension = j.at("dimension").get<int>();
    for (const auto& jn : j.at("nodes")) {
      RawObject o;
      fill_object(jn, o);
      raw.nodes.push_back(std::move(o));
    }
    for (const auto& je : j.at("edges")) {
      RawEdge e;
      RawObject o;
      fill_object(je, o);
      e.id = o.id;
      e.label = o.label;
      e.props = o.props;
      e.features = o.features;
      e.src = je.at("src").get<std::string>();
      e.dst = je.at("dst").get<std::string>();
      raw.edges.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad graph JSON: ") + e.what(), 0);
  }
  return raw;
}

std::string graph_to_json(const Graph& g) {
  ordered_json j;
  j["model"] = flavor_to_string(g.flavor());
  if (g.flavor() == Flavor::Vector) j["dimension"] = g.dimension();
  j["nodes"] = ordered_json::array();
  for (int n = 0; n < g.node_count(); ++n) {
    ordered_json jn;
    jn["id"] = g.node_id(n);
    if (g.flavor() != Flavor::Vector) jn["label"] = g.node_label(n);
    if (g.flavor() == Flavor::Property && !g.node_props(n).empty())
      jn["props"] = g.node_props(n);
    if (g.flavor() == Flavor::Vector)
      jn["features"] = features_to_json(g.node_features(n));
    j["nodes"].push_back(jn);
  }
  j["edges"] = ordered_json::array();
  for (int e = 0; e < g.edge_count(); ++e) {
    ordered_json je;
    auto [s, d] = g.endpoints(e);
    je["id"] = g.edge_id(e);
    je["src"] = g.node_id(s);
    je["dst"] = g.node_id(d);
    if (g.flavor() != Flavor::Vector) je["label"] = g.edge_label(e);
    if (g.flavor() == Flavor::Property && !g.edge_props(e).empty())
      je["props"] = g.edge_props(e);
    if (g.flavor() == Flavor::Vector)
      je["features"] = features_to_json(g.edge_features(e));
    j["edges"].push_back(je);
  }
  return j.dump(2) + "\n";
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return Graph::from_raw(graph_from_json(ss.str()));
}

void save_graph_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write graph file " + path);
  out << graph_to_json(g);
}

namespace {

// Strips surrounding <> from an N-Triples term; bare atoms pass through.
Atom term(const std::string& tok, int line) {
  if (tok.size() >= 2 && tok.front() == '<' && tok.back() == '>')
    return tok.substr(1, tok.size() - 2);
  if (tok.front() == '<' || tok.back() == '>')
    throw ParseError("unbalanced angle brackets in triple", line);
  return tok;
}

}  // namespace

std::vector<Triple> parse_ntriples(const std::string& text) {
  std::vector<Triple> triples;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (!toks.empty() && toks.back() == ".") toks.pop_back();
    if (toks.size() != 3)
      throw ParseError("expected `s p o .` triple", lineno);
    triples.push_back(
        {term(toks[0], lineno), term(toks[1], lineno), term(toks[2], lineno)});
  }
  return triples;
}

std::vector<Triple> load_ntriples_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open triples file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_ntriples(ss.str());
}

}  // namespace gqe
