#pragma once

#include <string>
#include <vector>

#include "gqe/graph.hpp"

namespace gqe {

/// JSON graph files:
///   {"model":"labeled"|"property"|"vector", "dimension":d?,
///    "nodes":[{"id","label"?,"props"?,"features"?}, ...],
///    "edges":[{"id","src","dst","label"?,"props"?,"features"?}, ...]}
/// kBottom is encoded as null inside "features".
RawGraph graph_from_json(const std::string& text);
std::string graph_to_json(const Graph& g);

Graph load_graph_file(const std::string& path);
void save_graph_file(const Graph& g, const std::string& path);

/// N-Triples subset: one `<s> <p> <o> .` or bare `s p o .` per line; blank
/// lines and #-comments are skipped. Throws ParseError with the line number.
std::vector<Triple> parse_ntriples(const std::string& text);
std::vector<Triple> load_ntriples_file(const std::string& path);

}  // namespace gqe
