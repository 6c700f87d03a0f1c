#pragma once

// Line-oriented graph-spec text format:
//
//   # comment
//   [edges]
//   <edge_id> <vertex_a> <vertex_b> <length_m>
//   [leads]
//   <lead_id> <vertex>
//   [cable]            (optional; lengths above become geometric)
//   r1 <m>
//   r2 <m>
//   epsilon <value>

#include <iosfwd>
#include <string>

#include "qgraph/graph.hpp"

namespace qgraph {

/// Parses a graph spec. Throws GraphError with a line number on malformed input.
/// Does not validate the resulting graph.
MetricGraph parse_graph_spec(std::istream& in);
MetricGraph parse_graph_spec(const std::string& text);
MetricGraph load_graph_spec(const std::string& path);

/// Writes optical lengths with round-trip precision; no [cable] section.
void write_graph_spec(std::ostream& out, const MetricGraph& graph);
std::string format_graph_spec(const MetricGraph& graph);

}  // namespace qgraph
