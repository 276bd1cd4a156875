#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qaoakit/graph.hpp"

namespace qaoakit {

/// Decodes one graph6 line. A leading ">>graph6<<" header is tolerated and
/// skipped. Rejects the extended (n > 62) length encoding.
Graph parse_graph6(std::string_view text);

/// Encodes a graph as a header-free graph6 string.
std::string write_graph6(const Graph& g);

/// One graph per line; blank lines and a ">>graph6<<" header line are skipped.
std::vector<Graph> read_graph6_file(const std::string& path);

void write_graph6_file(const std::string& path, const std::vector<Graph>& graphs);

}  // namespace qaoakit
