#include "qaoakit/graph6.hpp"

#include <fstream>
#include <stdexcept>

namespace qaoakit {

namespace {
constexpr std::string_view kHeader = ">>graph6<<";
}

Graph parse_graph6(std::string_view text) {
  if (text.starts_with(kHeader)) text.remove_prefix(kHeader.size());
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("graph6: empty input");

  unsigned char first = static_cast<unsigned char>(text[0]);
  if (first == 126) throw std::invalid_argument("graph6: extended length encoding (n > 62) unsupported");
  if (first < 63 || first > 126) throw std::invalid_argument("graph6: byte outside [63, 126]");
  int n = first - 63;
  if (n < 1 || n > kMaxVertices)
    throw std::invalid_argument("graph6: vertex count " + std::to_string(n) + " outside [1, 62]");

  int nbits = n * (n - 1) / 2;
  int nchars = (nbits + 5) / 6;
  if (static_cast<int>(text.size()) - 1 < nchars) throw std::invalid_argument("graph6: truncated bit payload");
  if (static_cast<int>(text.size()) - 1 > nchars) throw std::invalid_argument("graph6: trailing characters");

  std::vector<std::pair<int, int>> edges;
  int bit = 0;
  for (int k = 0; k < nchars; ++k) {
    unsigned char c = static_cast<unsigned char>(text[static_cast<std::size_t>(k) + 1]);
    if (c < 63 || c > 126) throw std::invalid_argument("graph6: byte outside [63, 126]");
    int val = c - 63;
    for (int b = 5; b >= 0 && bit < nbits; --b, ++bit) {
      if ((val >> b) & 1) {
        // bit index -> upper-triangle position in column order
        int col = 1;
        int rem = bit;
        while (rem >= col) {
          rem -= col;
          ++col;
        }
        edges.emplace_back(rem, col);
      }
    }
  }
  return Graph(n, std::move(edges));
}

std::string write_graph6(const Graph& g) {
  int n = g.vertex_count();
  if (n > kMaxVertices) throw std::invalid_argument("graph6: n > 62 unsupported");
  int nbits = n * (n - 1) / 2;
  int nchars = (nbits + 5) / 6;
  std::string out;
  out.reserve(static_cast<std::size_t>(nchars) + 1);
  out.push_back(static_cast<char>(63 + n));
  int bit = 0;
  int val = 0;
  for (int col = 1; col < n; ++col) {
    for (int row = 0; row < col; ++row) {
      val = (val << 1) | (g.has_edge(row, col) ? 1 : 0);
      if (++bit % 6 == 0) {
        out.push_back(static_cast<char>(63 + val));
        val = 0;
      }
    }
  }
  if (bit % 6 != 0) {
    val <<= 6 - bit % 6;  // zero padding
    out.push_back(static_cast<char>(63 + val));
  }
  return out;
}

std::vector<Graph> read_graph6_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<Graph> graphs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line.empty() || line == kHeader) continue;
    try {
      graphs.push_back(parse_graph6(line));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return graphs;
}

void write_graph6_file(const std::string& path, const std::vector<Graph>& graphs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  for (const auto& g : graphs) out << write_graph6(g) << '\n';
}

}  // namespace qaoakit
