#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace qaoakit {

inline constexpr int kMaxVertices = 62;

/// Exact rational, kept reduced with a positive denominator.
struct Rational {
  long long num = 0;
  long long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational make_rational(long long num, long long den);

/// Undirected, unweighted, simple graph on n labeled vertices (1 <= n <= 62).
/// The edge set is normalized on construction: endpoints ordered u < v,
/// duplicates dropped, edges sorted. Two graphs with the same vertex count
/// and edge set compare equal regardless of input order.
class Graph {
 public:
  Graph() = default;  // single vertex, no edges
  Graph(int n, std::vector<std::pair<int, int>> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  /// Bitmask of neighbors of v.
  std::uint64_t adjacency_mask(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  bool has_edge(int u, int v) const;
  int degree(int v) const;
  bool is_connected() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int n_ = 1;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::uint64_t> adj_ = {0};
};

Graph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges);

/// Relabels vertices: vertex u of g becomes perm[u].
Graph permuted(const Graph& g, const std::vector<int>& perm);

struct DegreeStats {
  Rational average_degree;                  // 2|E| / n, exact
  bool all_even = false;                    // every vertex degree even
  bool all_odd = false;                     // every vertex degree odd
  std::optional<int> regular_degree;        // d when the graph is d-regular
};

DegreeStats degree_stats(const Graph& g);

// Connectivity over raw adjacency masks; shared with the enumeration loops
// that avoid building Graph objects per candidate.
bool adjacency_connected(int n, const std::uint64_t* adj);

}  // namespace qaoakit
