#include "qaoakit/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qaoakit {

Rational make_rational(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational{num, den};
}

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  if (n < 1 || n > kMaxVertices)
    throw std::invalid_argument("vertex count " + std::to_string(n) + " outside [1, 62]");
  for (auto& [u, v] : edges) {
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") out of range for n=" + std::to_string(n));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  adj_.assign(static_cast<std::size_t>(n_), 0);
  for (const auto& [u, v] : edges_) {
    adj_[static_cast<std::size_t>(u)] |= 1ull << v;
    adj_[static_cast<std::size_t>(v)] |= 1ull << u;
  }
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  return (adj_[static_cast<std::size_t>(u)] >> v) & 1ull;
}

int Graph::degree(int v) const {
  return std::popcount(adj_[static_cast<std::size_t>(v)]);
}

bool Graph::is_connected() const { return adjacency_connected(n_, adj_.data()); }

bool adjacency_connected(int n, const std::uint64_t* adj) {
  if (n <= 1) return true;
  std::uint64_t all = (n == 64) ? ~0ull : ((1ull << n) - 1);
  std::uint64_t reached = 1ull;
  std::uint64_t frontier = 1ull;
  while (frontier != 0) {
    std::uint64_t next = 0;
    std::uint64_t f = frontier;
    while (f != 0) {
      int v = std::countr_zero(f);
      f &= f - 1;
      next |= adj[v];
    }
    frontier = next & ~reached;
    reached |= frontier;
  }
  return reached == all;
}

Graph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  return Graph(n, edges);
}

Graph permuted(const Graph& g, const std::vector<int>& perm) {
  int n = g.vertex_count();
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("permutation size does not match vertex count");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("not a permutation of [0, n)");
    seen[static_cast<std::size_t>(v)] = true;
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(g.edges().size());
  for (const auto& [u, v] : g.edges())
    edges.emplace_back(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
  return Graph(n, std::move(edges));
}

DegreeStats degree_stats(const Graph& g) {
  DegreeStats s;
  int n = g.vertex_count();
  s.average_degree = make_rational(2ll * g.edge_count(), n);
  s.all_even = true;
  s.all_odd = true;
  int d0 = g.degree(0);
  bool regular = true;
  for (int v = 0; v < n; ++v) {
    int d = g.degree(v);
    if (d % 2 == 0)
      s.all_odd = false;
    else
      s.all_even = false;
    if (d != d0) regular = false;
  }
  if (regular) s.regular_degree = d0;
  return s;
}

}  // namespace qaoakit
