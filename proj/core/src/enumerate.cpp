#include "qaoakit/enumerate.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "qaoakit/canonical.hpp"
#include "qaoakit/graph6.hpp"
#include "qaoakit/parallel.hpp"

namespace qaoakit {

namespace {

std::vector<std::string> sorted_certs(std::unordered_set<std::string>&& set) {
  std::vector<std::string> certs(set.begin(), set.end());
  std::sort(certs.begin(), certs.end());
  return certs;
}

// All connected labeled graphs on n <= 7 vertices, deduplicated by
// certificate.
std::vector<std::string> connected_certs_by_masks(int n, unsigned threads) {
  int nbits = n * (n - 1) / 2;
  std::uint64_t total = 1ull << nbits;
  std::array<std::pair<int, int>, 64> slot;
  {
    int k = 0;
    for (int col = 1; col < n; ++col)
      for (int row = 0; row < col; ++row) slot[k++] = {row, col};
  }
  threads = resolve_threads(threads);
  std::vector<std::unordered_set<std::string>> local(threads);
  parallel_for(threads, threads, [&](std::size_t t) {
    std::uint64_t begin = total * t / threads;
    std::uint64_t end = total * (t + 1) / threads;
    std::array<std::uint64_t, 8> adj;
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      adj.fill(0);
      std::uint64_t m = mask;
      while (m != 0) {
        int k = std::countr_zero(m);
        m &= m - 1;
        auto [u, v] = slot[k];
        adj[static_cast<std::size_t>(u)] |= 1ull << v;
        adj[static_cast<std::size_t>(v)] |= 1ull << u;
      }
      if (!adjacency_connected(n, adj.data())) continue;
      local[t].insert(canonical_g6_raw(n, adj.data()));
    }
  });
  std::unordered_set<std::string> all;
  for (auto& s : local) all.merge(s);
  return sorted_certs(std::move(all));
}

// Children of every (n-1)-vertex class: attach vertex n-1 to each nonempty
// subset of the parent. A connected graph always has a removable non-cut
// vertex, so every class on n vertices appears; the certificate set removes
// duplicates.
std::vector<std::string> connected_certs_by_augmentation(int n, unsigned threads) {
  std::vector<Graph> parents = enumerate_connected(n - 1, threads);
  threads = resolve_threads(threads);
  std::vector<std::unordered_set<std::string>> local(threads);
  parallel_for(threads, threads, [&](std::size_t t) {
    std::size_t begin = parents.size() * t / threads;
    std::size_t end = parents.size() * (t + 1) / threads;
    std::array<std::uint64_t, 62> base{};
    std::array<std::uint64_t, 62> adj;
    std::unordered_set<std::string>& out = local[t];
    for (std::size_t pi = begin; pi < end; ++pi) {
      const Graph& parent = parents[pi];
      base.fill(0);
      for (int v = 0; v < n - 1; ++v) base[static_cast<std::size_t>(v)] = parent.adjacency_mask(v);
      std::uint64_t subsets = 1ull << (n - 1);
      for (std::uint64_t s = 1; s < subsets; ++s) {
        adj = base;
        adj[static_cast<std::size_t>(n - 1)] = s;
        std::uint64_t m = s;
        while (m != 0) {
          int v = std::countr_zero(m);
          m &= m - 1;
          adj[static_cast<std::size_t>(v)] |= 1ull << (n - 1);
        }
        out.insert(canonical_g6_raw(n, adj.data()));
      }
    }
  });
  std::unordered_set<std::string> all;
  for (auto& s : local) all.merge(s);
  return sorted_certs(std::move(all));
}

std::vector<std::string> connected_certs(int n, unsigned threads) {
  if (n == 1) return {write_graph6(Graph())};
  if (n <= 7) return connected_certs_by_masks(n, threads);
  return connected_certs_by_augmentation(n, threads);
}

// Backtracking construction of connected d-regular graphs: vertices are
// completed in index order, neighbor lists ascend, and a fresh vertex may
// only be the lowest untouched index. Reaching an untouched vertex whose
// turn has come means a separate component, so connectivity needs no final
// check. Leaves are deduplicated by certificate.
class RegularEnumerator {
 public:
  RegularEnumerator(int n, int d) : n_(n), d_(d) { adj_.fill(0); deg_.fill(0); }

  std::unordered_set<std::string> run() {
    complete_vertex(0, 1);
    return std::move(certs_);
  }

 private:
  void complete_vertex(int v, int first_untouched) {
    if (v == n_) {
      certs_.insert(canonical_g6_raw(n_, adj_.data()));
      return;
    }
    if (deg_[static_cast<std::size_t>(v)] == 0 && v != 0) return;  // disconnected
    extend(v, v + 1, first_untouched);
  }

  void extend(int v, int from, int first_untouched) {
    int need = d_ - deg_[static_cast<std::size_t>(v)];
    if (need == 0) {
      complete_vertex(v + 1, first_untouched);
      return;
    }
    if (need > n_ - from) return;
    for (int u = from; u < n_; ++u) {
      if (u > first_untouched) break;  // later untouched vertices are interchangeable with it
      if (u < first_untouched && deg_[static_cast<std::size_t>(u)] >= d_) continue;
      add_edge(v, u);
      extend(v, u + 1, u == first_untouched ? first_untouched + 1 : first_untouched);
      remove_edge(v, u);
    }
  }

  void add_edge(int u, int v) {
    adj_[static_cast<std::size_t>(u)] |= 1ull << v;
    adj_[static_cast<std::size_t>(v)] |= 1ull << u;
    ++deg_[static_cast<std::size_t>(u)];
    ++deg_[static_cast<std::size_t>(v)];
  }

  void remove_edge(int u, int v) {
    adj_[static_cast<std::size_t>(u)] &= ~(1ull << v);
    adj_[static_cast<std::size_t>(v)] &= ~(1ull << u);
    --deg_[static_cast<std::size_t>(u)];
    --deg_[static_cast<std::size_t>(v)];
  }

  int n_, d_;
  std::array<std::uint64_t, 62> adj_;
  std::array<int, 62> deg_;
  std::unordered_set<std::string> certs_;
};

void emit_certs(const std::vector<std::string>& certs,
                const std::function<void(const Graph&)>& sink) {
  for (const auto& c : certs) sink(parse_graph6(c));
}

}  // namespace

void enumerate_connected(int n, const std::function<void(const Graph&)>& sink, unsigned threads) {
  if (n < 1 || n > kMaxVertices) throw std::invalid_argument("enumerate_connected: n outside [1, 62]");
  emit_certs(connected_certs(n, threads), sink);
}

std::vector<Graph> enumerate_connected(int n, unsigned threads) {
  std::vector<Graph> out;
  enumerate_connected(n, [&](const Graph& g) { out.push_back(g); }, threads);
  return out;
}

void enumerate_regular(int n, int d, const std::function<void(const Graph&)>& sink,
                       unsigned threads) {
  if (n < 1 || n > kMaxVertices) throw std::invalid_argument("enumerate_regular: n outside [1, 62]");
  if (d < 0 || d >= n) {
    if (!(n == 1 && d == 0)) throw std::invalid_argument("enumerate_regular: need 0 <= d < n");
  }
  if ((static_cast<long long>(n) * d) % 2 != 0)
    throw std::invalid_argument("enumerate_regular: n*d must be even");
  (void)threads;
  if (d == 0) {
    if (n == 1) sink(Graph());
    return;  // 0-regular graphs on n >= 2 vertices are disconnected
  }
  RegularEnumerator reg(n, d);
  auto set = reg.run();
  emit_certs(sorted_certs(std::move(set)), sink);
}

std::vector<Graph> enumerate_regular(int n, int d, unsigned threads) {
  std::vector<Graph> out;
  enumerate_regular(n, d, [&](const Graph& g) { out.push_back(g); }, threads);
  return out;
}

}  // namespace qaoakit
