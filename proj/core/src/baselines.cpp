#include "qaoakit/baselines.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qaoakit/parallel.hpp"
#include "qaoakit/rng.hpp"

namespace qaoakit {

namespace {

int cut_of_assignment(const Graph& g, std::uint64_t side) {
  int cut = 0;
  std::uint64_t full = (std::uint64_t{1} << g.vertex_count()) - 1;
  std::uint64_t s = side & full;
  while (s != 0) {
    int v = std::countr_zero(s);
    s &= s - 1;
    cut += std::popcount(g.adjacency_mask(v) & full & ~side);
  }
  return cut;
}

}  // namespace

BruteForceResult brute_force_maxcut(const Graph& g) {
  int n = g.vertex_count();
  if (n > 24) throw std::invalid_argument("brute_force_maxcut limited to n <= 24");
  if (n == 1 || g.edge_count() == 0)
    return BruteForceResult{0, n == 1 ? 1ull : (1ull << n)};

  // Gray-code walk over assignments of vertices 1..n-1 (vertex 0 fixed,
  // complements counted at the end). Flipping v moves deg(v) - cut_at(v)
  // uncut edges into the cut and removes the cut_at(v) cut ones.
  std::uint64_t side = 0;
  int cut = 0;
  int best = 0;
  std::uint64_t count = 1;  // the all-zeros assignment, cut 0
  std::uint64_t total = 1ull << (n - 1);
  for (std::uint64_t i = 1; i < total; ++i) {
    int v = std::countr_zero(i) + 1;  // vertex toggled by this gray step
    int in1 = std::popcount(g.adjacency_mask(v) & side);
    cut += (side >> v) & 1 ? 2 * in1 - g.degree(v) : g.degree(v) - 2 * in1;
    side ^= 1ull << v;
    if (cut > best) {
      best = cut;
      count = 1;
    } else if (cut == best) {
      ++count;
    }
  }
  return BruteForceResult{best, count * 2};
}

double random_cut_expectation(const Graph& g) { return g.edge_count() / 2.0; }

CutResult local_search_cut(const Graph& g, std::uint64_t seed) {
  int n = g.vertex_count();
  SplitMix64 rng(mix64(seed, 0x6c6f63616cull));
  std::uint64_t side = 0;
  for (int v = 0; v < n; ++v) side |= (rng.next() & 1ull) << v;

  int cut = cut_of_assignment(g, side);
  for (;;) {
    int best_gain = 0, best_v = -1;
    for (int v = 0; v < n; ++v) {
      int inter = std::popcount(g.adjacency_mask(v) & side);
      int cut_edges_at_v = ((side >> v) & 1) ? g.degree(v) - inter : inter;
      int gain = g.degree(v) - 2 * cut_edges_at_v;
      if (gain > best_gain) {
        best_gain = gain;
        best_v = v;
      }
    }
    if (best_v < 0) break;
    side ^= 1ull << best_v;
    cut += best_gain;
  }
  CutResult r;
  r.cut_value = cut;
  r.assignment = side;
  return r;
}

CutResult explicit_vector_cut(const Graph& g, int samples, std::uint64_t seed,
                              unsigned threads) {
  if (samples < 1) throw std::invalid_argument("explicit_vector_cut requires samples >= 1");
  int n = g.vertex_count();

  // per-vertex unit vectors in R^n
  std::vector<std::vector<double>> vec(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int u = 0; u < n; ++u) {
    double du = g.degree(u);
    if (du == 0) {
      vec[static_cast<std::size_t>(u)][static_cast<std::size_t>(u)] = 1.0;
      continue;
    }
    double inv = 1.0 / std::sqrt(2.0);
    vec[static_cast<std::size_t>(u)][static_cast<std::size_t>(u)] = inv;
    std::uint64_t m = g.adjacency_mask(u);
    while (m != 0) {
      int w = std::countr_zero(m);
      m &= m - 1;
      vec[static_cast<std::size_t>(u)][static_cast<std::size_t>(w)] = -inv / std::sqrt(du);
    }
  }

  std::vector<double> cuts(static_cast<std::size_t>(samples), 0.0);
  parallel_for(static_cast<std::size_t>(samples), threads, [&](std::size_t s) {
    SplitMix64 rng(mix64(mix64(seed, 0x65787665ull), s));
    // random hyperplane normal, Box-Muller
    std::vector<double> r(static_cast<std::size_t>(n));
    for (int i = 0; i < n; i += 2) {
      double u1 = rng.uniform();
      double u2 = rng.uniform();
      while (u1 <= 0.0) u1 = rng.uniform();
      double mag = std::sqrt(-2.0 * std::log(u1));
      r[static_cast<std::size_t>(i)] = mag * std::cos(2.0 * std::numbers::pi * u2);
      if (i + 1 < n) r[static_cast<std::size_t>(i + 1)] = mag * std::sin(2.0 * std::numbers::pi * u2);
    }
    std::uint64_t side = 0;
    for (int u = 0; u < n; ++u) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += vec[static_cast<std::size_t>(u)][static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(i)];
      if (dot >= 0.0) side |= 1ull << u;
    }
    cuts[s] = cut_of_assignment(g, side);
  });
  double mean = 0.0;
  for (double c : cuts) mean += c;
  mean /= samples;
  CutResult r;
  r.cut_value = mean;
  return r;
}

}  // namespace qaoakit
