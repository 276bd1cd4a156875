#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "qaoakit/graph.hpp"

namespace qaoakit {

struct BruteForceResult {
  int c_max = 0;                 // exact maximum cut
  std::uint64_t optimal_count = 0;  // optimal bitstrings, complements included
};

/// Exact maximum over all assignments; enumerates with vertex 0 fixed and
/// doubles the optimal count. n <= 24.
BruteForceResult brute_force_maxcut(const Graph& g);

/// Expected cut of a uniformly random assignment: |E|/2 exactly.
double random_cut_expectation(const Graph& g);

struct CutResult {
  double cut_value = 0.0;
  std::optional<std::uint64_t> assignment;  // bit v = side of vertex v
  std::optional<double> ratio;
};

/// Seeded random start, then repeatedly flip the single vertex with the
/// largest gain (ties to the lowest index) until 1-swap-optimal.
CutResult local_search_cut(const Graph& g, std::uint64_t seed);

/// Identifier of the explicit-vector update rule implemented below; report
/// emitters quote it so tables state which rule produced them.
inline constexpr std::string_view kExplicitVectorRule = "explicit-vector/one-round-v1";

/// One-round explicit vector algorithm: vertex u gets the unit vector
///   v_u = (e_u - (1/sqrt(deg u)) * sum_{w in N(u)} e_w) / sqrt(2),
/// rounded by a seeded random hyperplane; Monte Carlo expectation over
/// `samples` rounding draws.
CutResult explicit_vector_cut(const Graph& g, int samples, std::uint64_t seed,
                              unsigned threads = 1);

}  // namespace qaoakit
