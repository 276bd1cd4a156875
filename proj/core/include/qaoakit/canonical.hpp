#pragma once

#include <compare>
#include <string>
#include <vector>

#include "qaoakit/graph.hpp"

namespace qaoakit {

/// Canonical byte string identifying a graph up to isomorphism: the graph6
/// encoding of the canonically relabeled graph. Used as the database key.
struct Certificate {
  std::string bytes;
  auto operator<=>(const Certificate&) const = default;
};

struct CanonicalForm {
  Graph graph;                 // canonically relabeled copy
  std::vector<int> labeling;   // original vertex -> canonical label
};

/// Vertex classes under the automorphism group. Classes are disjoint,
/// nonempty, cover [0, n), and are listed by smallest member.
struct OrbitPartition {
  std::vector<std::vector<int>> orbits;
  std::vector<int> orbit_of;  // vertex -> index into orbits

  int orbit_count() const { return static_cast<int>(orbits.size()); }
};

/// Individualization-refinement canonical labeling: backtracking over vertex
/// orderings with equitable-partition pruning, discovered-automorphism orbit
/// pruning, and prefix comparison against the best leaf. The canonical form
/// is the lexicographically minimal adjacency bit string over the leaves.
CanonicalForm canonical_form(const Graph& g);

Certificate canonical_certificate(const Graph& g);

/// Generators of the automorphism group found by the canonical search.
std::vector<std::vector<int>> automorphism_generators(const Graph& g);

OrbitPartition vertex_orbits(const Graph& g);

// Raw-adjacency entry point shared with the enumeration loops: returns the
// canonical graph6 string without constructing intermediate Graph objects.
std::string canonical_g6_raw(int n, const std::uint64_t* adj);

}  // namespace qaoakit
