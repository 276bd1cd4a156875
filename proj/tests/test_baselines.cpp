#include <doctest.h>

#include "qaoakit/baselines.hpp"
#include "qaoakit/enumerate.hpp"
#include "test_util.hpp"

using namespace qaoakit;
using namespace qaoakit::testing;

namespace {

// Independent oracle: full enumeration with a per-edge recount.
BruteForceResult oracle_maxcut(const Graph& g) {
  int n = g.vertex_count();
  BruteForceResult r;
  for (std::uint64_t x = 0; x < (1ull << n); ++x) {
    int cut = 0;
    for (const auto& [u, v] : g.edges()) cut += ((x >> u) & 1) != ((x >> v) & 1);
    if (cut > r.c_max) {
      r.c_max = cut;
      r.optimal_count = 1;
    } else if (cut == r.c_max) {
      ++r.optimal_count;
    }
  }
  return r;
}

}  // namespace

TEST_CASE("brute force matches the per-edge recount oracle on all n <= 5 graphs") {
  for (int n = 2; n <= 5; ++n) {
    for (const auto& g : enumerate_connected(n)) {
      auto got = brute_force_maxcut(g);
      auto expect = oracle_maxcut(g);
      CHECK(got.c_max == expect.c_max);
      CHECK(got.optimal_count == expect.optimal_count);
    }
  }
}

TEST_CASE("brute force named examples") {
  auto k3 = brute_force_maxcut(complete_graph(3));
  CHECK(k3.c_max == 2);
  CHECK(k3.optimal_count == 6);

  auto s5 = brute_force_maxcut(star_graph(5));
  CHECK(s5.c_max == 5);
  CHECK(s5.optimal_count == 2);

  auto c5 = brute_force_maxcut(cycle_graph(5));
  CHECK(c5.c_max == 4);
  CHECK(c5.optimal_count == 10);
}

TEST_CASE("random cut expectation is |E|/2") {
  CHECK(random_cut_expectation(complete_graph(4)) == 3.0);
  CHECK(random_cut_expectation(complete_graph(2)) == 0.5);
  CHECK(random_cut_expectation(graph_from_edges(3, {})) == 0.0);
}

TEST_CASE("local search is 1-swap-optimal and deterministic") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = random_connected_graph(8, 0.4, rng.next());
    std::uint64_t seed = rng.next();
    auto a = local_search_cut(g, seed);
    auto b = local_search_cut(g, seed);
    CHECK(a.cut_value == b.cut_value);
    CHECK(a.assignment == b.assignment);

    // no single flip improves the result
    std::uint64_t side = *a.assignment;
    auto cut_at = [&](std::uint64_t s) {
      int cut = 0;
      for (const auto& [u, v] : g.edges()) cut += ((s >> u) & 1) != ((s >> v) & 1);
      return cut;
    };
    CHECK(cut_at(side) == a.cut_value);
    for (int v = 0; v < g.vertex_count(); ++v)
      CHECK(cut_at(side ^ (1ull << v)) <= a.cut_value);
  }
}

TEST_CASE("local search solves stars exactly") {
  for (int leaves = 3; leaves <= 6; ++leaves) {
    auto r = local_search_cut(star_graph(leaves), 7);
    CHECK(r.cut_value == leaves);
  }
}

TEST_CASE("baseline ordering: random <= local search <= c_max") {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = random_connected_graph(7, 0.5, rng.next());
    auto bf = brute_force_maxcut(g);
    auto ls = local_search_cut(g, rng.next());
    CHECK(ls.cut_value <= bf.c_max);
    // best-improvement local search from any start is >= |E|/2 only on
    // average; check the hard upper bound and the random baseline ordering
    // on the expectation level instead
    CHECK(random_cut_expectation(g) <= bf.c_max);
  }
}

TEST_CASE("explicit vector cut is deterministic and beats random on cubic graphs") {
  auto graphs = enumerate_regular(8, 3);
  double ratio_ev = 0.0, ratio_rand = 0.0;
  for (const auto& g : graphs) {
    auto bf = brute_force_maxcut(g);
    auto a = explicit_vector_cut(g, 400, 17);
    auto b = explicit_vector_cut(g, 400, 17);
    CHECK(a.cut_value == b.cut_value);
    CHECK(a.cut_value <= bf.c_max);
    ratio_ev += a.cut_value / bf.c_max;
    ratio_rand += random_cut_expectation(g) / bf.c_max;
  }
  CHECK(ratio_ev / graphs.size() > ratio_rand / graphs.size());
}

TEST_CASE("explicit vector cut is thread-count independent") {
  Graph g = petersen_graph();
  auto serial = explicit_vector_cut(g, 100, 5, 1);
  auto parallel = explicit_vector_cut(g, 100, 5, 2);
  CHECK(serial.cut_value == parallel.cut_value);
}
