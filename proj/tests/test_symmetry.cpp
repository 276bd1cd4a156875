#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qaoakit/simulate.hpp"
#include "qaoakit/symmetry.hpp"
#include "test_util.hpp"

using namespace qaoakit;
using namespace qaoakit::testing;

namespace {

constexpr double kPi = std::numbers::pi;

AngleVector rand_angles(int p, SplitMix64& rng) {
  std::vector<double> g, b;
  for (int l = 0; l < p; ++l) {
    g.push_back(rng.uniform(-kPi, kPi));
    b.push_back(rng.uniform(-kPi / 4, kPi / 4));
  }
  return make_angles(g, b, AngleUnit::Radians);
}

}  // namespace

TEST_CASE("graph parity classification") {
  CHECK(graph_parity(cycle_graph(4)) == GraphParity::AllEven);
  CHECK(graph_parity(complete_graph(5)) == GraphParity::AllEven);
  CHECK(graph_parity(complete_graph(4)) == GraphParity::AllOdd);
  CHECK(graph_parity(petersen_graph()) == GraphParity::AllOdd);
  CHECK(graph_parity(path_graph(3)) == GraphParity::Mixed);
}

TEST_CASE("apply_symmetry algebra") {
  auto a = make_angles({0.2}, {0.1}, AngleUnit::PiUnits);
  auto tr = apply_symmetry(a, {SymmetryOp::Kind::TimeReversal, 1, +1});
  CHECK(tr.gamma[0] == doctest::Approx(-0.2));
  CHECK(tr.beta[0] == doctest::Approx(-0.1));
  CHECK(tr.unit == AngleUnit::PiUnits);

  auto a2 = make_angles({0.3, -0.4}, {0.1, 0.2}, AngleUnit::PiUnits);
  auto odd = apply_symmetry(a2, {SymmetryOp::Kind::OddGammaShiftPi, 1, +1});
  CHECK(odd.gamma[0] == doctest::Approx(1.3));
  CHECK(odd.gamma[1] == doctest::Approx(-0.4));
  CHECK(odd.beta[0] == doctest::Approx(-0.1));
  CHECK(odd.beta[1] == doctest::Approx(-0.2));

  auto odd2 = apply_symmetry(a2, {SymmetryOp::Kind::OddGammaShiftPi, 2, +1});
  CHECK(odd2.gamma[1] == doctest::Approx(0.6));
  CHECK(odd2.beta[0] == doctest::Approx(0.1));   // q < l untouched
  CHECK(odd2.beta[1] == doctest::Approx(-0.2));

  auto up = apply_symmetry(a, {SymmetryOp::Kind::GammaShift2Pi, 1, +1});
  auto back = apply_symmetry(up, {SymmetryOp::Kind::GammaShift2Pi, 1, -1});
  CHECK(back.gamma[0] == doctest::Approx(a.gamma[0]));

  CHECK_THROWS_AS(apply_symmetry(a, {SymmetryOp::Kind::GammaShift2Pi, 2, +1}),
                  std::invalid_argument);
}

TEST_CASE("expectation invariance under the symmetry group") {
  SplitMix64 rng(21);
  std::vector<Graph> any_graphs;
  for (int t = 0; t < 10; ++t) any_graphs.push_back(random_connected_graph(5, 0.5, rng.next()));

  for (const auto& g : any_graphs) {
    auto a = rand_angles(2, rng);
    double f = expected_cut(g, a);
    for (auto kind : {SymmetryOp::Kind::TimeReversal, SymmetryOp::Kind::GammaShift2Pi,
                      SymmetryOp::Kind::BetaShiftHalfPi}) {
      for (int layer = 1; layer <= 2; ++layer) {
        auto img = apply_symmetry(a, {kind, layer, -1});
        CHECK(expected_cut(g, img) == doctest::Approx(f).epsilon(1e-10));
      }
    }
  }

  for (const auto& g : {cycle_graph(4), cycle_graph(6), complete_graph(5)}) {
    REQUIRE(graph_parity(g) == GraphParity::AllEven);
    auto a = rand_angles(2, rng);
    double f = expected_cut(g, a);
    for (int layer = 1; layer <= 2; ++layer) {
      auto img = apply_symmetry(a, {SymmetryOp::Kind::EvenGammaShiftPi, layer, +1});
      CHECK(expected_cut(g, img) == doctest::Approx(f).epsilon(1e-10));
    }
  }

  for (const auto& g : {complete_graph(4), petersen_graph()}) {
    REQUIRE(graph_parity(g) == GraphParity::AllOdd);
    auto a = rand_angles(2, rng);
    double f = expected_cut(g, a);
    for (int layer = 1; layer <= 2; ++layer) {
      auto img = apply_symmetry(a, {SymmetryOp::Kind::OddGammaShiftPi, layer, -1});
      CHECK(expected_cut(g, img) == doctest::Approx(f).epsilon(1e-10));
    }
  }
}

TEST_CASE("degenerate_set sizes at p = 1") {
  auto a = make_angles({-0.3}, {-0.1}, AngleUnit::PiUnits);
  auto mixed = degenerate_set(a, GraphParity::Mixed);
  REQUIRE(mixed.size() == 2);
  CHECK(mixed[0].gamma[0] == doctest::Approx(-0.3));
  CHECK(mixed[0].beta[0] == doctest::Approx(-0.1));
  CHECK(mixed[1].gamma[0] == doctest::Approx(0.3));
  CHECK(mixed[1].beta[0] == doctest::Approx(0.1));

  auto even = degenerate_set(a, GraphParity::AllEven);
  REQUIRE(even.size() == 4);
  // gamma shifts by pi with beta fixed, plus time reversal
  CHECK(even[0].gamma[0] == doctest::Approx(-0.7));
  CHECK(even[0].beta[0] == doctest::Approx(0.1));

  auto odd = degenerate_set(a, GraphParity::AllOdd);
  REQUIRE(odd.size() == 4);
  // joint gamma shift and beta flip: (-0.3, -0.1) -> (0.7, +0.1)
  bool found = false;
  for (const auto& e : odd)
    if (std::abs(e.gamma[0] - 0.7) < 1e-12 && std::abs(e.beta[0] - 0.1) < 1e-12) found = true;
  CHECK(found);
}

TEST_CASE("degenerate_set sizes at p = 2") {
  auto a = make_angles({-0.3, 0.25}, {-0.1, 0.05}, AngleUnit::PiUnits);
  CHECK(degenerate_set(a, GraphParity::Mixed).size() == 2);
  CHECK(degenerate_set(a, GraphParity::AllEven).size() == 8);
  CHECK(degenerate_set(a, GraphParity::AllOdd).size() == 8);
}

TEST_CASE("degenerate set members all reach the same expectation") {
  SplitMix64 rng(31);
  Graph k4 = complete_graph(4);
  auto a = rand_angles(1, rng);
  double f = expected_cut(k4, a);
  for (const auto& img : degenerate_set(convert_units(a, AngleUnit::Radians), GraphParity::AllOdd))
    CHECK(expected_cut(k4, img) == doctest::Approx(f).epsilon(1e-10));
}

TEST_CASE("normalize_to_sector reduces into the box and is idempotent") {
  auto wild = make_angles({2.5}, {0.6}, AngleUnit::PiUnits);
  auto norm = normalize_to_sector(wild, GraphParity::Mixed);
  CHECK(norm.gamma[0] > -1.0);
  CHECK(norm.gamma[0] <= 1.0);
  CHECK(norm.beta[0] > -0.25);
  CHECK(norm.beta[0] <= 0.25);
  auto again = normalize_to_sector(norm, GraphParity::Mixed);
  CHECK(again == norm);

  // already-canonical input unchanged
  auto canon = normalize_to_sector(make_angles({-0.3}, {-0.1}, AngleUnit::PiUnits),
                                   GraphParity::Mixed);
  CHECK(normalize_to_sector(canon, GraphParity::Mixed) == canon);
}

TEST_CASE("normalize_to_sector is constant on a degeneracy class") {
  SplitMix64 rng(41);
  for (auto parity : {GraphParity::Mixed, GraphParity::AllEven, GraphParity::AllOdd}) {
    auto a = rand_angles(2, rng);
    auto canon = normalize_to_sector(a, parity);
    for (const auto& img : degenerate_set(a, parity)) {
      auto norm = normalize_to_sector(img, parity);
      for (int l = 0; l < 2; ++l) {
        CHECK(norm.gamma[static_cast<std::size_t>(l)] ==
              doctest::Approx(canon.gamma[static_cast<std::size_t>(l)]).epsilon(1e-12));
        CHECK(norm.beta[static_cast<std::size_t>(l)] ==
              doctest::Approx(canon.beta[static_cast<std::size_t>(l)]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("boundary handling: -pi/4 and pi/4 collapse to one representative") {
  auto hi = make_angles({0.5}, {0.25}, AngleUnit::PiUnits);
  auto lo = make_angles({0.5}, {-0.25}, AngleUnit::PiUnits);
  auto rh = reduce_to_fundamental_box(hi);
  auto rl = reduce_to_fundamental_box(lo);
  CHECK(rh.beta[0] == doctest::Approx(0.25));
  CHECK(rl.beta[0] == doctest::Approx(0.25));
  auto gm = reduce_to_fundamental_box(make_angles({-1.0}, {0.0}, AngleUnit::PiUnits));
  CHECK(gm.gamma[0] == doctest::Approx(1.0));
}

TEST_CASE("angles_equivalent") {
  SplitMix64 rng(51);
  auto a = rand_angles(1, rng);
  auto tr = apply_symmetry(a, {SymmetryOp::Kind::TimeReversal, 1, +1});
  for (auto parity : {GraphParity::Mixed, GraphParity::AllEven, GraphParity::AllOdd})
    CHECK(angles_equivalent(a, tr, parity, 1e-9));

  auto shifted = a;
  shifted.gamma[0] += 0.3;
  CHECK_FALSE(angles_equivalent(a, shifted, GraphParity::Mixed, 1e-6));

  auto odd_img = apply_symmetry(a, {SymmetryOp::Kind::OddGammaShiftPi, 1, +1});
  CHECK(angles_equivalent(a, odd_img, GraphParity::AllOdd, 1e-9));
  CHECK_FALSE(angles_equivalent(a, odd_img, GraphParity::Mixed, 1e-6));

  auto wrong_depth = rand_angles(2, rng);
  CHECK_THROWS_AS(angles_equivalent(a, wrong_depth, GraphParity::Mixed, 1e-6),
                  std::invalid_argument);
}

TEST_CASE("smallest magnitude representative prefers positive coordinates") {
  auto a = make_angles({-0.16}, {-0.09}, AngleUnit::PiUnits);
  auto rep = smallest_magnitude_representative(a, GraphParity::AllOdd);
  CHECK(rep.gamma[0] > 0.0);
  CHECK(rep.beta[0] > 0.0);
  CHECK(rep.gamma[0] == doctest::Approx(0.16));
  CHECK(rep.beta[0] == doctest::Approx(0.09));
}
