#include "qaoakit/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qaoakit {

namespace {

constexpr double kPi = std::numbers::pi;

double unit_scale(AngleUnit u) { return u == AngleUnit::Radians ? kPi : 1.0; }

// (-half, half] wrap
double wrap(double x, double half) {
  double period = 2.0 * half;
  double r = std::remainder(x, period);
  if (r <= -half) r += period;
  return r;
}

// lexicographic (gamma_1, beta_1, gamma_2, beta_2, ...) with tolerance
int lex_compare(const AngleVector& a, const AngleVector& b, double eps) {
  for (int l = 0; l < a.p; ++l) {
    double dg = a.gamma[static_cast<std::size_t>(l)] - b.gamma[static_cast<std::size_t>(l)];
    if (std::abs(dg) > eps) return dg < 0 ? -1 : 1;
    double db = a.beta[static_cast<std::size_t>(l)] - b.beta[static_cast<std::size_t>(l)];
    if (std::abs(db) > eps) return db < 0 ? -1 : 1;
  }
  return 0;
}

void check_layer(const AngleVector& a, int layer) {
  if (layer < 1 || layer > a.p) throw std::invalid_argument("symmetry op layer out of range");
}

}  // namespace

GraphParity graph_parity(const DegreeStats& stats) {
  if (stats.all_even) return GraphParity::AllEven;
  if (stats.all_odd) return GraphParity::AllOdd;
  return GraphParity::Mixed;
}

GraphParity graph_parity(const Graph& g) { return graph_parity(degree_stats(g)); }

AngleVector apply_symmetry(const AngleVector& a, const SymmetryOp& op) {
  AngleVector out = a;
  double u = unit_scale(a.unit);
  switch (op.kind) {
    case SymmetryOp::Kind::TimeReversal:
      for (auto& g : out.gamma) g = -g;
      for (auto& b : out.beta) b = -b;
      break;
    case SymmetryOp::Kind::GammaShift2Pi:
      check_layer(a, op.layer);
      out.gamma[static_cast<std::size_t>(op.layer - 1)] += 2.0 * u * op.sign;
      break;
    case SymmetryOp::Kind::BetaShiftHalfPi:
      check_layer(a, op.layer);
      out.beta[static_cast<std::size_t>(op.layer - 1)] += 0.5 * u * op.sign;
      break;
    case SymmetryOp::Kind::EvenGammaShiftPi:
      check_layer(a, op.layer);
      out.gamma[static_cast<std::size_t>(op.layer - 1)] += u * op.sign;
      break;
    case SymmetryOp::Kind::OddGammaShiftPi:
      check_layer(a, op.layer);
      out.gamma[static_cast<std::size_t>(op.layer - 1)] += u * op.sign;
      for (int q = op.layer - 1; q < a.p; ++q)
        out.beta[static_cast<std::size_t>(q)] = -out.beta[static_cast<std::size_t>(q)];
      break;
  }
  return out;
}

AngleVector reduce_to_fundamental_box(const AngleVector& a) {
  AngleVector out = a;
  double u = unit_scale(a.unit);
  for (auto& g : out.gamma) g = wrap(g, u);
  for (auto& b : out.beta) b = wrap(b, u / 4.0);
  return out;
}

std::vector<AngleVector> degenerate_set(const AngleVector& a, GraphParity parity) {
  const double eps = 1e-9;
  std::vector<SymmetryOp> gens;
  gens.push_back({SymmetryOp::Kind::TimeReversal, 1, +1});
  if (parity == GraphParity::AllEven)
    for (int l = 1; l <= a.p; ++l) gens.push_back({SymmetryOp::Kind::EvenGammaShiftPi, l, +1});
  if (parity == GraphParity::AllOdd)
    for (int l = 1; l <= a.p; ++l) gens.push_back({SymmetryOp::Kind::OddGammaShiftPi, l, +1});

  std::vector<AngleVector> closed{reduce_to_fundamental_box(a)};
  for (std::size_t i = 0; i < closed.size(); ++i) {
    for (const auto& op : gens) {
      AngleVector img = reduce_to_fundamental_box(apply_symmetry(closed[i], op));
      bool known = false;
      for (const auto& e : closed)
        if (lex_compare(img, e, eps) == 0) {
          known = true;
          break;
        }
      if (!known) closed.push_back(std::move(img));
    }
  }
  std::sort(closed.begin(), closed.end(),
            [&](const AngleVector& x, const AngleVector& y) { return lex_compare(x, y, 0.0) < 0; });
  return closed;
}

AngleVector normalize_to_sector(const AngleVector& a, GraphParity parity) {
  return degenerate_set(a, parity).front();
}

AngleVector smallest_magnitude_representative(const AngleVector& a, GraphParity parity) {
  auto set = degenerate_set(a, parity);
  auto magnitude = [](const AngleVector& v) {
    double m = 0.0;
    for (double g : v.gamma) m += std::abs(g);
    for (double b : v.beta) m += std::abs(b);
    return m;
  };
  auto all_positive = [](const AngleVector& v) {
    for (double g : v.gamma)
      if (g <= 0.0) return false;
    for (double b : v.beta)
      if (b <= 0.0) return false;
    return true;
  };
  const AngleVector* best = nullptr;
  bool best_pos = false;
  double best_mag = 0.0;
  for (const auto& cand : set) {
    bool pos = all_positive(cand);
    double mag = magnitude(cand);
    if (best == nullptr || (pos && !best_pos) || (pos == best_pos && mag < best_mag)) {
      best = &cand;
      best_pos = pos;
      best_mag = mag;
    }
  }
  return *best;
}

bool angles_equivalent(const AngleVector& a, const AngleVector& b, GraphParity parity,
                       double tol) {
  if (a.p != b.p) throw std::invalid_argument("angles_equivalent: depth mismatch");
  if (a.unit != b.unit) throw std::invalid_argument("angles_equivalent: unit mismatch");
  AngleVector bn = normalize_to_sector(b, parity);
  for (const auto& cand : degenerate_set(a, parity)) {
    double dist = 0.0;
    for (int l = 0; l < a.p; ++l) {
      dist = std::max(dist, std::abs(cand.gamma[static_cast<std::size_t>(l)] -
                                     bn.gamma[static_cast<std::size_t>(l)]));
      dist = std::max(dist, std::abs(cand.beta[static_cast<std::size_t>(l)] -
                                     bn.beta[static_cast<std::size_t>(l)]));
    }
    if (dist <= tol) return true;
  }
  return false;
}

}  // namespace qaoakit
