#pragma once

#include <complex>
#include <map>
#include <vector>

#include "qaoakit/angles.hpp"
#include "qaoakit/graph.hpp"

namespace qaoakit {

/// Largest simulable vertex count (2^24 amplitudes).
inline constexpr int kMaxSimVertices = 24;

struct SimResult {
  double expectation = 0.0;            // F = <C>
  double success_probability = 0.0;    // histogram mass at optimal_cut
  std::map<int, double> cut_histogram; // cut value -> probability
  int optimal_cut = 0;                 // C_max supplied by the caller
};

/// Exact statevector evolution for MaxCut QAOA under the convention
///   |psi(gamma, beta)> = prod_l e^{-i beta_l B} e^{-i gamma_l C} |+>^n,
///   C = sum_{(u,v) in E} (1 - Z_u Z_v)/2,   B = sum_i X_i,
/// so C counts cut edges directly. The phase layer is a diagonal multiply by
/// precomputed per-bitstring cut values; the mixer is n in-place single-qubit
/// rotations. Instances hold scratch buffers and are not thread-safe; use one
/// per thread.
class StatevectorSimulator {
 public:
  explicit StatevectorSimulator(const Graph& g);

  const Graph& graph() const { return g_; }
  const std::vector<int>& cut_values() const { return cuts_; }
  int max_cut_value() const { return max_cut_; }

  /// Requires radians for p >= 1.
  std::vector<std::complex<double>> state(const AngleVector& angles);
  double expectation(const AngleVector& angles);
  /// dF/dgamma_1..p, dF/dbeta_1..p by reverse-pass adjoint differentiation.
  std::vector<double> gradient(const AngleVector& angles);
  double success_probability(const AngleVector& angles, int c_max);
  SimResult simulate(const AngleVector& angles, int c_max);

 private:
  void check_angles(const AngleVector& angles) const;
  void prepare_plus(std::vector<std::complex<double>>& v) const;
  void apply_phase(std::vector<std::complex<double>>& v, double gamma) const;
  void apply_mixer(std::vector<std::complex<double>>& v, double beta) const;
  void evolve(std::vector<std::complex<double>>& v, const AngleVector& angles) const;

  Graph g_;
  int n_;
  std::size_t dim_;
  std::vector<int> cuts_;
  int max_cut_;
  std::vector<std::complex<double>> psi_, lam_;
};

std::vector<std::complex<double>> qaoa_state(const Graph& g, const AngleVector& angles);
double expected_cut(const Graph& g, const AngleVector& angles);
std::vector<double> gradient(const Graph& g, const AngleVector& angles);
double success_probability(const Graph& g, const AngleVector& angles, int c_max);
SimResult simulate(const Graph& g, const AngleVector& angles, int c_max);

/// expected_cut / c_max; rejects c_max == 0.
double approximation_ratio(const Graph& g, const AngleVector& angles, int c_max);
/// expected_cut / |E|; rejects edgeless graphs.
double cut_fraction(const Graph& g, const AngleVector& angles);

}  // namespace qaoakit
