#pragma once

#include <vector>

#include "qaoakit/angles.hpp"
#include "qaoakit/graph.hpp"

namespace qaoakit {

enum class GraphParity { AllEven, AllOdd, Mixed };

GraphParity graph_parity(const DegreeStats& stats);
GraphParity graph_parity(const Graph& g);

/// Angle symmetries of MaxCut QAOA. Universal: time reversal
/// (gamma, beta) -> (-gamma, -beta), gamma_l -> gamma_l +- 2pi,
/// beta_l -> beta_l +- pi/2. Parity-gated: gamma_l -> gamma_l +- pi on
/// all-even graphs; the same shift combined with beta_q -> -beta_q for all
/// q >= l on all-odd graphs.
struct SymmetryOp {
  enum class Kind {
    TimeReversal,
    GammaShift2Pi,
    BetaShiftHalfPi,
    EvenGammaShiftPi,
    OddGammaShiftPi,
  };
  Kind kind = Kind::TimeReversal;
  int layer = 1;  // 1-based; unused for TimeReversal
  int sign = +1;
};

/// Applies one generator; unit is preserved. The caller asserts parity
/// validity (EvenGammaShiftPi on AllEven graphs, OddGammaShiftPi on AllOdd).
AngleVector apply_symmetry(const AngleVector& a, const SymmetryOp& op);

/// Wraps every layer into the fundamental box gamma in (-pi, pi],
/// beta in (-pi/4, pi/4] using the universal periodicities.
AngleVector reduce_to_fundamental_box(const AngleVector& a);

/// Closure of {a} under the parity-applicable generators, each element
/// reduced into the fundamental box; distinct elements sorted
/// lexicographically by (gamma_1, beta_1, gamma_2, beta_2, ...).
/// Generic p=1 sizes: 2 for Mixed, 4 for AllEven and AllOdd.
std::vector<AngleVector> degenerate_set(const AngleVector& a, GraphParity parity);

/// Canonical representative: lexicographic minimum of degenerate_set.
/// Idempotent and constant on each degeneracy class.
AngleVector normalize_to_sector(const AngleVector& a, GraphParity parity);

/// Reporting variant: the class member with the smallest total magnitude,
/// preferring all-positive coordinates.
AngleVector smallest_magnitude_representative(const AngleVector& a, GraphParity parity);

/// True when some element of degenerate_set(a) is within tol (max-norm,
/// radians) of b's canonical representative.
bool angles_equivalent(const AngleVector& a, const AngleVector& b, GraphParity parity,
                       double tol);

}  // namespace qaoakit
