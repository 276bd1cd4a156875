#pragma once

#include <stdexcept>
#include <vector>

namespace qaoakit {

enum class AngleUnit { PiUnits, Radians };

/// Depth-p QAOA parameters: per-layer (gamma_l, beta_l) with an explicit
/// unit tag. Stored values are pi-units in reports and databases, radians in
/// the simulator.
struct AngleVector {
  int p = 0;
  std::vector<double> gamma;
  std::vector<double> beta;
  AngleUnit unit = AngleUnit::Radians;

  friend bool operator==(const AngleVector&, const AngleVector&) = default;
};

inline AngleVector make_angles(std::vector<double> gamma, std::vector<double> beta,
                               AngleUnit unit) {
  if (gamma.size() != beta.size())
    throw std::invalid_argument("angle vector: len(gamma) != len(beta)");
  AngleVector a;
  a.p = static_cast<int>(gamma.size());
  a.gamma = std::move(gamma);
  a.beta = std::move(beta);
  a.unit = unit;
  return a;
}

/// Exact scaling by pi; round-trips to 1 ulp.
AngleVector convert_units(const AngleVector& a, AngleUnit to);

}  // namespace qaoakit
