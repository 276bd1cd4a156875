#include "qaoakit/simulate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qaoakit {

AngleVector convert_units(const AngleVector& a, AngleUnit to) {
  if (a.unit == to) return a;
  AngleVector out = a;
  out.unit = to;
  double f = (to == AngleUnit::Radians) ? std::numbers::pi : 1.0 / std::numbers::pi;
  for (auto& g : out.gamma) g *= f;
  for (auto& b : out.beta) b *= f;
  return out;
}

StatevectorSimulator::StatevectorSimulator(const Graph& g) : g_(g), n_(g.vertex_count()) {
  if (n_ > kMaxSimVertices)
    throw std::invalid_argument("statevector simulation limited to n <= 24");
  dim_ = std::size_t{1} << n_;
  cuts_.assign(dim_, 0);
  for (const auto& [u, v] : g_.edges()) {
    std::size_t bu = std::size_t{1} << u, bv = std::size_t{1} << v;
    for (std::size_t x = 0; x < dim_; ++x)
      cuts_[x] += ((x & bu) != 0) != ((x & bv) != 0);
  }
  max_cut_ = 0;
  for (int c : cuts_) max_cut_ = std::max(max_cut_, c);
}

void StatevectorSimulator::check_angles(const AngleVector& angles) const {
  if (angles.p != static_cast<int>(angles.gamma.size()) ||
      angles.p != static_cast<int>(angles.beta.size()))
    throw std::invalid_argument("angle vector: inconsistent depth");
  if (angles.p > 0 && angles.unit != AngleUnit::Radians)
    throw std::invalid_argument("simulator requires radians; convert_units first");
}

void StatevectorSimulator::prepare_plus(std::vector<std::complex<double>>& v) const {
  double amp = 1.0 / std::sqrt(static_cast<double>(dim_));
  v.assign(dim_, {amp, 0.0});
}

void StatevectorSimulator::apply_phase(std::vector<std::complex<double>>& v, double gamma) const {
  // table of e^{-i gamma c} over the |E|+1 possible cut values
  int m = g_.edge_count();
  std::vector<std::complex<double>> table(static_cast<std::size_t>(m) + 1);
  for (int c = 0; c <= m; ++c)
    table[static_cast<std::size_t>(c)] = std::polar(1.0, -gamma * c);
  for (std::size_t x = 0; x < dim_; ++x) v[x] *= table[static_cast<std::size_t>(cuts_[x])];
}

void StatevectorSimulator::apply_mixer(std::vector<std::complex<double>>& v, double beta) const {
  double c = std::cos(beta), s = std::sin(beta);
  for (int q = 0; q < n_; ++q) {
    std::size_t step = std::size_t{1} << q;
    for (std::size_t base = 0; base < dim_; base += 2 * step) {
      for (std::size_t k = base; k < base + step; ++k) {
        std::complex<double> a0 = v[k];
        std::complex<double> a1 = v[k + step];
        v[k] = {c * a0.real() + s * a1.imag(), c * a0.imag() - s * a1.real()};
        v[k + step] = {c * a1.real() + s * a0.imag(), c * a1.imag() - s * a0.real()};
      }
    }
  }
}

void StatevectorSimulator::evolve(std::vector<std::complex<double>>& v,
                                  const AngleVector& angles) const {
  prepare_plus(v);
  for (int l = 0; l < angles.p; ++l) {
    apply_phase(v, angles.gamma[static_cast<std::size_t>(l)]);
    apply_mixer(v, angles.beta[static_cast<std::size_t>(l)]);
  }
}

std::vector<std::complex<double>> StatevectorSimulator::state(const AngleVector& angles) {
  check_angles(angles);
  std::vector<std::complex<double>> v;
  evolve(v, angles);
  return v;
}

double StatevectorSimulator::expectation(const AngleVector& angles) {
  check_angles(angles);
  evolve(psi_, angles);
  double f = 0.0;
  for (std::size_t x = 0; x < dim_; ++x) f += std::norm(psi_[x]) * cuts_[x];
  return f;
}

std::vector<double> StatevectorSimulator::gradient(const AngleVector& angles) {
  check_angles(angles);
  if (angles.p < 1) throw std::invalid_argument("gradient requires p >= 1");
  int p = angles.p;
  evolve(psi_, angles);
  lam_.resize(dim_);
  for (std::size_t x = 0; x < dim_; ++x) lam_[x] = psi_[x] * static_cast<double>(cuts_[x]);

  std::vector<double> grad(static_cast<std::size_t>(2 * p), 0.0);
  for (int l = p - 1; l >= 0; --l) {
    // dF/dbeta_l = 2 Im <lam| B |psi>, B = sum_q X_q
    double db = 0.0;
    for (int q = 0; q < n_; ++q) {
      std::size_t step = std::size_t{1} << q;
      for (std::size_t base = 0; base < dim_; base += 2 * step) {
        for (std::size_t k = base; k < base + step; ++k) {
          db += std::imag(std::conj(lam_[k]) * psi_[k + step]);
          db += std::imag(std::conj(lam_[k + step]) * psi_[k]);
        }
      }
    }
    grad[static_cast<std::size_t>(p + l)] = 2.0 * db;

    apply_mixer(psi_, -angles.beta[static_cast<std::size_t>(l)]);
    apply_mixer(lam_, -angles.beta[static_cast<std::size_t>(l)]);

    // dF/dgamma_l = 2 Im <lam| C |psi>
    double dg = 0.0;
    for (std::size_t x = 0; x < dim_; ++x)
      dg += cuts_[x] * std::imag(std::conj(lam_[x]) * psi_[x]);
    grad[static_cast<std::size_t>(l)] = 2.0 * dg;

    apply_phase(psi_, -angles.gamma[static_cast<std::size_t>(l)]);
    apply_phase(lam_, -angles.gamma[static_cast<std::size_t>(l)]);
  }
  return grad;
}

double StatevectorSimulator::success_probability(const AngleVector& angles, int c_max) {
  check_angles(angles);
  if (c_max > g_.edge_count())
    throw std::invalid_argument("c_max exceeds the edge count");
  evolve(psi_, angles);
  double prob = 0.0;
  for (std::size_t x = 0; x < dim_; ++x)
    if (cuts_[x] == c_max) prob += std::norm(psi_[x]);
  return prob;
}

SimResult StatevectorSimulator::simulate(const AngleVector& angles, int c_max) {
  check_angles(angles);
  if (c_max > g_.edge_count())
    throw std::invalid_argument("c_max exceeds the edge count");
  evolve(psi_, angles);
  SimResult r;
  r.optimal_cut = c_max;
  for (std::size_t x = 0; x < dim_; ++x) {
    double pr = std::norm(psi_[x]);
    r.cut_histogram[cuts_[x]] += pr;
    r.expectation += pr * cuts_[x];
  }
  auto it = r.cut_histogram.find(c_max);
  r.success_probability = (it == r.cut_histogram.end()) ? 0.0 : it->second;
  return r;
}

std::vector<std::complex<double>> qaoa_state(const Graph& g, const AngleVector& angles) {
  return StatevectorSimulator(g).state(angles);
}

double expected_cut(const Graph& g, const AngleVector& angles) {
  return StatevectorSimulator(g).expectation(angles);
}

std::vector<double> gradient(const Graph& g, const AngleVector& angles) {
  return StatevectorSimulator(g).gradient(angles);
}

double success_probability(const Graph& g, const AngleVector& angles, int c_max) {
  return StatevectorSimulator(g).success_probability(angles, c_max);
}

SimResult simulate(const Graph& g, const AngleVector& angles, int c_max) {
  return StatevectorSimulator(g).simulate(angles, c_max);
}

double approximation_ratio(const Graph& g, const AngleVector& angles, int c_max) {
  if (c_max < 1) throw std::invalid_argument("approximation ratio undefined for c_max < 1");
  return expected_cut(g, angles) / c_max;
}

double cut_fraction(const Graph& g, const AngleVector& angles) {
  if (g.edge_count() == 0) throw std::invalid_argument("cut fraction undefined for edgeless graphs");
  return expected_cut(g, angles) / g.edge_count();
}

}  // namespace qaoakit
