#include "qaoakit/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "qaoakit/canonical.hpp"
#include "qaoakit/parallel.hpp"
#include "qaoakit/rng.hpp"
#include "qaoakit/symmetry.hpp"

namespace qaoakit {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> flatten(const AngleVector& a) {
  std::vector<double> x(a.gamma);
  x.insert(x.end(), a.beta.begin(), a.beta.end());
  return x;
}

AngleVector unflatten(const std::vector<double>& x, int p) {
  return make_angles(std::vector<double>(x.begin(), x.begin() + p),
                     std::vector<double>(x.begin() + p, x.end()), AngleUnit::Radians);
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

int default_restarts(int p) {
  switch (p) {
    case 1: return 50;
    case 2: return 100;
    case 3: return 1000;
    default: return 0;
  }
}

AscentResult local_ascent(StatevectorSimulator& sim, const AngleVector& start,
                          int max_iterations, double gradient_tolerance) {
  if (start.p < 1) throw std::invalid_argument("local_ascent requires p >= 1");
  AngleVector rad = convert_units(start, AngleUnit::Radians);
  int p = rad.p;
  int dims = 2 * p;

  std::vector<double> x = flatten(rad);
  double f = sim.expectation(rad);
  std::vector<double> g = sim.gradient(rad);

  // inverse Hessian approximation for minimizing -F
  std::vector<double> h(static_cast<std::size_t>(dims * dims), 0.0);
  auto reset_h = [&] {
    std::fill(h.begin(), h.end(), 0.0);
    for (int i = 0; i < dims; ++i) h[static_cast<std::size_t>(i * dims + i)] = 1.0;
  };
  reset_h();

  AscentResult best;
  best.angles = rad;
  best.value = f;
  int it = 0;
  for (; it < max_iterations; ++it) {
    if (inf_norm(g) <= gradient_tolerance) {
      best.converged = true;
      break;
    }
    // direction d = H * g (ascent on F == descent on -F)
    std::vector<double> d(static_cast<std::size_t>(dims), 0.0);
    double dg = 0.0;
    for (int i = 0; i < dims; ++i) {
      double acc = 0.0;
      for (int j = 0; j < dims; ++j)
        acc += h[static_cast<std::size_t>(i * dims + j)] * g[static_cast<std::size_t>(j)];
      d[static_cast<std::size_t>(i)] = acc;
      dg += acc * g[static_cast<std::size_t>(i)];
    }
    if (dg <= 0.0) {
      d = g;
      dg = 0.0;
      for (double v : g) dg += v * v;
      reset_h();
    }

    // Armijo backtracking: F(x + t d) >= F(x) + c1 t <d, grad>
    const double c1 = 1e-4;
    double t = 1.0;
    double f_new = f;
    std::vector<double> x_new(static_cast<std::size_t>(dims));
    bool moved = false;
    while (t > 1e-16) {
      for (int i = 0; i < dims; ++i)
        x_new[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + t * d[static_cast<std::size_t>(i)];
      f_new = sim.expectation(unflatten(x_new, p));
      if (f_new >= f + c1 * t * dg) {
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) {
      best.converged = inf_norm(g) <= gradient_tolerance;
      break;
    }

    AngleVector next = unflatten(x_new, p);
    std::vector<double> g_new = sim.gradient(next);

    // BFGS update of H on (-F): s = x_new - x, y = (-g_new) - (-g) = g - g_new
    std::vector<double> s(static_cast<std::size_t>(dims)), y(static_cast<std::size_t>(dims));
    double sy = 0.0;
    for (int i = 0; i < dims; ++i) {
      s[static_cast<std::size_t>(i)] = x_new[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)];
      y[static_cast<std::size_t>(i)] = g[static_cast<std::size_t>(i)] - g_new[static_cast<std::size_t>(i)];
      sy += s[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
    }
    if (sy > 1e-12) {
      // H <- (I - s y^T / sy) H (I - y s^T / sy) + s s^T / sy
      std::vector<double> hy(static_cast<std::size_t>(dims), 0.0);
      for (int i = 0; i < dims; ++i) {
        double acc = 0.0;
        for (int j = 0; j < dims; ++j)
          acc += h[static_cast<std::size_t>(i * dims + j)] * y[static_cast<std::size_t>(j)];
        hy[static_cast<std::size_t>(i)] = acc;
      }
      double yhy = 0.0;
      for (int i = 0; i < dims; ++i) yhy += y[static_cast<std::size_t>(i)] * hy[static_cast<std::size_t>(i)];
      double rho = 1.0 / sy;
      for (int i = 0; i < dims; ++i) {
        for (int j = 0; j < dims; ++j) {
          double v = h[static_cast<std::size_t>(i * dims + j)];
          v -= rho * (s[static_cast<std::size_t>(i)] * hy[static_cast<std::size_t>(j)] +
                      hy[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(j)]);
          v += rho * rho * yhy * s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(j)];
          v += rho * s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(j)];
          h[static_cast<std::size_t>(i * dims + j)] = v;
        }
      }
    }

    x = x_new;
    f = f_new;
    g = std::move(g_new);
    if (f > best.value) {
      best.value = f;
      best.angles = unflatten(x, p);
    }
  }
  if (it == max_iterations) best.converged = inf_norm(g) <= gradient_tolerance;
  best.iterations = it;
  return best;
}

AscentResult local_ascent(const Graph& g, const AngleVector& start, int max_iterations,
                          double gradient_tolerance) {
  StatevectorSimulator sim(g);
  return local_ascent(sim, start, max_iterations, gradient_tolerance);
}

OptResult multistart_optimize(const Graph& g, int p, const OptConfig& cfg, unsigned threads,
                              bool collect_local_optima,
                              const std::vector<AngleVector>& extra_seeds,
                              bool include_depth_padding) {
  if (p < 1) throw std::invalid_argument("multistart_optimize requires p >= 1");
  int restarts = cfg.restarts > 0 ? cfg.restarts : default_restarts(p);
  if (restarts <= 0)
    throw std::invalid_argument("no default restart schedule for p > 3; set cfg.restarts");

  std::vector<AngleVector> seeds;
  for (const auto& s : extra_seeds) seeds.push_back(convert_units(s, AngleUnit::Radians));
  if (p >= 2 && include_depth_padding) {
    OptConfig sub = cfg;
    sub.restarts = 0;  // default schedule at each depth
    OptResult below = multistart_optimize(g, p - 1, sub, threads);
    AngleVector pad = convert_units(below.best_angles, AngleUnit::Radians);
    pad.gamma.push_back(0.0);
    pad.beta.push_back(0.0);
    pad.p = p;
    seeds.push_back(std::move(pad));
  }
  std::uint64_t cert_key = fnv1a64(canonical_certificate(g).bytes);
  std::uint64_t base = mix64(mix64(cfg.seed, cert_key), static_cast<std::uint64_t>(p));
  for (int r = 0; r < restarts; ++r) {
    SplitMix64 rng(mix64(base, static_cast<std::uint64_t>(r)));
    std::vector<double> gamma, beta;
    for (int l = 0; l < p; ++l) {
      gamma.push_back(rng.uniform(-cfg.gamma_box, cfg.gamma_box));
      beta.push_back(rng.uniform(-cfg.beta_box, cfg.beta_box));
    }
    seeds.push_back(make_angles(std::move(gamma), std::move(beta), AngleUnit::Radians));
  }

  std::vector<AscentResult> results(seeds.size());
  parallel_for(seeds.size(), threads, [&](std::size_t i) {
    StatevectorSimulator local(g);
    results[i] = local_ascent(local, seeds[i], cfg.max_iterations, cfg.gradient_tolerance);
  });

  // ordered reduction: higher value wins, ties to the lower restart index
  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i)
    if (results[i].value > results[best].value) best = i;

  OptResult out;
  out.best_angles = convert_units(results[best].angles, AngleUnit::PiUnits);
  out.best_value = results[best].value;
  out.n_restarts_used = static_cast<int>(seeds.size());
  for (const auto& r : results) out.all_converged = out.all_converged && r.converged;
  if (collect_local_optima) {
    std::vector<std::pair<AngleVector, double>> all;
    all.reserve(results.size());
    for (const auto& r : results)
      all.emplace_back(convert_units(r.angles, AngleUnit::PiUnits), r.value);
    out.all_local_optima = std::move(all);
  }
  return out;
}

std::vector<AngleVector> enumerate_degenerate_optima(const Graph& g, int p, int grid_per_gamma,
                                                     int grid_per_beta, double value_tol,
                                                     double merge_tol, unsigned threads) {
  if (p < 1) throw std::invalid_argument("enumerate_degenerate_optima requires p >= 1");
  if (grid_per_gamma < 1 || grid_per_beta < 1)
    throw std::invalid_argument("grid sizes must be positive");

  // cell-centered grid over gamma in [-pi, pi], beta in [-pi/4, pi/4]
  std::vector<double> gvals, bvals;
  for (int i = 0; i < grid_per_gamma; ++i)
    gvals.push_back(-kPi + (i + 0.5) * 2.0 * kPi / grid_per_gamma);
  for (int i = 0; i < grid_per_beta; ++i)
    bvals.push_back(-kPi / 4 + (i + 0.5) * kPi / 2 / grid_per_beta);

  std::size_t per_layer = gvals.size() * bvals.size();
  std::size_t total = 1;
  for (int l = 0; l < p; ++l) total *= per_layer;

  std::vector<AscentResult> results(total);
  parallel_for(total, threads, [&](std::size_t idx) {
    std::size_t rem = idx;
    std::vector<double> gamma(static_cast<std::size_t>(p)), beta(static_cast<std::size_t>(p));
    for (int l = 0; l < p; ++l) {
      std::size_t cell = rem % per_layer;
      rem /= per_layer;
      gamma[static_cast<std::size_t>(l)] = gvals[cell / bvals.size()];
      beta[static_cast<std::size_t>(l)] = bvals[cell % bvals.size()];
    }
    StatevectorSimulator sim(g);
    results[idx] = local_ascent(sim, make_angles(gamma, beta, AngleUnit::Radians), 500, 1e-8);
  });

  double best = 0.0;
  for (const auto& r : results) best = std::max(best, r.value);

  std::vector<AngleVector> optima;
  std::vector<double> values;
  for (const auto& r : results) {
    if (r.value < best - value_tol) continue;
    optima.push_back(reduce_to_fundamental_box(r.angles));
    values.push_back(r.value);
  }

  // single-link merge with a toroidal max-norm metric
  auto toroidal_dist = [p](const AngleVector& a, const AngleVector& b) {
    double m = 0.0;
    for (int l = 0; l < p; ++l) {
      double dg = std::abs(std::remainder(
          a.gamma[static_cast<std::size_t>(l)] - b.gamma[static_cast<std::size_t>(l)], 2.0 * kPi));
      double db = std::abs(std::remainder(
          a.beta[static_cast<std::size_t>(l)] - b.beta[static_cast<std::size_t>(l)], kPi / 2));
      m = std::max({m, dg, db});
    }
    return m;
  };
  std::size_t m = optima.size();
  std::vector<std::size_t> root(m);
  for (std::size_t i = 0; i < m; ++i) root[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    while (root[v] != v) {
      root[v] = root[root[v]];
      v = root[v];
    }
    return v;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (toroidal_dist(optima[i], optima[j]) <= merge_tol) {
        std::size_t a = find(i), b = find(j);
        if (a != b) root[std::max(a, b)] = std::min(a, b);
      }

  // representative per cluster: highest value, ties to the first
  std::vector<AngleVector> reps;
  for (std::size_t i = 0; i < m; ++i) {
    if (find(i) != i) continue;
    std::size_t pick = i;
    for (std::size_t j = i; j < m; ++j)
      if (find(j) == i && values[j] > values[pick]) pick = j;
    reps.push_back(optima[pick]);
  }
  std::sort(reps.begin(), reps.end(), [p](const AngleVector& a, const AngleVector& b) {
    for (int l = 0; l < p; ++l) {
      if (a.gamma[static_cast<std::size_t>(l)] != b.gamma[static_cast<std::size_t>(l)])
        return a.gamma[static_cast<std::size_t>(l)] < b.gamma[static_cast<std::size_t>(l)];
      if (a.beta[static_cast<std::size_t>(l)] != b.beta[static_cast<std::size_t>(l)])
        return a.beta[static_cast<std::size_t>(l)] < b.beta[static_cast<std::size_t>(l)];
    }
    return false;
  });
  return reps;
}

}  // namespace qaoakit
