#include "spherik/search.hpp"

#include <gsl/gsl_multimin.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "spherik/criteria.hpp"

namespace spherik {

std::vector<double> project_onto_cone(const PolyhedralCone& cone, const std::vector<double>& x) {
  const auto& gens = cone.generators();
  const auto& lin = cone.lineality();
  const std::size_t k = gens.size(), l = lin.size(), n = cone.dim();
  if (k > 16) throw std::invalid_argument("project_onto_cone: too many generators");
  Eigen::VectorXd target(n);
  for (std::size_t i = 0; i < n; ++i) target(i) = x[i];

  std::vector<double> best(k + l, 0.0);
  double best_dist = std::numeric_limits<double>::infinity();
  for (unsigned long mask = 0; mask < (1UL << k); ++mask) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < k; ++j)
      if (mask & (1UL << j)) cols.push_back(j);
    const std::size_t w = cols.size() + l;
    if (w > n) continue;
    Eigen::MatrixXd b(n, w);
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t i = 0; i < n; ++i) b(i, c) = gens[cols[c]][i].get_d();
    for (std::size_t c = 0; c < l; ++c)
      for (std::size_t i = 0; i < n; ++i) b(i, cols.size() + c) = lin[c][i].get_d();
    Eigen::VectorXd z = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(w));
    if (w > 0) {
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(b);
      if (static_cast<std::size_t>(qr.rank()) < w) continue;
      z = qr.solve(target);
    }
    bool feasible = true;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (z(c) < -1e-12) feasible = false;
      z(c) = std::max(0.0, z(c));
    }
    if (!feasible) continue;
    const double dist = w > 0 ? (b * z - target).norm() : target.norm();
    if (dist < best_dist) {
      best_dist = dist;
      std::fill(best.begin(), best.end(), 0.0);
      for (std::size_t c = 0; c < cols.size(); ++c) best[cols[c]] = z(c);
      for (std::size_t c = 0; c < l; ++c) best[k + c] = z(cols.size() + c);
    }
  }
  return best;
}

namespace {

struct Problem {
  const NormalizedModel* model;
  const FunctionalData* data;
  std::size_t pieces;
  std::size_t evaluations = 0;

  std::size_t r() const { return model->rank; }
  std::size_t width() const { return r() + 1; }

  // Slopes are the exact images of the projected coefficients, so they lie in
  // 𝒱 regardless of rounding.
  Vector slope(const double* y, std::vector<double>* coeffs_out = nullptr) const {
    const auto& cone = model->valuation_cone;
    const std::vector<double> coeffs = project_onto_cone(cone, std::vector<double>(y, y + r()));
    Vector v = zero_vector(r());
    const std::size_t k = cone.generators().size();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const Rational c = from_doubles({coeffs[i]})[0];
      const Vector& g = i < k ? cone.generators()[i] : cone.lineality()[i - k];
      v = v + c * g;
    }
    if (coeffs_out) *coeffs_out = coeffs;
    return v;
  }

  PLFunction function(const double* x) const {
    PLFunction f;
    for (std::size_t j = 0; j < pieces; ++j) {
      const double* p = x + j * width();
      f.pieces.push_back({from_doubles({p[0]})[0], slope(p + 1)});
    }
    return f;
  }

  double value(const double* x) {
    ++evaluations;
    return normalized_L(*model, *data, function(x)).get_d();
  }
};

double objective(const gsl_vector* x, void* params) {
  return static_cast<Problem*>(params)->value(x->data);
}

// Portable generators: mt19937_64 output mapped by hand.
struct Rng {
  std::mt19937_64 engine;
  double uniform() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }
  double normal() {
    double u = uniform();
    while (u <= 0) u = uniform();
    return std::sqrt(-2 * std::log(u)) * std::cos(2 * 3.141592653589793 * uniform());
  }
};

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct RestartResult {
  std::vector<double> x;
  double value = std::numeric_limits<double>::infinity();
  std::size_t evaluations = 0;
};

RestartResult run_restart(const NormalizedModel& model, const FunctionalData& data,
                          std::size_t pieces, std::size_t budget, std::uint64_t seed) {
  Problem problem{&model, &data, pieces};
  Rng rng{std::mt19937_64(seed)};
  const auto& verts = model.polytope.vertices();
  const std::size_t r = model.rank;
  double diam = 0;
  for (const auto& a : verts)
    for (const auto& b : verts) {
      double d = 0;
      for (std::size_t i = 0; i < r; ++i) d += std::pow(Rational(a[i] - b[i]).get_d(), 2);
      diam = std::max(diam, std::sqrt(d));
    }

  const std::size_t n = pieces * (r + 1);
  gsl_vector* x = gsl_vector_alloc(n);
  gsl_vector* step = gsl_vector_alloc(n);
  for (std::size_t j = 0; j < pieces; ++j) {
    // Anchor piece j at a random point of Δ so that creases cross it.
    std::vector<double> w(verts.size());
    double total = 0;
    for (auto& wi : w) {
      double u = rng.uniform();
      while (u <= 0) u = rng.uniform();
      wi = -std::log(u);
      total += wi;
    }
    std::vector<double> anchor(r, 0.0);
    for (std::size_t vi = 0; vi < verts.size(); ++vi)
      for (std::size_t i = 0; i < r; ++i) anchor[i] += w[vi] / total * verts[vi][i].get_d();
    std::vector<double> y(r);
    for (auto& yi : y) yi = rng.normal();
    std::vector<double> coeffs;
    const Vector v = problem.slope(y.data(), &coeffs);
    double c = 0;
    for (std::size_t i = 0; i < r; ++i) c += v[i].get_d() * anchor[i];
    gsl_vector_set(x, j * (r + 1), c);
    gsl_vector_set(step, j * (r + 1), 0.25 * std::max(diam, 1.0));
    for (std::size_t i = 0; i < r; ++i) {
      gsl_vector_set(x, j * (r + 1) + 1 + i, v[i].get_d());
      gsl_vector_set(step, j * (r + 1) + 1 + i, 0.5);
    }
  }

  RestartResult result;
  gsl_multimin_function fn{&objective, n, &problem};
  gsl_multimin_fminimizer* m = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
  gsl_multimin_fminimizer_set(m, &fn, x, step);
  while (problem.evaluations < budget) {
    if (gsl_multimin_fminimizer_iterate(m)) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m), 1e-9) == GSL_SUCCESS) break;
  }
  result.value = m->fval;
  result.x.assign(m->x->data, m->x->data + n);
  result.evaluations = problem.evaluations;
  gsl_multimin_fminimizer_free(m);
  gsl_vector_free(step);
  gsl_vector_free(x);
  return result;
}

}  // namespace

SearchReport search_destabilizer(const NormalizedModel& model, const FunctionalData& data,
                                 const SearchOptions& options) {
  if (options.m < 1) throw std::invalid_argument("search: m must be at least 1");
  if (options.restarts < 1) throw std::invalid_argument("search: need at least one restart");
  SearchReport report;
  report.m = options.m;
  report.seed = options.seed;

  const std::size_t per_restart = std::max<std::size_t>(options.budget / options.restarts, 1);
  std::vector<RestartResult> results(options.restarts);
  std::size_t threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, options.restarts);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < options.restarts; i += threads) {
        results[i] = run_restart(model, data, options.m, per_restart,
                                 splitmix(options.seed ^ splitmix(i + 1)));
      }
    });
  }
  for (auto& th : pool) th.join();

  std::size_t best = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    report.trace.push_back(results[i].value);
    report.evaluations += results[i].evaluations;
    if (results[i].value < results[best].value) best = i;  // ties keep the lower index
  }

  Problem problem{&model, &data, options.m};
  const PLFunction dyadic = problem.function(results[best].x.data());
  const Rational dyadic_value = normalized_L(model, data, dyadic);

  // Prefer a small-denominator representative when it is at least as good.
  PLFunction rounded;
  for (const auto& p : dyadic.pieces) {
    Vector v = p.v;
    for (auto& x : v) x = rationalize(x.get_d(), 1000);
    rounded.pieces.push_back({rationalize(p.c.get_d(), 1000), v});
  }
  bool use_rounded = true;
  for (const auto& p : rounded.pieces) use_rounded = use_rounded && model.valuation_cone.contains(p.v);
  PLFunction chosen = dyadic;
  Rational chosen_value = dyadic_value;
  if (use_rounded) {
    const Rational rounded_value = normalized_L(model, data, rounded);
    const double gap = std::abs(Rational(rounded_value - dyadic_value).get_d());
    const bool same_sign = (rounded_value < 0) == (dyadic_value < 0);
    if (rounded_value <= dyadic_value ||
        (same_sign && gap <= 1e-6 * std::max(1.0, std::abs(dyadic_value.get_d())))) {
      chosen = rounded;
      chosen_value = rounded_value;
    }
  }
  report.best_f = canonicalize(model, chosen);
  report.best_value = eval_L(model, data, report.best_f);
  report.best_normalized = chosen_value;
  return report;
}

}  // namespace spherik
