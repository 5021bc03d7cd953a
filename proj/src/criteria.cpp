#include "spherik/criteria.hpp"

#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "spherik/cone.hpp"

namespace spherik {

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kExists:
      return "EXISTS";
    case Outcome::kNotExists:
      return "NOT_EXISTS";
    case Outcome::kIndeterminate:
      return "INDETERMINATE";
  }
  return {};
}

Outcome outcome_from_string(const std::string& text) {
  if (text == "EXISTS") return Outcome::kExists;
  if (text == "NOT_EXISTS") return Outcome::kNotExists;
  if (text == "INDETERMINATE") return Outcome::kIndeterminate;
  throw std::invalid_argument("unknown outcome '" + text + "'");
}

Rational normalized_L(const NormalizedModel& model, const FunctionalData& data,
                      const PLFunction& f) {
  const Rational norm =
      integrate_pl(model, f, data.P) - minimum_on_polytope(model, f) * data.vol_P;
  if (norm == 0) return 0;
  return eval_L(model, data, f) / norm;
}

// ---------------------------------------------------------------------------

Verdict check_fano_KE(const NormalizedModel& model, const FunctionalData& data) {
  if (!model.fano) {
    throw NotApplicable("check-fano needs data flagged \"fano\": true (anticanonical Δ)");
  }
  Verdict v;
  v.criterion = "fano-barycenter";
  const Vector bary = weighted_barycenter(model, data.P);
  const Vector offset = bary - model.two_varpi_active;
  v.diagnostics = {{"barycenter", to_string(bary)},
                   {"two_varpi_X", to_string(model.two_varpi_active)},
                   {"barycenter - 2varpi_X", to_string(offset)}};
  const auto m = model.to_lattice_coordinates(offset);
  if (!m) {
    v.outcome = Outcome::kNotExists;
    v.certificate = "barycenter - 2ϖ_X is not in the span of M";
    return v;
  }
  v.diagnostics.emplace_back("offset_in_M", to_string(*m));
  const PolyhedralCone target = dual_cone(model.valuation_cone.negated());
  const RelintReport report = relint_check(target, *m);
  v.diagnostics.emplace_back("cone_membership", report.describe());
  if (report.inside()) {
    v.outcome = Outcome::kExists;
    v.certificate = "barycenter - 2ϖ_X lies in relint (-𝒱)^∨";
  } else {
    v.outcome = Outcome::kNotExists;
    v.certificate = "barycenter - 2ϖ_X ∉ relint (-𝒱)^∨: " + report.describe();
  }
  return v;
}

Verdict check_fano_KE(const NormalizedModel& model) {
  return check_fano_KE(model, functional_data(model));
}

// ---------------------------------------------------------------------------

Verdict check_rank_one(const NormalizedModel& model, const FunctionalData& data) {
  if (model.rank != 1) {
    throw NotApplicable("rank-one criterion needs rank 1, model has rank " +
                        std::to_string(model.rank));
  }
  Verdict v;
  v.criterion = "rank-one";
  v.diagnostics.emplace_back("a", to_string(data.a));
  const bool horo = is_horospherical(model);
  v.diagnostics.emplace_back("horospherical", horo ? "true" : "false");

  if (horo) {
    const PLFunction up = affine_function(0, make_vector({1}));
    const PLFunction down = affine_function(0, make_vector({-1}));
    const Rational l_up = eval_L(model, data, up);
    v.diagnostics.emplace_back("L(-q)", to_string(l_up));
    v.diagnostics.emplace_back("L(q)", to_string(Rational(-l_up)));
    if (l_up == 0) {
      v.outcome = Outcome::kExists;
      v.certificate = "horospherical and L vanishes on the lineality directions";
    } else {
      v.outcome = Outcome::kNotExists;
      v.witness = l_up < 0 ? Witness{up, l_up} : Witness{down, -l_up};
      v.certificate = "L is nonzero on a product direction (Futaki obstruction)";
    }
    return v;
  }

  const auto& gens = model.valuation_cone.generators();
  if (gens.empty()) {
    throw InputError("valuation_cone", "rank-one criterion needs a nonzero valuation cone");
  }
  const PLFunction f = affine_function(0, gens.front());
  const Rational value = eval_L(model, data, f);
  v.diagnostics.emplace_back("ell", to_string(gens.front()));
  v.diagnostics.emplace_back("L(ell)", to_string(value));
  if (value > 0) {
    v.outcome = Outcome::kExists;
    v.certificate = "L(ℓ) > 0";
  } else {
    v.outcome = Outcome::kNotExists;
    v.witness = Witness{f, value};
    v.certificate = value == 0 ? "L(ℓ) = 0 on a non-horospherical model" : "L(ℓ) < 0";
  }
  return v;
}

// ---------------------------------------------------------------------------

namespace {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct CreaseProblem {
  const NormalizedModel* model;
  const FunctionalData* data;
  double margin;
  long evaluations = 0;

  PLFunction crease(const Vector& n, const Rational& s) const {
    Rational lo = dot(n, model->polytope.vertices()[0]);
    Rational hi = lo;
    for (const auto& q : model->polytope.vertices()) {
      const Rational h = dot(n, q);
      lo = std::min(lo, h);
      hi = std::max(hi, h);
    }
    const Rational t = lo + s * (hi - lo);
    return PLFunction{{Piece{0, zero_vector(2)}, Piece{-t, -n}}};
  }

  double clamp_offset(double s) const { return std::clamp(s, margin, 1.0 - margin); }

  PLFunction crease_at(double theta, double s) const {
    const Vector n = from_doubles({std::cos(theta), std::sin(theta)});
    return crease(n, from_doubles({clamp_offset(s)})[0]);
  }

  double value(double theta, double s) {
    ++evaluations;
    return normalized_L(*model, *data, crease_at(theta, s)).get_d();
  }
};

double crease_objective(const gsl_vector* x, void* params) {
  auto* p = static_cast<CreaseProblem*>(params);
  return p->value(gsl_vector_get(x, 0), gsl_vector_get(x, 1));
}

struct Candidate {
  double value;
  double theta;
  double s;
};

Candidate refine(CreaseProblem& problem, const Candidate& start, double step_theta,
                 double step_s, int iterations) {
  gsl_multimin_function fn{&crease_objective, 2, &problem};
  gsl_vector* x = gsl_vector_alloc(2);
  gsl_vector* step = gsl_vector_alloc(2);
  gsl_vector_set(x, 0, start.theta);
  gsl_vector_set(x, 1, start.s);
  gsl_vector_set(step, 0, step_theta);
  gsl_vector_set(step, 1, step_s);
  gsl_multimin_fminimizer* m = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2);
  gsl_multimin_fminimizer_set(m, &fn, x, step);
  for (int it = 0; it < iterations; ++it) {
    if (gsl_multimin_fminimizer_iterate(m)) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m), 1e-10) == GSL_SUCCESS) break;
  }
  Candidate best{m->fval, gsl_vector_get(m->x, 0), problem.clamp_offset(gsl_vector_get(m->x, 1))};
  gsl_multimin_fminimizer_free(m);
  gsl_vector_free(step);
  gsl_vector_free(x);
  return best.value < start.value ? best : start;
}

// Small-denominator version of a crease; nullopt if it loses the sign.
std::optional<Witness> rational_witness(const CreaseProblem& problem, const Candidate& c) {
  const NormalizedModel& model = *problem.model;
  const FunctionalData& data = *problem.data;
  for (long den : {12L, 60L, 1000L, 100000L}) {
    Vector n{rationalize(std::cos(c.theta), den), rationalize(std::sin(c.theta), den)};
    if (is_zero(n)) continue;
    n = primitive(n);
    const PLFunction f = problem.crease(n, rationalize(problem.clamp_offset(c.s), den));
    const Rational value = eval_L(model, data, f);
    if (value < 0) return Witness{f, value};
  }
  const PLFunction f = problem.crease_at(c.theta, c.s);
  const Rational value = eval_L(model, data, f);
  if (value < 0) return Witness{f, value};
  return std::nullopt;
}

}  // namespace

Verdict check_toric_surface(const NormalizedModel& model, const FunctionalData& data,
                            const ToricSurfaceOptions& options) {
  if (model.rank != 2 || !model.is_toric()) {
    throw NotApplicable("toric-surface criterion needs toric data of rank 2");
  }
  Verdict v;
  v.criterion = "toric-surface";
  v.diagnostics.emplace_back("a", to_string(data.a));

  // Stage (i): L on affine functions.
  for (std::size_t i = 0; i < 2; ++i) {
    Vector slope = zero_vector(2);
    slope[i] = -1;
    const PLFunction coord = affine_function(0, slope);
    const Rational value = eval_L(model, data, coord);
    v.diagnostics.emplace_back("L(q" + std::to_string(i + 1) + ")", to_string(value));
    if (value != 0 && !v.witness) {
      v.witness = value < 0 ? Witness{coord, value}
                            : Witness{affine_function(0, -slope), Rational(-value)};
    }
  }
  if (v.witness) {
    v.outcome = Outcome::kNotExists;
    v.certificate = "L does not vanish on affine functions (Futaki obstruction)";
    return v;
  }

  // Stage (ii): simple creases, grid then Nelder–Mead.
  CreaseProblem problem{&model, &data, options.offset_margin};
  std::vector<Candidate> grid;
  const double two_pi = 2 * std::numbers::pi;
  for (int i = 0; i < options.angle_steps; ++i) {
    const double theta = two_pi * i / options.angle_steps;
    for (int j = 0; j < options.offset_steps; ++j) {
      const double s = options.offset_margin +
                       (1 - 2 * options.offset_margin) * (j + 0.5) / options.offset_steps;
      grid.push_back({problem.value(theta, s), theta, s});
    }
  }
  std::sort(grid.begin(), grid.end(), [](const Candidate& x, const Candidate& y) {
    return std::tie(x.value, x.theta, x.s) < std::tie(y.value, y.theta, y.s);
  });
  Candidate best = grid.front();
  const int starts = std::min<int>(options.refine_starts, static_cast<int>(grid.size()));
  for (int k = 0; k < starts; ++k) {
    const Candidate c = refine(problem, grid[k], two_pi / options.angle_steps,
                               0.5 / options.offset_steps, options.refine_iterations);
    if (c.value < best.value) best = c;
  }
  v.diagnostics.emplace_back("search_minimum", format_double(best.value));
  v.diagnostics.emplace_back("argmin_theta", format_double(best.theta));
  v.diagnostics.emplace_back("argmin_offset", format_double(best.s));
  v.diagnostics.emplace_back("evaluations", std::to_string(problem.evaluations));
  v.diagnostics.emplace_back("tol", format_double(options.tol));

  if (best.value > options.tol) {
    v.outcome = Outcome::kExists;
    v.certificate = "L vanishes on affine functions and the crease search minimum exceeds tol";
  } else if (best.value < -options.tol) {
    if (auto w = rational_witness(problem, best)) {
      v.outcome = Outcome::kNotExists;
      v.witness = std::move(w);
      v.certificate = "crease function with exact L < 0";
    } else {
      v.outcome = Outcome::kIndeterminate;
      v.certificate = "numeric negative crease could not be certified exactly";
    }
  } else {
    v.outcome = Outcome::kIndeterminate;
    v.certificate = "crease search minimum within tol of zero";
  }
  return v;
}

}  // namespace spherik
