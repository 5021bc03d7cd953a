#include "spherik/functional.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "spherik/integration.hpp"

namespace spherik {

using nlohmann::json;

Rational PLFunction::operator()(const Vector& q) const {
  const Piece& p = pieces[active_piece(q)];
  return p.c - dot(p.v, q);
}

double PLFunction::operator()(const std::vector<double>& q) const {
  double best = -1e300;
  for (const auto& p : pieces) {
    double value = p.c.get_d();
    for (std::size_t i = 0; i < q.size(); ++i) value -= p.v[i].get_d() * q[i];
    best = std::max(best, value);
  }
  return best;
}

std::size_t PLFunction::active_piece(const Vector& q) const {
  std::size_t best = 0;
  Rational best_value = pieces[0].c - dot(pieces[0].v, q);
  for (std::size_t j = 1; j < pieces.size(); ++j) {
    Rational value = pieces[j].c - dot(pieces[j].v, q);
    if (value > best_value) {
      best = j;
      best_value = value;
    }
  }
  return best;
}

PLFunction constant_function(std::size_t variables, const Rational& c) {
  return PLFunction{{Piece{c, zero_vector(variables)}}};
}

PLFunction affine_function(const Rational& c, const Vector& v) { return PLFunction{{Piece{c, v}}}; }

PLFunction piecewise_sum(const PLFunction& f, const PLFunction& g) {
  PLFunction h;
  for (const auto& a : f.pieces)
    for (const auto& b : g.pieces) h.pieces.push_back({a.c + b.c, a.v + b.v});
  return h;
}

PLFunction scale(const PLFunction& f, const Rational& t) {
  if (t <= 0) throw std::invalid_argument("scale: factor must be positive");
  PLFunction h = f;
  for (auto& p : h.pieces) {
    p.c *= t;
    p.v = t * p.v;
  }
  return h;
}

namespace {

Rational json_rational(const json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw InputError(path, e.what());
    }
  }
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  throw InputError(path, "expected a rational string \"p/q\"");
}

}  // namespace

PLFunction pl_function_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("pieces")) throw InputError("pieces", "missing required field");
  const json& pieces = doc["pieces"];
  if (!pieces.is_array() || pieces.empty()) throw InputError("pieces", "expected a nonempty array");
  PLFunction f;
  for (std::size_t j = 0; j < pieces.size(); ++j) {
    const std::string path = "pieces[" + std::to_string(j) + "]";
    const json& p = pieces[j];
    if (!p.is_object() || !p.contains("c") || !p.contains("v")) {
      throw InputError(path, "expected {\"c\": ..., \"v\": [...]}");
    }
    Piece piece;
    piece.c = json_rational(p["c"], path + ".c");
    if (!p["v"].is_array()) throw InputError(path + ".v", "expected an array");
    for (std::size_t i = 0; i < p["v"].size(); ++i) {
      piece.v.push_back(json_rational(p["v"][i], path + ".v[" + std::to_string(i) + "]"));
    }
    if (j > 0 && piece.v.size() != f.pieces[0].v.size()) {
      throw InputError(path + ".v", "slope dimension differs from pieces[0]");
    }
    f.pieces.push_back(std::move(piece));
  }
  return f;
}

PLFunction parse_pl_function(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("", std::string("malformed JSON: ") + e.what());
  }
  return pl_function_from_json(doc);
}

PLFunction load_pl_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("", "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  return parse_pl_function(text);
}

json to_json(const PLFunction& f) {
  json pieces = json::array();
  for (const auto& p : f.pieces) {
    json v = json::array();
    for (const auto& x : p.v) v.push_back(to_string(x));
    pieces.push_back({{"c", to_string(p.c)}, {"v", v}});
  }
  return {{"pieces", pieces}};
}

std::pair<Polynomial, Polynomial> weight_polynomials(const NormalizedModel& model) {
  const std::size_t r = model.rank;
  std::vector<Polynomial> factors;
  for (std::size_t idx : model.active_roots) {
    const Rational& denom = model.root_on_varpi[idx];
    if (denom == 0) {
      throw InputError("positive_roots[" + std::to_string(idx) + "]",
                       "active root with κ(α, ϖ) = 0");
    }
    const AffineForm& form = model.root_forms[idx];
    factors.push_back(Polynomial::affine(form.constant / denom, (1 / denom) * form.linear));
  }
  Polynomial P = Polynomial::constant(r, 1);
  for (const auto& f : factors) P = P * f;
  Polynomial Q(r);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    Polynomial term = Polynomial::constant(r, 1);
    for (std::size_t j = 0; j < factors.size(); ++j)
      if (j != i) term = term * factors[j];
    Q += term;
  }
  return {P, Q};
}

Rational mean_constant(const NormalizedModel& model, const Polynomial& P, const Polynomial& Q) {
  const Rational vol = integrate_polynomial(P, model.polytope);
  if (vol <= 0) throw GeometryError(GeometryError::Kind::kDegenerate, "∫_Δ P dμ vanishes");
  return (integrate_polynomial_boundary(P, model.polytope) +
          2 * integrate_polynomial(Q, model.polytope)) /
         vol;
}

FunctionalData functional_data(const NormalizedModel& model) {
  FunctionalData d;
  std::tie(d.P, d.Q) = weight_polynomials(model);
  d.vol_P = integrate_polynomial(d.P, model.polytope);
  if (d.vol_P <= 0) throw GeometryError(GeometryError::Kind::kDegenerate, "∫_Δ P dμ vanishes");
  d.boundary_P = integrate_polynomial_boundary(d.P, model.polytope);
  d.int_Q = integrate_polynomial(d.Q, model.polytope);
  d.a = (d.boundary_P + 2 * d.int_Q) / d.vol_P;
  return d;
}

Vector weighted_barycenter(const NormalizedModel& model, const Polynomial& P) {
  const Rational vol = integrate_polynomial(P, model.polytope);
  if (vol <= 0) throw GeometryError(GeometryError::Kind::kDegenerate, "∫_Δ P dμ vanishes");
  Vector q(model.rank);
  for (std::size_t i = 0; i < model.rank; ++i) {
    q[i] = integrate_polynomial(Polynomial::variable(model.rank, i) * P, model.polytope) / vol;
  }
  return model.to_ambient(q);
}

void check_slopes(const NormalizedModel& model, const PLFunction& f) {
  if (f.pieces.empty()) throw InputError("pieces", "a PL function needs at least one piece");
  for (std::size_t j = 0; j < f.pieces.size(); ++j) {
    const std::string path = "pieces[" + std::to_string(j) + "].v";
    if (f.pieces[j].v.size() != model.rank) {
      throw InputError(path, "slope has dimension " + std::to_string(f.pieces[j].v.size()) +
                                 ", model rank is " + std::to_string(model.rank));
    }
    if (!model.valuation_cone.contains(f.pieces[j].v)) {
      throw InputError(path, "slope " + to_string(f.pieces[j].v) +
                                 " is not in the valuation cone (f is not in C)");
    }
  }
}

LinearityDecomposition linearity_domains(const NormalizedModel& model, const PLFunction& f) {
  const auto& base = model.polytope.halfspaces();
  LinearityDecomposition out;
  for (std::size_t j = 0; j < f.pieces.size(); ++j) {
    std::vector<Halfspace> hs;
    for (std::size_t i = 0; i < base.size(); ++i) {
      hs.push_back({base[i].normal, base[i].bound, static_cast<int>(i)});
    }
    bool empty = false;
    for (std::size_t i = 0; i < f.pieces.size() && !empty; ++i) {
      if (i == j) continue;
      const Vector n = f.pieces[j].v - f.pieces[i].v;
      const Rational b = f.pieces[j].c - f.pieces[i].c;
      if (is_zero(n)) {
        // Parallel copies: the larger constant wins, ties go to the first.
        empty = b < 0 || (b == 0 && i < j);
        continue;
      }
      hs.push_back({n, b, -1});
    }
    Polytope region;
    if (empty || Polytope::build(model.rank, std::move(hs), &region) != Polytope::Status::kOk) {
      out.redundant.push_back(j);
      continue;
    }
    const bool full = region.is_full_dimensional();
    if (full) {
      ++out.nld;
    } else {
      out.redundant.push_back(j);
    }
    out.regions.push_back({j, std::move(region), full});
  }
  return out;
}

PLFunction canonicalize(const NormalizedModel& model, const PLFunction& f) {
  PLFunction merged;
  for (const auto& p : f.pieces) {
    auto it = std::find_if(merged.pieces.begin(), merged.pieces.end(),
                           [&](const Piece& q) { return q.v == p.v; });
    if (it == merged.pieces.end()) {
      merged.pieces.push_back(p);
    } else if (p.c > it->c) {
      it->c = p.c;
    }
  }
  const auto dec = linearity_domains(model, merged);
  PLFunction out;
  for (const auto& reg : dec.regions) {
    if (reg.full_dimensional) out.pieces.push_back(merged.pieces[reg.piece]);
  }
  return out;
}

namespace {

struct PLIntegrals {
  Rational interior;
  Rational boundary;
};

PLIntegrals integrate_regions(const NormalizedModel& model, const PLFunction& f,
                              const Polynomial* interior_weight,
                              const Polynomial* boundary_weight) {
  PLIntegrals out;
  for (const auto& reg : linearity_domains(model, f).regions) {
    if (!reg.full_dimensional) continue;
    const Piece& piece = f.pieces[reg.piece];
    const Polynomial affine = Polynomial::affine(piece.c, -piece.v);
    if (interior_weight) {
      out.interior += integrate_polynomial(affine * *interior_weight, reg.polytope);
    }
    if (boundary_weight) {
      const Polynomial g = affine * *boundary_weight;
      for (const auto& facet : reg.polytope.facets()) {
        if (reg.polytope.halfspaces()[facet.halfspace].tag >= 0) {
          out.boundary += integrate_on_facet(g, reg.polytope, facet);
        }
      }
    }
  }
  return out;
}

}  // namespace

Rational integrate_pl(const NormalizedModel& model, const PLFunction& f, const Polynomial& w) {
  return integrate_regions(model, f, &w, nullptr).interior;
}

Rational integrate_pl_boundary(const NormalizedModel& model, const PLFunction& f,
                               const Polynomial& w) {
  return integrate_regions(model, f, nullptr, &w).boundary;
}

Rational minimum_on_polytope(const NormalizedModel& model, const PLFunction& f) {
  std::optional<Rational> best;
  for (const auto& reg : linearity_domains(model, f).regions) {
    for (const auto& q : reg.polytope.vertices()) {
      const Rational value = f(q);
      if (!best || value < *best) best = value;
    }
  }
  return *best;
}

Rational eval_L(const NormalizedModel& model, const FunctionalData& data, const PLFunction& f) {
  check_slopes(model, f);
  const Polynomial w = data.a * data.P - Rational(2) * data.Q;
  const PLIntegrals parts = integrate_regions(model, f, &w, &data.P);
  return parts.boundary - parts.interior;
}

bool is_product_function(const NormalizedModel& model, const PLFunction& f) {
  const PLFunction g = canonicalize(model, f);
  return g.pieces.size() == 1 && model.valuation_cone.in_lineality(g.pieces[0].v);
}

}  // namespace spherik
