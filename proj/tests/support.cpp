#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace spherik::testing {

std::string fixture(const std::string& name) {
  return std::string(SPHERIK_FIXTURE_DIR) + "/" + name + (name.ends_with(".json") ? "" : ".json");
}

NormalizedModel load_model(const std::string& name) {
  return normalize(load_spherical_data(fixture(name)));
}

namespace {

long uniform_int(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

Vector random_integer_vector(std::mt19937_64& rng, std::size_t n, long range) {
  Vector v(n);
  do {
    for (auto& x : v) x = uniform_int(rng, -range, range);
  } while (is_zero(v));
  return v;
}

// Random point of Δ as a convex combination of its vertices.
Vector random_point(std::mt19937_64& rng, const Polytope& p) {
  Vector x = zero_vector(p.dim());
  Rational total = 0;
  std::vector<Rational> w;
  for (std::size_t i = 0; i < p.vertices().size(); ++i) {
    w.push_back(uniform_int(rng, 1, 6));
    total += w.back();
  }
  for (std::size_t i = 0; i < w.size(); ++i) x = x + (w[i] / total) * p.vertices()[i];
  return x;
}

PolyhedralCone random_valuation_cone(std::mt19937_64& rng, std::size_t r) {
  switch (uniform_int(rng, 0, 3)) {
    case 0:
      return PolyhedralCone::whole_space(r);
    case 1: {
      std::vector<Vector> gens;
      const long n = uniform_int(rng, 1, static_cast<long>(r) + 1);
      for (long i = 0; i < n; ++i) gens.push_back(random_integer_vector(rng, r, 2));
      return PolyhedralCone(r, gens);
    }
    case 2: {
      std::vector<Vector> gens{random_integer_vector(rng, r, 2)};
      std::vector<Vector> lin;
      if (r > 1) lin.push_back(random_integer_vector(rng, r, 2));
      return PolyhedralCone(r, gens, lin);
    }
    default: {
      // Negative orthant-like cone, as for spherical roots.
      std::vector<Vector> gens;
      for (std::size_t i = 0; i < r; ++i) gens.push_back(-unit_vector(r, i));
      return PolyhedralCone(r, gens);
    }
  }
}

}  // namespace

Rational frac(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Rational random_rational(std::mt19937_64& rng, long num_range, long max_den) {
  Rational q(uniform_int(rng, -num_range, num_range), uniform_int(rng, 1, max_den));
  q.canonicalize();
  return q;
}

SphericalData random_spherical_data(std::mt19937_64& rng, std::size_t max_rank,
                                    std::size_t max_roots) {
  struct Type {
    std::vector<std::string> factors;
    std::size_t roots;
  };
  const std::vector<Type> types = {{{}, 0},          {{"A1"}, 1}, {{"A1", "A1"}, 2},
                                   {{"A2"}, 3},      {{"B2"}, 4}, {{"G2"}, 6},
                                   {{"A3"}, 6},      {{"C2"}, 4}};
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const Type& type = types[uniform_int(rng, 0, static_cast<long>(types.size()) - 1)];
    if (type.roots > max_roots) continue;
    std::vector<RootSystem> factors;
    for (const auto& name : type.factors) factors.push_back(root_system(name));
    const std::size_t torus = uniform_int(rng, type.factors.empty() ? 1 : 0, 2);
    const RootSystem rs = product(factors, torus);
    const std::size_t d = rs.gram.rows();
    const std::size_t r = uniform_int(rng, 1, static_cast<long>(std::min(max_rank, d)));

    SphericalData data;
    data.ambient_dim = d;
    data.gram = rs.gram;
    data.positive_roots = rs.positive_roots;
    std::vector<Vector> cols;
    while (cols.size() < r) {
      Vector c = random_integer_vector(rng, d, 2);
      auto trial = cols;
      trial.push_back(c);
      if (rank(trial, d) == trial.size()) cols.push_back(c);
    }
    data.lattice_basis = Matrix::from_columns(cols);

    // χ deep inside the dominant chamber: κ(α_i, χ) = depth for simple roots.
    const long depth = uniform_int(rng, 4, 40);
    Vector target(d);
    for (auto& t : target) t = depth + random_rational(rng, 3, 4);
    const Vector chi = *solve(data.gram, target);
    data.chi = chi;

    std::vector<std::pair<Vector, Rational>> q_ineqs;
    for (std::size_t i = 0; i < r; ++i) {
      q_ineqs.push_back({unit_vector(r, i), frac(uniform_int(rng, 2, 8), uniform_int(rng, 1, 4))});
      q_ineqs.push_back({-unit_vector(r, i), frac(uniform_int(rng, 2, 8), uniform_int(rng, 1, 4))});
    }
    const long cuts = uniform_int(rng, 0, 3);
    for (long c = 0; c < cuts; ++c) {
      Vector w = random_integer_vector(rng, r, 3);
      q_ineqs.push_back({w, frac(uniform_int(rng, 1, 12), uniform_int(rng, 1, 4))});
    }
    for (auto& q : q_ineqs) q.second.canonicalize();
    const Matrix et = data.lattice_basis.transpose();
    for (const auto& [w, c] : q_ineqs) {
      const Vector u = *solve(et, w);
      data.polytope.push_back({u, c + dot(u, chi)});
    }
    data.valuation_cone = random_valuation_cone(rng, r);
    try {
      normalize(data);
    } catch (const InputError&) {
      continue;  // left the dominant chamber; draw again
    }
    return data;
  }
  throw std::runtime_error("random_spherical_data: no valid instance found");
}

SphericalData random_toric_surface(std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    SphericalData data;
    data.ambient_dim = 2;
    data.gram = Matrix::identity(2);
    data.lattice_basis = Matrix::identity(2);
    data.valuation_cone = PolyhedralCone::whole_space(2);
    const Rational a = frac(uniform_int(rng, 2, 12), uniform_int(rng, 1, 3));
    const Rational b = frac(uniform_int(rng, 2, 12), uniform_int(rng, 1, 3));
    data.polytope = {{make_vector({-1, 0}), 0}, {make_vector({0, -1}), 0},
                     {make_vector({1, 0}), a}, {make_vector({0, 1}), b}};
    for (auto& h : data.polytope) h.bound.canonicalize();
    const long cuts = uniform_int(rng, 0, 3);
    const Vector center{a / 2, b / 2};
    for (long c = 0; c < cuts; ++c) {
      const Vector w = random_integer_vector(rng, 2, 3);
      Rational slack(uniform_int(rng, 1, 8), 4);
      slack.canonicalize();
      data.polytope.push_back({w, dot(w, center) + slack});
    }
    if (uniform_int(rng, 0, 1)) data.chi = Vector{random_rational(rng, 2, 3), random_rational(rng, 2, 3)};
    try {
      normalize(data);
    } catch (const InputError&) {
      continue;
    }
    return data;
  }
  throw std::runtime_error("random_toric_surface: no valid instance found");
}

Vector random_cone_element(std::mt19937_64& rng, const PolyhedralCone& cone) {
  Vector v = zero_vector(cone.dim());
  for (const auto& g : cone.generators()) v = v + frac(uniform_int(rng, 0, 4), 2) * g;
  for (const auto& l : cone.lineality()) v = v + frac(uniform_int(rng, -4, 4), 2) * l;
  for (auto& x : v) x.canonicalize();
  return v;
}

PLFunction random_pl_function(std::mt19937_64& rng, const NormalizedModel& model,
                              std::size_t pieces) {
  PLFunction f;
  std::set<std::pair<std::string, std::string>> seen;
  while (f.pieces.size() < pieces) {
    const Vector v = random_cone_element(rng, model.valuation_cone);
    const Vector anchor = random_point(rng, model.polytope);
    const Rational c = dot(v, anchor) + frac(uniform_int(rng, -2, 2), 4);
    if (!seen.insert({to_string(c), to_string(v)}).second) continue;
    f.pieces.push_back({c, v});
  }
  return f;
}

// ---------------------------------------------------------------------------
// Polygon oracle.

namespace {

Rational cross(const Vector& a, const Vector& b) { return a[0] * b[1] - a[1] * b[0]; }

}  // namespace

Polygon polygon_of(const NormalizedModel& model) {
  Polygon p = model.polytope.vertices();
  Vector c = zero_vector(2);
  for (const auto& v : p) c = c + v;
  c = Rational(1, static_cast<long>(p.size())) * c;
  auto half = [&](const Vector& v) {
    const Vector d = v - c;
    return d[1] > 0 || (d[1] == 0 && d[0] > 0) ? 0 : 1;
  };
  std::sort(p.begin(), p.end(), [&](const Vector& a, const Vector& b) {
    if (half(a) != half(b)) return half(a) < half(b);
    return cross(a - c, b - c) > 0;
  });
  return p;
}

Polygon clip(const Polygon& poly, const Vector& n, const Rational& b) {
  Polygon out;
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vector& p = poly[i];
    const Vector& q = poly[(i + 1) % m];
    const Rational fp = dot(n, p) - b, fq = dot(n, q) - b;
    if (fp <= 0) out.push_back(p);
    if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0)) {
      const Rational t = fp / (fp - fq);
      out.push_back(p + t * (q - p));
    }
  }
  // Drop repeated points.
  Polygon dedup;
  for (const auto& v : out) {
    if (dedup.empty() || dedup.back() != v) dedup.push_back(v);
  }
  while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
  return dedup;
}

Rational polygon_area(const Polygon& poly) {
  Rational twice = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) twice += cross(poly[i], poly[(i + 1) % poly.size()]);
  return twice / 2;
}

namespace {

// ∫ over the polygon of (c - <v, x>) dμ via area and centroid.
Rational polygon_affine_integral(const Polygon& poly, const Rational& c, const Vector& v) {
  Rational twice = 0;
  Vector moment = zero_vector(2);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vector& p = poly[i];
    const Vector& q = poly[(i + 1) % poly.size()];
    const Rational w = cross(p, q);
    twice += w;
    moment = moment + w * (p + q);
  }
  const Rational area = twice / 2;
  // ∫ x dμ = moment / 6
  return c * area - dot(v, Rational(1, 6) * moment);
}

Rational lattice_length(const Vector& p, const Vector& q) {
  const Vector e = q - p;
  const Vector d = primitive(e);
  for (std::size_t i = 0; i < 2; ++i)
    if (d[i] != 0) return e[i] / d[i];
  return 0;
}

}  // namespace

Rational toric_donaldson_functional(const NormalizedModel& model, const PLFunction& f) {
  const Polygon delta = polygon_of(model);
  const auto& hs = model.polytope.halfspaces();
  auto on_boundary_edge = [&](const Vector& p, const Vector& q) {
    for (const auto& h : hs) {
      if (dot(h.normal, p) == h.bound && dot(h.normal, q) == h.bound) return true;
    }
    return false;
  };
  Rational perimeter = 0;
  for (std::size_t i = 0; i < delta.size(); ++i) {
    perimeter += lattice_length(delta[i], delta[(i + 1) % delta.size()]);
  }
  const Rational a = perimeter / polygon_area(delta);

  Rational boundary = 0, interior = 0;
  for (std::size_t j = 0; j < f.pieces.size(); ++j) {
    Polygon region = delta;
    bool empty = false;
    for (std::size_t i = 0; i < f.pieces.size() && !empty; ++i) {
      if (i == j) continue;
      const Vector n = f.pieces[j].v - f.pieces[i].v;
      const Rational b = f.pieces[j].c - f.pieces[i].c;
      if (is_zero(n)) {
        empty = b < 0 || (b == 0 && i < j);
        continue;
      }
      region = clip(region, n, b);
      if (region.size() < 3) empty = true;
    }
    if (empty || polygon_area(region) == 0) continue;
    const Rational& c = f.pieces[j].c;
    const Vector& v = f.pieces[j].v;
    interior += polygon_affine_integral(region, c, v);
    for (std::size_t i = 0; i < region.size(); ++i) {
      const Vector& p = region[i];
      const Vector& q = region[(i + 1) % region.size()];
      if (p == q || !on_boundary_edge(p, q)) continue;
      boundary += lattice_length(p, q) * ((c - dot(v, p)) + (c - dot(v, q))) / 2;
    }
  }
  return boundary - a * interior;
}

// ---------------------------------------------------------------------------

std::size_t grid_nld(const NormalizedModel& model, const PLFunction& f, long pitch_den) {
  const Polytope& p = model.polytope;
  // Clear denominators so that the classification runs in exact integers.
  Integer scale = 1;
  auto absorb = [&](const Rational& x) {
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.get_den_mpz_t());
  };
  for (const auto& piece : f.pieces) {
    absorb(piece.c);
    for (const auto& x : piece.v) absorb(x);
  }
  for (const auto& h : p.halfspaces()) absorb(h.bound);
  // Grid point (i, j)/pitch_den; forms are scaled by s = scale·pitch_den.
  const Rational s(scale * pitch_den);

  Rational lo_x = p.vertices()[0][0], hi_x = lo_x, lo_y = p.vertices()[0][1], hi_y = lo_y;
  for (const auto& v : p.vertices()) {
    lo_x = std::min(lo_x, v[0]);
    hi_x = std::max(hi_x, v[0]);
    lo_y = std::min(lo_y, v[1]);
    hi_y = std::max(hi_y, v[1]);
  }
  auto index_floor = [&](const Rational& x) {
    Integer out;
    const Rational y = x * pitch_den;
    mpz_fdiv_q(out.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    return out.get_si();
  };
  auto index_ceil = [&](const Rational& x) {
    Integer out;
    const Rational y = x * pitch_den;
    mpz_cdiv_q(out.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    return out.get_si();
  };
  const long step = scale.get_si();
  auto to_long = [](const Rational& x) {
    if (x.get_den() != 1 || !x.get_num().fits_slong_p() || abs(x.get_num()) > (1L << 40))
      throw std::runtime_error("grid_nld: coefficients too large for integer classification");
    return x.get_num().get_si();
  };
  struct Form {
    long c, a, b;  // value·scale = c - a·i - b·j
  };
  std::vector<Form> pieces;
  for (const auto& piece : f.pieces) {
    pieces.push_back({to_long(piece.c * s), to_long(piece.v[0] * step), to_long(piece.v[1] * step)});
  }
  std::vector<Form> walls;
  for (const auto& h : p.halfspaces()) {
    walls.push_back({to_long(h.bound * s), to_long(h.normal[0] * step), to_long(h.normal[1] * step)});
  }
  std::set<std::size_t> seen;
  for (long i = index_ceil(lo_x); i <= index_floor(hi_x); ++i) {
    for (long j = index_ceil(lo_y); j <= index_floor(hi_y); ++j) {
      bool inside = true;
      for (const auto& w : walls) inside = inside && (w.a * i + w.b * j <= w.c);
      if (!inside) continue;
      long best = 0;
      std::size_t arg = 0, count = 0;
      for (std::size_t k = 0; k < pieces.size(); ++k) {
        const long value = pieces[k].c - pieces[k].a * i - pieces[k].b * j;
        if (k == 0 || value > best) {
          best = value;
          arg = k;
          count = 1;
        } else if (value == best) {
          ++count;
        }
      }
      if (count == 1) seen.insert(arg);
    }
  }
  return seen.size();
}

// ---------------------------------------------------------------------------

MonteCarloEstimate monte_carlo_integral(const Polynomial& poly, const Polytope& polytope,
                                        std::size_t samples, std::uint64_t seed) {
  const std::size_t r = polytope.dim();
  std::vector<double> lo(r, 1e300), hi(r, -1e300);
  for (const auto& v : polytope.vertices())
    for (std::size_t i = 0; i < r; ++i) {
      lo[i] = std::min(lo[i], v[i].get_d());
      hi[i] = std::max(hi[i], v[i].get_d());
    }
  double box = 1;
  for (std::size_t i = 0; i < r; ++i) box *= hi[i] - lo[i];
  std::vector<std::vector<double>> normals;
  std::vector<double> bounds;
  for (const auto& h : polytope.halfspaces()) {
    normals.push_back(to_doubles(h.normal));
    bounds.push_back(h.bound.get_d());
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double sum = 0, sum2 = 0;
  std::vector<double> x(r);
  for (std::size_t n = 0; n < samples; ++n) {
    for (std::size_t i = 0; i < r; ++i) x[i] = lo[i] + (hi[i] - lo[i]) * u(rng);
    bool inside = true;
    for (std::size_t k = 0; k < normals.size() && inside; ++k) {
      double s = 0;
      for (std::size_t i = 0; i < r; ++i) s += normals[k][i] * x[i];
      inside = s <= bounds[k];
    }
    const double value = inside ? box * poly.evaluate(x) : 0.0;
    sum += value;
    sum2 += value * value;
  }
  const double mean = sum / samples;
  const double var = sum2 / samples - mean * mean;
  return {mean, std::sqrt(std::max(var, 0.0) / samples)};
}

Polytope random_polytope(std::mt19937_64& rng, std::size_t r) {
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < r; ++i) {
    hs.push_back({unit_vector(r, i), frac(uniform_int(rng, 1, 6), uniform_int(rng, 1, 3))});
    hs.push_back({-unit_vector(r, i), frac(uniform_int(rng, 1, 6), uniform_int(rng, 1, 3))});
  }
  const long cuts = uniform_int(rng, 0, 3);
  for (long c = 0; c < cuts; ++c) {
    hs.push_back({random_integer_vector(rng, r, 3), frac(uniform_int(rng, 1, 6), uniform_int(rng, 1, 2))});
  }
  for (auto& h : hs) h.bound.canonicalize();
  return Polytope::from_halfspaces(r, hs);
}

Polynomial random_polynomial(std::mt19937_64& rng, std::size_t r, unsigned degree) {
  Polynomial p(r);
  const long terms = uniform_int(rng, 1, 6);
  for (long t = 0; t < terms; ++t) {
    Polynomial::Exponent e(r, 0);
    const long deg = uniform_int(rng, 0, degree);
    for (long k = 0; k < deg; ++k) ++e[uniform_int(rng, 0, static_cast<long>(r) - 1)];
    Rational c = 0;
    while (c == 0) c = random_rational(rng, 5, 3);
    p.add_term(e, c);
  }
  return p.is_zero() ? random_polynomial(rng, r, degree) : p;
}

}  // namespace spherik::testing
