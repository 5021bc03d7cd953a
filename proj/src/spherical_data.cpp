#include "spherik/spherical_data.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace spherik {

using nlohmann::json;

namespace {

std::string at(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

std::string key(const std::string& path, const std::string& k) {
  return path.empty() ? k : path + "." + k;
}

Rational read_rational(const json& j, const std::string& path) {
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

Vector read_vector(const json& j, const std::string& path, std::optional<std::size_t> size = {}) {
  if (!j.is_array()) throw InputError(path, "expected an array");
  if (size && j.size() != *size) {
    throw InputError(path, "expected " + std::to_string(*size) + " entries, got " +
                               std::to_string(j.size()));
  }
  Vector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(read_rational(j[i], at(path, i)));
  return v;
}

std::vector<Vector> read_vectors(const json& j, const std::string& path,
                                 std::optional<std::size_t> size) {
  if (!j.is_array()) throw InputError(path, "expected an array of vectors");
  std::vector<Vector> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_vector(j[i], at(path, i), size));
  return out;
}

const json& require(const json& obj, const std::string& k, const std::string& path) {
  if (!obj.is_object()) throw InputError(path, "expected an object");
  auto it = obj.find(k);
  if (it == obj.end()) throw InputError(key(path, k), "missing required field");
  return *it;
}

json vector_json(const Vector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

Rational pairing(const Matrix& gram, const Vector& a, const Vector& b) { return dot(a, gram * b); }

bool positive_semidefinite(const Matrix& g) {
  const std::size_t n = g.rows();
  for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1UL << i)) idx.push_back(i);
    Matrix m(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = g(idx[i], idx[j]);
    if (determinant(m) < 0) return false;
  }
  return true;
}

// Δ in q coordinates for a given base point.
std::vector<Halfspace> lattice_halfspaces(const SphericalData& data, const Vector& chi) {
  const Matrix et = data.lattice_basis.transpose();
  std::vector<Halfspace> out;
  for (std::size_t i = 0; i < data.polytope.size(); ++i) {
    const auto& h = data.polytope[i];
    out.push_back({et * h.normal, h.bound - dot(h.normal, chi), static_cast<int>(i)});
  }
  return out;
}

Polytope build_lattice_polytope(const SphericalData& data, const Vector& chi) {
  Polytope p;
  switch (Polytope::build(data.rank(), lattice_halfspaces(data, chi), &p)) {
    case Polytope::Status::kEmpty:
      throw InputError("polytope", "moment polytope is empty");
    case Polytope::Status::kUnbounded:
      throw InputError("polytope", "moment polytope is unbounded");
    case Polytope::Status::kOk:
      break;
  }
  if (!p.is_full_dimensional()) {
    throw InputError("polytope", "moment polytope is not full-dimensional in χ + M⊗Q");
  }
  return p;
}

void check_shapes(const SphericalData& data) {
  const std::size_t d = data.ambient_dim;
  if (d == 0) throw InputError("ambient_dim", "must be positive");
  if (data.gram.rows() != d || data.gram.cols() != d) {
    throw InputError("gram", "must be a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (data.gram(i, j) != data.gram(j, i)) {
        throw InputError(at(at("gram", i), j), "gram matrix is not symmetric");
      }
  if (!positive_semidefinite(data.gram)) {
    throw InputError("gram", "gram matrix is not positive semidefinite");
  }
  for (std::size_t i = 0; i < data.positive_roots.size(); ++i) {
    const auto& a = data.positive_roots[i];
    if (a.size() != d) throw InputError(at("positive_roots", i), "wrong dimension");
    if (pairing(data.gram, a, a) <= 0) {
      throw InputError(at("positive_roots", i), "root has κ(α,α) <= 0");
    }
  }
  if (data.lattice_basis.rows() != d || data.lattice_basis.cols() == 0) {
    throw InputError("lattice_basis", "expected between 1 and ambient_dim columns of length " +
                                          std::to_string(d));
  }
  if (rank(data.lattice_basis) != data.lattice_basis.cols()) {
    throw InputError("lattice_basis", "columns are not linearly independent");
  }
  if (data.chi && data.chi->size() != d) throw InputError("chi", "wrong dimension");
  if (data.polytope.empty()) throw InputError("polytope.inequalities", "no inequalities given");
  for (std::size_t i = 0; i < data.polytope.size(); ++i) {
    if (data.polytope[i].normal.size() != d) {
      throw InputError(at("polytope.inequalities", i) + ".normal", "wrong dimension");
    }
  }
  if (data.valuation_cone.dim() != data.rank()) {
    throw InputError("valuation_cone", "must live in N⊗Q of dimension " +
                                           std::to_string(data.rank()));
  }
}

Vector resolve_chi(const SphericalData& data) {
  if (data.chi) return *data.chi;
  if (data.rank() != data.ambient_dim) {
    throw InputError("chi", "required when the lattice does not span the ambient space");
  }
  // Lexicographically smallest vertex of Δ (the lattice spans the ambient space).
  const Polytope p = build_lattice_polytope(data, zero_vector(data.ambient_dim));
  std::vector<Vector> amb;
  for (const auto& q : p.vertices()) amb.push_back(data.lattice_basis * q);
  return *std::min_element(amb.begin(), amb.end());
}

}  // namespace

SphericalData spherical_data_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("", "document must be a JSON object");
  SphericalData data;
  const json& dim = require(doc, "ambient_dim", "");
  if (!dim.is_number_integer() || dim.get<long>() <= 0) {
    throw InputError("ambient_dim", "expected a positive integer");
  }
  const std::size_t d = dim.get<std::size_t>();
  data.ambient_dim = d;

  const auto gram_rows = read_vectors(require(doc, "gram", ""), "gram", d);
  if (gram_rows.size() != d) throw InputError("gram", "expected " + std::to_string(d) + " rows");
  data.gram = Matrix::from_rows(gram_rows);

  data.positive_roots = read_vectors(require(doc, "positive_roots", ""), "positive_roots", d);

  const auto cols = read_vectors(require(doc, "lattice_basis", ""), "lattice_basis", d);
  if (cols.empty()) throw InputError("lattice_basis", "at least one column is required");
  data.lattice_basis = Matrix::from_columns(cols);
  const std::size_t r = cols.size();

  if (auto it = doc.find("chi"); it != doc.end() && !it->is_null()) {
    data.chi = read_vector(*it, "chi", d);
  }

  const json& poly = require(doc, "polytope", "");
  const json& ineqs = require(poly, "inequalities", "polytope");
  if (!ineqs.is_array()) throw InputError("polytope.inequalities", "expected an array");
  for (std::size_t i = 0; i < ineqs.size(); ++i) {
    const std::string path = at("polytope.inequalities", i);
    Halfspace h;
    h.normal = read_vector(require(ineqs[i], "normal", path), key(path, "normal"), d);
    h.bound = read_rational(require(ineqs[i], "bound", path), key(path, "bound"));
    h.tag = static_cast<int>(i);
    data.polytope.push_back(std::move(h));
  }

  const json& cone = require(doc, "valuation_cone", "");
  if (!cone.is_object()) throw InputError("valuation_cone", "expected an object");
  std::vector<Vector> gens, lin;
  if (auto it = cone.find("generators"); it != cone.end()) {
    gens = read_vectors(*it, "valuation_cone.generators", r);
  }
  if (auto it = cone.find("lineality"); it != cone.end()) {
    lin = read_vectors(*it, "valuation_cone.lineality", r);
  }
  data.valuation_cone = PolyhedralCone(r, std::move(gens), std::move(lin));

  if (auto it = doc.find("fano"); it != doc.end()) {
    if (!it->is_boolean()) throw InputError("fano", "expected a boolean");
    data.fano = it->get<bool>();
  }
  normalize(data);  // full validation
  return data;
}

SphericalData parse_spherical_data(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("", std::string("malformed JSON: ") + e.what());
  }
  return spherical_data_from_json(doc);
}

SphericalData load_spherical_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("", "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  return parse_spherical_data(std::string_view(text));
}

json to_json(const SphericalData& data) {
  json doc = json::object();
  doc["ambient_dim"] = data.ambient_dim;
  json gram = json::array();
  for (std::size_t i = 0; i < data.gram.rows(); ++i) gram.push_back(vector_json(data.gram.row(i)));
  doc["gram"] = gram;
  json roots = json::array();
  for (const auto& a : data.positive_roots) roots.push_back(vector_json(a));
  doc["positive_roots"] = roots;
  json basis = json::array();
  for (std::size_t j = 0; j < data.lattice_basis.cols(); ++j) {
    basis.push_back(vector_json(data.lattice_basis.column(j)));
  }
  doc["lattice_basis"] = basis;
  if (data.chi) doc["chi"] = vector_json(*data.chi);
  json ineqs = json::array();
  for (const auto& h : data.polytope) {
    ineqs.push_back({{"normal", vector_json(h.normal)}, {"bound", to_string(h.bound)}});
  }
  doc["polytope"] = {{"inequalities", ineqs}};
  json gens = json::array(), lin = json::array();
  for (const auto& g : data.valuation_cone.generators()) gens.push_back(vector_json(g));
  for (const auto& l : data.valuation_cone.lineality()) lin.push_back(vector_json(l));
  doc["valuation_cone"] = {{"generators", gens}, {"lineality", lin}};
  doc["fano"] = data.fano;
  return doc;
}

Vector NormalizedModel::to_ambient(const Vector& q) const { return chi + lattice_basis * q; }

std::optional<Vector> NormalizedModel::to_lattice_coordinates(const Vector& direction) const {
  return solve(lattice_basis, direction);
}

NormalizedModel normalize(const SphericalData& data) {
  check_shapes(data);
  NormalizedModel m;
  m.rank = data.rank();
  m.chi = resolve_chi(data);
  m.lattice_basis = data.lattice_basis;
  m.gram = data.gram;
  m.polytope = build_lattice_polytope(data, m.chi);
  m.positive_roots = data.positive_roots;
  m.valuation_cone = data.valuation_cone;
  m.fano = data.fano;

  const std::size_t d = data.ambient_dim;
  m.varpi = zero_vector(d);
  for (const auto& a : data.positive_roots) m.varpi = m.varpi + a;
  m.varpi = Rational(1, 2) * m.varpi;

  m.two_varpi_active = zero_vector(d);
  for (std::size_t i = 0; i < data.positive_roots.size(); ++i) {
    const Vector& a = data.positive_roots[i];
    const Vector ga = data.gram * a;
    AffineForm form{dot(ga, m.chi), data.lattice_basis.transpose() * ga};
    bool active = false;
    for (std::size_t v = 0; v < m.polytope.vertices().size(); ++v) {
      const Rational value = form(m.polytope.vertices()[v]);
      if (value < 0) {
        throw InputError(at("positive_roots", i),
                         "moment polytope leaves the dominant chamber: κ(α, p) = " +
                             to_string(value) + " at vertex " +
                             to_string(m.to_ambient(m.polytope.vertices()[v])));
      }
      if (value != 0) active = true;
    }
    if (active) {
      m.active_roots.push_back(i);
      m.two_varpi_active = m.two_varpi_active + a;
    }
    m.root_forms.push_back(std::move(form));
    m.root_on_varpi.push_back(pairing(data.gram, a, m.varpi));
  }
  return m;
}

std::vector<std::size_t> active_roots(const SphericalData& data) { return normalize(data).active_roots; }

bool is_horospherical(const NormalizedModel& model) {
  return model.valuation_cone.lineality_dim() == model.rank;
}

RootSystem root_system(std::string_view type) {
  RootSystem rs;
  auto roots = [](std::initializer_list<std::initializer_list<long>> list) {
    std::vector<Vector> out;
    for (auto r : list) out.push_back(make_vector(r));
    return out;
  };
  if (type == "A1") {
    rs.gram = Matrix::from_rows({make_vector({2})});
    rs.positive_roots = roots({{1}});
  } else if (type == "A2") {
    rs.gram = Matrix::from_rows({make_vector({2, -1}), make_vector({-1, 2})});
    rs.positive_roots = roots({{1, 0}, {0, 1}, {1, 1}});
  } else if (type == "A3") {
    rs.gram = Matrix::from_rows(
        {make_vector({2, -1, 0}), make_vector({-1, 2, -1}), make_vector({0, -1, 2})});
    rs.positive_roots = roots({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {0, 1, 1}, {1, 1, 1}});
  } else if (type == "B2" || type == "C2") {
    // α1 long, α2 short for B2; swapped lengths for C2.
    if (type == "B2") {
      rs.gram = Matrix::from_rows({make_vector({2, -1}), make_vector({-1, 1})});
      rs.positive_roots = roots({{1, 0}, {0, 1}, {1, 1}, {1, 2}});
    } else {
      rs.gram = Matrix::from_rows({make_vector({1, -1}), make_vector({-1, 2})});
      rs.positive_roots = roots({{1, 0}, {0, 1}, {1, 1}, {2, 1}});
    }
  } else if (type == "G2") {
    // α1 short, α2 long.
    rs.gram = Matrix::from_rows({make_vector({2, -3}), make_vector({-3, 6})});
    rs.positive_roots = roots({{1, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}, {3, 2}});
  } else {
    throw std::invalid_argument("unknown root system type '" + std::string(type) + "'");
  }
  return rs;
}

RootSystem product(const std::vector<RootSystem>& factors, std::size_t torus_dim) {
  std::size_t n = torus_dim;
  for (const auto& f : factors) n += f.gram.rows();
  RootSystem out;
  out.gram = Matrix(n, n);
  std::size_t offset = 0;
  for (const auto& f : factors) {
    const std::size_t k = f.gram.rows();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) out.gram(offset + i, offset + j) = f.gram(i, j);
    for (const auto& a : f.positive_roots) {
      Vector v = zero_vector(n);
      for (std::size_t i = 0; i < k; ++i) v[offset + i] = a[i];
      out.positive_roots.push_back(std::move(v));
    }
    offset += k;
  }
  for (std::size_t i = offset; i < n; ++i) out.gram(i, i) = 1;
  return out;
}

SphericalData change_lattice_basis(const SphericalData& data, const Matrix& unimodular) {
  SphericalData out = data;
  out.lattice_basis = data.lattice_basis * unimodular;
  const Matrix ut = unimodular.transpose();
  std::vector<Vector> gens, lin;
  for (const auto& g : data.valuation_cone.generators()) gens.push_back(ut * g);
  for (const auto& l : data.valuation_cone.lineality()) lin.push_back(ut * l);
  out.valuation_cone = PolyhedralCone(data.rank(), std::move(gens), std::move(lin));
  return out;
}

SphericalData shift_base_point(const SphericalData& data, const Vector& shift) {
  SphericalData out = data;
  out.chi = normalize(data).chi + data.lattice_basis * shift;
  return out;
}

SphericalData dilate(const SphericalData& data, const Rational& t) {
  if (t <= 0) throw std::invalid_argument("dilate: factor must be positive");
  SphericalData out = data;
  out.chi = t * normalize(data).chi;
  for (auto& h : out.polytope) h.bound *= t;
  out.fano = false;
  return out;
}

SphericalData rescale_gram_factor(const SphericalData& data,
                                  const std::vector<std::size_t>& coordinates,
                                  const Rational& factor) {
  if (factor <= 0) throw std::invalid_argument("rescale_gram_factor: factor must be positive");
  std::vector<bool> in(data.ambient_dim, false);
  for (auto c : coordinates) in.at(c) = true;
  SphericalData out = data;
  for (std::size_t i = 0; i < data.ambient_dim; ++i)
    for (std::size_t j = 0; j < data.ambient_dim; ++j) {
      if (in[i] != in[j] && data.gram(i, j) != 0) {
        throw std::invalid_argument("rescale_gram_factor: block is not orthogonal to the rest");
      }
      if (in[i] && in[j]) out.gram(i, j) *= factor;
    }
  return out;
}

}  // namespace spherik
