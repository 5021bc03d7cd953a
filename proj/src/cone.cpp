#include "spherik/cone.hpp"

#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace spherik {

namespace {

struct RawCone {
  std::vector<Vector> generators;
  std::vector<Vector> lineality;
};

void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    if (k == 0) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<Vector> independent_subset(const std::vector<Vector>& vs, std::size_t dim) {
  std::vector<Vector> basis;
  for (const auto& v : vs) {
    auto trial = basis;
    trial.push_back(v);
    if (rank(trial, dim) == trial.size()) basis.push_back(v);
  }
  return basis;
}

// Generators of {y : <a, y> >= 0 for all rows a}: lineality = ker A, plus the
// extreme rays of the pointed part inside the row space.
RawCone h_to_v(std::size_t dim, const std::vector<Vector>& rows) {
  RawCone out;
  if (rows.empty()) {
    for (std::size_t i = 0; i < dim; ++i) out.lineality.push_back(unit_vector(dim, i));
    return out;
  }
  const Matrix a = Matrix::from_rows(rows);
  for (auto& v : nullspace(a)) out.lineality.push_back(primitive(v));
  const std::vector<Vector> basis = independent_subset(rows, dim);
  const std::size_t k = basis.size();
  if (k == 0) return out;
  std::set<Vector> rays;
  for_each_subset(rows.size(), k - 1, [&](const std::vector<std::size_t>& subset) {
    Matrix m(subset.size(), k);
    for (std::size_t i = 0; i < subset.size(); ++i)
      for (std::size_t j = 0; j < k; ++j) m(i, j) = dot(rows[subset[i]], basis[j]);
    auto ker = nullspace(m);
    if (ker.size() != 1) return;
    Vector z = zero_vector(dim);
    for (std::size_t j = 0; j < k; ++j) z = z + ker[0][j] * basis[j];
    if (is_zero(z)) return;
    for (const Vector& cand : {z, -z}) {
      bool ok = true;
      for (const auto& r : rows) {
        if (dot(r, cand) < 0) {
          ok = false;
          break;
        }
      }
      if (ok) {
        rays.insert(primitive(cand));
        break;
      }
    }
  });
  out.generators.assign(rays.begin(), rays.end());
  return out;
}

}  // namespace

PolyhedralCone::PolyhedralCone(std::size_t dim, std::vector<Vector> generators,
                               std::vector<Vector> lineality)
    : dim_(dim) {
  for (auto& l : lineality) {
    if (l.size() != dim) throw std::invalid_argument("PolyhedralCone: lineality dimension mismatch");
  }
  for (auto& l : independent_subset(lineality, dim)) lineality_.push_back(primitive(l));
  std::set<Vector> seen;
  for (auto& g : generators) {
    if (g.size() != dim) throw std::invalid_argument("PolyhedralCone: generator dimension mismatch");
    if (is_zero(g)) continue;
    Vector p = primitive(g);
    if (!lineality_.empty()) {
      auto trial = lineality_;
      trial.push_back(p);
      if (rank(trial, dim) == lineality_.size()) continue;
    }
    if (seen.insert(p).second) generators_.push_back(std::move(p));
  }
  std::vector<Vector> rows = generators_;
  for (const auto& l : lineality_) {
    rows.push_back(l);
    rows.push_back(-l);
  }
  RawCone dual = h_to_v(dim_, rows);
  facets_ = std::move(dual.generators);
  equations_ = std::move(dual.lineality);
}

PolyhedralCone PolyhedralCone::whole_space(std::size_t dim) {
  std::vector<Vector> basis;
  for (std::size_t i = 0; i < dim; ++i) basis.push_back(unit_vector(dim, i));
  return PolyhedralCone(dim, {}, basis);
}

PolyhedralCone PolyhedralCone::from_inequalities(std::size_t dim, const std::vector<Vector>& rows) {
  RawCone raw = h_to_v(dim, rows);
  return PolyhedralCone(dim, std::move(raw.generators), std::move(raw.lineality));
}

std::size_t PolyhedralCone::span_dim() const {
  std::vector<Vector> all = generators_;
  all.insert(all.end(), lineality_.begin(), lineality_.end());
  return rank(all, dim_);
}

std::size_t PolyhedralCone::lineality_dim() const {
  std::vector<Vector> all = facets_;
  all.insert(all.end(), equations_.begin(), equations_.end());
  return dim_ - rank(all, dim_);
}

bool PolyhedralCone::contains(const Vector& v) const {
  if (v.size() != dim_) throw std::invalid_argument("PolyhedralCone::contains: dimension mismatch");
  for (const auto& e : equations_) {
    if (dot(e, v) != 0) return false;
  }
  for (const auto& f : facets_) {
    if (dot(f, v) < 0) return false;
  }
  return true;
}

bool PolyhedralCone::in_lineality(const Vector& v) const { return contains(v) && contains(-v); }

PolyhedralCone PolyhedralCone::negated() const {
  std::vector<Vector> gens;
  for (const auto& g : generators_) gens.push_back(-g);
  return PolyhedralCone(dim_, std::move(gens), lineality_);
}

PolyhedralCone dual_cone(const PolyhedralCone& cone) {
  return PolyhedralCone(cone.dim_, cone.facets_, cone.equations_);
}

bool same_cone(const PolyhedralCone& a, const PolyhedralCone& b) {
  if (a.dim() != b.dim()) return false;
  auto covers = [](const PolyhedralCone& outer, const PolyhedralCone& inner) {
    for (const auto& g : inner.generators()) {
      if (!outer.contains(g)) return false;
    }
    for (const auto& l : inner.lineality()) {
      if (!outer.in_lineality(l)) return false;
    }
    return true;
  };
  return covers(a, b) && covers(b, a);
}

std::string RelintReport::describe() const {
  switch (kind) {
    case Kind::kInside:
      return "inside the relative interior";
    case Kind::kOutsideSpan:
      return "outside the linear span: <" + to_string(*normal) + ", m> = " + to_string(value) +
             " != 0";
    case Kind::kFacetViolated:
      return "facet inequality <" + to_string(*normal) + ", m> > 0 fails: value " +
             to_string(value);
  }
  return {};
}

RelintReport relint_check(const PolyhedralCone& cone, const Vector& m) {
  if (m.size() != cone.dim()) throw std::invalid_argument("relint_check: dimension mismatch");
  RelintReport report;
  // The span of C is cut out by the equations of its H-representation; the
  // facets of C within its span are the remaining inequalities.
  for (const auto& e : cone.equations_) {
    Rational v = dot(e, m);
    if (v != 0) {
      report.kind = RelintReport::Kind::kOutsideSpan;
      report.normal = e;
      report.value = v;
      return report;
    }
  }
  for (const auto& f : cone.facets_) {
    Rational v = dot(f, m);
    if (v <= 0) {
      report.kind = RelintReport::Kind::kFacetViolated;
      report.normal = f;
      report.value = v;
      return report;
    }
  }
  return report;
}

bool relint_contains(const PolyhedralCone& cone, const Vector& m) {
  return relint_check(cone, m).inside();
}

}  // namespace spherik
