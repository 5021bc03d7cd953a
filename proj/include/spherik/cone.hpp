#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spherik/rational.hpp"

namespace spherik {

struct RelintReport;

/// cone(generators) + span(lineality), stored with primitive integer vectors.
class PolyhedralCone {
 public:
  PolyhedralCone() = default;
  PolyhedralCone(std::size_t dim, std::vector<Vector> generators, std::vector<Vector> lineality = {});

  static PolyhedralCone whole_space(std::size_t dim);
  static PolyhedralCone zero(std::size_t dim) { return PolyhedralCone(dim, {}); }
  /// {y : <a, y> >= 0 for every row a}.
  static PolyhedralCone from_inequalities(std::size_t dim, const std::vector<Vector>& rows);

  std::size_t dim() const { return dim_; }
  const std::vector<Vector>& generators() const { return generators_; }
  const std::vector<Vector>& lineality() const { return lineality_; }

  /// Dimension of the lineality space C ∩ -C.
  std::size_t lineality_dim() const;
  /// Dimension of the linear span of C.
  std::size_t span_dim() const;
  bool contains(const Vector& v) const;
  bool in_lineality(const Vector& v) const;
  PolyhedralCone negated() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Vector> generators_;
  std::vector<Vector> lineality_;
  // H-representation: <f, y> >= 0 for f in facets_, <e, y> = 0 for e in equations_.
  std::vector<Vector> facets_;
  std::vector<Vector> equations_;

  friend PolyhedralCone dual_cone(const PolyhedralCone& cone);
  friend RelintReport relint_check(const PolyhedralCone& cone, const Vector& m);
};

/// {m : <m, x> >= 0 for all x in C}.
PolyhedralCone dual_cone(const PolyhedralCone& cone);

/// Set equality, decided by mutual containment of generators.
bool same_cone(const PolyhedralCone& a, const PolyhedralCone& b);

struct RelintReport {
  enum class Kind { kInside, kOutsideSpan, kFacetViolated };
  Kind kind = Kind::kInside;
  /// For kOutsideSpan: a vector orthogonal to the span with <normal, m> != 0.
  /// For kFacetViolated: a facet normal n of the cone with <n, m> <= 0.
  std::optional<Vector> normal;
  Rational value = 0;

  bool inside() const { return kind == Kind::kInside; }
  std::string describe() const;
};

/// Relative-interior membership; for C = {0} only m = 0 is inside.
RelintReport relint_check(const PolyhedralCone& cone, const Vector& m);
bool relint_contains(const PolyhedralCone& cone, const Vector& m);

}  // namespace spherik
