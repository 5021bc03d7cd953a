#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "spherik/rational.hpp"

namespace spherik {

class GeometryError : public std::runtime_error {
 public:
  enum class Kind { kEmpty, kUnbounded, kDegenerate, kInvalid };
  GeometryError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// The closed halfspace <normal, x> <= bound.  `tag` is caller-owned
/// bookkeeping that survives canonicalization (e.g. which input facet a
/// region inequality came from).
struct Halfspace {
  Vector normal;
  Rational bound;
  int tag = -1;
};

/// Vertices of a simplex; k+1 affinely independent points span a k-simplex.
struct Simplex {
  std::vector<Vector> vertices;
};

/// A face given by the halfspace it lies on and the polytope vertices on it.
struct Facet {
  std::size_t halfspace;
  std::vector<std::size_t> vertices;
};

/// Bounded polyhedron in H-representation with its exact vertex set.
///
/// Normals are stored primitive (integer, gcd 1) with bounds rescaled by the
/// same positive factor; parallel duplicates keep the tighter bound.
class Polytope {
 public:
  enum class Status { kOk, kEmpty, kUnbounded };

  /// Throws GeometryError (kEmpty / kUnbounded) when the region is not a
  /// nonempty polytope.
  static Polytope from_halfspaces(std::size_t dim, std::vector<Halfspace> halfspaces);
  /// Non-throwing variant; `out` is only written for Status::kOk.
  static Status build(std::size_t dim, std::vector<Halfspace> halfspaces, Polytope* out);

  std::size_t dim() const { return dim_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  const std::vector<Vector>& vertices() const { return vertices_; }
  bool tight(std::size_t vertex, std::size_t halfspace) const {
    return incidence_[vertex][halfspace];
  }

  int affine_dim() const { return affine_dim_; }
  bool is_full_dimensional() const { return affine_dim_ == static_cast<int>(dim_); }
  bool contains(const Vector& x) const;
  /// Codimension-one faces (requires a full-dimensional polytope).
  std::vector<Facet> facets() const;

  Rational volume() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Halfspace> halfspaces_;
  std::vector<Vector> vertices_;
  std::vector<std::vector<bool>> incidence_;
  int affine_dim_ = -1;
};

/// Pulling triangulation: cone from the earliest vertex in `vertex_order`
/// over the recursively triangulated faces avoiding it.  Different orders give
/// different triangulations of the same polytope.  Empty order = natural order.
std::vector<Simplex> triangulate(const Polytope& polytope,
                                 const std::vector<std::size_t>& vertex_order = {});

/// Triangulates the face spanned by `face_vertices` (of affine dimension
/// `face_dim`) into face_dim-simplices.
std::vector<Simplex> triangulate_face(const Polytope& polytope,
                                      const std::vector<std::size_t>& face_vertices, int face_dim,
                                      const std::vector<std::size_t>& vertex_order = {});

/// Euclidean (lattice-normalized) volume of a full-dimensional simplex.
Rational simplex_volume(const Simplex& s);

}  // namespace spherik
