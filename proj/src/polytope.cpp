#include "spherik/polytope.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace spherik {

namespace {

void for_each_combination(std::size_t n, std::size_t k,
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

// Vertices of {x in Q^k : a_i . x <= b_i}, assuming the a_i span Q^k.
std::vector<Vector> enumerate_vertices(const std::vector<Vector>& a, const Vector& b,
                                       std::size_t k) {
  std::set<Vector> found;
  for_each_combination(a.size(), k, [&](const std::vector<std::size_t>& subset) {
    Matrix m(k, k);
    Vector rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) m(i, j) = a[subset[i]][j];
      rhs[i] = b[subset[i]];
    }
    if (k > 0 && determinant(m) == 0) return;
    Vector x = k == 0 ? Vector{} : *solve(m, rhs);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (dot(a[i], x) > b[i]) return;
    }
    found.insert(std::move(x));
  });
  return {found.begin(), found.end()};
}

}  // namespace

Polytope::Status Polytope::build(std::size_t dim, std::vector<Halfspace> halfspaces,
                                 Polytope* out) {
  // Canonicalize and merge parallel duplicates.
  std::vector<Halfspace> canon;
  std::map<Vector, std::size_t> by_normal;
  for (auto& h : halfspaces) {
    if (h.normal.size() != dim) {
      throw GeometryError(GeometryError::Kind::kInvalid, "halfspace normal has wrong dimension");
    }
    if (is_zero(h.normal)) {
      if (h.bound < 0) return Status::kEmpty;
      continue;
    }
    Rational scale;
    Vector n = primitive(h.normal, &scale);
    Rational b = h.bound * scale;
    auto it = by_normal.find(n);
    if (it == by_normal.end()) {
      by_normal.emplace(n, canon.size());
      canon.push_back({std::move(n), std::move(b), h.tag});
    } else {
      Halfspace& kept = canon[it->second];
      if (b < kept.bound || (b == kept.bound && kept.tag < 0 && h.tag >= 0)) {
        kept.bound = b;
        kept.tag = h.tag;
      }
    }
  }

  std::vector<Vector> normals;
  Vector bounds;
  for (const auto& h : canon) {
    normals.push_back(h.normal);
    bounds.push_back(h.bound);
  }
  const std::size_t k = rank(normals, dim);
  if (k < dim) {
    // Not pointed: decide feasibility inside the row space of the normals.
    if (k == 0) return Status::kUnbounded;
    std::vector<Vector> basis;
    for (std::size_t i = 0; i < normals.size() && basis.size() < k; ++i) {
      auto candidate = basis;
      candidate.push_back(normals[i]);
      if (rank(candidate, dim) == candidate.size()) basis.push_back(normals[i]);
    }
    std::vector<Vector> reduced;
    for (const auto& n : normals) {
      Vector r(k);
      for (std::size_t j = 0; j < k; ++j) r[j] = dot(n, basis[j]);
      reduced.push_back(std::move(r));
    }
    return enumerate_vertices(reduced, bounds, k).empty() ? Status::kEmpty : Status::kUnbounded;
  }

  std::vector<Vector> verts = enumerate_vertices(normals, bounds, dim);
  if (verts.empty()) return Status::kEmpty;

  // Pointed and nonempty: bounded iff the recession cone {A d <= 0} is {0}.
  bool unbounded = false;
  for_each_combination(normals.size(), dim - 1, [&](const std::vector<std::size_t>& subset) {
    if (unbounded) return;
    Matrix m(subset.size(), dim);
    for (std::size_t i = 0; i < subset.size(); ++i)
      for (std::size_t j = 0; j < dim; ++j) m(i, j) = normals[subset[i]][j];
    auto ker = nullspace(m);
    if (ker.size() != 1) return;
    for (const Vector& d : {ker[0], -ker[0]}) {
      bool ok = true;
      for (const auto& n : normals) {
        if (dot(n, d) > 0) {
          ok = false;
          break;
        }
      }
      if (ok) unbounded = true;
    }
  });
  if (unbounded) return Status::kUnbounded;

  if (out) {
    out->dim_ = dim;
    out->halfspaces_ = std::move(canon);
    out->vertices_ = std::move(verts);
    out->incidence_.assign(out->vertices_.size(),
                           std::vector<bool>(out->halfspaces_.size(), false));
    for (std::size_t v = 0; v < out->vertices_.size(); ++v)
      for (std::size_t h = 0; h < out->halfspaces_.size(); ++h)
        out->incidence_[v][h] =
            dot(out->halfspaces_[h].normal, out->vertices_[v]) == out->halfspaces_[h].bound;
    out->affine_dim_ = affine_dimension(out->vertices_);
  }
  return Status::kOk;
}

Polytope Polytope::from_halfspaces(std::size_t dim, std::vector<Halfspace> halfspaces) {
  Polytope p;
  switch (build(dim, std::move(halfspaces), &p)) {
    case Status::kEmpty:
      throw GeometryError(GeometryError::Kind::kEmpty, "polytope is empty");
    case Status::kUnbounded:
      throw GeometryError(GeometryError::Kind::kUnbounded, "region is unbounded");
    case Status::kOk:
      break;
  }
  return p;
}

bool Polytope::contains(const Vector& x) const {
  for (const auto& h : halfspaces_) {
    if (dot(h.normal, x) > h.bound) return false;
  }
  return true;
}

std::vector<Facet> Polytope::facets() const {
  if (!is_full_dimensional()) {
    throw GeometryError(GeometryError::Kind::kDegenerate, "facets of a lower-dimensional polytope");
  }
  std::vector<Facet> out;
  for (std::size_t h = 0; h < halfspaces_.size(); ++h) {
    Facet f{h, {}};
    std::vector<Vector> pts;
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
      if (incidence_[v][h]) {
        f.vertices.push_back(v);
        pts.push_back(vertices_[v]);
      }
    }
    if (affine_dimension(pts) == static_cast<int>(dim_) - 1) out.push_back(std::move(f));
  }
  return out;
}

Rational Polytope::volume() const {
  if (!is_full_dimensional()) return 0;
  Rational total = 0;
  for (const auto& s : triangulate(*this)) total += simplex_volume(s);
  return total;
}

namespace {

void pull(const Polytope& p, const std::vector<std::size_t>& face, int k,
          const std::vector<std::size_t>& pos, std::vector<std::vector<std::size_t>>& out) {
  if (k == 0) {
    out.push_back({face.front()});
    return;
  }
  const std::size_t apex = *std::min_element(
      face.begin(), face.end(), [&](std::size_t a, std::size_t b) { return pos[a] < pos[b]; });
  std::set<std::vector<std::size_t>> seen;
  for (std::size_t h = 0; h < p.halfspaces().size(); ++h) {
    if (p.tight(apex, h)) continue;
    std::vector<std::size_t> sub;
    for (auto v : face) {
      if (p.tight(v, h)) sub.push_back(v);
    }
    if (static_cast<int>(sub.size()) < k || !seen.insert(sub).second) continue;
    std::vector<Vector> pts;
    for (auto v : sub) pts.push_back(p.vertices()[v]);
    if (affine_dimension(pts) != k - 1) continue;
    std::vector<std::vector<std::size_t>> cells;
    pull(p, sub, k - 1, pos, cells);
    for (auto& c : cells) {
      c.push_back(apex);
      out.push_back(std::move(c));
    }
  }
}

}  // namespace

std::vector<Simplex> triangulate_face(const Polytope& polytope,
                                      const std::vector<std::size_t>& face_vertices, int face_dim,
                                      const std::vector<std::size_t>& vertex_order) {
  const std::size_t nv = polytope.vertices().size();
  std::vector<std::size_t> pos(nv);
  if (vertex_order.empty()) {
    std::iota(pos.begin(), pos.end(), 0);
  } else {
    if (vertex_order.size() != nv) {
      throw GeometryError(GeometryError::Kind::kInvalid, "vertex order has wrong length");
    }
    for (std::size_t i = 0; i < nv; ++i) pos[vertex_order[i]] = i;
  }
  std::vector<std::vector<std::size_t>> cells;
  if (!face_vertices.empty()) pull(polytope, face_vertices, face_dim, pos, cells);
  std::vector<Simplex> out;
  out.reserve(cells.size());
  for (const auto& c : cells) {
    Simplex s;
    for (auto v : c) s.vertices.push_back(polytope.vertices()[v]);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Simplex> triangulate(const Polytope& polytope,
                                 const std::vector<std::size_t>& vertex_order) {
  if (!polytope.is_full_dimensional()) {
    throw GeometryError(GeometryError::Kind::kDegenerate,
                        "cannot triangulate a lower-dimensional polytope");
  }
  std::vector<std::size_t> all(polytope.vertices().size());
  std::iota(all.begin(), all.end(), 0);
  return triangulate_face(polytope, all, static_cast<int>(polytope.dim()), vertex_order);
}

Rational simplex_volume(const Simplex& s) {
  const std::size_t n = s.vertices.size() - 1;
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = s.vertices[i + 1][j] - s.vertices[0][j];
  Rational det = abs(determinant(m));
  Integer fact = 1;
  for (std::size_t i = 2; i <= n; ++i) fact *= static_cast<unsigned long>(i);
  return det / fact;
}

}  // namespace spherik
