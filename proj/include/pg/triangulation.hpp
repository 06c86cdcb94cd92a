#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pg/error.hpp"
#include "pg/field.hpp"
#include "pg/simplex.hpp"

namespace pg {

/// Oriented triangulated 4-manifold with boundary. Vertex ids run 1..n_vertices.
struct Triangulation {
  int n_vertices = 0;
  std::vector<Simplex> simplices;  // 4-simplices, sorted
  std::vector<int> epsilon;        // +-1 per simplex; empty when orientation is not yet assigned

  bool oriented() const { return !epsilon.empty(); }
  /// Index of the 4-simplex u, or -1.
  int index_of(const Simplex& u) const;
  /// Orientation sign of the 4-simplex u.
  int epsilon_of(const Simplex& u) const;
};

/// Validates and normalizes: simplices are sorted 5-tuples with ids in range,
/// no tetrahedron is shared by three simplices, and any given orientation is
/// consistent across every shared tetrahedron.
Triangulation make_triangulation(int n_vertices, std::vector<Simplex> simplices,
                                 std::vector<int> epsilon = {});

/// (-1)^k where k is the position of the vertex of cofac missing from face.
int boundary_sign(const Simplex& face, const Simplex& cofac);

/// Face lattice with inner/boundary flags. A tetrahedron is inner iff it lies
/// in two 4-simplices; a lower face is boundary iff it is a face of some
/// boundary tetrahedron.
class FaceLattice {
 public:
  explicit FaceLattice(const Triangulation& t);

  /// dim 0..3: vertices, edges, triangles, tetrahedra (sorted).
  const std::vector<Simplex>& faces(int dim) const { return faces_.at(static_cast<std::size_t>(dim)); }
  std::vector<Simplex> inner_faces(int dim) const;
  std::vector<Simplex> boundary_faces(int dim) const;

  bool contains(const Simplex& face) const { return inner_.count(face) != 0; }
  bool is_inner(const Simplex& face) const;

  /// Indices (into Triangulation::simplices) of the 4-simplices containing face.
  std::vector<int> simplices_containing(const Simplex& face) const;
  /// Tetrahedra of the triangulation containing face, in sorted order.
  std::vector<Simplex> tetrahedra_containing(const Simplex& face) const;

 private:
  std::vector<Simplex> simplices_;
  std::array<std::vector<Simplex>, 4> faces_;
  std::map<Simplex, bool> inner_;
};

FaceLattice build_lattice(const Triangulation& t);

/// Propagates orientation through shared tetrahedra starting from
/// epsilon(reference) = sign. Throws NonOrientable or DisconnectedInterior.
Triangulation orient_from_reference(const Triangulation& t, const Simplex& reference, int sign);

/// pachner33_lhs, pachner33_rhs, pachner24_lhs, pachner24_rhs, boundary_delta5.
Triangulation builtin(std::string_view name);
const std::vector<std::string>& builtin_names();

/// The nine tetrahedra on the common boundary of the two 3-3 move clusters.
std::vector<Simplex> pachner33_common_boundary();

/// Per-vertex coordinates zeta_i, pairwise distinct.
template <FieldScalar S>
class VertexCoordinates {
 public:
  /// values[k] is zeta of vertex k + 1.
  explicit VertexCoordinates(std::vector<S> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i)
      for (std::size_t j = i + 1; j < values_.size(); ++j)
        if (values_[i] == values_[j])
          throw Error(ErrorCode::CoordinatesNotDistinct,
                      "zeta_" + std::to_string(i + 1) + " = zeta_" + std::to_string(j + 1));
  }

  int n_vertices() const { return static_cast<int>(values_.size()); }
  const S& operator()(int vertex) const { return values_.at(static_cast<std::size_t>(vertex - 1)); }
  /// zeta_ij = zeta_i - zeta_j
  S diff(int i, int j) const { return (*this)(i) - (*this)(j); }
  const std::vector<S>& values() const { return values_; }
  FieldTag field() const { return values_.empty() ? FieldTag{} : field_of(values_.front()); }

 private:
  std::vector<S> values_;
};

/// Deterministic in seed; draws are redrawn on collision.
template <FieldScalar S>
VertexCoordinates<S> random_coordinates(const Triangulation& t, const FieldTag& tag, std::uint64_t seed) {
  if (tag.is_prime() && tag.p < static_cast<std::uint64_t>(t.n_vertices))
    throw Error(ErrorCode::FieldTooSmall, tag.str() + " cannot hold " + std::to_string(t.n_vertices) +
                                              " distinct coordinates");
  Rng rng(seed);
  std::vector<S> values;
  values.reserve(static_cast<std::size_t>(t.n_vertices));
  while (static_cast<int>(values.size()) < t.n_vertices) {
    S z = random_scalar<S>(rng, tag);
    if (std::find(values.begin(), values.end(), z) == values.end()) values.push_back(std::move(z));
  }
  return VertexCoordinates<S>(std::move(values));
}

}  // namespace pg
