#pragma once

// Grassmann weights of 4-simplices.
//
// For a 4-simplex u = ijklm the v-rows are degree-1 elements in the
// generators a_t, b_t of its five tetrahedra: v_{u,i}, v_{u,j}, v_{u,k} are
// the rows of the gauge-transformed f4 of u alone (column (t, first vertex)
// -> a_t, column (t, second vertex) -> b_t), and v_{u,l}, v_{u,m} follow from
//   sum_r v_{u,r} = 0,   sum_r zeta_r v_{u,r} = 0.
// The weight is W_u = v_{u,i} v_{u,j} v_{u,k} / zeta_lm and its deformation by
// an x-chain is W_u + eps_u * sum_r x_{u,r} v_{u,r}.

#include <array>
#include <map>
#include <utility>

#include "pg/chain_complex.hpp"
#include "pg/error.hpp"
#include "pg/field.hpp"
#include "pg/grassmann.hpp"
#include "pg/triangulation.hpp"

namespace pg {

template <FieldScalar S>
struct VRows {
  Simplex u;
  std::array<GrassmannElement<S>, 5> rows;  // indexed by vertex position in u

  const GrassmannElement<S>& at_position(int k) const { return rows.at(static_cast<std::size_t>(k)); }
  const GrassmannElement<S>& at_vertex(int vertex) const { return at_position(u.position(vertex)); }
};

/// Reads a row of a matrix whose columns are (V3, t, vertex) labels as a
/// degree-1 element: the first vertex of t maps to a_t, the second to b_t.
template <FieldScalar S>
GrassmannElement<S> row_as_element(const ExactMatrix<S>& m, Eigen::Index r) {
  GrassmannElement<S> v;
  for (Eigen::Index c = 0; c < m.n_cols(); ++c) {
    const auto& l = m.cols[static_cast<std::size_t>(c)];
    const Kind kind = l.vertex == l.face[0] ? Kind::A : Kind::B;
    v.accumulate({Generator{l.face, kind}}, m.entries(r, c));
  }
  return v;
}

template <FieldScalar S>
VRows<S> v_rows(const Simplex& u, const VertexCoordinates<S>& zeta) {
  VRows<S> out{u, {}};
  const auto tri = make_triangulation(u[4], {u}, {1});
  const auto f4 = gauge_f4(build_f4(tri, FaceLattice(tri), zeta), zeta);
  for (int k = 0; k < 3; ++k) out.rows[static_cast<std::size_t>(k)] = row_as_element(f4, f4.row_index({Space::V4, u, u[k]}));

  // v_l + v_m = A and zeta_l v_l + zeta_m v_m = B
  GrassmannElement<S> a, b;
  for (int k = 0; k < 3; ++k) {
    a -= out.rows[static_cast<std::size_t>(k)];
    b -= out.rows[static_cast<std::size_t>(k)] * zeta(u[k]);
  }
  const int l = u[3], m = u[4];
  auto vm = (b - a * zeta(l)) * inverse(zeta.diff(m, l));
  out.rows[3] = a - vm;
  out.rows[4] = std::move(vm);
  return out;
}

/// W_u = v_{u,1} v_{u,2} v_{u,3} / zeta_{u4 u5} (positions 1-based).
template <FieldScalar S>
GrassmannElement<S> weight(const VRows<S>& v, const VertexCoordinates<S>& zeta) {
  return v.rows[0] * v.rows[1] * v.rows[2] * inverse(zeta.diff(v.u[3], v.u[4]));
}

template <FieldScalar S>
GrassmannElement<S> weight(const Simplex& u, const VertexCoordinates<S>& zeta) {
  return weight(v_rows(u, zeta), zeta);
}

/// d_{t,s} for a triangle s of the tetrahedron t = ijkl:
///   s = ijk:  (zeta_jk/zeta_kl) d/da_t - (zeta_ik/zeta_kl) d/db_t
///   s = ijl: -(zeta_jl/zeta_kl) d/da_t + (zeta_il/zeta_kl) d/db_t
///   s = ikl:  d/da_t
///   s = jkl: -d/db_t
template <FieldScalar S>
GrassmannOperator<S> tet_face_operator(const Simplex& t, const Simplex& s, const VertexCoordinates<S>& zeta) {
  const int omitted = t.position(t.opposite_vertex(s));
  const Generator a{t, Kind::A}, b{t, Kind::B};
  auto z = [&](int p, int q) { return zeta.diff(t[p - 1], t[q - 1]); };
  const S one = field_constant(zeta(t[0]), 1);
  GrassmannOperator<S> d;
  switch (omitted) {
    case 3:
      d.add(a, z(2, 3) / z(3, 4)).add(b, -(z(1, 3) / z(3, 4)));
      break;
    case 2:
      d.add(a, -(z(2, 4) / z(3, 4))).add(b, z(1, 4) / z(3, 4));
      break;
    case 1:
      d.add(a, one);
      break;
    default:
      d.add(b, -one);
      break;
  }
  return d;
}

/// d_s = sum over tetrahedra t containing the inner triangle s of d_{t,s}.
template <FieldScalar S>
GrassmannOperator<S> face_operator(const Simplex& s, const FaceLattice& lattice, const VertexCoordinates<S>& zeta) {
  if (s.size() != 3 || !lattice.contains(s) || !lattice.is_inner(s))
    throw Error(ErrorCode::FaceNotInner, s.str() + " is not an inner triangle");
  GrassmannOperator<S> d;
  for (const auto& t : lattice.tetrahedra_containing(s)) d = d + tet_face_operator(t, s, zeta);
  return d;
}

/// Assignment (4-simplex, vertex) -> scalar; unlisted pairs are zero.
template <FieldScalar S>
class XChain {
 public:
  using Key = std::pair<Simplex, int>;

  S get(const Simplex& u, int vertex) const {
    auto it = values_.find({u, vertex});
    return it == values_.end() ? S(0) : it->second;
  }
  void add(const Simplex& u, int vertex, const S& c) {
    if (!u.contains(vertex)) throw Error(ErrorCode::InvalidTriangulation, std::to_string(vertex) + " is not in " + u.str());
    auto [it, inserted] = values_.try_emplace({u, vertex}, c);
    if (!inserted) it->second += c;
  }
  void set(const Simplex& u, int vertex, const S& c) {
    if (!u.contains(vertex)) throw Error(ErrorCode::InvalidTriangulation, std::to_string(vertex) + " is not in " + u.str());
    values_.insert_or_assign(Key{u, vertex}, c);
  }
  const std::map<Key, S>& values() const { return values_; }

  friend XChain operator+(XChain x, const XChain& y) {
    for (const auto& [k, c] : y.values_) x.add(k.first, k.second, c);
    return x;
  }

 private:
  std::map<Key, S> values_;
};

/// For each tetrahedron t with coefficient c and each 4-simplex u containing t,
/// adds c to x_{u, vertex of u opposite t}.
template <FieldScalar S>
XChain<S> xchain_from_tet_chain(const std::map<Simplex, S>& coeffs, const Triangulation& tri,
                                const FaceLattice& lattice, bool include_boundary) {
  XChain<S> x;
  for (const auto& [t, c] : coeffs) {
    if (t.size() != 4 || !lattice.contains(t))
      throw Error(ErrorCode::InvalidTriangulation, t.str() + " is not a tetrahedron here");
    if (!include_boundary && !lattice.is_inner(t))
      throw Error(ErrorCode::BoundaryTetWithoutFlag, t.str() + " is a boundary tetrahedron");
    if (is_zero(c)) continue;
    for (const auto& u : tri.simplices)
      if (u.contains(t)) x.add(u, u.opposite_vertex(t), c);
  }
  return x;
}

template <FieldScalar S>
GrassmannElement<S> deformed_weight(const VRows<S>& v, const VertexCoordinates<S>& zeta, const XChain<S>& x,
                                    int epsilon) {
  GrassmannElement<S> lin;
  for (int k = 0; k < 5; ++k) lin += v.rows[static_cast<std::size_t>(k)] * x.get(v.u, v.u[k]);
  return weight(v, zeta) + lin * S(epsilon);
}

template <FieldScalar S>
GrassmannElement<S> deformed_weight(const Simplex& u, const VertexCoordinates<S>& zeta, const XChain<S>& x,
                                    int epsilon) {
  return deformed_weight(v_rows(u, zeta), zeta, x, epsilon);
}

}  // namespace pg
