#pragma once

// Both sides of the 3-3 relation
//
//   int W_12345 W_12346 W_12356 w_123  da_1234 db_1234/zeta_34 da_1235 db_1235/zeta_35 da_1236 db_1236/zeta_36
//     = int W_12456 W_13456 W_23456 w_456  da_1456 db_1456/zeta_56 ... da_3456 db_3456/zeta_56
//
// assembled for any cluster by the same rule: weights of the 4-simplices in
// sorted order, then one w_s per inner triangle s (sorted), integrated over
// a_t, b_t of every inner tetrahedron t (sorted) with measure 1/zeta_{t3 t4}.

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "pg/error.hpp"
#include "pg/field.hpp"
#include "pg/grassmann.hpp"
#include "pg/triangulation.hpp"
#include "pg/weights.hpp"

namespace pg {

template <FieldScalar S>
struct MoveSide {
  Triangulation cluster;
  FaceLattice lattice;
  VertexCoordinates<S> zeta;
  std::vector<Simplex> inner_tets;
  std::vector<S> measures;  // zeta_{t3 t4} per inner tetrahedron
  std::vector<Simplex> inner_triangles;
};

template <FieldScalar S>
MoveSide<S> make_move_side(const Triangulation& cluster, const VertexCoordinates<S>& zeta) {
  if (zeta.n_vertices() < cluster.n_vertices)
    throw Error(ErrorCode::DimensionMismatch, "zeta has " + std::to_string(zeta.n_vertices()) + " values, cluster has " +
                                                  std::to_string(cluster.n_vertices) + " vertices");
  if (!cluster.oriented()) throw Error(ErrorCode::OrientationInconsistent, "cluster has no orientation");
  FaceLattice lattice(cluster);
  MoveSide<S> side{cluster, lattice, zeta, lattice.inner_faces(3), {}, lattice.inner_faces(2)};
  for (const auto& t : side.inner_tets) side.measures.push_back(zeta.diff(t[2], t[3]));
  return side;
}

/// Inner-tetrahedron generators in integration order: a_t, b_t per tetrahedron.
template <FieldScalar S>
std::vector<Generator> integration_variables(const MoveSide<S>& side) {
  std::vector<Generator> v;
  for (const auto& t : side.inner_tets) {
    v.push_back(gen_a(t));
    v.push_back(gen_b(t));
  }
  return v;
}

/// w_s = c^{-1} theta for the first generator theta of d_s, per inner triangle.
template <FieldScalar S>
std::vector<GrassmannElement<S>> default_w(const MoveSide<S>& side) {
  std::vector<GrassmannElement<S>> w;
  for (const auto& s : side.inner_triangles)
    w.push_back(solve_operator_inverse_of_one(face_operator(s, side.lattice, side.zeta)));
  return w;
}

/// A random degree-1 solution of d(w) = 1 supported on the generators of d.
template <FieldScalar S>
GrassmannElement<S> random_inverse_of_one(const GrassmannOperator<S>& d, Rng& rng, const FieldTag& tag) {
  if (d.is_zero_operator()) throw Error(ErrorCode::ZeroOperator, "operator has no nonzero coefficient");
  auto it = d.terms().begin();
  const auto& [pivot, c0] = *it;
  GrassmannElement<S> w;
  S rest = field_constant(c0, 1);
  for (++it; it != d.terms().end(); ++it) {
    const S r = random_scalar<S>(rng, tag);
    w += GrassmannElement<S>::generator(it->first, r);
    rest -= r * it->second;
  }
  return w + GrassmannElement<S>::generator(pivot, rest / c0);
}

template <FieldScalar S>
std::vector<GrassmannElement<S>> random_w(const MoveSide<S>& side, Rng& rng) {
  std::vector<GrassmannElement<S>> w;
  for (const auto& s : side.inner_triangles)
    w.push_back(random_inverse_of_one(face_operator(s, side.lattice, side.zeta), rng, side.zeta.field()));
  return w;
}

/// The integral of one side. x deforms every weight; w defaults to default_w.
template <FieldScalar S>
GrassmannElement<S> side_integral(const MoveSide<S>& side, const XChain<S>* x = nullptr,
                                  const std::vector<GrassmannElement<S>>* w = nullptr) {
  std::vector<GrassmannElement<S>> ws = w ? *w : default_w(side);
  if (ws.size() != side.inner_triangles.size())
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(side.inner_triangles.size()) + " w factors");
  const S one = field_constant(side.measures.empty() ? side.zeta(1) : side.measures.front(), 1);
  for (std::size_t k = 0; k < ws.size(); ++k) {
    const auto d = face_operator(side.inner_triangles[k], side.lattice, side.zeta);
    if (apply_operator(d, ws[k]) != GrassmannElement<S>::constant(one))
      throw Error(ErrorCode::WNotInverse, "d_" + side.inner_triangles[k].str() + " w != 1");
  }

  std::vector<GrassmannElement<S>> factors;
  for (const auto& u : side.cluster.simplices) {
    const auto v = v_rows(u, side.zeta);
    factors.push_back(x ? deformed_weight(v, side.zeta, *x, side.cluster.epsilon_of(u)) : weight(v, side.zeta));
  }
  factors.insert(factors.end(), ws.begin(), ws.end());

  const auto thetas = integration_variables(side);
  auto r = berezin_integrate_product<S>(factors, thetas);
  S scale = one;
  for (const auto& m : side.measures) scale *= m;
  return r * inverse(scale);
}

template <FieldScalar S>
struct RelationReport {
  GrassmannElement<S> lhs_value;
  GrassmannElement<S> rhs_value;
  GrassmannElement<S> residual;
  bool equal = false;
};

template <FieldScalar S>
RelationReport<S> make_report(GrassmannElement<S> lhs, GrassmannElement<S> rhs) {
  RelationReport<S> r{std::move(lhs), std::move(rhs), {}, false};
  r.residual = r.lhs_value - r.rhs_value;
  r.equal = r.residual.is_zero();
  return r;
}

/// Theorem 3-3 on the built-in clusters; null w selects the default choice on that side.
template <FieldScalar S>
RelationReport<S> verify_33(const VertexCoordinates<S>& zeta, const std::vector<GrassmannElement<S>>* w_lhs = nullptr,
                            const std::vector<GrassmannElement<S>>* w_rhs = nullptr) {
  const auto lhs = make_move_side(builtin("pachner33_lhs"), zeta);
  const auto rhs = make_move_side(builtin("pachner33_rhs"), zeta);
  return make_report(side_integral<S>(lhs, nullptr, w_lhs), side_integral<S>(rhs, nullptr, w_rhs));
}

/// Deformed 3-3 relation with x-chains on both sides induced by one chain on
/// the nine common boundary tetrahedra.
template <FieldScalar S>
RelationReport<S> verify_d1(const VertexCoordinates<S>& zeta, const std::map<Simplex, S>& boundary_coeffs) {
  const auto common = pachner33_common_boundary();
  for (const auto& [t, c] : boundary_coeffs)
    if (std::find(common.begin(), common.end(), t) == common.end())
      throw Error(ErrorCode::UnsupportedTetrahedron, t.str() + " is not on the common boundary");
  const auto lhs = make_move_side(builtin("pachner33_lhs"), zeta);
  const auto rhs = make_move_side(builtin("pachner33_rhs"), zeta);
  const auto xl = xchain_from_tet_chain(boundary_coeffs, lhs.cluster, lhs.lattice, true);
  const auto xr = xchain_from_tet_chain(boundary_coeffs, rhs.cluster, rhs.lattice, true);
  return make_report(side_integral(lhs, &xl), side_integral(rhs, &xr));
}

/// The side integral is unchanged by adding the image of an inner-tetrahedron chain.
template <FieldScalar S>
bool verify_b(const MoveSide<S>& side, const XChain<S>& base_x, const std::map<Simplex, S>& inner_coeffs) {
  const auto shifted = base_x + xchain_from_tet_chain(inner_coeffs, side.cluster, side.lattice, false);
  return side_integral(side, &base_x) == side_integral(side, &shifted);
}

/// Degrees carrying nonzero terms.
template <FieldScalar S>
bool degrees_within(const GrassmannElement<S>& x, const std::set<int>& allowed) {
  for (int d : x.degrees())
    if (!allowed.count(d)) return false;
  return true;
}

/// Every homogeneous part of the residual vanishes on its own.
template <FieldScalar S>
bool graded_parts_vanish(const RelationReport<S>& r) {
  for (int d : r.lhs_value.degrees())
    if (!(r.lhs_value.part(d) - r.rhs_value.part(d)).is_zero()) return false;
  for (int d : r.rhs_value.degrees())
    if (!(r.lhs_value.part(d) - r.rhs_value.part(d)).is_zero()) return false;
  return true;
}

/// lambda with lhs = lambda * rhs, if any.
template <FieldScalar S>
std::optional<S> proportionality(const GrassmannElement<S>& lhs, const GrassmannElement<S>& rhs) {
  if (rhs.is_zero()) return lhs.is_zero() ? std::optional<S>(S(0)) : std::nullopt;
  const auto& [m, c] = *rhs.terms().begin();
  const S lambda = lhs.coefficient(m) / c;
  if (lhs == rhs * lambda) return lambda;
  return std::nullopt;
}

enum class Deform { None, Boundary, Random };

template <FieldScalar S>
struct Explore24Report {
  RelationReport<S> relation;
  std::optional<S> ratio;  // lhs = ratio * rhs when proportional
};

/// Candidate 2-4 relation assembled by the 3-3 rules on pachner24_lhs and
/// pachner24_rhs. Boundary deformation uses one random chain on the common
/// boundary tetrahedra; random deformation draws every x_{u,i} independently.
template <FieldScalar S>
Explore24Report<S> explore_24(const VertexCoordinates<S>& zeta, Deform deform, Rng& rng) {
  const auto lhs = make_move_side(builtin("pachner24_lhs"), zeta);
  const auto rhs = make_move_side(builtin("pachner24_rhs"), zeta);
  const auto tag = zeta.field();
  std::optional<XChain<S>> xl, xr;
  if (deform == Deform::Boundary) {
    std::map<Simplex, S> coeffs;
    for (const auto& t : lhs.lattice.boundary_faces(3)) coeffs.emplace(t, random_scalar<S>(rng, tag));
    xl = xchain_from_tet_chain(coeffs, lhs.cluster, lhs.lattice, true);
    xr = xchain_from_tet_chain(coeffs, rhs.cluster, rhs.lattice, true);
  } else if (deform == Deform::Random) {
    auto draw = [&](const MoveSide<S>& side) {
      XChain<S> x;
      for (const auto& u : side.cluster.simplices)
        for (int v : u) x.set(u, v, random_scalar<S>(rng, tag));
      return x;
    };
    xl = draw(lhs);
    xr = draw(rhs);
  }
  auto rel = make_report(side_integral<S>(lhs, xl ? &*xl : nullptr), side_integral<S>(rhs, xr ? &*xr : nullptr));
  auto ratio = proportionality(rel.lhs_value, rel.rhs_value);
  return {std::move(rel), std::move(ratio)};
}

}  // namespace pg
