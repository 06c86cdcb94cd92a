#pragma once

// The two zeta-parametrized complexes of a triangulated 4-manifold.
//
// f-complex:  V0 --f2--> V2 --f3--> V3 --f4--> V4 --f5--> V0*
//   V0, V0*  inner vertices
//   W2       pairs (s, i), s an inner triangle, i in s
//   W3, W4   pairs (a, i) for every tetrahedron / 4-simplex a, i in a
//   V_k      subspace of W_k with  sum_i y_{a,i} = 0  and  sum_i zeta_i y_{a,i} = 0  per face a
// V_k carries the distinguished basis given by the leading coordinates of
// each face (all but the last two vertices); matrices are built by lifting a
// basis vector into W_k, applying the coordinate formula and projecting back
// onto the leading coordinates.
//
// g-complex:  inner vertices --g2--> inner tetrahedra --g3--> U --g4--> inner edges --g5--> 2 x inner vertices
//   U is spanned by e_{u,i} (u a 4-simplex, i in u) modulo, per u,
//   sum_i e_{u,i} = 0 and sum_i zeta_i e_{u,i} = 0. Vectors of U are stored in
//   canonical form (coefficients of the last two vertices of u are zero), so
//   its basis is (u, i) for the first three vertices i of u.

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "pg/eigen_support.hpp"
#include "pg/error.hpp"
#include "pg/field.hpp"
#include "pg/simplex.hpp"
#include "pg/triangulation.hpp"

namespace pg {

enum class Space {
  V0, V2, V3, V4, V0Star, W2, W3, W4,
  GVertex, GTet, GMid, GEdge, GVertexE, GVertexF,
};

std::string space_name(Space s);

/// Basis vector provenance: the space, the face it belongs to and, where the
/// space pairs faces with vertices, the vertex.
struct BasisLabel {
  Space space = Space::V0;
  Simplex face;
  int vertex = 0;

  /// "V3:(1234,1)", "V0:(5)", "gE:(56)"
  std::string str() const;

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

template <FieldScalar S>
using DenseMatrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <FieldScalar S>
struct ExactMatrix {
  std::vector<BasisLabel> rows;
  std::vector<BasisLabel> cols;
  DenseMatrix<S> entries;

  ExactMatrix() = default;
  ExactMatrix(std::vector<BasisLabel> r, std::vector<BasisLabel> c)
      : rows(std::move(r)), cols(std::move(c)),
        entries(DenseMatrix<S>::Zero(static_cast<Eigen::Index>(rows.size()),
                                     static_cast<Eigen::Index>(cols.size()))) {}

  Eigen::Index n_rows() const { return entries.rows(); }
  Eigen::Index n_cols() const { return entries.cols(); }

  Eigen::Index row_index(const BasisLabel& l) const { return find(rows, l); }
  Eigen::Index col_index(const BasisLabel& l) const { return find(cols, l); }

  S at(const BasisLabel& r, const BasisLabel& c) const {
    const auto i = row_index(r), j = col_index(c);
    if (i < 0 || j < 0) throw Error(ErrorCode::DimensionMismatch, "no entry " + r.str() + " x " + c.str());
    return entries(i, j);
  }

  bool is_zero() const { return nonzeros() == 0; }

  Eigen::Index nonzeros() const {
    Eigen::Index n = 0;
    for (Eigen::Index i = 0; i < entries.rows(); ++i)
      for (Eigen::Index j = 0; j < entries.cols(); ++j)
        if (!pg::is_zero(entries(i, j))) ++n;
    return n;
  }

 private:
  static Eigen::Index find(const std::vector<BasisLabel>& v, const BasisLabel& l) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] == l) return static_cast<Eigen::Index>(i);
    return -1;
  }
};

/// outer * inner; the row basis of inner must be the column basis of outer.
template <FieldScalar S>
ExactMatrix<S> compose(const ExactMatrix<S>& outer, const ExactMatrix<S>& inner) {
  if (outer.cols.size() != inner.rows.size())
    throw Error(ErrorCode::DimensionMismatch, "cannot compose " + std::to_string(outer.cols.size()) + " columns with " +
                                                  std::to_string(inner.rows.size()) + " rows");
  ExactMatrix<S> r;
  r.rows = outer.rows;
  r.cols = inner.cols;
  if (outer.n_cols() == 0)
    r.entries = DenseMatrix<S>::Zero(outer.n_rows(), inner.n_cols());
  else
    r.entries = outer.entries * inner.entries;
  return r;
}

/// Rank by exact Gaussian elimination.
template <FieldScalar S>
Eigen::Index rank(const DenseMatrix<S>& m) {
  DenseMatrix<S> a = m;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < a.cols() && r < a.rows(); ++c) {
    Eigen::Index piv = r;
    while (piv < a.rows() && is_zero(a(piv, c))) ++piv;
    if (piv == a.rows()) continue;
    a.row(piv).swap(a.row(r));
    const S inv = inverse(a(r, c));
    for (Eigen::Index i = r + 1; i < a.rows(); ++i) {
      if (is_zero(a(i, c))) continue;
      const S f = a(i, c) * inv;
      for (Eigen::Index j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

template <FieldScalar S>
Eigen::Index rank(const ExactMatrix<S>& m) {
  return rank<S>(m.entries);
}

// ---------------------------------------------------------------------------
// Constrained coordinates

/// Coordinates keyed by (face, vertex); for V0/V0* the face is the vertex itself.
template <FieldScalar S>
struct ChainVector {
  Space space = Space::V0;
  std::map<std::pair<Simplex, int>, S> coords;

  S get(const Simplex& face, int vertex) const {
    auto it = coords.find({face, vertex});
    return it == coords.end() ? S(0) : it->second;
  }
  void add(const Simplex& face, int vertex, const S& c) {
    auto [it, inserted] = coords.try_emplace({face, vertex}, c);
    if (!inserted) it->second += c;
  }
};

namespace detail {
inline Space ambient_of(Space s) {
  switch (s) {
    case Space::V2: return Space::W2;
    case Space::V3: return Space::W3;
    case Space::V4: return Space::W4;
    default: throw Error(ErrorCode::DimensionMismatch, "only V2, V3, V4 have constrained lifts");
  }
}
inline int face_size_of(Space s) {
  switch (s) {
    case Space::V2: case Space::W2: return 3;
    case Space::V3: case Space::W3: return 4;
    case Space::V4: case Space::W4: return 5;
    default: return 1;
  }
}
}  // namespace detail

/// Full coordinates on face given its leading (size - 2) coordinates: the last
/// two solve sum y = 0 and sum zeta y = 0.
template <FieldScalar S>
std::vector<S> lift_face(const Simplex& face, std::span<const S> lead, const VertexCoordinates<S>& zeta) {
  const int n = face.size();
  if (static_cast<int>(lead.size()) != n - 2)
    throw Error(ErrorCode::DimensionMismatch, "face " + face.str() + " needs " + std::to_string(n - 2) +
                                                  " leading coordinates");
  std::vector<S> y(lead.begin(), lead.end());
  S s0(0), s1(0);
  for (int k = 0; k < n - 2; ++k) {
    s0 -= y[static_cast<std::size_t>(k)];
    s1 -= zeta(face[k]) * y[static_cast<std::size_t>(k)];
  }
  const int l = face[n - 2], m = face[n - 1];
  const S ym = (s1 - zeta(l) * s0) / zeta.diff(m, l);
  y.push_back(s0 - ym);
  y.push_back(ym);
  return y;
}

/// The unique W_k vector satisfying the constraints with the given leading
/// coordinates (given as a V_k vector; missing leading entries are zero).
template <FieldScalar S>
ChainVector<S> lift_to_constrained(const ChainVector<S>& lead, const VertexCoordinates<S>& zeta) {
  ChainVector<S> out;
  out.space = detail::ambient_of(lead.space);
  std::map<Simplex, std::vector<S>> per_face;
  const int n = detail::face_size_of(lead.space);
  for (const auto& [key, c] : lead.coords) {
    const auto& [face, v] = key;
    const int pos = face.position(v);
    if (face.size() != n || pos < 0 || pos >= n - 2)
      throw Error(ErrorCode::DimensionMismatch, "(" + face.str() + "," + std::to_string(v) +
                                                    ") is not a leading coordinate of " + space_name(lead.space));
    auto& lv = per_face.try_emplace(face, std::vector<S>(static_cast<std::size_t>(n - 2), S(0))).first->second;
    lv[static_cast<std::size_t>(pos)] += c;
  }
  for (const auto& [face, lv] : per_face) {
    const auto y = lift_face<S>(face, lv, zeta);
    for (int k = 0; k < n; ++k) out.add(face, face[k], y[static_cast<std::size_t>(k)]);
  }
  return out;
}

/// Keeps only the leading coordinates of each face (W_k -> V_k identification).
template <FieldScalar S>
ChainVector<S> project_to_distinguished(const ChainVector<S>& full, Space target) {
  ChainVector<S> out;
  out.space = target;
  const int n = detail::face_size_of(target);
  for (const auto& [key, c] : full.coords) {
    const int pos = key.first.position(key.second);
    if (pos < n - 2 && !is_zero(c)) out.add(key.first, key.second, c);
  }
  return out;
}

template <FieldScalar S>
bool satisfies_constraints(const ChainVector<S>& w, const VertexCoordinates<S>& zeta) {
  std::map<Simplex, std::pair<S, S>> sums;
  for (const auto& [key, c] : w.coords) {
    auto& [s0, s1] = sums.try_emplace(key.first, S(0), S(0)).first->second;
    s0 += c;
    s1 += zeta(key.second) * c;
  }
  for (const auto& [face, s] : sums)
    if (!is_zero(s.first) || !is_zero(s.second)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// f-complex coordinate maps (full W coordinates)

/// Eq. for f2: y_{s,i} = (1/zeta_ij - 1/zeta_ik) y_i - y_j/zeta_ij + y_k/zeta_ik,
/// with (i, j, k) an even permutation of the sorted triangle.
template <FieldScalar S>
ChainVector<S> apply_f2(const ChainVector<S>& v0, const FaceLattice& lattice, const VertexCoordinates<S>& zeta) {
  ChainVector<S> out;
  out.space = Space::W2;
  auto y = [&](int vertex) { return v0.get(Simplex{vertex}, vertex); };
  for (const auto& s : lattice.inner_faces(2)) {
    for (int p = 0; p < 3; ++p) {
      const int i = s[p], j = s[(p + 1) % 3], k = s[(p + 2) % 3];
      const S inv_ij = inverse(zeta.diff(i, j));
      const S inv_ik = inverse(zeta.diff(i, k));
      out.add(s, i, (inv_ij - inv_ik) * y(i) - inv_ij * y(j) + inv_ik * y(k));
    }
  }
  return out;
}

/// y_{t,i} = sum over inner triangles s in t containing i of eps_s^(t) y_{s,i}.
template <FieldScalar S>
ChainVector<S> apply_f3(const ChainVector<S>& w2, const FaceLattice& lattice) {
  ChainVector<S> out;
  out.space = Space::W3;
  for (const auto& [key, c] : w2.coords) {
    const auto& [s, i] = key;
    for (const auto& t : lattice.tetrahedra_containing(s)) out.add(t, i, c * S(boundary_sign(s, t)));
  }
  return out;
}

/// y_{u,i} = sum over tetrahedra t in u containing i of eps_t^(u) y_{t,i}.
template <FieldScalar S>
ChainVector<S> apply_f4(const ChainVector<S>& w3, const Triangulation& tri) {
  ChainVector<S> out;
  out.space = Space::W4;
  for (const auto& [key, c] : w3.coords) {
    const auto& [t, i] = key;
    for (const auto& u : tri.simplices)
      if (u.contains(t)) out.add(u, i, c * S(boundary_sign(t, u)));
  }
  return out;
}

/// y*_i = sum over 4-simplices u containing i of eps_u y_{u,i}, for inner vertices i.
template <FieldScalar S>
ChainVector<S> apply_f5(const ChainVector<S>& w4, const Triangulation& tri, const FaceLattice& lattice) {
  ChainVector<S> out;
  out.space = Space::V0Star;
  for (const auto& [key, c] : w4.coords) {
    const auto& [u, i] = key;
    if (lattice.is_inner(Simplex{i})) out.add(Simplex{i}, i, c * S(tri.epsilon_of(u)));
  }
  return out;
}

namespace detail {

inline std::vector<BasisLabel> vertex_labels(Space sp, const std::vector<Simplex>& vertices) {
  std::vector<BasisLabel> out;
  for (const auto& v : vertices) out.push_back({sp, v, 0});
  return out;
}

/// Leading (face, vertex) pairs: all but the last two vertices of each face.
inline std::vector<BasisLabel> leading_labels(Space sp, const std::vector<Simplex>& faces) {
  std::vector<BasisLabel> out;
  for (const auto& f : faces)
    for (int k = 0; k < f.size() - 2; ++k) out.push_back({sp, f, f[k]});
  return out;
}

inline std::vector<BasisLabel> full_labels(Space sp, const std::vector<Simplex>& faces) {
  std::vector<BasisLabel> out;
  for (const auto& f : faces)
    for (int v : f) out.push_back({sp, f, v});
  return out;
}

template <FieldScalar S>
ChainVector<S> basis_vector(const BasisLabel& l) {
  ChainVector<S> v;
  v.space = l.space;
  v.add(l.face, l.vertex == 0 ? l.face[0] : l.vertex, S(1));
  return v;
}

template <FieldScalar S>
void fill_column(ExactMatrix<S>& m, Eigen::Index col, const ChainVector<S>& image, bool vertex_rows) {
  for (const auto& [key, c] : image.coords) {
    if (is_zero(c)) continue;
    const BasisLabel l{m.rows.empty() ? Space::V0 : m.rows.front().space, key.first, vertex_rows ? 0 : key.second};
    const auto r = m.row_index(l);
    if (r < 0) continue;  // coordinate dropped by projection
    m.entries(r, col) += c;
  }
}

}  // namespace detail

template <FieldScalar S>
ExactMatrix<S> build_f2(const Triangulation&, const FaceLattice& lattice, const VertexCoordinates<S>& zeta) {
  ExactMatrix<S> m(detail::leading_labels(Space::V2, lattice.inner_faces(2)),
                   detail::vertex_labels(Space::V0, lattice.inner_faces(0)));
  for (Eigen::Index c = 0; c < m.n_cols(); ++c) {
    auto image = apply_f2(detail::basis_vector<S>(m.cols[static_cast<std::size_t>(c)]), lattice, zeta);
    detail::fill_column(m, c, project_to_distinguished(image, Space::V2), false);
  }
  return m;
}

template <FieldScalar S>
ExactMatrix<S> build_f3(const Triangulation&, const FaceLattice& lattice, const VertexCoordinates<S>& zeta) {
  ExactMatrix<S> m(detail::leading_labels(Space::V3, lattice.faces(3)),
                   detail::leading_labels(Space::V2, lattice.inner_faces(2)));
  for (Eigen::Index c = 0; c < m.n_cols(); ++c) {
    auto lifted = lift_to_constrained(detail::basis_vector<S>(m.cols[static_cast<std::size_t>(c)]), zeta);
    detail::fill_column(m, c, project_to_distinguished(apply_f3(lifted, lattice), Space::V3), false);
  }
  return m;
}

namespace detail {
template <FieldScalar S>
ExactMatrix<S> build_f4_into(Space codomain, const Triangulation& tri, const FaceLattice& lattice,
                             const VertexCoordinates<S>& zeta) {
  const bool full = codomain == Space::W4;
  ExactMatrix<S> m(full ? full_labels(Space::W4, tri.simplices) : leading_labels(Space::V4, tri.simplices),
                   leading_labels(Space::V3, lattice.faces(3)));
  for (Eigen::Index c = 0; c < m.n_cols(); ++c) {
    auto image = apply_f4(lift_to_constrained(basis_vector<S>(m.cols[static_cast<std::size_t>(c)]), zeta), tri);
    fill_column(m, c, full ? image : project_to_distinguished(image, Space::V4), false);
  }
  return m;
}
}  // namespace detail

template <FieldScalar S>
ExactMatrix<S> build_f4(const Triangulation& tri, const FaceLattice& lattice, const VertexCoordinates<S>& zeta) {
  return detail::build_f4_into(Space::V4, tri, lattice, zeta);
}

/// f4 of the single 4-simplex u, with codomain W4 (5 rows) instead of V4: 5 x 10.
template <FieldScalar S>
ExactMatrix<S> build_f4_single_simplex(const Simplex& u, const VertexCoordinates<S>& zeta) {
  const auto tri = make_triangulation(u[4], {u}, {1});
  return detail::build_f4_into(Space::W4, tri, FaceLattice(tri), zeta);
}

template <FieldScalar S>
ExactMatrix<S> build_f5(const Triangulation& tri, const FaceLattice& lattice, const VertexCoordinates<S>& zeta) {
  ExactMatrix<S> m(detail::vertex_labels(Space::V0Star, lattice.inner_faces(0)),
                   detail::leading_labels(Space::V4, tri.simplices));
  for (Eigen::Index c = 0; c < m.n_cols(); ++c) {
    auto lifted = lift_to_constrained(detail::basis_vector<S>(m.cols[static_cast<std::size_t>(c)]), zeta);
    detail::fill_column(m, c, apply_f5(lifted, tri, lattice), true);
  }
  return m;
}

template <FieldScalar S>
struct GaugedPair {
  ExactMatrix<S> f3;
  ExactMatrix<S> f4;
};

/// Gauge rescaling for a cluster without inner vertices: both f4 columns of a
/// tetrahedron ijkl are multiplied by zeta_kl; f3 rows of ijkl are divided by
/// zeta_kl and f3 columns of an inner triangle ijk are multiplied by zeta_jk.
template <FieldScalar S>
ExactMatrix<S> gauge_f4(ExactMatrix<S> f4, const VertexCoordinates<S>& zeta) {
  for (Eigen::Index c = 0; c < f4.n_cols(); ++c) {
    const auto& t = f4.cols[static_cast<std::size_t>(c)].face;
    f4.entries.col(c) *= zeta.diff(t[2], t[3]);
  }
  return f4;
}

template <FieldScalar S>
GaugedPair<S> gauge_transform(const ExactMatrix<S>& f3, const ExactMatrix<S>& f4, const VertexCoordinates<S>& zeta) {
  GaugedPair<S> g{f3, gauge_f4(f4, zeta)};
  auto tet_scale = [&](const BasisLabel& l) { return zeta.diff(l.face[2], l.face[3]); };
  for (Eigen::Index r = 0; r < g.f3.n_rows(); ++r)
    g.f3.entries.row(r) *= inverse(tet_scale(g.f3.rows[static_cast<std::size_t>(r)]));
  for (Eigen::Index c = 0; c < g.f3.n_cols(); ++c) {
    const auto& s = g.f3.cols[static_cast<std::size_t>(c)].face;
    g.f3.entries.col(c) *= zeta.diff(s[1], s[2]);
  }
  return g;
}

template <FieldScalar S>
std::vector<ExactMatrix<S>> f_complex(const Triangulation& tri, const FaceLattice& lattice,
                                      const VertexCoordinates<S>& zeta) {
  return {build_f2(tri, lattice, zeta), build_f3(tri, lattice, zeta), build_f4(tri, lattice, zeta),
          build_f5(tri, lattice, zeta)};
}

// ---------------------------------------------------------------------------
// g-complex

/// Raw coefficients (x_{u,1..5}) of one 4-simplex in the overfull system.
template <FieldScalar S>
using SimplexCoeffs = std::array<S, 5>;

/// Subtracts the unique combination of (1,...,1) and (zeta_1..zeta_5) that
/// clears the last two coordinates.
template <FieldScalar S>
SimplexCoeffs<S> canonicalize(const Simplex& u, const SimplexCoeffs<S>& x, const VertexCoordinates<S>& zeta) {
  const int l = u[3], m = u[4];
  const S beta = (x[3] - x[4]) / zeta.diff(l, m);
  const S alpha = x[3] - beta * zeta(l);
  SimplexCoeffs<S> r;
  for (int k = 0; k < 5; ++k) r[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k)] - alpha - beta * zeta(u[k]);
  r[3] = S(0);
  r[4] = S(0);
  return r;
}

/// Vector of the middle space as raw coefficients per 4-simplex.
template <FieldScalar S>
struct GComplexVector {
  std::map<Simplex, SimplexCoeffs<S>> raw;

  void add(const Simplex& u, int vertex, const S& c) {
    auto& x = raw.try_emplace(u, SimplexCoeffs<S>{S(0), S(0), S(0), S(0), S(0)}).first->second;
    x[static_cast<std::size_t>(u.position(vertex))] += c;
  }

  std::map<Simplex, SimplexCoeffs<S>> canonical(const VertexCoordinates<S>& zeta) const {
    std::map<Simplex, SimplexCoeffs<S>> out;
    for (const auto& [u, x] : raw) out.emplace(u, canonicalize(u, x, zeta));
    return out;
  }

  bool equivalent(const GComplexVector& o, const VertexCoordinates<S>& zeta) const {
    auto a = canonical(zeta), b = o.canonical(zeta);
    const SimplexCoeffs<S> zero{S(0), S(0), S(0), S(0), S(0)};
    auto get = [&](const auto& m, const Simplex& u) {
      auto it = m.find(u);
      return it == m.end() ? zero : it->second;
    };
    for (const auto& [u, x] : a)
      if (x != get(b, u)) return false;
    for (const auto& [u, x] : b)
      if (x != get(a, u)) return false;
    return true;
  }
};

/// y_ijk = zeta_jk x_i + zeta_ki x_j + zeta_ij x_k for a triangle ijk of u.
template <FieldScalar S>
S triangle_invariant(const SimplexCoeffs<S>& x, const Simplex& u, const Simplex& triangle,
                     const VertexCoordinates<S>& zeta) {
  if (triangle.size() != 3 || !u.contains(triangle))
    throw Error(ErrorCode::TriangleNotInSimplex, triangle.str() + " is not a triangle of " + u.str());
  const int i = triangle[0], j = triangle[1], k = triangle[2];
  auto xv = [&](int v) { return x[static_cast<std::size_t>(u.position(v))]; };
  return zeta.diff(j, k) * xv(i) + zeta.diff(k, i) * xv(j) + zeta.diff(i, j) * xv(k);
}

template <FieldScalar S>
ExactMatrix<S> build_g2(const Triangulation&, const FaceLattice& lattice, const VertexCoordinates<S>& zeta) {
  ExactMatrix<S> m(detail::vertex_labels(Space::GTet, lattice.inner_faces(3)),
                   detail::vertex_labels(Space::GVertex, lattice.inner_faces(0)));
  for (Eigen::Index c = 0; c < m.n_cols(); ++c) {
    const int i = m.cols[static_cast<std::size_t>(c)].face[0];
    for (Eigen::Index r = 0; r < m.n_rows(); ++r) {
      const auto& t = m.rows[static_cast<std::size_t>(r)].face;
      if (!t.contains(i)) continue;
      S prod = field_constant(zeta(i), 1);
      for (int j : t)
        if (j != i) prod *= zeta.diff(i, j);
      m.entries(r, c) = inverse(prod);
    }
  }
  return m;
}

/// Image of a tetrahedron chain: e_t -> sum over 4-simplices u containing t of
/// e_{u, vertex of u opposite t}. One term for a boundary tetrahedron.
template <FieldScalar S>
GComplexVector<S> g3_image(const std::map<Simplex, S>& tet_chain, const Triangulation& tri) {
  GComplexVector<S> x;
  for (const auto& [t, c] : tet_chain)
    for (const auto& u : tri.simplices)
      if (u.contains(t)) x.add(u, u.opposite_vertex(t), c);
  return x;
}

template <FieldScalar S>
ExactMatrix<S> build_g3(const Triangulation& tri, const FaceLattice& lattice, const VertexCoordinates<S>& zeta,
                        bool include_boundary = false) {
  ExactMatrix<S> m(detail::leading_labels(Space::GMid, tri.simplices),
                   detail::vertex_labels(Space::GTet, include_boundary ? lattice.faces(3) : lattice.inner_faces(3)));
  for (Eigen::Index c = 0; c < m.n_cols(); ++c) {
    const auto& t = m.cols[static_cast<std::size_t>(c)].face;
    const auto image = g3_image<S>({{t, field_constant(zeta(1), 1)}}, tri).canonical(zeta);
    for (const auto& [u, x] : image)
      for (int k = 0; k < 3; ++k) {
        const auto r = m.row_index({Space::GMid, u, u[k]});
        m.entries(r, c) += x[static_cast<std::size_t>(k)];
      }
  }
  return m;
}

/// Per 4-simplex u = i1..i5: eps_u * sum over triangles abc of u of
/// sign(abc de) * y_abc * e_de, de the complementary edge; only inner edges kept.
template <FieldScalar S>
ExactMatrix<S> build_g4(const Triangulation& tri, const FaceLattice& lattice, const VertexCoordinates<S>& zeta) {
  ExactMatrix<S> m(detail::vertex_labels(Space::GEdge, lattice.inner_faces(1)),
                   detail::leading_labels(Space::GMid, tri.simplices));
  for (Eigen::Index c = 0; c < m.n_cols(); ++c) {
    const auto& col = m.cols[static_cast<std::size_t>(c)];
    const Simplex& u = col.face;
    SimplexCoeffs<S> x{S(0), S(0), S(0), S(0), S(0)};
    x[static_cast<std::size_t>(u.position(col.vertex))] = S(1);
    const S eps(tri.epsilon_of(u));
    for (int a = 0; a < 5; ++a)
      for (int b = a + 1; b < 5; ++b)
        for (int d = b + 1; d < 5; ++d) {
          std::array<int, 5> order{a, b, d, 0, 0};
          int n = 3;
          for (int q = 0; q < 5; ++q)
            if (q != a && q != b && q != d) order[static_cast<std::size_t>(n++)] = q;
          const Simplex edge{u[order[3]], u[order[4]]};
          const auto r = m.row_index({Space::GEdge, edge, 0});
          if (r < 0) continue;
          const S y = triangle_invariant(x, u, Simplex{u[a], u[b], u[d]}, zeta);
          m.entries(r, c) += eps * S(permutation_sign(order)) * y;
        }
  }
  return m;
}

/// g5(e_ij) = e*_i + zeta_j f*_i - e*_j - zeta_i f*_j, terms at boundary vertices dropped.
template <FieldScalar S>
ExactMatrix<S> build_g5(const Triangulation&, const FaceLattice& lattice, const VertexCoordinates<S>& zeta) {
  const auto verts = lattice.inner_faces(0);
  auto rows = detail::vertex_labels(Space::GVertexE, verts);
  const auto f_rows = detail::vertex_labels(Space::GVertexF, verts);
  rows.insert(rows.end(), f_rows.begin(), f_rows.end());
  ExactMatrix<S> m(std::move(rows), detail::vertex_labels(Space::GEdge, lattice.inner_faces(1)));
  for (Eigen::Index c = 0; c < m.n_cols(); ++c) {
    const auto& e = m.cols[static_cast<std::size_t>(c)].face;
    const int i = e[0], j = e[1];
    auto put = [&](Space sp, int v, const S& val) {
      const auto r = m.row_index({sp, Simplex{v}, 0});
      if (r >= 0) m.entries(r, c) += val;
    };
    put(Space::GVertexE, i, S(1));
    put(Space::GVertexF, i, zeta(j));
    put(Space::GVertexE, j, S(-1));
    put(Space::GVertexF, j, -zeta(i));
  }
  return m;
}

template <FieldScalar S>
std::vector<ExactMatrix<S>> g_complex(const Triangulation& tri, const FaceLattice& lattice,
                                      const VertexCoordinates<S>& zeta) {
  return {build_g2(tri, lattice, zeta), build_g3(tri, lattice, zeta), build_g4(tri, lattice, zeta),
          build_g5(tri, lattice, zeta)};
}

// ---------------------------------------------------------------------------
// Homology over the field

struct HomologyReport {
  std::vector<Eigen::Index> dims;      // dimension of each term, n_maps + 1 entries
  std::vector<Eigen::Index> ranks;     // rank of each map
  std::vector<Eigen::Index> homology;  // dim ker(out) - rank(in) per term
};

/// maps[k] goes from term k to term k + 1. Throws NotAComplex when two
/// consecutive maps do not compose to zero.
template <FieldScalar S>
HomologyReport homology_dims(const std::vector<ExactMatrix<S>>& maps) {
  HomologyReport rep;
  if (maps.empty()) return rep;
  for (std::size_t k = 0; k + 1 < maps.size(); ++k) {
    if (!compose(maps[k + 1], maps[k]).is_zero())
      throw Error(ErrorCode::NotAComplex, "maps " + std::to_string(k) + " and " + std::to_string(k + 1) +
                                              " do not compose to zero");
  }
  rep.dims.push_back(maps.front().n_cols());
  for (const auto& m : maps) {
    rep.dims.push_back(m.n_rows());
    rep.ranks.push_back(rank(m));
  }
  for (std::size_t k = 0; k < rep.dims.size(); ++k) {
    const Eigen::Index in = k > 0 ? rep.ranks[k - 1] : 0;
    const Eigen::Index out = k < rep.ranks.size() ? rep.ranks[k] : 0;
    rep.homology.push_back(rep.dims[k] - out - in);
  }
  return rep;
}

}  // namespace pg
