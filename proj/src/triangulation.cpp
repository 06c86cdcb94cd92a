#include "pg/triangulation.hpp"

#include <deque>
#include <set>

namespace pg {

namespace {

std::vector<Simplex> k_faces(const Simplex& s, int size) {
  std::vector<Simplex> out;
  const int n = s.size();
  // enumerate subsets of the given size via bitmasks, sorted output follows
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != size) continue;
    std::vector<int> v;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) v.push_back(s[i]);
    out.emplace_back(std::span<const int>(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::map<Simplex, std::vector<int>> tet_incidence(const std::vector<Simplex>& simplices) {
  std::map<Simplex, std::vector<int>> inc;
  for (int i = 0; i < static_cast<int>(simplices.size()); ++i)
    for (const auto& t : k_faces(simplices[static_cast<std::size_t>(i)], 4)) inc[t].push_back(i);
  return inc;
}

}  // namespace

int Triangulation::index_of(const Simplex& u) const {
  auto it = std::lower_bound(simplices.begin(), simplices.end(), u);
  return (it != simplices.end() && *it == u) ? static_cast<int>(it - simplices.begin()) : -1;
}

int Triangulation::epsilon_of(const Simplex& u) const {
  const int k = index_of(u);
  if (k < 0) throw Error(ErrorCode::InvalidTriangulation, u.str() + " is not a 4-simplex here");
  if (!oriented()) throw Error(ErrorCode::InvalidTriangulation, "triangulation has no orientation");
  return epsilon[static_cast<std::size_t>(k)];
}

int boundary_sign(const Simplex& face, const Simplex& cofac) {
  const int v = cofac.opposite_vertex(face);
  return (cofac.position(v) % 2 == 0) ? 1 : -1;
}

Triangulation make_triangulation(int n_vertices, std::vector<Simplex> simplices, std::vector<int> epsilon) {
  if (n_vertices <= 0) throw Error(ErrorCode::InvalidTriangulation, "no vertices");
  if (simplices.empty()) throw Error(ErrorCode::InvalidTriangulation, "no 4-simplices");
  if (!epsilon.empty() && epsilon.size() != simplices.size())
    throw Error(ErrorCode::InvalidTriangulation, "orientation list length differs from simplex count");
  for (int e : epsilon)
    if (e != 1 && e != -1) throw Error(ErrorCode::InvalidTriangulation, "orientation signs must be +1 or -1");
  for (const auto& u : simplices) {
    if (u.size() != 5) throw Error(ErrorCode::InvalidTriangulation, u.str() + " is not a 4-simplex");
    if (u[0] < 1 || u[4] > n_vertices)
      throw Error(ErrorCode::InvalidTriangulation, u.str() + " has a vertex id outside 1.." +
                                                       std::to_string(n_vertices));
  }

  // sort simplices, carrying their orientations along
  std::vector<std::size_t> order(simplices.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return simplices[a] < simplices[b]; });
  Triangulation t;
  t.n_vertices = n_vertices;
  for (auto i : order) {
    t.simplices.push_back(simplices[i]);
    if (!epsilon.empty()) t.epsilon.push_back(epsilon[i]);
  }
  if (std::adjacent_find(t.simplices.begin(), t.simplices.end()) != t.simplices.end())
    throw Error(ErrorCode::InvalidTriangulation, "repeated 4-simplex");

  for (const auto& [tet, us] : tet_incidence(t.simplices)) {
    if (us.size() > 2)
      throw Error(ErrorCode::TetrahedronInThreeSimplices, tet.str() + " lies in " + std::to_string(us.size()) +
                                                              " 4-simplices");
    if (us.size() == 2 && t.oriented()) {
      const auto& u0 = t.simplices[static_cast<std::size_t>(us[0])];
      const auto& u1 = t.simplices[static_cast<std::size_t>(us[1])];
      const int o0 = t.epsilon[static_cast<std::size_t>(us[0])] * boundary_sign(tet, u0);
      const int o1 = t.epsilon[static_cast<std::size_t>(us[1])] * boundary_sign(tet, u1);
      if (o0 == o1)
        throw Error(ErrorCode::OrientationInconsistent,
                    tet.str() + " gets the same orientation from " + u0.str() + " and " + u1.str());
    }
  }
  return t;
}

FaceLattice::FaceLattice(const Triangulation& t) : simplices_(t.simplices) {
  std::array<std::set<Simplex>, 4> all;
  for (const auto& u : t.simplices)
    for (int d = 0; d < 4; ++d)
      for (auto& f : k_faces(u, d + 1)) all[static_cast<std::size_t>(d)].insert(std::move(f));

  const auto inc = tet_incidence(t.simplices);
  std::set<Simplex> boundary_lower;
  for (const auto& [tet, us] : inc) {
    if (us.size() > 2)
      throw Error(ErrorCode::TetrahedronInThreeSimplices, tet.str() + " lies in more than two 4-simplices");
    const bool inner = us.size() == 2;
    inner_[tet] = inner;
    if (!inner)
      for (int d = 0; d < 3; ++d)
        for (auto& f : k_faces(tet, d + 1)) boundary_lower.insert(std::move(f));
  }
  for (int d = 0; d < 4; ++d) {
    auto& list = faces_[static_cast<std::size_t>(d)];
    list.assign(all[static_cast<std::size_t>(d)].begin(), all[static_cast<std::size_t>(d)].end());
    if (d < 3)
      for (const auto& f : list) inner_[f] = boundary_lower.count(f) == 0;
  }
}

bool FaceLattice::is_inner(const Simplex& face) const {
  auto it = inner_.find(face);
  if (it == inner_.end()) throw Error(ErrorCode::InvalidTriangulation, face.str() + " is not a face here");
  return it->second;
}

std::vector<Simplex> FaceLattice::inner_faces(int dim) const {
  std::vector<Simplex> out;
  for (const auto& f : faces(dim))
    if (inner_.at(f)) out.push_back(f);
  return out;
}

std::vector<Simplex> FaceLattice::boundary_faces(int dim) const {
  std::vector<Simplex> out;
  for (const auto& f : faces(dim))
    if (!inner_.at(f)) out.push_back(f);
  return out;
}

std::vector<int> FaceLattice::simplices_containing(const Simplex& face) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(simplices_.size()); ++i)
    if (simplices_[static_cast<std::size_t>(i)].contains(face)) out.push_back(i);
  return out;
}

std::vector<Simplex> FaceLattice::tetrahedra_containing(const Simplex& face) const {
  std::vector<Simplex> out;
  for (const auto& t : faces(3))
    if (t.contains(face)) out.push_back(t);
  return out;
}

FaceLattice build_lattice(const Triangulation& t) { return FaceLattice(t); }

Triangulation orient_from_reference(const Triangulation& t, const Simplex& reference, int sign) {
  const int ref = t.index_of(reference);
  if (ref < 0) throw Error(ErrorCode::InvalidTriangulation, reference.str() + " is not a 4-simplex here");
  if (sign != 1 && sign != -1) throw Error(ErrorCode::InvalidTriangulation, "reference sign must be +-1");

  const auto inc = tet_incidence(t.simplices);
  std::vector<std::vector<std::pair<int, Simplex>>> adj(t.simplices.size());
  for (const auto& [tet, us] : inc) {
    if (us.size() > 2) throw Error(ErrorCode::TetrahedronInThreeSimplices, tet.str());
    if (us.size() == 2) {
      adj[static_cast<std::size_t>(us[0])].emplace_back(us[1], tet);
      adj[static_cast<std::size_t>(us[1])].emplace_back(us[0], tet);
    }
  }

  std::vector<int> eps(t.simplices.size(), 0);
  eps[static_cast<std::size_t>(ref)] = sign;
  std::deque<int> queue{ref};
  while (!queue.empty()) {
    const int i = queue.front();
    queue.pop_front();
    const auto& u = t.simplices[static_cast<std::size_t>(i)];
    for (const auto& [j, tet] : adj[static_cast<std::size_t>(i)]) {
      const auto& w = t.simplices[static_cast<std::size_t>(j)];
      // induced orientations on the shared tetrahedron must be opposite
      const int want = -eps[static_cast<std::size_t>(i)] * boundary_sign(tet, u) * boundary_sign(tet, w);
      int& ej = eps[static_cast<std::size_t>(j)];
      if (ej == 0) {
        ej = want;
        queue.push_back(j);
      } else if (ej != want) {
        throw Error(ErrorCode::NonOrientable, "orientation conflict across " + tet.str());
      }
    }
  }
  if (std::find(eps.begin(), eps.end(), 0) != eps.end())
    throw Error(ErrorCode::DisconnectedInterior, "some 4-simplices are unreachable through inner tetrahedra");
  return make_triangulation(t.n_vertices, t.simplices, std::move(eps));
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"pachner33_lhs", "pachner33_rhs", "pachner24_lhs",
                                              "pachner24_rhs", "boundary_delta5"};
  return names;
}

Triangulation builtin(std::string_view name) {
  if (name == "pachner33_lhs")
    return make_triangulation(6, {{1, 2, 3, 4, 5}, {1, 2, 3, 4, 6}, {1, 2, 3, 5, 6}}, {1, -1, 1});
  if (name == "pachner33_rhs")
    return make_triangulation(6, {{1, 2, 4, 5, 6}, {1, 3, 4, 5, 6}, {2, 3, 4, 5, 6}}, {1, -1, 1});
  if (name == "pachner24_lhs")
    return orient_from_reference(make_triangulation(6, {{1, 2, 3, 4, 5}, {1, 2, 3, 4, 6}}), {1, 2, 3, 4, 5}, 1);
  if (name == "pachner24_rhs") {
    // orientation matching pachner24_lhs on the shared boundary: 1235 gets the
    // same induced orientation from 12345 (lhs, eps=+1) and 12356 (rhs)
    auto t = make_triangulation(6, {{1, 2, 3, 5, 6}, {1, 2, 4, 5, 6}, {1, 3, 4, 5, 6}, {2, 3, 4, 5, 6}});
    const Simplex tet{1, 2, 3, 5};
    const int lhs_induced = boundary_sign(tet, {1, 2, 3, 4, 5});
    return orient_from_reference(t, {1, 2, 3, 5, 6}, lhs_induced * boundary_sign(tet, {1, 2, 3, 5, 6}));
  }
  if (name == "boundary_delta5") {
    std::vector<Simplex> all;
    for (int omit = 6; omit >= 1; --omit) {
      std::vector<int> v;
      for (int i = 1; i <= 6; ++i)
        if (i != omit) v.push_back(i);
      all.emplace_back(std::span<const int>(v));
    }
    return orient_from_reference(make_triangulation(6, std::move(all)), {1, 2, 3, 4, 5}, 1);
  }
  throw Error(ErrorCode::UnknownName, "no built-in triangulation named '" + std::string(name) + "'");
}

std::vector<Simplex> pachner33_common_boundary() {
  return {{1, 2, 4, 5}, {1, 2, 4, 6}, {1, 2, 5, 6}, {1, 3, 4, 5}, {1, 3, 4, 6},
          {1, 3, 5, 6}, {2, 3, 4, 5}, {2, 3, 4, 6}, {2, 3, 5, 6}};
}

}  // namespace pg
