#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "pg/triangulation.hpp"

using namespace pg;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::DimensionMismatch;
}

std::vector<Simplex> subsets(const Simplex& s, int k) {
  std::vector<Simplex> out;
  const int n = s.size();
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != k) continue;
    std::vector<int> v;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) v.push_back(s[i]);
    out.emplace_back(std::span<const int>(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Oracle: does the orientation make every shared tetrahedron receive opposite signs?
bool consistent(const std::vector<Simplex>& us, const std::vector<int>& eps) {
  std::map<Simplex, int> induced;
  for (std::size_t i = 0; i < us.size(); ++i)
    for (const auto& t : subsets(us[i], 4)) {
      const int k = us[i].position(us[i].opposite_vertex(t));
      induced[t] += eps[i] * (k % 2 ? -1 : 1);
    }
  for (const auto& [t, s] : induced)
    if (s != 0 && s != 1 && s != -1) return false;
  return true;
}

}  // namespace

TEST_CASE("simplex basics") {
  const Simplex s{3, 1, 2};
  CHECK(s.str() == "123");
  CHECK(Simplex{1, 12}.str() == "1,12");
  CHECK(s.position(2) == 1);
  CHECK(s.position(7) == -1);
  CHECK(Simplex{1, 2, 3, 4}.opposite_vertex(Simplex{1, 3, 4}) == 2);
  CHECK(code_of([] { (void)Simplex({1, 1, 2}); }) == ErrorCode::InvalidTriangulation);
  CHECK(code_of([] { (void)Simplex{1, 2, 3}.opposite_vertex(Simplex{4, 5}); }) == ErrorCode::NotAFacet);
  const std::vector<int> even{2, 0, 1}, odd{1, 0, 2};
  CHECK(permutation_sign(even) == 1);
  CHECK(permutation_sign(odd) == -1);
}

TEST_CASE("boundary signs") {
  CHECK(boundary_sign({1, 2, 3}, {1, 2, 3, 4}) == -1);
  CHECK(boundary_sign({2, 3, 4}, {1, 2, 3, 4}) == 1);
  CHECK(boundary_sign({1, 3, 4}, {1, 2, 3, 4}) == -1);
  CHECK(boundary_sign({1, 2, 3, 4}, {1, 2, 3, 4, 5}) == 1);
  CHECK(code_of([] { (void)boundary_sign({1, 2, 5}, {1, 2, 3, 4}); }) == ErrorCode::NotAFacet);
}

TEST_CASE("boundary of a boundary vanishes") {
  for (const auto& name : builtin_names()) {
    const auto tri = builtin(name);
    for (const auto& u : tri.simplices) {
      std::map<Simplex, int> dd;
      for (const auto& t : subsets(u, 4))
        for (const auto& s : subsets(t, 3)) dd[s] += boundary_sign(t, u) * boundary_sign(s, t);
      for (const auto& [s, c] : dd) CHECK(c == 0);
    }
  }
}

TEST_CASE("3-3 clusters") {
  const auto lhs = builtin("pachner33_lhs");
  const FaceLattice l(lhs);
  CHECK(l.inner_faces(3) == std::vector<Simplex>{{1, 2, 3, 4}, {1, 2, 3, 5}, {1, 2, 3, 6}});
  CHECK(l.inner_faces(2) == std::vector<Simplex>{{1, 2, 3}});
  CHECK(l.inner_faces(1).empty());
  CHECK(l.inner_faces(0).empty());
  CHECK(lhs.epsilon_of({1, 2, 3, 4, 5}) == 1);
  CHECK(lhs.epsilon_of({1, 2, 3, 4, 6}) == -1);
  CHECK(lhs.epsilon_of({1, 2, 3, 5, 6}) == 1);

  const auto rhs = builtin("pachner33_rhs");
  const FaceLattice r(rhs);
  CHECK(r.inner_faces(3) == std::vector<Simplex>{{1, 4, 5, 6}, {2, 4, 5, 6}, {3, 4, 5, 6}});
  CHECK(r.inner_faces(2) == std::vector<Simplex>{{4, 5, 6}});
  CHECK(rhs.epsilon_of({1, 2, 4, 5, 6}) == 1);
  CHECK(rhs.epsilon_of({1, 3, 4, 5, 6}) == -1);
  CHECK(rhs.epsilon_of({2, 3, 4, 5, 6}) == 1);

  auto common = pachner33_common_boundary();
  CHECK(l.boundary_faces(3) == common);
  CHECK(r.boundary_faces(3) == common);
  CHECK(common.size() == 9);
}

TEST_CASE("the paper's orientation signs agree with propagation") {
  const auto lhs = builtin("pachner33_lhs");
  const auto prop = orient_from_reference(make_triangulation(6, lhs.simplices), {1, 2, 3, 4, 5}, 1);
  CHECK(prop.epsilon == lhs.epsilon);
  const auto rhs = builtin("pachner33_rhs");
  CHECK(orient_from_reference(make_triangulation(6, rhs.simplices), {1, 2, 4, 5, 6}, 1).epsilon == rhs.epsilon);
  const auto flipped = orient_from_reference(lhs, {1, 2, 3, 4, 5}, -1);
  for (std::size_t i = 0; i < lhs.epsilon.size(); ++i) CHECK(flipped.epsilon[i] == -lhs.epsilon[i]);
}

TEST_CASE("boundary of the 5-simplex") {
  const auto tri = builtin("boundary_delta5");
  const FaceLattice lat(tri);
  CHECK(tri.simplices.size() == 6);
  CHECK(lat.faces(3).size() == 15);
  CHECK(lat.inner_faces(3).size() == 15);
  CHECK(lat.inner_faces(0).size() == 6);
  CHECK(lat.boundary_faces(1).empty());
  for (const auto& t : lat.faces(3)) CHECK(lat.simplices_containing(t).size() == 2);

  // brute force over all sign vectors with eps_12345 = +1
  int found = 0;
  for (int mask = 0; mask < 64; ++mask) {
    std::vector<int> eps;
    for (int i = 0; i < 6; ++i) eps.push_back(mask & (1 << i) ? -1 : 1);
    if (eps[static_cast<std::size_t>(tri.index_of({1, 2, 3, 4, 5}))] != 1) continue;
    if (!consistent(tri.simplices, eps)) continue;
    ++found;
    CHECK(eps == tri.epsilon);
  }
  CHECK(found == 1);
  for (const auto& u : tri.simplices) {
    int omitted = 0;
    for (int v = 1; v <= 6; ++v)
      if (!u.contains(v)) omitted = v;
    const int sign = (omitted - 6) % 2 == 0 ? 1 : -1;
    CHECK(tri.epsilon_of(u) == sign);
  }
}

TEST_CASE("2-4 clusters") {
  const auto lhs = builtin("pachner24_lhs");
  const FaceLattice l(lhs);
  CHECK(lhs.simplices == std::vector<Simplex>{{1, 2, 3, 4, 5}, {1, 2, 3, 4, 6}});
  CHECK(l.inner_faces(3) == std::vector<Simplex>{{1, 2, 3, 4}});
  const auto rhs = builtin("pachner24_rhs");
  const FaceLattice r(rhs);
  CHECK(rhs.simplices.size() == 4);
  CHECK(l.boundary_faces(3) == r.boundary_faces(3));
  CHECK(consistent(rhs.simplices, rhs.epsilon));
  // the glued closed manifold is the boundary of the 5-simplex
  std::vector<Simplex> all = lhs.simplices;
  std::vector<int> eps = lhs.epsilon;
  for (std::size_t i = 0; i < rhs.simplices.size(); ++i) {
    all.push_back(rhs.simplices[i]);
    eps.push_back(-rhs.epsilon[i]);
  }
  CHECK(consistent(all, eps));
}

TEST_CASE("validation errors") {
  CHECK(code_of([] { (void)builtin("nope"); }) == ErrorCode::UnknownName);
  CHECK(code_of([] { (void)make_triangulation(7, {{1, 2, 3, 4, 5}, {1, 2, 3, 4, 6}, {1, 2, 3, 4, 7}}); }) ==
        ErrorCode::TetrahedronInThreeSimplices);
  CHECK(code_of([] { (void)make_triangulation(6, {{1, 2, 3, 4, 5}, {1, 2, 3, 4, 6}}, {1, 1}); }) ==
        ErrorCode::OrientationInconsistent);
  CHECK(code_of([] { (void)make_triangulation(5, {{1, 2, 3, 4, 6}}); }) == ErrorCode::InvalidTriangulation);
  CHECK(code_of([] { (void)make_triangulation(6, {{1, 2, 3, 4}}); }) == ErrorCode::InvalidTriangulation);
  CHECK(code_of([] {
          (void)orient_from_reference(make_triangulation(10, {{1, 2, 3, 4, 5}, {6, 7, 8, 9, 10}}), {1, 2, 3, 4, 5}, 1);
        }) == ErrorCode::DisconnectedInterior);
  const auto twisted = make_triangulation(
      7, {{1, 2, 3, 4, 6}, {1, 2, 4, 5, 7}, {1, 3, 4, 6, 7}, {1, 3, 5, 6, 7}, {2, 3, 4, 5, 6}, {2, 3, 5, 6, 7}});
  CHECK(code_of([&] { (void)orient_from_reference(twisted, {1, 2, 3, 4, 6}, 1); }) == ErrorCode::NonOrientable);
}

TEST_CASE("random coordinates") {
  const auto tri = builtin("pachner33_lhs");
  const auto tag = FieldTag::prime(1000003);
  const auto a = random_coordinates<ModP>(tri, tag, 9), b = random_coordinates<ModP>(tri, tag, 9);
  CHECK(a.values() == b.values());
  CHECK(a.values() != random_coordinates<ModP>(tri, tag, 10).values());
  for (int seed = 0; seed < 200; ++seed) {
    const auto z = random_coordinates<ModP>(tri, FieldTag::prime(7), static_cast<std::uint64_t>(seed));
    std::set<std::int64_t> distinct;
    for (const auto& v : z.values()) distinct.insert(v.raw());
    CHECK(distinct.size() == 6);
  }
  CHECK(code_of([&] { (void)random_coordinates<ModP>(tri, FieldTag::prime(5), 1); }) == ErrorCode::FieldTooSmall);
  CHECK(code_of([] { (void)VertexCoordinates<Rational>({Rational(1), Rational(2), Rational(1)}); }) ==
        ErrorCode::CoordinatesNotDistinct);
  const auto q = random_coordinates<Rational>(tri, FieldTag::rationals(), 3);
  CHECK(q.diff(1, 2) == q(1) - q(2));
}
