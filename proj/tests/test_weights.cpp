#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pg/weights.hpp"

using namespace pg;
using E = GrassmannElement<ModP>;

namespace {

const FieldTag kTag = FieldTag::prime(1000003);

ModP one() { return ModP::bound(1, kTag.p); }

VertexCoordinates<ModP> coords(std::uint64_t seed) {
  return random_coordinates<ModP>(builtin("boundary_delta5"), kTag, seed);
}

/// The three explicit rows of a 4-simplex u = (1..5 relabelled), written out term by term.
std::array<E, 3> paper_rows(const Simplex& u, const VertexCoordinates<ModP>& z) {
  auto tet = [&](int p, int q, int r, int s) { return Simplex{u[p - 1], u[q - 1], u[r - 1], u[s - 1]}; };
  auto a = [&](int p, int q, int r, int s) { return E::generator({tet(p, q, r, s), Kind::A}, one()); };
  auto b = [&](int p, int q, int r, int s) { return E::generator({tet(p, q, r, s), Kind::B}, one()); };
  auto zz = [&](int p, int q) { return z.diff(u[p - 1], u[q - 1]); };
  const E v1 = a(1, 2, 3, 4) * zz(3, 4) - a(1, 2, 3, 5) * zz(3, 5) + a(1, 2, 4, 5) * zz(4, 5) - a(1, 3, 4, 5) * zz(4, 5);
  const E v2 = b(1, 2, 3, 4) * zz(3, 4) - b(1, 2, 3, 5) * zz(3, 5) + b(1, 2, 4, 5) * zz(4, 5) + a(2, 3, 4, 5) * zz(4, 5);
  const E v3 = -(a(1, 2, 3, 4) * zz(1, 4)) - b(1, 2, 3, 4) * zz(2, 4) + a(1, 2, 3, 5) * zz(1, 5) +
               b(1, 2, 3, 5) * zz(2, 5) - b(1, 3, 4, 5) * zz(4, 5) + b(2, 3, 4, 5) * zz(4, 5);
  return {v1, v2, v3};
}

}  // namespace

TEST_CASE("v-rows match the explicit formulas") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto z = coords(seed);
    for (const Simplex u : {Simplex{1, 2, 3, 4, 5}, Simplex{1, 3, 4, 5, 6}, Simplex{2, 3, 4, 5, 6}}) {
      const auto v = v_rows(u, z);
      const auto want = paper_rows(u, z);
      for (int k = 0; k < 3; ++k) CHECK(v.at_position(k) == want[static_cast<std::size_t>(k)]);
    }
  }
}

TEST_CASE("v-rows satisfy both linear relations") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto z = coords(seed);
    const Simplex u{1, 2, 4, 5, 6};
    const auto v = v_rows(u, z);
    E sum, zsum;
    for (int k = 0; k < 5; ++k) {
      sum += v.at_position(k);
      zsum += v.at_position(k) * z(u[k]);
    }
    CHECK(sum.is_zero());
    CHECK(zsum.is_zero());
    CHECK(v.at_vertex(4) == v.at_position(2));
  }
}

TEST_CASE("v-rows come from the gauged single-simplex f4") {
  const auto z = coords(3);
  const Simplex u{1, 2, 3, 4, 6};
  const auto g = gauge_f4(build_f4_single_simplex(u, z), z);
  const auto v = v_rows(u, z);
  for (int k = 0; k < 3; ++k) CHECK(row_as_element(g, g.row_index({Space::W4, u, u[k]})) == v.at_position(k));
}

TEST_CASE("three ways to write the weight") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto z = coords(seed);
    const Simplex u{1, 2, 3, 4, 5};
    const auto v = v_rows(u, z);
    const E w = weight(v, z);
    CHECK(w.degrees() == std::set<int>{3});
    CHECK(w == v.at_position(0) * v.at_position(1) * v.at_position(3) * (-inverse(z.diff(3, 5))));
    CHECK(w == v.at_position(2) * v.at_position(3) * v.at_position(4) * inverse(z.diff(1, 2)));
    CHECK(w == weight(u, z));
  }
  const auto zq = random_coordinates<Rational>(builtin("boundary_delta5"), FieldTag::rationals(), 4);
  const auto vq = v_rows(Simplex{1, 2, 3, 4, 5}, zq);
  CHECK(weight(vq, zq) == vq.at_position(2) * vq.at_position(3) * vq.at_position(4) * inverse(zq.diff(1, 2)));
}

TEST_CASE("tetrahedron face operators") {
  const auto z = coords(5);
  const Simplex t{1, 2, 3, 4};
  const Generator a{t, Kind::A}, b{t, Kind::B};
  const E ea = E::generator(a, one()), eb = E::generator(b, one());
  auto apply = [&](const Simplex& s, const E& x) { return apply_operator(tet_face_operator(t, s, z), x); };
  CHECK(apply({1, 2, 3}, ea) == E::constant(z.diff(2, 3) / z.diff(3, 4)));
  CHECK(apply({1, 2, 3}, eb) == E::constant(-(z.diff(1, 3) / z.diff(3, 4))));
  CHECK(apply({1, 2, 4}, ea) == E::constant(-(z.diff(2, 4) / z.diff(3, 4))));
  CHECK(apply({1, 2, 4}, eb) == E::constant(z.diff(1, 4) / z.diff(3, 4)));
  CHECK(apply({1, 3, 4}, ea) == E::constant(one()));
  CHECK(apply({1, 3, 4}, eb).is_zero());
  CHECK(apply({2, 3, 4}, eb) == E::constant(-one()));
  CHECK(apply({2, 3, 4}, ea).is_zero());
}

TEST_CASE("face operators of the 3-3 clusters") {
  const auto z = coords(6);
  const auto lhs = builtin("pachner33_lhs");
  const FaceLattice l(lhs);
  const auto d123 = face_operator(Simplex{1, 2, 3}, l, z);
  CHECK(apply_operator(d123, E::generator({{1, 2, 3, 4}, Kind::A}, z.diff(3, 4) / z.diff(2, 3))) == E::constant(one()));
  const auto rhs = builtin("pachner33_rhs");
  const auto d456 = face_operator(Simplex{4, 5, 6}, FaceLattice(rhs), z);
  CHECK(apply_operator(d456, E::generator({{1, 4, 5, 6}, Kind::B}, -one())) == E::constant(one()));

  for (const Simplex bad : {Simplex{1, 2, 4}, Simplex{4, 5, 6}, Simplex{1, 2, 3, 4}}) {
    try {
      (void)face_operator(bad, l, z);
      FAIL("accepted " << bad.str());
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::FaceNotInner);
    }
  }
}

TEST_CASE("face operators lower the degree by one") {
  Rng rng(7);
  const auto z = coords(7);
  const auto lhs = builtin("pachner33_lhs");
  const FaceLattice l(lhs);
  const auto d = face_operator(Simplex{1, 2, 3}, l, z);
  std::vector<Generator> gens;
  for (const auto& t : l.faces(3)) {
    gens.push_back({t, Kind::A});
    gens.push_back({t, Kind::B});
  }
  for (int trial = 0; trial < 100; ++trial) {
    const int deg = 1 + static_cast<int>(uniform_below(rng, 4));
    E x;
    for (int term = 0; term < 5; ++term) {
      Monomial m;
      for (int k = 0; k < deg; ++k) m.push_back(gens[uniform_below(rng, gens.size())]);
      x += E::monomial(m, random_nonzero_scalar<ModP>(rng, kTag));
    }
    const E y = apply_operator(d, x);
    if (!y.is_zero()) CHECK(y.degrees() == std::set<int>{deg - 1});
    CHECK(apply_operator(d, y).is_zero());
  }
}

TEST_CASE("x-chains") {
  const auto tri = builtin("pachner33_lhs");
  const FaceLattice lat(tri);
  XChain<ModP> x;
  x.add({1, 2, 3, 4, 5}, 5, one());
  x.add({1, 2, 3, 4, 5}, 5, one());
  CHECK(x.get({1, 2, 3, 4, 5}, 5) == ModP::bound(2, kTag.p));
  CHECK(is_zero(x.get({1, 2, 3, 4, 5}, 1)));
  x.set({1, 2, 3, 4, 5}, 5, one());
  CHECK((x + x).get({1, 2, 3, 4, 5}, 5) == ModP::bound(2, kTag.p));
  CHECK_THROWS_AS(x.add({1, 2, 3, 4, 5}, 6, one()), Error);

  const auto inner = xchain_from_tet_chain<ModP>({{Simplex{1, 2, 3, 4}, one()}}, tri, lat, false);
  CHECK(inner.values().size() == 2);
  CHECK(inner.get({1, 2, 3, 4, 5}, 5) == one());
  CHECK(inner.get({1, 2, 3, 4, 6}, 6) == one());

  const auto bnd = xchain_from_tet_chain<ModP>({{Simplex{2, 3, 4, 5}, one()}}, tri, lat, true);
  CHECK(bnd.values().size() == 1);
  CHECK(bnd.get({1, 2, 3, 4, 5}, 1) == one());
  try {
    (void)xchain_from_tet_chain<ModP>({{Simplex{2, 3, 4, 5}, one()}}, tri, lat, false);
    FAIL("boundary tetrahedron accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BoundaryTetWithoutFlag);
  }
}

TEST_CASE("deformed weights ignore the relation directions") {
  Rng rng(8);
  const auto z = coords(8);
  const Simplex u{1, 2, 3, 5, 6};
  const auto v = v_rows(u, z);
  for (int trial = 0; trial < 50; ++trial) {
    XChain<ModP> x, shifted;
    const ModP alpha = random_scalar<ModP>(rng, kTag), beta = random_scalar<ModP>(rng, kTag);
    for (int k = 0; k < 5; ++k) {
      const ModP c = random_scalar<ModP>(rng, kTag);
      x.set(u, u[k], c);
      shifted.set(u, u[k], c + alpha + beta * z(u[k]));
    }
    for (int eps : {1, -1}) {
      const E w = deformed_weight(v, z, x, eps);
      CHECK(w == deformed_weight(v, z, shifted, eps));
      CHECK(w.part(3) == weight(v, z));
      CHECK(w.degrees().count(2) == 0);
    }
  }
  CHECK(deformed_weight(u, z, XChain<ModP>{}, 1) == weight(u, z));
}
