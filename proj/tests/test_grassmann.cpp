#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "pg/grassmann.hpp"

using namespace pg;
using E = GrassmannElement<ModP>;

namespace {

const FieldTag kTag = FieldTag::prime(1000003);

ModP c(long v) { return field_constant(ModP::bound(0, kTag.p), v); }

Generator gen(int k, Kind kind = Kind::A) { return Generator{Simplex{1, 2, 3, k + 4}, kind}; }

std::vector<Generator> alphabet(int n_tets) {
  std::vector<Generator> g;
  for (int k = 0; k < n_tets; ++k) {
    g.push_back(gen(k, Kind::A));
    g.push_back(gen(k, Kind::B));
  }
  return g;
}

E random_element(Rng& rng, const std::vector<Generator>& gens, int max_terms, int max_degree) {
  E x;
  const int terms = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_terms)));
  for (int t = 0; t < terms; ++t) {
    const int deg = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_degree + 1)));
    Monomial m;
    for (int d = 0; d < deg; ++d) m.push_back(gens[uniform_below(rng, gens.size())]);
    x += E::monomial(m, random_scalar<ModP>(rng, kTag));
  }
  return x;
}

E random_homogeneous(Rng& rng, const std::vector<Generator>& gens, int degree) {
  return random_element(rng, gens, 6, degree).part(degree);
}

/// Oracle product: concatenate each pair of monomials and bubble-sort,
/// flipping the sign at every transposition.
E naive_product(const E& x, const E& y) {
  E r;
  for (const auto& [mx, cx] : x.terms())
    for (const auto& [my, cy] : y.terms()) {
      std::vector<Generator> seq(mx.begin(), mx.end());
      seq.insert(seq.end(), my.begin(), my.end());
      int sign = 1;
      for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = 0; j + 1 < seq.size() - i; ++j)
          if (seq[j + 1] < seq[j]) {
            std::swap(seq[j], seq[j + 1]);
            sign = -sign;
          }
      if (std::adjacent_find(seq.begin(), seq.end()) != seq.end()) continue;
      r.accumulate(Monomial(seq.begin(), seq.end()), sign > 0 ? cx * cy : -(cx * cy));
    }
  return r;
}

}  // namespace

TEST_CASE("anticommutation and nilpotency") {
  const E a = E::generator(gen(0, Kind::A), c(1)), b = E::generator(gen(0, Kind::B), c(1));
  CHECK((a * a).is_zero());
  CHECK(a * b == E::monomial({gen(0, Kind::A), gen(0, Kind::B)}, c(1)));
  CHECK(b * a == E::monomial({gen(0, Kind::A), gen(0, Kind::B)}, c(-1)));
  CHECK(((a + b) * (a + b)).is_zero());
  CHECK(E::monomial({gen(0), gen(0)}, c(5)).is_zero());
}

TEST_CASE("printing") {
  const E ab = E::monomial({gen(0, Kind::B), gen(0, Kind::A)}, c(2));
  CHECK(to_string(ab) == "1000001*a[1234]^b[1234]");
  CHECK(to_string(E{}) == "0");
  CHECK(to_string(E::constant(c(3)) + E::generator(gen(1), c(1))) == "3 + 1*a[1235]");
  const auto q = GrassmannElement<Rational>::generator(gen(0), Rational(2, 3));
  CHECK(to_string(q) == "2/3*a[1234]");
}

TEST_CASE("left derivatives") {
  const Generator a = gen(0, Kind::A), b = gen(0, Kind::B), z = gen(1, Kind::A);
  const E ab = E::monomial({a, b}, c(1));
  CHECK(left_derivative(a, ab) == E::generator(b, c(1)));
  CHECK(left_derivative(b, ab) == E::generator(a, c(-1)));
  CHECK(left_derivative(z, ab).is_zero());
}

TEST_CASE("berezin integrals") {
  const Generator a = gen(0, Kind::A), b = gen(0, Kind::B);
  const std::vector<Generator> da{a}, dadb{a, b}, dupe{a, a};
  CHECK(berezin_integrate(E::generator(a, c(1)), da) == E::constant(c(1)));
  CHECK(berezin_integrate(E::monomial({a, b}, c(1)), dadb) == E::constant(c(1)));
  CHECK(berezin_integrate(E::constant(c(1)), da).is_zero());
  try {
    (void)berezin_integrate(E::generator(a, c(1)), dupe);
    FAIL("duplicate variable accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicateVariable);
  }
}

TEST_CASE("operators") {
  const Generator a = gen(0, Kind::A), b = gen(0, Kind::B);
  GrassmannOperator<ModP> two_da;
  two_da.add(a, c(2));
  CHECK(apply_operator(two_da, E::generator(a, c(1))) == E::constant(c(2)));
  GrassmannOperator<ModP> sum;
  sum.add(a, c(1)).add(b, c(1));
  CHECK(apply_operator(sum, E::monomial({a, b}, c(1))) == E::generator(b, c(1)) - E::generator(a, c(1)));
  CHECK(apply_operator(sum, E::constant(c(1))).is_zero());

  GrassmannOperator<ModP> db;
  db.add(b, c(1));
  CHECK(solve_operator_inverse_of_one(db) == E::generator(b, c(1)));
  try {
    (void)solve_operator_inverse_of_one(GrassmannOperator<ModP>{});
    FAIL("zero operator accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroOperator);
  }
  GrassmannOperator<ModP> cancel;
  cancel.add(a, c(3)).add(a, c(-3));
  CHECK(cancel.is_zero_operator());
}

TEST_CASE("packed product agrees with the bubble-sort oracle") {
  Rng rng(1);
  for (int n_tets : {3, 20, 40}) {  // 40 tetrahedra exceed one 64-bit mask
    const auto gens = alphabet(n_tets);
    for (int trial = 0; trial < 100; ++trial) {
      const E x = random_element(rng, gens, 8, 4), y = random_element(rng, gens, 8, 4);
      CHECK(x * y == naive_product(x, y));
      CHECK(detail::multiply_merge(x, y) == naive_product(x, y));
    }
  }
}

TEST_CASE("product is associative and graded commutative") {
  Rng rng(2);
  const auto gens = alphabet(4);
  for (int trial = 0; trial < 200; ++trial) {
    const E x = random_element(rng, gens, 5, 3), y = random_element(rng, gens, 5, 3), z = random_element(rng, gens, 5, 3);
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    const int p = static_cast<int>(uniform_below(rng, 4)), q = static_cast<int>(uniform_below(rng, 4));
    const E hx = random_homogeneous(rng, gens, p), hy = random_homogeneous(rng, gens, q);
    CHECK(hx * hy == ((p * q) % 2 ? -(hy * hx) : hy * hx));
  }
}

TEST_CASE("left derivatives anticommute and obey the graded Leibniz rule") {
  Rng rng(3);
  const auto gens = alphabet(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Generator t = gens[uniform_below(rng, gens.size())], e = gens[uniform_below(rng, gens.size())];
    const E x = random_element(rng, gens, 6, 5);
    CHECK(left_derivative(t, left_derivative(e, x)) == -left_derivative(e, left_derivative(t, x)));
    const int p = static_cast<int>(uniform_below(rng, 4));
    const E hx = random_homogeneous(rng, gens, p), y = random_element(rng, gens, 4, 3);
    const E rhs = left_derivative(t, hx) * y + (p % 2 ? -(hx * left_derivative(t, y)) : hx * left_derivative(t, y));
    CHECK(left_derivative(t, hx * y) == rhs);
  }
}

TEST_CASE("permuting the integration variables multiplies by the permutation sign") {
  Rng rng(4);
  const auto gens = alphabet(3);
  for (int trial = 0; trial < 100; ++trial) {
    const E x = random_element(rng, gens, 10, 6);
    std::vector<int> perm{0, 1, 2, 3};
    std::vector<Generator> thetas{gens[0], gens[3], gens[1], gens[5]};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Generator> permuted;
    for (int k : perm) permuted.push_back(thetas[static_cast<std::size_t>(k)]);
    const ModP sign = c(permutation_sign(perm));
    CHECK(berezin_integrate(x, permuted) == berezin_integrate(x, thetas) * sign);
  }
}

TEST_CASE("pruned product integral agrees with full expansion") {
  Rng rng(5);
  for (int n_tets : {4, 40}) {
    const auto gens = alphabet(n_tets);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<E> factors;
      for (int k = 0; k < 4; ++k) factors.push_back(random_element(rng, std::vector<Generator>(gens.begin(), gens.begin() + 8), 6, 3));
      const std::vector<Generator> thetas{gens[2], gens[0], gens[5], gens[1]};
      E full = E::constant(c(1));
      for (const auto& f : factors) full = full * f;
      CHECK(berezin_integrate_product<ModP>(factors, thetas) == berezin_integrate(full, thetas));
    }
  }
}

TEST_CASE("inverse of one for random operators") {
  Rng rng(6);
  const auto gens = alphabet(3);
  for (int trial = 0; trial < 200; ++trial) {
    GrassmannOperator<ModP> d;
    for (const auto& g : gens)
      if (uniform_below(rng, 2)) d.add(g, random_nonzero_scalar<ModP>(rng, kTag));
    if (d.is_zero_operator()) d.add(gens.back(), c(7));
    const E w = solve_operator_inverse_of_one(d);
    CHECK(w.degrees() == std::set<int>{1});
    CHECK(apply_operator(d, w) == E::constant(c(1)));
  }
}

TEST_CASE("rational coefficients") {
  using Q = GrassmannElement<Rational>;
  const Q a = Q::generator(gen(0), Rational(1, 2)), b = Q::generator(gen(1), Rational(2, 3));
  CHECK(a * b + b * a == Q{});
  CHECK((a * b).coefficient({gen(0), gen(1)}) == Rational(1, 3));
}
