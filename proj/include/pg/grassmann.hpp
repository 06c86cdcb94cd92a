#pragma once

// Sparse Grassmann algebra over an exact field.
//
// Generators are attached to tetrahedra: a_t (Kind::A) and b_t (Kind::B).
// They are totally ordered by (tetrahedron, kind) and every monomial is kept
// as a strictly increasing generator sequence; the coefficient absorbs the
// sign of any reordering. Zero coefficients are never stored, so two elements
// are equal iff their term maps are equal.
//
// Derivatives are left derivatives: on a monomial holding theta at 0-based
// position k, d/dtheta removes theta and multiplies by (-1)^k. The Berezin
// integral over one variable is that derivative, and an iterated integral
// over (theta_1, ..., theta_n) applies d/dtheta_1 first.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pg/error.hpp"
#include "pg/field.hpp"
#include "pg/simplex.hpp"

namespace pg {

enum class Kind : std::uint8_t { A = 0, B = 1 };

struct Generator {
  Simplex tetra;
  Kind kind = Kind::A;

  /// "a[1234]" / "b[1234]"
  std::string str() const { return (kind == Kind::A ? "a[" : "b[") + tetra.str() + "]"; }

  friend bool operator==(const Generator&, const Generator&) = default;
  friend std::strong_ordering operator<=>(const Generator& x, const Generator& y) {
    if (auto c = x.tetra <=> y.tetra; c != 0) return c;
    return x.kind <=> y.kind;
  }
};

inline Generator gen_a(const Simplex& tet) { return {tet, Kind::A}; }
inline Generator gen_b(const Simplex& tet) { return {tet, Kind::B}; }

/// Strictly increasing generator sequence.
using Monomial = std::vector<Generator>;

/// Degree first, then lexicographic in generator order.
struct MonomialOrder {
  bool operator()(const Monomial& x, const Monomial& y) const {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  }
};

/// Sorts gens into canonical order. Returns the permutation sign, or 0 when a
/// generator repeats (the monomial vanishes).
int canonicalize_monomial(Monomial& gens);

std::string monomial_str(const Monomial& m);

template <FieldScalar S>
class GrassmannElement {
 public:
  using Terms = std::map<Monomial, S, MonomialOrder>;

  GrassmannElement() = default;

  static GrassmannElement constant(const S& c) { return monomial({}, c); }
  static GrassmannElement generator(const Generator& g, const S& c = S(1)) { return monomial({g}, c); }
  /// c times the product of gens in the listed order.
  static GrassmannElement monomial(Monomial gens, const S& c) {
    GrassmannElement r;
    const int sign = canonicalize_monomial(gens);
    if (sign != 0) r.accumulate(std::move(gens), sign > 0 ? c : -c);
    return r;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  S coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? S(0) : it->second;
  }

  std::set<int> degrees() const {
    std::set<int> d;
    for (const auto& [m, c] : terms_) d.insert(static_cast<int>(m.size()));
    return d;
  }

  /// Homogeneous component of the given degree.
  GrassmannElement part(int degree) const {
    GrassmannElement r;
    for (const auto& [m, c] : terms_)
      if (static_cast<int>(m.size()) == degree) r.terms_.emplace(m, c);
    return r;
  }

  std::set<Generator> support() const {
    std::set<Generator> s;
    for (const auto& [m, c] : terms_) s.insert(m.begin(), m.end());
    return s;
  }

  /// Adds c * m, where m is already canonical.
  void accumulate(Monomial m, const S& c) {
    if (is_zero_scalar(c)) return;
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (is_zero_scalar(it->second)) terms_.erase(it);
    }
  }

  GrassmannElement& operator+=(const GrassmannElement& o) {
    for (const auto& [m, c] : o.terms_) accumulate(m, c);
    return *this;
  }
  GrassmannElement& operator-=(const GrassmannElement& o) {
    for (const auto& [m, c] : o.terms_) accumulate(m, -c);
    return *this;
  }
  GrassmannElement& operator*=(const S& s) {
    if (is_zero_scalar(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend GrassmannElement operator+(GrassmannElement x, const GrassmannElement& y) { return x += y; }
  friend GrassmannElement operator-(GrassmannElement x, const GrassmannElement& y) { return x -= y; }
  friend GrassmannElement operator-(GrassmannElement x) {
    for (auto& [m, c] : x.terms_) c = -c;
    return x;
  }
  friend GrassmannElement operator*(GrassmannElement x, const S& s) { return x *= s; }
  friend GrassmannElement operator*(const S& s, GrassmannElement x) { return x *= s; }

  friend bool operator==(const GrassmannElement& x, const GrassmannElement& y) { return x.terms_ == y.terms_; }

 private:
  static bool is_zero_scalar(const S& c) { return pg::is_zero(c); }

  Terms terms_;
};

/// Debug form: terms sorted by degree then lexicographically, e.g.
/// "3 + 2*a[1234]^b[1234] + 5*a[1235]^b[1235]". The zero element prints as "0".
template <FieldScalar S>
std::string to_string(const GrassmannElement<S>& x) {
  if (x.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : x.terms()) {
    if (!first) s += " + ";
    first = false;
    s += to_string(c);
    if (!m.empty()) s += "*" + monomial_str(m);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Packed representation: an element over at most 64 generators as bit masks.
// Bit i stands for alphabet[i]; the alphabet is sorted, so bit order equals
// canonical generator order.

namespace detail {

template <FieldScalar S>
struct Packed {
  std::unordered_map<std::uint64_t, S> terms;

  void add(std::uint64_t mask, const S& c) {
    auto [it, inserted] = terms.try_emplace(mask, c);
    if (!inserted) it->second += c;
  }
  void prune_zeros() { std::erase_if(terms, [](const auto& kv) { return pg::is_zero(kv.second); }); }
};

class Alphabet {
 public:
  explicit Alphabet(std::vector<Generator> gens) : gens_(std::move(gens)) {
    std::sort(gens_.begin(), gens_.end());
    gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
  }
  bool packable() const { return gens_.size() <= 64; }
  std::size_t size() const { return gens_.size(); }
  const Generator& operator[](std::size_t i) const { return gens_[i]; }

  std::uint64_t bit(const Generator& g) const {
    auto it = std::lower_bound(gens_.begin(), gens_.end(), g);
    if (it == gens_.end() || *it != g) return 0;
    return std::uint64_t{1} << (it - gens_.begin());
  }
  std::uint64_t mask(const Monomial& m) const {
    std::uint64_t r = 0;
    for (const auto& g : m) r |= bit(g);
    return r;
  }
  Monomial monomial(std::uint64_t mask) const {
    Monomial m;
    m.reserve(static_cast<std::size_t>(std::popcount(mask)));
    while (mask) {
      m.push_back(gens_[static_cast<std::size_t>(std::countr_zero(mask))]);
      mask &= mask - 1;
    }
    return m;
  }

 private:
  std::vector<Generator> gens_;
};

/// Sign of concatenating monomial x then monomial y (disjoint masks) into canonical order.
inline int concat_sign(std::uint64_t x, std::uint64_t y) {
  int inversions = 0;
  while (y) {
    const int b = std::countr_zero(y);
    if (b < 63) inversions += std::popcount(x >> (b + 1));
    y &= y - 1;
  }
  return (inversions & 1) ? -1 : 1;
}

template <FieldScalar S>
Packed<S> pack(const GrassmannElement<S>& x, const Alphabet& alpha) {
  Packed<S> p;
  p.terms.reserve(x.size());
  for (const auto& [m, c] : x.terms()) p.terms.emplace(alpha.mask(m), c);
  return p;
}

template <FieldScalar S>
GrassmannElement<S> unpack(const Packed<S>& p, const Alphabet& alpha) {
  GrassmannElement<S> r;
  for (const auto& [mask, c] : p.terms) r.accumulate(alpha.monomial(mask), c);
  return r;
}

template <FieldScalar S>
Packed<S> multiply(const Packed<S>& x, const Packed<S>& y) {
  Packed<S> r;
  r.terms.reserve(x.terms.size() * y.terms.size() / 2 + 1);
  for (const auto& [mx, cx] : x.terms)
    for (const auto& [my, cy] : y.terms) {
      if (mx & my) continue;
      const S c = cx * cy;
      r.add(mx | my, concat_sign(mx, my) > 0 ? c : -c);
    }
  r.prune_zeros();
  return r;
}

/// Generic product over arbitrarily many generators: merge sorted monomials.
template <FieldScalar S>
GrassmannElement<S> multiply_merge(const GrassmannElement<S>& x, const GrassmannElement<S>& y) {
  GrassmannElement<S> r;
  for (const auto& [mx, cx] : x.terms())
    for (const auto& [my, cy] : y.terms()) {
      Monomial m;
      m.reserve(mx.size() + my.size());
      int inversions = 0;
      std::size_t i = 0, j = 0;
      bool repeated = false;
      while (i < mx.size() || j < my.size()) {
        if (j == my.size() || (i < mx.size() && mx[i] < my[j])) {
          m.push_back(mx[i++]);
        } else if (i == mx.size() || my[j] < mx[i]) {
          inversions += static_cast<int>(mx.size() - i);
          m.push_back(my[j++]);
        } else {
          repeated = true;
          break;
        }
      }
      if (repeated) continue;
      const S c = cx * cy;
      r.accumulate(std::move(m), (inversions & 1) ? -c : c);
    }
  return r;
}

template <FieldScalar S>
std::vector<Generator> generators_of(std::initializer_list<const GrassmannElement<S>*> xs) {
  std::vector<Generator> gens;
  for (const auto* x : xs)
    for (const auto& [m, c] : x->terms()) gens.insert(gens.end(), m.begin(), m.end());
  return gens;
}

}  // namespace detail

/// Exterior product.
template <FieldScalar S>
GrassmannElement<S> operator*(const GrassmannElement<S>& x, const GrassmannElement<S>& y) {
  detail::Alphabet alpha(detail::generators_of<S>({&x, &y}));
  if (!alpha.packable()) return detail::multiply_merge(x, y);
  return detail::unpack(detail::multiply(detail::pack(x, alpha), detail::pack(y, alpha)), alpha);
}

template <FieldScalar S>
GrassmannElement<S> gr_mul(const GrassmannElement<S>& x, const GrassmannElement<S>& y) {
  return x * y;
}

template <FieldScalar S>
GrassmannElement<S> left_derivative(const Generator& theta, const GrassmannElement<S>& x) {
  GrassmannElement<S> r;
  for (const auto& [m, c] : x.terms()) {
    auto it = std::lower_bound(m.begin(), m.end(), theta);
    if (it == m.end() || *it != theta) continue;
    const auto k = it - m.begin();
    Monomial rest;
    rest.reserve(m.size() - 1);
    rest.insert(rest.end(), m.begin(), it);
    rest.insert(rest.end(), it + 1, m.end());
    r.accumulate(std::move(rest), (k & 1) ? -c : c);
  }
  return r;
}

namespace detail {
inline void require_distinct(std::span<const Generator> thetas) {
  std::vector<Generator> sorted(thetas.begin(), thetas.end());
  std::sort(sorted.begin(), sorted.end());
  if (auto it = std::adjacent_find(sorted.begin(), sorted.end()); it != sorted.end())
    throw Error(ErrorCode::DuplicateVariable, "variable " + it->str() + " listed twice");
}

template <FieldScalar S>
Packed<S> derive(const Packed<S>& x, std::uint64_t bit) {
  Packed<S> r;
  r.terms.reserve(x.terms.size());
  for (const auto& [m, c] : x.terms) {
    if (!(m & bit)) continue;
    const int k = std::popcount(m & (bit - 1));
    r.add(m ^ bit, (k & 1) ? -c : c);
  }
  r.prune_zeros();
  return r;
}
}  // namespace detail

/// Iterated Berezin integral, thetas[0] integrated first.
template <FieldScalar S>
GrassmannElement<S> berezin_integrate(const GrassmannElement<S>& x, std::span<const Generator> thetas) {
  detail::require_distinct(thetas);
  GrassmannElement<S> r = x;
  for (const auto& theta : thetas) r = left_derivative(theta, r);
  return r;
}

/// berezin_integrate(f_1 * f_2 * ... * f_n, thetas) computed without expanding
/// terms that can no longer pick up every integration variable.
template <FieldScalar S>
GrassmannElement<S> berezin_integrate_product(std::span<const GrassmannElement<S>> factors,
                                              std::span<const Generator> thetas) {
  detail::require_distinct(thetas);
  std::vector<Generator> gens(thetas.begin(), thetas.end());
  for (const auto& f : factors)
    for (const auto& [m, c] : f.terms()) gens.insert(gens.end(), m.begin(), m.end());
  detail::Alphabet alpha(std::move(gens));
  if (!alpha.packable()) {
    GrassmannElement<S> prod = GrassmannElement<S>::constant(S(1));
    for (const auto& f : factors) prod = detail::multiply_merge(prod, f);
    return berezin_integrate(prod, thetas);
  }

  std::uint64_t required = 0;
  for (const auto& t : thetas) required |= alpha.bit(t);

  std::vector<detail::Packed<S>> packed;
  std::vector<std::uint64_t> reach(factors.size() + 1, 0);  // union of supports of factors k..end
  for (const auto& f : factors) packed.push_back(detail::pack(f, alpha));
  for (std::size_t k = factors.size(); k-- > 0;) {
    std::uint64_t s = 0;
    for (const auto& [m, c] : packed[k].terms) s |= m;
    reach[k] = reach[k + 1] | s;
  }

  detail::Packed<S> acc;
  acc.terms.emplace(0, S(1));
  for (std::size_t k = 0; k < packed.size(); ++k) {
    acc = detail::multiply(acc, packed[k]);
    const std::uint64_t later = reach[k + 1];
    std::erase_if(acc.terms, [&](const auto& kv) { return (required & ~kv.first & ~later) != 0; });
  }
  for (const auto& t : thetas) acc = detail::derive(acc, alpha.bit(t));
  return detail::unpack(acc, alpha);
}

/// Linear first-order operator sum_theta c_theta * d/dtheta.
template <FieldScalar S>
class GrassmannOperator {
 public:
  GrassmannOperator() = default;

  /// Adds c * d/dtheta, merging with an existing term for theta.
  GrassmannOperator& add(const Generator& theta, const S& c) {
    auto [it, inserted] = terms_.try_emplace(theta, c);
    if (!inserted) it->second += c;
    if (is_zero(it->second)) terms_.erase(it);
    return *this;
  }

  const std::map<Generator, S>& terms() const { return terms_; }
  bool is_zero_operator() const { return terms_.empty(); }

  S coefficient(const Generator& theta) const {
    auto it = terms_.find(theta);
    return it == terms_.end() ? S(0) : it->second;
  }

  friend GrassmannOperator operator+(GrassmannOperator x, const GrassmannOperator& y) {
    for (const auto& [g, c] : y.terms_) x.add(g, c);
    return x;
  }
  friend bool operator==(const GrassmannOperator&, const GrassmannOperator&) = default;

 private:
  std::map<Generator, S> terms_;
};

template <FieldScalar S>
GrassmannElement<S> apply_operator(const GrassmannOperator<S>& d, const GrassmannElement<S>& x) {
  GrassmannElement<S> r;
  for (const auto& [g, c] : d.terms()) r += left_derivative(g, x) * c;
  return r;
}

/// Degree-1 w with d(w) = 1: c^{-1} * theta for the first theta (canonical order) with c != 0.
template <FieldScalar S>
GrassmannElement<S> solve_operator_inverse_of_one(const GrassmannOperator<S>& d) {
  if (d.is_zero_operator()) throw Error(ErrorCode::ZeroOperator, "operator has no nonzero coefficient");
  const auto& [theta, c] = *d.terms().begin();
  return GrassmannElement<S>::generator(theta, inverse(c));
}

}  // namespace pg
