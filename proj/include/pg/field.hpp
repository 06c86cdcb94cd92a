#pragma once

// Exact scalar fields. Two scalar types share one generic surface:
//   Rational  - arbitrary-precision rationals (GMP), always in lowest terms
//   ModP      - residues modulo a runtime prime p > 2
// Generic code is templated on the scalar type and uses the free functions
// below (is_zero, inverse, to_string, parse_scalar, field_constant, ...).
//
// A ModP built from a plain integer (e.g. ModP(0) or ModP(-1)) is an unbound
// integer literal; it adopts the modulus of the first bound value it meets.
// Two bound values with different moduli never mix.

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "pg/error.hpp"

namespace pg {

/// Deterministic generator used for every randomized draw. mt19937_64 is fully
/// specified by the standard; bounded draws go through uniform_below so that
/// streams are identical across standard libraries.
using Rng = std::mt19937_64;

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

struct FieldTag {
  enum class Kind { Rationals, Prime };

  Kind kind = Kind::Rationals;
  std::uint64_t p = 0;

  static FieldTag rationals() { return {Kind::Rationals, 0}; }
  /// Throws InvalidField unless p is an odd prime below 2^62.
  static FieldTag prime(std::uint64_t p);
  /// Accepts "q" or "gf:P".
  static FieldTag parse(std::string_view text);

  bool is_prime() const { return kind == Kind::Prime; }
  std::string str() const;

  friend bool operator==(const FieldTag&, const FieldTag&) = default;
};

bool is_prime_u64(std::uint64_t n);

class Rational {
 public:
  Rational() = default;
  template <std::integral I>
  Rational(I v) : q_(static_cast<long>(v)) {}
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  Rational(long num, long den);

  const mpq_class& value() const { return q_; }
  bool is_zero() const { return sgn(q_) == 0; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }

 private:
  mpq_class q_;
};

class ModP {
 public:
  ModP() = default;
  template <std::integral I>
  ModP(I v) : v_(static_cast<std::int64_t>(v)) {}

  /// A residue in [0, p) of the field GF(p).
  static ModP bound(std::uint64_t residue, std::uint64_t p);

  bool is_bound() const { return p_ != 0; }
  std::uint64_t modulus() const { return p_; }
  /// Residue when bound; the signed literal otherwise.
  std::int64_t raw() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  ModP& operator+=(const ModP& o);
  ModP& operator-=(const ModP& o);
  ModP& operator*=(const ModP& o);
  ModP& operator/=(const ModP& o);

  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  friend ModP operator-(const ModP& a);

  friend bool operator==(const ModP& a, const ModP& b);

  ModP inverse() const;

 private:
  // Brings both operands into a common field; throws MixedFields.
  static std::uint64_t common_modulus(const ModP& a, const ModP& b);
  std::uint64_t residue_in(std::uint64_t p) const;

  std::int64_t v_ = 0;
  std::uint64_t p_ = 0;
};

// ---------------------------------------------------------------------------
// Generic scalar surface

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(const ModP& x) { return x.is_zero(); }

Rational inverse(const Rational& x);
inline ModP inverse(const ModP& x) { return x.inverse(); }

/// Canonical text: "p/q" or "n" for rationals, decimal residue for GF(p).
std::string to_string(const Rational& x);
std::string to_string(const ModP& x);

inline std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << to_string(x); }
inline std::ostream& operator<<(std::ostream& os, const ModP& x) { return os << to_string(x); }

/// Field tag of a scalar. Unbound ModP literals report a prime tag with p = 0.
inline FieldTag field_of(const Rational&) { return FieldTag::rationals(); }
inline FieldTag field_of(const ModP& x) { return {FieldTag::Kind::Prime, x.modulus()}; }

template <class S>
concept FieldScalar = std::regular<S> && requires(S a, const S& b) {
  { a + b } -> std::same_as<S>;
  { a - b } -> std::same_as<S>;
  { a * b } -> std::same_as<S>;
  { a / b } -> std::same_as<S>;
  { -b } -> std::same_as<S>;
  { is_zero(b) } -> std::same_as<bool>;
  { inverse(b) } -> std::same_as<S>;
  { to_string(b) } -> std::same_as<std::string>;
  { field_of(b) } -> std::same_as<FieldTag>;
};

/// Integer v as an element of the same field as proto.
template <FieldScalar S>
S field_constant(const S& proto, long v) {
  return proto * S(0) + S(v);
}

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static bool accepts(const FieldTag& tag) { return !tag.is_prime(); }
  static Rational parse(std::string_view text, const FieldTag& tag);
  static Rational random(Rng& rng, const FieldTag& tag);
};

template <>
struct ScalarTraits<ModP> {
  static bool accepts(const FieldTag& tag) { return tag.is_prime(); }
  static ModP parse(std::string_view text, const FieldTag& tag);
  static ModP random(Rng& rng, const FieldTag& tag);
};

/// Parses `-?[0-9]+(/[0-9]+)?` into the field named by tag.
template <FieldScalar S>
S parse_scalar(std::string_view text, const FieldTag& tag) {
  if (!ScalarTraits<S>::accepts(tag))
    throw Error(ErrorCode::MixedFields, "scalar type does not match field " + tag.str());
  return ScalarTraits<S>::parse(text, tag);
}

/// Uniform residue over GF(p); small-height fraction over the rationals.
template <FieldScalar S>
S random_scalar(Rng& rng, const FieldTag& tag) {
  if (!ScalarTraits<S>::accepts(tag))
    throw Error(ErrorCode::MixedFields, "scalar type does not match field " + tag.str());
  return ScalarTraits<S>::random(rng, tag);
}

template <FieldScalar S>
S random_nonzero_scalar(Rng& rng, const FieldTag& tag) {
  for (;;) {
    S x = random_scalar<S>(rng, tag);
    if (!is_zero(x)) return x;
  }
}

}  // namespace pg
