#include "pg/field.hpp"

#include <charconv>
#include <limits>
#include <regex>

namespace pg {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MixedFields: return "MixedFields";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DenominatorDivisibleByP: return "DenominatorDivisibleByP";
    case ErrorCode::UnboundLiteral: return "UnboundLiteral";
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::DuplicateVariable: return "DuplicateVariable";
    case ErrorCode::ZeroOperator: return "ZeroOperator";
    case ErrorCode::InvalidTriangulation: return "InvalidTriangulation";
    case ErrorCode::TetrahedronInThreeSimplices: return "TetrahedronInThreeSimplices";
    case ErrorCode::OrientationInconsistent: return "OrientationInconsistent";
    case ErrorCode::NonOrientable: return "NonOrientable";
    case ErrorCode::DisconnectedInterior: return "DisconnectedInterior";
    case ErrorCode::NotAFacet: return "NotAFacet";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::FieldTooSmall: return "FieldTooSmall";
    case ErrorCode::CoordinatesNotDistinct: return "CoordinatesNotDistinct";
    case ErrorCode::TriangleNotInSimplex: return "TriangleNotInSimplex";
    case ErrorCode::NotAComplex: return "NotAComplex";
    case ErrorCode::FaceNotInner: return "FaceNotInner";
    case ErrorCode::BoundaryTetWithoutFlag: return "BoundaryTetWithoutFlag";
    case ErrorCode::WNotInverse: return "WNotInverse";
    case ErrorCode::UnsupportedTetrahedron: return "UnsupportedTetrahedron";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
  }
  return "Unknown";
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::InvalidField, "empty sampling range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    std::uint64_t r = rng();
    if (r < limit) return r % bound;
  }
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

constexpr std::uint64_t kMaxPrime = std::uint64_t{1} << 62;

const std::regex& scalar_pattern() {
  static const std::regex re(R"(-?[0-9]+(/[0-9]+)?)");
  return re;
}

struct ParsedFraction {
  mpz_class num;
  mpz_class den{1};
};

ParsedFraction parse_fraction(std::string_view text) {
  std::string s(text);
  if (!std::regex_match(s, scalar_pattern()))
    throw Error(ErrorCode::ParseError, "not a scalar: '" + s + "'");
  ParsedFraction f;
  const auto slash = s.find('/');
  f.num = mpz_class(s.substr(0, slash), 10);
  if (slash != std::string::npos) f.den = mpz_class(s.substr(slash + 1), 10);
  return f;
}

std::uint64_t reduce(const mpz_class& z, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return r.get_ui();
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for 64-bit integers.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FieldTag FieldTag::prime(std::uint64_t p) {
  if (p <= 2 || p >= kMaxPrime || !is_prime_u64(p))
    throw Error(ErrorCode::InvalidField, "gf:" + std::to_string(p) + " is not an odd prime below 2^62");
  return {Kind::Prime, p};
}

FieldTag FieldTag::parse(std::string_view text) {
  if (text == "q" || text == "Q") return rationals();
  if (text.substr(0, 3) == "gf:") {
    auto digits = text.substr(3);
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty()) return prime(p);
  }
  throw Error(ErrorCode::InvalidField, "expected 'q' or 'gf:P', got '" + std::string(text) + "'");
}

std::string FieldTag::str() const {
  return is_prime() ? "gf:" + std::to_string(p) : std::string("q");
}

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  q_ = mpq_class(num, 1) / mpq_class(den, 1);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational division by zero");
  q_ /= o.q_;
  return *this;
}

Rational inverse(const Rational& x) {
  if (x.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  return Rational(mpq_class(1 / x.value()));
}

std::string to_string(const Rational& x) { return x.value().get_str(10); }

Rational ScalarTraits<Rational>::parse(std::string_view text, const FieldTag&) {
  auto f = parse_fraction(text);
  if (f.den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
  mpq_class q(f.num, f.den);
  return Rational(q);
}

Rational ScalarTraits<Rational>::random(Rng& rng, const FieldTag&) {
  const long num = static_cast<long>(uniform_below(rng, 20001)) - 10000;
  const long den = static_cast<long>(uniform_below(rng, 64)) + 1;
  return Rational(num, den);
}

// ---------------------------------------------------------------------------
// ModP

ModP ModP::bound(std::uint64_t residue, std::uint64_t p) {
  ModP x;
  x.p_ = p;
  x.v_ = static_cast<std::int64_t>(residue % p);
  return x;
}

std::uint64_t ModP::residue_in(std::uint64_t p) const {
  if (p_ != 0) return static_cast<std::uint64_t>(v_);
  const std::int64_t m = static_cast<std::int64_t>(p);
  std::int64_t r = v_ % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t ModP::common_modulus(const ModP& a, const ModP& b) {
  if (a.p_ != 0 && b.p_ != 0 && a.p_ != b.p_)
    throw Error(ErrorCode::MixedFields,
                "gf:" + std::to_string(a.p_) + " vs gf:" + std::to_string(b.p_));
  return a.p_ != 0 ? a.p_ : b.p_;
}

ModP& ModP::operator+=(const ModP& o) {
  const auto p = common_modulus(*this, o);
  if (p == 0) {
    if (__builtin_add_overflow(v_, o.v_, &v_))
      throw Error(ErrorCode::UnboundLiteral, "integer literal overflow");
    return *this;
  }
  std::uint64_t s = residue_in(p) + o.residue_in(p);
  if (s >= p) s -= p;
  p_ = p;
  v_ = static_cast<std::int64_t>(s);
  return *this;
}

ModP& ModP::operator-=(const ModP& o) { return *this += -o; }

ModP operator-(const ModP& a) {
  ModP r = a;
  if (a.p_ == 0) {
    if (a.v_ == std::numeric_limits<std::int64_t>::min())
      throw Error(ErrorCode::UnboundLiteral, "integer literal overflow");
    r.v_ = -a.v_;
  } else if (a.v_ != 0) {
    r.v_ = static_cast<std::int64_t>(a.p_) - a.v_;
  }
  return r;
}

ModP& ModP::operator*=(const ModP& o) {
  const auto p = common_modulus(*this, o);
  if (p == 0) {
    if (__builtin_mul_overflow(v_, o.v_, &v_))
      throw Error(ErrorCode::UnboundLiteral, "integer literal overflow");
    return *this;
  }
  v_ = static_cast<std::int64_t>(mulmod(residue_in(p), o.residue_in(p), p));
  p_ = p;
  return *this;
}

ModP ModP::inverse() const {
  if (v_ == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (p_ == 0) {
    if (v_ == 1 || v_ == -1) return *this;
    throw Error(ErrorCode::UnboundLiteral, "cannot invert integer literal " + std::to_string(v_) +
                                                " outside a field");
  }
  return bound(powmod(static_cast<std::uint64_t>(v_), p_ - 2, p_), p_);
}

ModP& ModP::operator/=(const ModP& o) {
  common_modulus(*this, o);
  if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero in GF(p)");
  if (p_ == 0 && o.p_ == 0) {
    if (v_ % o.v_ != 0)
      throw Error(ErrorCode::UnboundLiteral, "inexact division of integer literals");
    v_ /= o.v_;
    return *this;
  }
  const auto p = common_modulus(*this, o);
  return *this *= bound(o.residue_in(p), p).inverse();
}

bool operator==(const ModP& a, const ModP& b) {
  const auto p = ModP::common_modulus(a, b);
  if (p == 0) return a.v_ == b.v_;
  return a.residue_in(p) == b.residue_in(p);
}

std::string to_string(const ModP& x) { return std::to_string(x.raw()); }

ModP ScalarTraits<ModP>::parse(std::string_view text, const FieldTag& tag) {
  auto f = parse_fraction(text);
  const auto den = reduce(f.den, tag.p);
  if (den == 0) {
    if (f.den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
    throw Error(ErrorCode::DenominatorDivisibleByP,
                "denominator of '" + std::string(text) + "' vanishes in " + tag.str());
  }
  return ModP::bound(reduce(f.num, tag.p), tag.p) / ModP::bound(den, tag.p);
}

ModP ScalarTraits<ModP>::random(Rng& rng, const FieldTag& tag) {
  return ModP::bound(uniform_below(rng, tag.p), tag.p);
}

}  // namespace pg
