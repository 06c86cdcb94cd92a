#pragma once

// Lets the exact scalar types live inside Eigen dense matrices. Only the
// arithmetic parts of Eigen are used with them; nothing here relies on a
// norm or a floating-point precision.

#include <Eigen/Core>

#include "pg/field.hpp"

namespace Eigen {

template <>
struct NumTraits<pg::Rational> : GenericNumTraits<pg::Rational> {
  using Real = pg::Rational;
  using NonInteger = pg::Rational;
  using Literal = pg::Rational;
  using Nested = pg::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 8,
    MulCost = 8,
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<pg::ModP> : GenericNumTraits<pg::ModP> {
  using Real = pg::ModP;
  using NonInteger = pg::ModP;
  using Literal = pg::ModP;
  using Nested = pg::ModP;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4,
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
