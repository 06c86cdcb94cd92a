#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pg {

enum class ErrorCode {
  MixedFields,
  DivisionByZero,
  ParseError,
  DenominatorDivisibleByP,
  UnboundLiteral,
  InvalidField,
  DuplicateVariable,
  ZeroOperator,
  InvalidTriangulation,
  TetrahedronInThreeSimplices,
  OrientationInconsistent,
  NonOrientable,
  DisconnectedInterior,
  NotAFacet,
  UnknownName,
  FieldTooSmall,
  CoordinatesNotDistinct,
  TriangleNotInSimplex,
  NotAComplex,
  FaceNotInner,
  BoundaryTetWithoutFlag,
  WNotInverse,
  UnsupportedTetrahedron,
  DimensionMismatch,
};

std::string_view error_name(ErrorCode code) noexcept;

/// Every library failure is reported as a pg::Error carrying a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pg
