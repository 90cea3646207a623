#pragma once

#include <stdexcept>
#include <string>

namespace dechyp {

enum class ErrorCode {
  NonFiniteValue,
  NonPositiveWeight,
  BadCenterNorm,
  BadPointNorm,
  NoOrthogeodesic,
  NonPositiveProduct,
  NoRadicalLine,
  InvalidTriangle,
  DegenerateSystem,
  SupportUndefined,
  ParseError,
  TopologyError,
  FormatVersionError,
  DegenerateQuad,
  NotFlippable,
  ImproperDecoration,
  NotConverged,
  BadDeterminant,
  SingularFace,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code mapping) can dispatch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dechyp
