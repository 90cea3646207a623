#include "dechyp/errors.hpp"

namespace dechyp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::BadCenterNorm: return "BadCenterNorm";
    case ErrorCode::BadPointNorm: return "BadPointNorm";
    case ErrorCode::NoOrthogeodesic: return "NoOrthogeodesic";
    case ErrorCode::NonPositiveProduct: return "NonPositiveProduct";
    case ErrorCode::NoRadicalLine: return "NoRadicalLine";
    case ErrorCode::InvalidTriangle: return "InvalidTriangle";
    case ErrorCode::DegenerateSystem: return "DegenerateSystem";
    case ErrorCode::SupportUndefined: return "SupportUndefined";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::TopologyError: return "TopologyError";
    case ErrorCode::FormatVersionError: return "FormatVersionError";
    case ErrorCode::DegenerateQuad: return "DegenerateQuad";
    case ErrorCode::NotFlippable: return "NotFlippable";
    case ErrorCode::ImproperDecoration: return "ImproperDecoration";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::BadDeterminant: return "BadDeterminant";
    case ErrorCode::SingularFace: return "SingularFace";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace dechyp
