#include "dechyp/mink.hpp"

#include <algorithm>
#include <string>

#include "dechyp/errors.hpp"

namespace dechyp {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw Error(ErrorCode::NonFiniteValue, what);
}

void require_finite(const MinkVector& v, const char* what) {
  if (!is_finite(v)) throw Error(ErrorCode::NonFiniteValue, what);
}

int sign_of(int e) { return e > 0 ? 1 : (e < 0 ? -1 : 0); }

}  // namespace

bool is_finite(const MinkVector& v) {
  return std::isfinite(v.t) && std::isfinite(v.a) && std::isfinite(v.b);
}

VertexType vertex_type_from_int(int e) {
  switch (e) {
    case -1: return VertexType::Cone;
    case 0: return VertexType::Cusp;
    case 1: return VertexType::Flare;
    default: throw Error(ErrorCode::InvalidArgument, "vertex type must be -1, 0 or 1, got " + std::to_string(e));
  }
}

const char* to_string(VertexType v) {
  switch (v) {
    case VertexType::Cone: return "cone";
    case VertexType::Cusp: return "cusp";
    case VertexType::Flare: return "flare";
  }
  return "?";
}

double tau(int e, double x) {
  switch (sign_of(e)) {
    case -1: return std::cosh(x);
    case 0: return 0.5 * std::exp(x);
    default: return std::sinh(x);
  }
}

double tau_prime(int e, double x) {
  switch (sign_of(e)) {
    case -1: return std::sinh(x);
    case 0: return 0.5 * std::exp(x);
    default: return std::cosh(x);
  }
}

double rho_prime(int e, double x) {
  switch (sign_of(e)) {
    case -1: return std::cos(x);
    case 0: return 1.0;
    default: return std::cosh(x);
  }
}

double modifier(ModifierKind kind, int e, double x) {
  require_finite(x, "modifier argument");
  switch (kind) {
    case ModifierKind::Tau: return tau(e, x);
    case ModifierKind::TauPrime: return tau_prime(e, x);
    case ModifierKind::RhoPrime: return rho_prime(e, x);
  }
  return 0.0;
}

double tau_prime_inverse(int e, double y) {
  switch (sign_of(e)) {
    case -1: return std::asinh(y);
    case 0:
      if (y <= 0.0) throw Error(ErrorCode::NonPositiveProduct, "exponential modifier needs a positive value");
      return std::log(2.0 * y);
    default: return std::acosh(std::max(y, 1.0));
  }
}

double rho_prime_inverse(int e, double y) {
  switch (sign_of(e)) {
    case -1: return std::acos(std::clamp(y, -1.0, 1.0));
    case 0: return 0.0;
    default: return std::acosh(std::max(y, 1.0));
  }
}

const char* to_string(CycleClass c) {
  switch (c) {
    case CycleClass::Point: return "Point";
    case CycleClass::Circle: return "Circle";
    case CycleClass::Horocycle: return "Horocycle";
    case CycleClass::Hypercycle: return "Hypercycle";
    case CycleClass::Invalid: return "Invalid";
  }
  return "?";
}

CycleClass classify_cycle(const MinkVector& c, double tol) {
  require_finite(c, "cycle vector");
  const double n = norm2(c);
  if (n > tol) return CycleClass::Hypercycle;
  if (c.t <= 0.0) return CycleClass::Invalid;
  if (std::abs(n) <= tol) return CycleClass::Horocycle;
  if (std::abs(n + 1.0) <= tol) return CycleClass::Point;
  if (n > -1.0) return CycleClass::Circle;
  return CycleClass::Invalid;
}

MinkVector cycle_from_weight(const MinkVector& center, VertexType type, double weight) {
  require_finite(center, "center");
  require_finite(weight, "weight");
  if (!(weight > 0.0)) throw Error(ErrorCode::NonPositiveWeight, "weight must be positive");
  const double n = norm2(center);
  const double want = static_cast<double>(eps(type));
  if (std::abs(n - want) > 1e-9) throw Error(ErrorCode::BadCenterNorm, "center norm does not match vertex type");
  if (type != VertexType::Flare && center.t <= 0.0)
    throw Error(ErrorCode::BadCenterNorm, "center must be future pointing");
  return center / weight;
}

double pair_product(int eu, double wu, int ev, double wv, double length) {
  require_finite(length, "length");
  if (!(wu > 0.0) || !(wv > 0.0)) throw Error(ErrorCode::NonPositiveWeight, "weights must be positive");
  return tau_prime(eu * ev, length) / (wu * wv);
}

double length_from_product(int eu, double wu, int ev, double wv, double q, double tol) {
  require_finite(q, "product");
  if (!(wu > 0.0) || !(wv > 0.0)) throw Error(ErrorCode::NonPositiveWeight, "weights must be positive");
  const double y = q * wu * wv;
  switch (sign_of(eu * ev)) {
    case -1: return std::asinh(y);
    case 0:
      if (y <= 0.0) throw Error(ErrorCode::NonPositiveProduct, "cusp product must be positive");
      return std::log(2.0 * y);
    default:
      if (y < 1.0 - tol) throw Error(ErrorCode::NoOrthogeodesic, "cycles intersect, no orthogeodesic");
      return std::acosh(std::max(y, 1.0));
  }
}

double tangent_distance(const MinkVector& c, const MinkVector& x) {
  require_finite(c, "cycle");
  require_finite(x, "point");
  if (std::abs(norm2(x) + 1.0) > 1e-9 || x.t <= 0.0) throw Error(ErrorCode::BadPointNorm, "x must be a unit future timelike vector");
  return -mdot(c, x);
}

MinkVector radical_line(const MinkVector& c1, const MinkVector& c2, double tol) {
  require_finite(c1, "cycle");
  require_finite(c2, "cycle");
  const MinkVector d = c1 - c2;
  const double n = norm2(d);
  if (n <= tol) throw Error(ErrorCode::NoRadicalLine, "difference of cycles is not spacelike");
  return d / std::sqrt(n);
}

const char* to_string(PairPosition p) {
  switch (p) {
    case PairPosition::Intersecting: return "Intersecting";
    case PairPosition::Tangent: return "Tangent";
    case PairPosition::Disjoint: return "Disjoint";
  }
  return "?";
}

PairPosition pair_position(const MinkVector& c1, const MinkVector& c2, double tol) {
  require_finite(c1, "cycle");
  require_finite(c2, "cycle");
  // Gramian of the lifted vectors (C, 1) under the form with an extra +1 slot.
  const double g = (norm2(c1) + 1.0) * (norm2(c2) + 1.0) - std::pow(mdot(c1, c2) + 1.0, 2);
  if (g > tol) return PairPosition::Intersecting;
  if (g < -tol) return PairPosition::Disjoint;
  return PairPosition::Tangent;
}

}  // namespace dechyp
