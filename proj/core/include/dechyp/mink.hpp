#pragma once

#include <cmath>

namespace dechyp {

inline constexpr double kTolClass = 1e-9;

// (t, a, b) with form diag(-1, +1, +1).
struct MinkVector {
  double t = 0.0;
  double a = 0.0;
  double b = 0.0;

  constexpr MinkVector operator+(const MinkVector& o) const { return {t + o.t, a + o.a, b + o.b}; }
  constexpr MinkVector operator-(const MinkVector& o) const { return {t - o.t, a - o.a, b - o.b}; }
  constexpr MinkVector operator-() const { return {-t, -a, -b}; }
  constexpr MinkVector operator*(double s) const { return {t * s, a * s, b * s}; }
  constexpr MinkVector operator/(double s) const { return {t / s, a / s, b / s}; }
  MinkVector& operator+=(const MinkVector& o) { t += o.t; a += o.a; b += o.b; return *this; }
  bool operator==(const MinkVector&) const = default;
};

inline constexpr MinkVector operator*(double s, const MinkVector& v) { return v * s; }

constexpr double mdot(const MinkVector& x, const MinkVector& y) {
  return -x.t * y.t + x.a * y.a + x.b * y.b;
}
constexpr double norm2(const MinkVector& x) { return mdot(x, x); }

// Vector J(x cross y) with <J(x cross y), z> = det[x, y, z].
constexpr MinkVector mcross(const MinkVector& x, const MinkVector& y) {
  return {-(x.a * y.b - x.b * y.a), x.b * y.t - x.t * y.b, x.t * y.a - x.a * y.t};
}

// Euclidean determinant of the columns (t, a, b).
constexpr double mdet(const MinkVector& x, const MinkVector& y, const MinkVector& z) {
  return x.t * (y.a * z.b - y.b * z.a) - y.t * (x.a * z.b - x.b * z.a) +
         z.t * (x.a * y.b - x.b * y.a);
}

bool is_finite(const MinkVector& v);

enum class VertexType : int { Cone = -1, Cusp = 0, Flare = 1 };

constexpr int eps(VertexType v) { return static_cast<int>(v); }
VertexType vertex_type_from_int(int e);
const char* to_string(VertexType v);

enum class ModifierKind { Tau, TauPrime, RhoPrime };

double tau(int e, double x);
double tau_prime(int e, double x);
double rho_prime(int e, double x);
double modifier(ModifierKind kind, int e, double x);

// Inverses; the cosh branches return the nonnegative root.
double tau_prime_inverse(int e, double y);
double rho_prime_inverse(int e, double y);

enum class CycleClass { Point, Circle, Horocycle, Hypercycle, Invalid };
const char* to_string(CycleClass c);

CycleClass classify_cycle(const MinkVector& c, double tol = kTolClass);

MinkVector cycle_from_weight(const MinkVector& center, VertexType type, double weight);

double pair_product(int eu, double wu, int ev, double wv, double length);
double length_from_product(int eu, double wu, int ev, double wv, double q, double tol = kTolClass);

double tangent_distance(const MinkVector& c, const MinkVector& x);

MinkVector radical_line(const MinkVector& c1, const MinkVector& c2, double tol = kTolClass);

enum class PairPosition { Intersecting, Tangent, Disjoint };
const char* to_string(PairPosition p);

PairPosition pair_position(const MinkVector& c1, const MinkVector& c2, double tol = kTolClass);

}  // namespace dechyp
