#pragma once

// Test-side reference constructions. Random triangles are built from explicit
// hyperboloid geometry and reference quantities come from elementary formulas,
// without the library's lift or tilt code.

#include <array>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "dechyp/errors.hpp"
#include "dechyp/flip.hpp"
#include "dechyp/mink.hpp"
#include "dechyp/surface.hpp"
#include "dechyp/triangle.hpp"

namespace oracle {

using dechyp::MinkVector;
using dechyp::VertexType;

inline double dot(const MinkVector& x, const MinkVector& y) { return -x.t * y.t + x.a * y.a + x.b * y.b; }

inline MinkVector hyp_point(double r, double theta) {
  return {std::cosh(r), std::sinh(r) * std::cos(theta), std::sinh(r) * std::sin(theta)};
}

// Minkowski normal n with <n, x> = <n, y> = 0.
inline MinkVector normal(const MinkVector& x, const MinkVector& y) {
  const double et = x.a * y.b - x.b * y.a;
  const double ea = x.b * y.t - x.t * y.b;
  const double eb = x.t * y.a - x.a * y.t;
  return {-et, ea, eb};
}

inline double det3(const MinkVector& x, const MinkVector& y, const MinkVector& z) {
  return x.t * (y.a * z.b - y.b * z.a) - y.t * (x.a * z.b - x.b * z.a) + z.t * (x.a * y.b - x.b * y.a);
}

// Solves <C_i, F> = -1 by Cramer's rule on the rows (-t, a, b).
inline MinkVector face(const std::array<MinkVector, 3>& c) {
  double m[3][3];
  for (int i = 0; i < 3; ++i) {
    m[i][0] = -c[i].t;
    m[i][1] = c[i].a;
    m[i][2] = c[i].b;
  }
  auto det = [](double a[3][3]) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  const double d = det(m);
  double out[3];
  for (int col = 0; col < 3; ++col) {
    double n[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) n[i][j] = j == col ? -1.0 : m[i][j];
    out[col] = det(n) / d;
  }
  return {out[0], out[1], out[2]};
}

// Outward unit line opposite corner k.
inline MinkVector line(const std::array<MinkVector, 3>& c, int k) {
  MinkVector n = normal(c[(k + 1) % 3], c[(k + 2) % 3]);
  const double s = std::sqrt(dot(n, n));
  n = n / s;
  if (dot(n, c[k]) > 0) n = -n;
  return n;
}

struct Triangle {
  dechyp::DecoratedTriangle tri;
  std::array<MinkVector, 3> cycles;
};

inline double invert_product(int e, double y) {
  if (e < 0) return std::asinh(y);
  if (e == 0) return std::log(2.0 * y);
  return std::acosh(y);
}

inline double tp(int e, double x) {
  if (e < 0) return std::sinh(x);
  if (e == 0) return 0.5 * std::exp(x);
  return std::cosh(x);
}

// Random decorated triangle with the given vertex types, built extrinsically:
// a counterclockwise triangle of points around the origin, cusps pushed to the
// ideal boundary along the ray from the origin, flares replaced by the line
// orthogonal to that ray.
inline std::optional<Triangle> random_triangle(std::mt19937_64& rng, const std::array<VertexType, 3>& types) {
  std::uniform_real_distribution<double> radius(0.6, 2.6);
  std::uniform_real_distribution<double> jitter(-0.5, 0.5);
  std::uniform_real_distribution<double> cone_w(1.05, 3.0);
  std::uniform_real_distribution<double> w(0.3, 3.0);
  const double base = std::uniform_real_distribution<double>(0.0, 2.0 * M_PI)(rng);
  const MinkVector origin{1.0, 0.0, 0.0};
  Triangle out;
  for (int k = 0; k < 3; ++k) {
    const double theta = base + 2.0 * M_PI * k / 3.0 + jitter(rng);
    const double r = radius(rng);
    const MinkVector p = hyp_point(r, theta);
    MinkVector c;
    double weight = 1.0;
    switch (types[k]) {
      case VertexType::Cone:
        c = p;
        weight = cone_w(rng);
        break;
      case VertexType::Cusp:
        c = MinkVector{1.0, std::cos(theta), std::sin(theta)} * std::exp(jitter(rng));
        weight = w(rng);
        break;
      case VertexType::Flare: {
        // Outward unit tangent at p along the ray from the origin.
        const double ch = -dot(origin, p);
        c = (p * ch - origin) / std::sinh(r);
        weight = w(rng);
        break;
      }
    }
    out.cycles[k] = c / weight;
    out.tri.types[k] = types[k];
    out.tri.weights[k] = weight;
  }
  if (det3(out.cycles[0], out.cycles[1], out.cycles[2]) <= 1e-6) return std::nullopt;
  for (int k = 0; k < 3; ++k) {
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    const int e = static_cast<int>(types[i]) * static_cast<int>(types[j]);
    const double y = -dot(out.cycles[i], out.cycles[j]) * out.tri.weights[i] * out.tri.weights[j];
    if (e == 0 && y <= 1e-6) return std::nullopt;
    if (e > 0 && y <= 1.0 + 1e-6) return std::nullopt;
    out.tri.lengths[k] = invert_product(e, y);
    if (std::abs(out.tri.lengths[k]) > 12.0) return std::nullopt;
    // The edge line must be spacelike.
    const MinkVector n = normal(out.cycles[i], out.cycles[j]);
    if (dot(n, n) <= 1e-8) return std::nullopt;
  }
  return out;
}

inline std::vector<Triangle> corpus(std::uint64_t seed, int per_combination) {
  std::mt19937_64 rng(seed);
  std::vector<Triangle> out;
  const VertexType all[3] = {VertexType::Cone, VertexType::Cusp, VertexType::Flare};
  for (VertexType a : all)
    for (VertexType b : all)
      for (VertexType c : all) {
        int made = 0;
        for (int attempt = 0; attempt < 200 * per_combination && made < per_combination; ++attempt) {
          auto t = random_triangle(rng, {a, b, c});
          if (!t) continue;
          out.push_back(*t);
          ++made;
        }
      }
  return out;
}

inline dechyp::DecoratedSurface load_fixture(const char* name) {
  return dechyp::load_surface(std::string(DECHYP_FIXTURE_DIR) + "/" + name);
}

// Random weights for a fixture satisfying the edge properness inequalities.
inline std::vector<double> random_proper_weights(const dechyp::DecoratedSurface& s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(1.02, 2.6);
  for (;;) {
    std::vector<double> w(s.vertices.size());
    for (double& x : w) x = u(rng);
    if (dechyp::is_proper(s, w)) return w;
  }
}

// Applies `count` random flips that keep the triangulation valid and proper.
inline dechyp::DecoratedSurface random_flips(const dechyp::DecoratedSurface& s, const std::vector<double>& w,
                                             std::mt19937_64& rng, int count) {
  dechyp::DecoratedSurface cur = s;
  std::uniform_int_distribution<int> pick(0, static_cast<int>(s.edges.size()) - 1);
  int done = 0;
  for (int attempt = 0; attempt < 50 * count && done < count; ++attempt) {
    const int e = pick(rng);
    try {
      dechyp::DecoratedSurface next = dechyp::flip_edge(cur, e, w);
      if (!dechyp::is_proper(next, w)) continue;
      bool ok = true;
      for (int t = 0; t < static_cast<int>(next.triangles.size()); ++t)
        ok = ok && dechyp::is_valid_triangle(next.triangle_data(t, w));
      if (!ok) continue;
      cur = std::move(next);
      ++done;
    } catch (const dechyp::Error&) {
    }
  }
  return cur;
}

}  // namespace oracle
