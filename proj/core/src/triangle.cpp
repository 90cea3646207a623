#include "dechyp/triangle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "dechyp/errors.hpp"

namespace dechyp {

namespace {

constexpr double kCondLimit = 1e12;

void check_input(const DecoratedTriangle& tri) {
  for (int k = 0; k < 3; ++k) {
    if (!std::isfinite(tri.weights[k]) || !std::isfinite(tri.lengths[k]))
      throw Error(ErrorCode::NonFiniteValue, "triangle data must be finite");
    if (!(tri.weights[k] > 0.0)) throw Error(ErrorCode::NonPositiveWeight, "triangle weights must be positive");
  }
}

Eigen::Matrix3d to_eigen(const Mat3& m) {
  Eigen::Matrix3d e;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e(i, j) = m[i][j];
  return e;
}

Mat3 gram_with(const DecoratedTriangle& tri, const Vec3& w) {
  Mat3 g{};
  for (int k = 0; k < 3; ++k) {
    const int i = (k + 1) % 3;
    const int j = (k + 2) % 3;
    g[k][k] = eps(tri.types[k]) / (w[k] * w[k]);
    const double v = -tau_prime(eps(tri.types[i]) * eps(tri.types[j]), tri.lengths[k]) / (w[i] * w[j]);
    g[i][j] = v;
    g[j][i] = v;
  }
  return g;
}

struct Eig {
  Eigen::Vector3d values;
  Eigen::Matrix3d vectors;
  double scale = 0.0;
};

Eig eigen_of(const Mat3& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(to_eigen(g));
  if (es.info() != Eigen::Success) throw Error(ErrorCode::InvalidTriangle, "eigendecomposition failed");
  Eig out{es.eigenvalues(), es.eigenvectors(), 0.0};
  out.scale = to_eigen(g).norm();
  return out;
}

bool signature_ok(const Eig& e) {
  const double tol = 1e-9 * std::max(e.scale, 1e-300);
  // Eigen sorts ascending.
  return e.values(0) < -tol && e.values(1) > tol && e.values(2) > tol;
}

double angle_from_lines(VertexType type, double weight, const MinkVector& cycle, const MinkVector& la,
                        const MinkVector& lb) {
  const double p = -mdot(la, lb);
  switch (type) {
    case VertexType::Cone: return std::acos(std::clamp(p, -1.0, 1.0));
    case VertexType::Flare: return std::acosh(std::max(p, 1.0));
    case VertexType::Cusp: {
      // la + lb is a multiple of the null center.
      const MinkVector s = la + lb;
      const MinkVector c = cycle * weight;
      const double ns = std::sqrt(s.t * s.t + s.a * s.a + s.b * s.b);
      const double nc = std::sqrt(c.t * c.t + c.a * c.a + c.b * c.b);
      return 0.5 * ns / nc;
    }
  }
  return 0.0;
}

}  // namespace

Mat3 gram_matrix(const DecoratedTriangle& tri) {
  check_input(tri);
  return gram_with(tri, tri.weights);
}

Mat3 center_gram_matrix(const DecoratedTriangle& tri) {
  check_input(tri);
  return gram_with(tri, Vec3{1.0, 1.0, 1.0});
}

bool is_valid_triangle(const DecoratedTriangle& tri) {
  return signature_ok(eigen_of(gram_matrix(tri)));
}

MinkVector normalize_timelike(const MinkVector& v) {
  const double n = norm2(v);
  if (!(n < 0.0)) throw Error(ErrorCode::DegenerateSystem, "vector is not timelike");
  MinkVector out = v / std::sqrt(-n);
  if (out.t < 0.0) out = -out;
  return out;
}

MinkVector edge_line(const MinkVector& ci, const MinkVector& cj, const MinkVector& ck) {
  const MinkVector m = mcross(ci, cj);
  const double n = norm2(m);
  if (!(n > 0.0)) throw Error(ErrorCode::InvalidTriangle, "edge line is not spacelike");
  MinkVector l = m / std::sqrt(n);
  if (mdot(l, ck) > 0.0) l = -l;
  return l;
}

MinkVector face_vector(const std::array<MinkVector, 3>& cycles) {
  Eigen::Matrix3d a;
  for (int i = 0; i < 3; ++i) a.row(i) << -cycles[i].t, cycles[i].a, cycles[i].b;
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(a);
  const auto& s = svd.singularValues();
  if (!(s(2) > 0.0) || s(0) / s(2) > kCondLimit)
    throw Error(ErrorCode::DegenerateSystem, "face system is ill-conditioned");
  const Eigen::Vector3d f = a.partialPivLu().solve(Eigen::Vector3d::Constant(-1.0));
  return {f(0), f(1), f(2)};
}

MinkVector vertex_anchor(VertexType type, double weight, const MinkVector& cycle, const MinkVector& line) {
  const MinkVector c = cycle * weight;
  if (type != VertexType::Flare) return c;
  return normalize_timelike(mcross(c, line));
}

TriangleLift lift_from_cycles(const std::array<VertexType, 3>& types, const Vec3& weights,
                              const std::array<MinkVector, 3>& cycles) {
  TriangleLift lift;
  lift.types = types;
  lift.weights = weights;
  lift.cycles = cycles;
  for (int k = 0; k < 3; ++k)
    lift.lines[k] = edge_line(cycles[(k + 1) % 3], cycles[(k + 2) % 3], cycles[k]);
  lift.face = face_vector(cycles);
  for (int k = 0; k < 3; ++k) {
    const MinkVector& la = lift.lines[(k + 1) % 3];
    const MinkVector& lb = lift.lines[(k + 2) % 3];
    lift.angles[k] = angle_from_lines(types[k], weights[k], cycles[k], la, lb);
    const double y = -weights[k] * mdot(cycles[k], lift.lines[k]);
    lift.foot_distances[k] = tau_prime_inverse(eps(types[k]), y);
  }
  return lift;
}

TriangleLift lift_triangle(const DecoratedTriangle& tri) {
  const Mat3 g = gram_matrix(tri);
  const Eig e = eigen_of(g);
  if (!signature_ok(e)) throw Error(ErrorCode::InvalidTriangle, "Gram matrix does not have signature (2,1)");

  // Row r of P is sqrt|lambda_r| times eigenvector r; columns are the cycles.
  Eigen::Matrix3d p;
  for (int r = 0; r < 3; ++r) p.row(r) = std::sqrt(std::abs(e.values(r))) * e.vectors.col(r).transpose();

  int want = 0;
  for (int k = 0; k < 3; ++k) {
    if (tri.types[k] == VertexType::Flare) continue;
    want = p(0, k) > 0.0 ? 1 : -1;
    break;
  }
  if (want < 0) p.row(0) *= -1.0;
  if (p.determinant() < 0.0) p.row(2) *= -1.0;

  auto col = [&](int k) { return MinkVector{p(0, k), p(1, k), p(2, k)}; };
  std::array<MinkVector, 3> c{col(0), col(1), col(2)};

  for (int k = 0; k < 3; ++k)
    if (tri.types[k] != VertexType::Flare && c[k].t <= 0.0)
      throw Error(ErrorCode::InvalidTriangle, "vertex cycles are not consistently time oriented");

  if (want == 0) {
    // All flares: put the foot of the first axis on the inner side of the second.
    const MinkVector l3 = edge_line(c[0], c[1], c[2]);
    const MinkVector foot = normalize_timelike(mcross(c[0], l3));
    if (mdot(foot, c[1]) > 0.0) {
      for (auto& v : c) {
        v.t = -v.t;
        v.a = -v.a;
      }
    }
  }
  return lift_from_cycles(tri.types, tri.weights, c);
}

Vec3 triangle_angles(const DecoratedTriangle& tri) { return lift_triangle(tri).angles; }

double cosine_law_angle(const DecoratedTriangle& tri, int k) {
  check_input(tri);
  if (k < 0 || k > 2 || tri.types[k] != VertexType::Cone)
    throw Error(ErrorCode::InvalidArgument, "cosine law needs a cone corner");
  const int u = (k + 1) % 3;
  const int w = (k + 2) % 3;
  const int eu = eps(tri.types[u]);
  const int ew = eps(tri.types[w]);
  // lengths[w] joins k and u, lengths[u] joins k and w.
  const double num = -tau_prime(eu * ew, tri.lengths[k]) + tau(eu, tri.lengths[w]) * tau(ew, tri.lengths[u]);
  const double den = tau_prime(eu, tri.lengths[w]) * tau_prime(ew, tri.lengths[u]);
  return std::acos(std::clamp(num / den, -1.0, 1.0));
}

Vec3 tilts(const TriangleLift& lift) {
  return {mdot(lift.face, lift.lines[0]), mdot(lift.face, lift.lines[1]), mdot(lift.face, lift.lines[2])};
}

Vec3 tilts(const DecoratedTriangle& tri) { return tilts(lift_triangle(tri)); }

Mat3 tilt_coefficients(const DecoratedTriangle& tri) {
  const Mat3 gc = center_gram_matrix(tri);
  const Eig e = eigen_of(gc);
  if (!signature_ok(e)) throw Error(ErrorCode::InvalidTriangle, "Gram matrix does not have signature (2,1)");
  const Eigen::Matrix3d g = to_eigen(gc);
  const double det = g.determinant();
  Eigen::Matrix3d adj;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int i1 = (i + 1) % 3, i2 = (i + 2) % 3, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      adj(i, j) = g(i1, j1) * g(i2, j2) - g(i1, j2) * g(i2, j1);
    }

  Vec3 rho{};
  Vec3 foot{};
  for (int k = 0; k < 3; ++k) {
    const int a = (k + 1) % 3;
    const int b = (k + 2) % 3;
    rho[k] = tri.types[k] == VertexType::Cusp ? 1.0 : adj(a, b) / std::sqrt(adj(a, a) * adj(b, b));
    foot[k] = std::sqrt(det / adj(k, k));
  }
  Mat3 m{};
  for (int n = 0; n < 3; ++n)
    for (int k = 0; k < 3; ++k) {
      const double r = n == k ? 1.0 : -rho[3 - n - k];
      m[n][k] = r / foot[k];
    }
  return m;
}

Vec3 matrix_tilts(const DecoratedTriangle& tri) {
  const Mat3 m = tilt_coefficients(tri);
  Vec3 t{};
  for (int n = 0; n < 3; ++n)
    for (int k = 0; k < 3; ++k) t[n] += m[n][k] * tri.weights[k];
  return t;
}

double support_value(const TriangleLift& lift, const MinkVector& x, double tol) {
  const double d = mdot(x, lift.face);
  if (!(d < -tol)) throw Error(ErrorCode::SupportUndefined, "point is not below the face plane");
  return 1.0 / (d * d);
}

}  // namespace dechyp
