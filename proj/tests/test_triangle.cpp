#include <doctest.h>

#include <random>

#include "dechyp/errors.hpp"
#include "dechyp/triangle.hpp"
#include "oracles.hpp"

using namespace dechyp;

namespace {

const double kL444 = std::acosh(1.0 + std::sqrt(2.0));

DecoratedTriangle tri444(double w) {
  DecoratedTriangle t;
  t.weights = {w, w, w};
  t.lengths = {kL444, kL444, kL444};
  return t;
}

DecoratedTriangle ideal() {
  DecoratedTriangle t;
  t.types = {VertexType::Cusp, VertexType::Cusp, VertexType::Cusp};
  return t;
}

}  // namespace

TEST_CASE("gram matrix examples") {
  const Mat3 g = gram_matrix(ideal());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(g[i][j] == doctest::Approx(i == j ? 0.0 : -0.5));
  const double w = std::cosh(0.2);
  const Mat3 h = gram_matrix(tri444(w));
  CHECK(h[0][0] == doctest::Approx(-1.0 / (w * w)));
  CHECK(h[0][1] == doctest::Approx(-(1.0 + std::sqrt(2.0)) / (w * w)));
  CHECK(h[0][1] == doctest::Approx(-2.320).epsilon(1e-3));
  CHECK(h[1][2] == h[2][1]);
}

TEST_CASE("lift of the (4,4,4) triangle") {
  const TriangleLift l = lift_triangle(tri444(1.1));
  for (int k = 0; k < 3; ++k) {
    CHECK(l.angles[k] == doctest::Approx(M_PI / 4).epsilon(1e-12));
    CHECK(l.foot_distances[k] == doctest::Approx(l.foot_distances[0]));
    CHECK(cosine_law_angle(tri444(1.1), k) == doctest::Approx(M_PI / 4).epsilon(1e-12));
  }
  CHECK(mdet(l.cycles[0], l.cycles[1], l.cycles[2]) > 0);
  const Vec3 t = tilts(tri444(1.02));
  CHECK(t[0] < 0);
  CHECK(t[0] == doctest::Approx(t[1]));
  CHECK(t[1] == doctest::Approx(t[2]));
  const Vec3 m = matrix_tilts(tri444(1.02));
  for (int k = 0; k < 3; ++k) CHECK(m[k] == doctest::Approx(t[k]).epsilon(1e-12));
}

TEST_CASE("ideal triangle") {
  const TriangleLift l = lift_triangle(ideal());
  for (int k = 0; k < 3; ++k) CHECK(l.angles[k] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(norm2(l.face) < 0);
}

TEST_CASE("right angle at a cone corner") {
  // Right isosceles triangle: cosh c = cosh^2 a.
  const double a = 0.9;
  DecoratedTriangle t;
  t.weights = {1.3, 1.2, 1.2};
  t.lengths = {std::acosh(std::cosh(a) * std::cosh(a)), a, a};
  CHECK(lift_triangle(t).angles[0] == doctest::Approx(M_PI / 2).epsilon(1e-12));
  CHECK(cosine_law_angle(t, 0) == doctest::Approx(M_PI / 2).epsilon(1e-12));
}

TEST_CASE("obtuse cone angles survive") {
  // cos C = (cosh a cosh b - cosh c) / (sinh a sinh b) with C = 2.2.
  const double a = 0.7, b = 0.8, angle = 2.2;
  const double cc = std::cosh(a) * std::cosh(b) - std::cos(angle) * std::sinh(a) * std::sinh(b);
  DecoratedTriangle t;
  t.weights = {1.1, 1.1, 1.1};
  t.lengths = {std::acosh(cc), a, b};
  CHECK(lift_triangle(t).angles[0] == doctest::Approx(angle).epsilon(1e-10));
}

TEST_CASE("invalid triangles are rejected") {
  DecoratedTriangle t;
  t.weights = {1.1, 1.1, 1.1};
  t.lengths = {3.0, 0.5, 0.5};  // triangle inequality fails
  CHECK_FALSE(is_valid_triangle(t));
  try {
    lift_triangle(t);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidTriangle);
  }
  t.weights[0] = -1.0;
  CHECK_THROWS_AS(gram_matrix(t), Error);
}

TEST_CASE("random corpus against extrinsic constructions") {
  const auto corpus = oracle::corpus(2024, 12);
  REQUIRE(corpus.size() >= 27 * 10);
  for (const auto& o : corpus) {
    CAPTURE(eps(o.tri.types[0]));
    CAPTURE(eps(o.tri.types[1]));
    CAPTURE(eps(o.tri.types[2]));
    REQUIRE(is_valid_triangle(o.tri));
    const TriangleLift l = lift_triangle(o.tri);
    const Mat3 g = gram_matrix(o.tri);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        CHECK(mdot(l.cycles[i], l.cycles[j]) == doctest::Approx(g[i][j]).epsilon(1e-10));
        CHECK(oracle::dot(o.cycles[i], o.cycles[j]) == doctest::Approx(g[i][j]).epsilon(1e-9));
      }
    const MinkVector f = oracle::face(o.cycles);
    CHECK(norm2(l.face) == doctest::Approx(oracle::dot(f, f)).epsilon(1e-8));
    const Vec3 t = tilts(l);
    for (int k = 0; k < 3; ++k) {
      const MinkVector lk = oracle::line(o.cycles, k);
      CHECK(t[k] == doctest::Approx(oracle::dot(f, lk)).epsilon(1e-8));
      CHECK(mdot(l.lines[k], l.cycles[k]) < 0);
      CHECK(std::abs(mdot(l.lines[k], l.cycles[(k + 1) % 3])) < 1e-9);
      CHECK(mdot(l.cycles[k], l.face) == doctest::Approx(-1.0).epsilon(1e-10));
      const MinkVector la = oracle::line(o.cycles, (k + 1) % 3);
      const MinkVector lb = oracle::line(o.cycles, (k + 2) % 3);
      if (o.tri.types[k] == VertexType::Cone)
        CHECK(l.angles[k] == doctest::Approx(std::acos(-oracle::dot(la, lb))).epsilon(1e-8));
      if (o.tri.types[k] == VertexType::Flare)
        CHECK(l.angles[k] == doctest::Approx(std::acosh(-oracle::dot(la, lb))).epsilon(1e-8));
    }
  }
}

TEST_CASE("tilt coefficients are linear in the weights") {
  const auto corpus = oracle::corpus(99, 2);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  for (const auto& o : corpus) {
    const Mat3 m = tilt_coefficients(o.tri);
    for (int k = 0; k < 3; ++k) CHECK(m[k][k] > 0);
    for (int rep = 0; rep < 10; ++rep) {
      DecoratedTriangle t = o.tri;
      for (double& w : t.weights) w *= u(rng);
      if (!is_valid_triangle(t)) continue;
      const Vec3 got = tilts(t);
      for (int n = 0; n < 3; ++n) {
        double want = 0;
        for (int k = 0; k < 3; ++k) want += m[n][k] * t.weights[k];
        CHECK(got[n] == doctest::Approx(want).epsilon(1e-9));
      }
      DecoratedTriangle t2 = t;
      for (double& w : t2.weights) w *= 2.0;
      const Vec3 doubled = tilts(t2);
      for (int n = 0; n < 3; ++n) CHECK(doubled[n] == doctest::Approx(2.0 * got[n]).epsilon(1e-10));
    }
  }
}

TEST_CASE("support value") {
  const TriangleLift l = lift_triangle(tri444(1.1));
  const MinkVector x = normalize_timelike(l.face);
  const double h = support_value(l, x);
  CHECK(h == doctest::Approx(1.0 / std::pow(mdot(x, l.face), 2)));
  // Scaling the weights scales the support by 1/s^2.
  const TriangleLift l2 = lift_triangle(tri444(2.2));
  CHECK(support_value(l2, x) == doctest::Approx(h / 4.0).epsilon(1e-10));
  CHECK_THROWS_AS(support_value(l, {1, 0, 0}, 1e9), Error);
  TriangleLift unit = l;
  unit.face = MinkVector{1, 0, 0};
  CHECK(support_value(unit, {1, 0, 0}) == doctest::Approx(1.0));
}
