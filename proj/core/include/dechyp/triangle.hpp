#pragma once

#include <array>

#include "dechyp/mink.hpp"

namespace dechyp {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

// Corner k is opposite edge k; lengths[k] belongs to the edge joining corners k+1 and k+2.
struct DecoratedTriangle {
  std::array<VertexType, 3> types{VertexType::Cone, VertexType::Cone, VertexType::Cone};
  Vec3 weights{1.0, 1.0, 1.0};
  Vec3 lengths{0.0, 0.0, 0.0};
};

struct TriangleLift {
  std::array<VertexType, 3> types{};
  Vec3 weights{};
  std::array<MinkVector, 3> cycles{};
  std::array<MinkVector, 3> lines{};
  MinkVector face{};
  Vec3 angles{};
  Vec3 foot_distances{};
};

Mat3 gram_matrix(const DecoratedTriangle& tri);

// Gram matrix of the undecorated centers (all weights 1).
Mat3 center_gram_matrix(const DecoratedTriangle& tri);

// Signature (2,1) test with eigenvalue tolerance 1e-9 * |G|.
bool is_valid_triangle(const DecoratedTriangle& tri);

TriangleLift lift_triangle(const DecoratedTriangle& tri);

// Completes a lift from three positioned cycle vectors (det must be positive).
TriangleLift lift_from_cycles(const std::array<VertexType, 3>& types, const Vec3& weights,
                              const std::array<MinkVector, 3>& cycles);

// Unit spacelike line orthogonal to ci, cj with <L, ck> < 0.
MinkVector edge_line(const MinkVector& ci, const MinkVector& cj, const MinkVector& ck);

MinkVector face_vector(const std::array<MinkVector, 3>& cycles);

Vec3 triangle_angles(const DecoratedTriangle& tri);

// Cone-corner angle from lengths alone (law of cosines); corner k must be a cone.
double cosine_law_angle(const DecoratedTriangle& tri, int k);

Vec3 tilts(const DecoratedTriangle& tri);
Vec3 tilts(const TriangleLift& lift);

// Intrinsic route through the cofactors of the center Gram matrix.
Vec3 matrix_tilts(const DecoratedTriangle& tri);
Mat3 tilt_coefficients(const DecoratedTriangle& tri);

double support_value(const TriangleLift& lift, const MinkVector& x, double tol = kTolClass);

// A hyperbolic point on edge line `line` attached to the vertex with cycle `cycle`:
// its center for cones, its null center for cusps, the axis foot for flares.
MinkVector vertex_anchor(VertexType type, double weight, const MinkVector& cycle, const MinkVector& line);

// Unit future timelike vector in direction v (v timelike).
MinkVector normalize_timelike(const MinkVector& v);

}  // namespace dechyp
