#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dechyp/surface.hpp"
#include "dechyp/triangle.hpp"

namespace dechyp {

// Quadrilateral around an edge. Index 0 is the apex of the first triangle,
// 1 and 2 span the diagonal, 3 is the apex of the second triangle.
struct QuadLift {
  int edge = 0;
  std::array<int, 4> vertices{};
  std::array<VertexType, 4> types{};
  std::array<double, 4> weights{};
  std::array<MinkVector, 4> cycles{};
  MinkVector line{};
  TriangleLift left{};
  TriangleLift right{};
};

// Position of the apex of a triangle glued along the edge spanned by c_tail, c_head
// (in that order along the triangle's boundary), on the positive side of `line`.
// `gram` is the triangle's Gram matrix and `k` the apex corner.
MinkVector place_apex(const MinkVector& c_tail, const MinkVector& c_head, const MinkVector& line, const Mat3& gram,
                      int k, double tol = kTolClass);

QuadLift layout_quad(const DecoratedSurface& s, int e, const std::vector<double>& weights, double tol = kTolClass);

// Point on the diagonal used to audit the support function.
MinkVector diagonal_sample(const QuadLift& q);

struct FlipOutcome {
  double new_length = 0.0;
  double support_before = 0.0;
  double support_after = 0.0;
};

// Flips edge e in place; the diagonal keeps its edge id.
FlipOutcome flip_edge_in_place(DecoratedSurface& s, int e, const std::vector<double>& weights,
                               double tol = kTolClass);
DecoratedSurface flip_edge(const DecoratedSurface& s, int e, const std::vector<double>& weights,
                           double tol = kTolClass);

struct FlipRecord {
  int edge = 0;
  double tilt_sum = 0.0;
  double old_length = 0.0;
  double new_length = 0.0;
  double support_before = 0.0;
  double support_after = 0.0;
};

enum class Termination { Converged, MaxFlips };
const char* to_string(Termination t);

struct FlipResult {
  DecoratedSurface surface;
  long long flips = 0;
  std::vector<FlipRecord> log;
  Termination reason = Termination::Converged;
  double max_edge_length = 0.0;
  double max_support = 0.0;
  double length_bound = 0.0;  // NaN unless every vertex is a cone
};

FlipResult flip_to_delaunay(const DecoratedSurface& s, const std::vector<double>& weights,
                            double tol = kTolClass, long long max_flips = 1'000'000);

std::string format_flip_log(const FlipResult& r);

struct MergedFace {
  std::vector<int> triangles;
  std::vector<std::vector<HalfEdge>> boundary;
};

// Triangles merged across flat edges; throws NotConverged if an edge violates.
std::vector<MergedFace> merged_faces(const DecoratedSurface& s, const std::vector<double>& weights,
                                     double tol = kTolClass);

using BoundaryCycle = std::vector<std::pair<int, std::int64_t>>;

struct TessellationSignature {
  std::vector<std::vector<BoundaryCycle>> faces;

  bool operator==(const TessellationSignature&) const = default;
  auto operator<=>(const TessellationSignature&) const = default;
  std::string str() const;
};

TessellationSignature tessellation_signature(const DecoratedSurface& s, const std::vector<double>& weights,
                                             double tol = kTolClass);

struct DualVertex {
  int face = 0;
  MinkVector face_vector{};
  double norm2 = 0.0;
  bool elliptic = false;
  MinkVector center{};
};

struct DualEdge {
  int edge = 0;
  int from = 0;
  int to = 0;
};

struct DualComplex {
  std::vector<DualVertex> vertices;
  std::vector<DualEdge> edges;
  int faces = 0;
  int euler_characteristic() const {
    return static_cast<int>(vertices.size()) - static_cast<int>(edges.size()) + faces;
  }
};

DualComplex voronoi_dual(const DecoratedSurface& s, const std::vector<double>& weights, double tol = kTolClass);

}  // namespace dechyp
