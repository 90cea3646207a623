#pragma once

#include <array>
#include <string>
#include <vector>

#include "dechyp/mink.hpp"
#include "dechyp/triangle.hpp"

namespace dechyp {

inline constexpr const char* kSurfaceFormat = "dechyp-surface-v1";

struct Vertex {
  int id = 0;
  VertexType type = VertexType::Cone;
  double weight = 1.0;
};

// The half-edge of triangle `tri` opposite its corner `corner`.
struct HalfEdge {
  int tri = 0;
  int corner = 0;
  bool operator==(const HalfEdge&) const = default;
  auto operator<=>(const HalfEdge&) const = default;
};

struct Triangle {
  std::array<int, 3> corners{};  // vertex indices, counterclockwise
  std::array<int, 3> edges{};    // edge opposite each corner
};

struct Edge {
  std::array<HalfEdge, 2> halves{};
  double length = 0.0;
};

struct DecoratedSurface {
  std::vector<Vertex> vertices;
  std::vector<Triangle> triangles;
  std::vector<Edge> edges;

  HalfEdge opposite(const HalfEdge& h) const;
  std::vector<double> weights() const;
  DecoratedTriangle triangle_data(int t, const std::vector<double>& weights) const;
  DecoratedTriangle triangle_data(int t) const { return triangle_data(t, weights()); }
  // Vertex indices at the two ends of an edge, as seen from its first half-edge.
  std::array<int, 2> edge_endpoints(int e) const;
  int euler_characteristic() const;
  // Rebuilds triangle edge slots from the edge half-edge lists.
  void relink();
};

DecoratedSurface parse_surface(const std::string& text);
DecoratedSurface load_surface(const std::string& path);
std::string write_surface(const DecoratedSurface& s);

// Throws TopologyError if the gluing is not an orientation-reversing involution
// or the vertex links do not match the vertex labels.
void check_topology(const DecoratedSurface& s);

struct PropernessCheck {
  int edge = 0;
  int u = 0;  // vertex index whose weight is bounded
  int v = 0;  // cone vertex index
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

struct VertexReport {
  int index = 0;
  double angle_sum = 0.0;
  bool weight_ok = true;  // cones need weight > 1
};

struct ValidationReport {
  std::vector<bool> triangle_valid;
  std::vector<VertexReport> vertices;
  std::vector<PropernessCheck> properness;
  bool triangles_ok = true;
  bool proper_ok = true;
  bool realizable = true;

  bool ok() const { return triangles_ok && proper_ok && realizable; }
};

ValidationReport validate_surface(const DecoratedSurface& s);
ValidationReport validate_surface(const DecoratedSurface& s, const std::vector<double>& weights);

// Edge relaxation of the proper-weight inequalities only.
bool is_proper(const DecoratedSurface& s, const std::vector<double>& weights);

double edge_tilt_sum(const DecoratedSurface& s, int e, const std::vector<double>& weights);

enum class EdgeClass { Strict, Flat, Violating };
const char* to_string(EdgeClass c);
EdgeClass classify_tilt_sum(double sum, double tol);

struct EdgeStatus {
  int edge = 0;
  double tilt_sum = 0.0;
  EdgeClass cls = EdgeClass::Strict;
};

std::vector<EdgeStatus> delaunay_report(const DecoratedSurface& s, const std::vector<double>& weights,
                                        double tol = kTolClass);

}  // namespace dechyp
