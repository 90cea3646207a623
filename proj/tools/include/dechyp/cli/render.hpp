#pragma once

#include <string>
#include <vector>

#include "dechyp/fan.hpp"
#include "dechyp/surface.hpp"

namespace dechyp::cli {

struct PlacedTriangle {
  int tri = 0;
  int layer = 0;
  std::array<MinkVector, 3> cycles{};
  TriangleLift lift{};
};

struct RenderScene {
  std::vector<PlacedTriangle> placed;
  std::vector<EdgeStatus> status;
};

// Develops copies of the triangles breadth first from `seed`, centred on the seed face.
RenderScene develop(const DecoratedSurface& s, const std::vector<double>& weights, int seed, int depth,
                    double tol);

// The surface must be Delaunay at `weights`.
std::string render_svg(const DecoratedSurface& s, const std::vector<double>& weights, int seed, int depth,
                       double tol);

// Ternary plot of fan samples for three-vertex surfaces.
std::string render_fan_svg(const FanReport& report);

// Poincare disc coordinates of a future timelike or null vector.
std::array<double, 2> project(const MinkVector& v);

}  // namespace dechyp::cli
