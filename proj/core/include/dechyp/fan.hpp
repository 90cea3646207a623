#pragma once

#include <string>
#include <vector>

#include "dechyp/flip.hpp"
#include "dechyp/surface.hpp"

namespace dechyp {

// Row e holds the coefficients of the tilt sum of edge e as a linear form in the weights.
struct ConeSpec {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;

  std::vector<double> apply(const std::vector<double>& weights) const;
};

// Rows for the current triangulation of s, whatever its Delaunay state.
ConeSpec cone_rows(const DecoratedSurface& s);

// Cone of the triangulation reached from s at weights w0; throws NotConverged
// if s itself is not Delaunay at w0.
ConeSpec delaunay_cone(const DecoratedSurface& s, const std::vector<double>& w0, double tol = kTolClass);

// Every flat edge has an identically vanishing row.
bool is_maximal(const DecoratedSurface& s, const std::vector<double>& weights, double tol = kTolClass);

struct FanGroup {
  TessellationSignature signature;
  bool maximal = false;
  long long samples = 0;
  std::vector<double> lower;  // barycentric bounding box
  std::vector<double> upper;
  std::vector<double> representative;
  double worst_violation = 0.0;  // max over members of max_e (A w)_e
  std::vector<std::vector<double>> points;
};

struct FanReport {
  int resolution = 0;
  long long grid_points = 0;
  long long skipped = 0;
  std::vector<FanGroup> groups;
  int maximal_count = 0;
  double worst_violation = 0.0;
};

FanReport fan_sample(const DecoratedSurface& s, int resolution, double tol = kTolClass,
                     long long max_flips = 1'000'000, bool keep_points = false);

}  // namespace dechyp
