#pragma once

#include <array>
#include <string>
#include <vector>

#include "dechyp/mink.hpp"

namespace dechyp {

inline constexpr const char* kOrbitFormat = "dechyp-orbit-v1";

struct GroupElement {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  double det() const { return a * d - b * c; }
  GroupElement operator*(const GroupElement& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  GroupElement inverse() const { return {d, -b, -c, a}; }
};

// Throws BadDeterminant unless |det - 1| <= 1e-12.
GroupElement make_group_element(double a, double b, double c, double d);

// X -> g^T X g in the chart X = [[t + b, a], [a, t - b]].
MinkVector sym2_action(const GroupElement& g, const MinkVector& x);

// Rotation by angle 2 * phi about the unit timelike point p.
GroupElement rotation_about(const MinkVector& p, double phi);

struct OrbitStore {
  std::vector<MinkVector> vectors;
  int depth = 0;
};

OrbitStore orbit_generate(const std::vector<GroupElement>& gens, const std::vector<MinkVector>& seeds, int depth);

using FaceTriple = std::array<MinkVector, 3>;

struct HullViolation {
  int face = 0;
  int orbit_index = 0;
  double value = 0.0;  // <C, F>
};

struct HullFaceReport {
  MinkVector face_vector{};
  double norm2 = 0.0;
  bool elliptic = false;
  double max_product = 0.0;  // max over orbit of <C, F>
};

struct HullReport {
  std::vector<HullFaceReport> faces;
  std::vector<HullViolation> violations;
  int depth = 0;
  std::size_t orbit_size = 0;
  bool ok() const;
};

HullReport hull_support_verify(const std::vector<FaceTriple>& faces, const OrbitStore& orbit, double tol = 1e-7);

struct OrbitFile {
  std::vector<GroupElement> generators;
  std::vector<MinkVector> seeds;
  int depth = 0;
  std::vector<FaceTriple> faces;
};

OrbitFile parse_orbit_file(const std::string& text);
OrbitFile load_orbit_file(const std::string& path);

}  // namespace dechyp
