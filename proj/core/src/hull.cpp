#include "dechyp/hull.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <fmt/format.h>
#include <json.hpp>

#include "dechyp/errors.hpp"
#include "dechyp/triangle.hpp"

namespace dechyp {

using nlohmann::json;

GroupElement make_group_element(double a, double b, double c, double d) {
  GroupElement g{a, b, c, d};
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d))
    throw Error(ErrorCode::NonFiniteValue, "group element entries must be finite");
  if (std::abs(g.det() - 1.0) > 1e-12) throw Error(ErrorCode::BadDeterminant, fmt::format("det = {:.17g}", g.det()));
  return g;
}

MinkVector sym2_action(const GroupElement& g, const MinkVector& x) {
  if (std::abs(g.det() - 1.0) > 1e-12) throw Error(ErrorCode::BadDeterminant, fmt::format("det = {:.17g}", g.det()));
  const double x00 = x.t + x.b, x01 = x.a, x11 = x.t - x.b;
  // (X g) then g^T (X g).
  const double m00 = x00 * g.a + x01 * g.c, m01 = x00 * g.b + x01 * g.d;
  const double m10 = x01 * g.a + x11 * g.c, m11 = x01 * g.b + x11 * g.d;
  const double y00 = g.a * m00 + g.c * m10;
  const double y01 = g.a * m01 + g.c * m11;
  const double y11 = g.b * m01 + g.d * m11;
  return {(y00 + y11) / 2.0, y01, (y00 - y11) / 2.0};
}

GroupElement rotation_about(const MinkVector& p, double phi) {
  if (std::abs(norm2(p) + 1.0) > 1e-9 || p.t <= 0.0) throw Error(ErrorCode::BadPointNorm, "rotation center must be a point");
  // Square root of the positive matrix of p (det 1).
  const double s = std::sqrt(2.0 * p.t + 2.0);
  const GroupElement h{(p.t + p.b + 1.0) / s, p.a / s, p.a / s, (p.t - p.b + 1.0) / s};
  const GroupElement r{std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi)};
  return h.inverse() * r * h;
}

OrbitStore orbit_generate(const std::vector<GroupElement>& gens, const std::vector<MinkVector>& seeds, int depth) {
  if (depth < 0) throw Error(ErrorCode::InvalidArgument, "depth must be nonnegative");
  std::vector<GroupElement> moves;
  for (const GroupElement& g : gens) {
    moves.push_back(g);
    moves.push_back(g.inverse());
  }
  using Key = std::tuple<long long, long long, long long>;
  auto key = [](const MinkVector& v) {
    return Key{std::llround(v.t * 1e9), std::llround(v.a * 1e9), std::llround(v.b * 1e9)};
  };
  std::set<Key> seen;
  OrbitStore out;
  std::vector<MinkVector> frontier;
  for (const MinkVector& s : seeds)
    if (seen.insert(key(s)).second) {
      out.vectors.push_back(s);
      frontier.push_back(s);
    }
  for (int level = 0; level < depth; ++level) {
    std::vector<MinkVector> next;
    for (const MinkVector& v : frontier)
      for (const GroupElement& g : moves) {
        const MinkVector w = sym2_action(g, v);
        if (seen.insert(key(w)).second) {
          out.vectors.push_back(w);
          next.push_back(w);
        }
      }
    frontier = std::move(next);
    out.depth = level + 1;
  }
  return out;
}

bool HullReport::ok() const {
  if (!violations.empty()) return false;
  for (const auto& f : faces)
    if (!f.elliptic) return false;
  return true;
}

HullReport hull_support_verify(const std::vector<FaceTriple>& faces, const OrbitStore& orbit, double tol) {
  HullReport rep;
  rep.depth = orbit.depth;
  rep.orbit_size = orbit.vectors.size();
  for (int i = 0; i < static_cast<int>(faces.size()); ++i) {
    HullFaceReport f;
    try {
      f.face_vector = face_vector(faces[i]);
    } catch (const Error&) {
      throw Error(ErrorCode::SingularFace, fmt::format("face {} has dependent cycles", i));
    }
    f.norm2 = norm2(f.face_vector);
    f.elliptic = f.norm2 < -tol;
    f.max_product = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < static_cast<int>(orbit.vectors.size()); ++j) {
      const double p = mdot(orbit.vectors[j], f.face_vector);
      f.max_product = std::max(f.max_product, p);
      if (p > -1.0 + tol) rep.violations.push_back({i, j, p});
    }
    rep.faces.push_back(f);
  }
  return rep;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "at " + path + ": " + msg);
}

double real_at(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(path, "number is not finite");
  return x;
}

MinkVector vec_at(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) fail(path, "expected [t, a, b]");
  return {real_at(v[0], path + "[0]"), real_at(v[1], path + "[1]"), real_at(v[2], path + "[2]")};
}

}  // namespace

OrbitFile parse_orbit_file(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, fmt::format("byte {}: malformed document", e.byte));
  }
  if (!doc.is_object()) fail("$", "expected an object");
  if (!doc.contains("format") || !doc["format"].is_string() || doc["format"].get<std::string>() != kOrbitFormat)
    throw Error(ErrorCode::FormatVersionError, std::string("expected format \"") + kOrbitFormat + "\"");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& k = it.key();
    if (k != "format" && k != "generators" && k != "seeds" && k != "depth" && k != "faces")
      fail("$", "unknown field \"" + k + "\"");
  }
  for (const char* k : {"generators", "seeds", "depth", "faces"})
    if (!doc.contains(k)) fail("$", std::string("missing field \"") + k + "\"");

  OrbitFile f;
  const json& gs = doc["generators"];
  if (!gs.is_array()) fail("$.generators", "expected an array");
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const std::string p = fmt::format("$.generators[{}]", i);
    const json& m = gs[i];
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 || !m[1].is_array() || m[1].size() != 2)
      fail(p, "expected [[a, b], [c, d]]");
    f.generators.push_back(make_group_element(real_at(m[0][0], p), real_at(m[0][1], p), real_at(m[1][0], p),
                                              real_at(m[1][1], p)));
  }
  const json& ss = doc["seeds"];
  if (!ss.is_array()) fail("$.seeds", "expected an array");
  for (std::size_t i = 0; i < ss.size(); ++i) f.seeds.push_back(vec_at(ss[i], fmt::format("$.seeds[{}]", i)));
  if (!doc["depth"].is_number_integer() || doc["depth"].get<long long>() < 0 || doc["depth"].get<long long>() > 64)
    fail("$.depth", "expected an integer in [0, 64]");
  f.depth = doc["depth"].get<int>();
  const json& fs = doc["faces"];
  if (!fs.is_array()) fail("$.faces", "expected an array");
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const std::string p = fmt::format("$.faces[{}]", i);
    if (!fs[i].is_array() || fs[i].size() != 3) fail(p, "expected three cycle vectors");
    f.faces.push_back({vec_at(fs[i][0], p + "[0]"), vec_at(fs[i][1], p + "[1]"), vec_at(fs[i][2], p + "[2]")});
  }
  return f;
}

OrbitFile load_orbit_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_orbit_file(ss.str());
}

}  // namespace dechyp
