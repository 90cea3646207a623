#include "dechyp/surface.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "dechyp/errors.hpp"

namespace dechyp {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "at " + path + ": " + msg);
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known) fail(path, "unknown field \"" + it.key() + "\"");
  }
  for (const char* k : allowed)
    if (!obj.contains(k)) fail(path, std::string("missing field \"") + k + "\"");
}

const json& array_at(const json& obj, const char* key, const std::string& path) {
  const json& v = obj.at(key);
  if (!v.is_array()) fail(path + "." + key, "expected an array");
  return v;
}

long long get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<long long>();
}

double get_real(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(path, "number is not finite");
  return x;
}

HalfEdge get_half(const json& v, const std::string& path, std::size_t ntri) {
  if (!v.is_array() || v.size() != 2) fail(path, "expected [triangle, corner]");
  const long long t = get_int(v[0], path + "[0]");
  const long long k = get_int(v[1], path + "[1]");
  if (t < 0 || static_cast<std::size_t>(t) >= ntri) fail(path + "[0]", "triangle index out of range");
  if (k < 0 || k > 2) fail(path + "[1]", "corner must be 0, 1 or 2");
  return {static_cast<int>(t), static_cast<int>(k)};
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

HalfEdge DecoratedSurface::opposite(const HalfEdge& h) const {
  const Edge& e = edges.at(triangles.at(h.tri).edges.at(h.corner));
  return e.halves[0] == h ? e.halves[1] : e.halves[0];
}

std::vector<double> DecoratedSurface::weights() const {
  std::vector<double> w;
  w.reserve(vertices.size());
  for (const auto& v : vertices) w.push_back(v.weight);
  return w;
}

DecoratedTriangle DecoratedSurface::triangle_data(int t, const std::vector<double>& w) const {
  const Triangle& tri = triangles.at(t);
  DecoratedTriangle d;
  for (int k = 0; k < 3; ++k) {
    d.types[k] = vertices.at(tri.corners[k]).type;
    d.weights[k] = w.at(tri.corners[k]);
    d.lengths[k] = edges.at(tri.edges[k]).length;
  }
  return d;
}

std::array<int, 2> DecoratedSurface::edge_endpoints(int e) const {
  const HalfEdge h = edges.at(e).halves[0];
  const Triangle& t = triangles.at(h.tri);
  return {t.corners[(h.corner + 1) % 3], t.corners[(h.corner + 2) % 3]};
}

int DecoratedSurface::euler_characteristic() const {
  return static_cast<int>(vertices.size()) - static_cast<int>(edges.size()) + static_cast<int>(triangles.size());
}

void DecoratedSurface::relink() {
  for (int e = 0; e < static_cast<int>(edges.size()); ++e)
    for (const HalfEdge& h : edges[e].halves) triangles.at(h.tri).edges.at(h.corner) = e;
}

void check_topology(const DecoratedSurface& s) {
  const int nt = static_cast<int>(s.triangles.size());
  std::vector<int> seen(3 * nt, 0);
  for (int e = 0; e < static_cast<int>(s.edges.size()); ++e) {
    const auto& [h0, h1] = s.edges[e].halves;
    if (h0 == h1) throw Error(ErrorCode::TopologyError, fmt::format("gluing {} pairs a half-edge with itself", e));
    for (const HalfEdge& h : s.edges[e].halves) {
      if (h.tri < 0 || h.tri >= nt || h.corner < 0 || h.corner > 2)
        throw Error(ErrorCode::TopologyError, fmt::format("gluing {} references a missing half-edge", e));
      if (++seen[3 * h.tri + h.corner] > 1)
        throw Error(ErrorCode::TopologyError,
                    fmt::format("half-edge ({},{}) is glued more than once", h.tri, h.corner));
    }
    const auto& t0 = s.triangles[h0.tri].corners;
    const auto& t1 = s.triangles[h1.tri].corners;
    if (t0[(h0.corner + 1) % 3] != t1[(h1.corner + 2) % 3] || t0[(h0.corner + 2) % 3] != t1[(h1.corner + 1) % 3])
      throw Error(ErrorCode::TopologyError, fmt::format("gluing {} does not reverse orientation", e));
  }
  for (int i = 0; i < 3 * nt; ++i)
    if (seen[i] == 0) throw Error(ErrorCode::TopologyError, fmt::format("half-edge ({},{}) is not glued", i / 3, i % 3));

  // Corners around a common vertex must form exactly one cycle per vertex.
  UnionFind uf(3 * nt);
  for (const Edge& e : s.edges) {
    const auto& [h0, h1] = e.halves;
    uf.unite(3 * h0.tri + (h0.corner + 1) % 3, 3 * h1.tri + (h1.corner + 2) % 3);
    uf.unite(3 * h0.tri + (h0.corner + 2) % 3, 3 * h1.tri + (h1.corner + 1) % 3);
  }
  std::map<int, int> class_vertex;
  std::map<int, int> vertex_class;
  for (int t = 0; t < nt; ++t)
    for (int k = 0; k < 3; ++k) {
      const int c = uf.find(3 * t + k);
      const int v = s.triangles[t].corners[k];
      auto [it, fresh] = class_vertex.emplace(c, v);
      if (!fresh && it->second != v)
        throw Error(ErrorCode::TopologyError, "corner link mixes different vertices");
      auto [jt, fresh2] = vertex_class.emplace(v, c);
      if (!fresh2 && jt->second != c)
        throw Error(ErrorCode::TopologyError,
                    fmt::format("vertex {} has a disconnected link", s.vertices[v].id));
    }
  for (int v = 0; v < static_cast<int>(s.vertices.size()); ++v)
    if (!vertex_class.count(v))
      throw Error(ErrorCode::TopologyError, fmt::format("vertex {} is not used by any triangle", s.vertices[v].id));
}

DecoratedSurface parse_surface(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t pos = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos ? pos - 1 : 0), '\n');
    throw Error(ErrorCode::ParseError, fmt::format("line {}: malformed document", line));
  }
  if (!doc.is_object()) fail("$", "expected an object");
  if (!doc.contains("format")) fail("$", "missing field \"format\"");
  if (!doc["format"].is_string() || doc["format"].get<std::string>() != kSurfaceFormat)
    throw Error(ErrorCode::FormatVersionError, std::string("expected format \"") + kSurfaceFormat + "\"");
  check_keys(doc, "$", {"format", "vertices", "triangles", "gluing", "lengths"});

  DecoratedSurface s;
  std::map<long long, int> index_of;
  const json& vs = array_at(doc, "vertices", "$");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string p = fmt::format("$.vertices[{}]", i);
    check_keys(vs[i], p, {"id", "type", "weight"});
    Vertex v;
    const long long id = get_int(vs[i]["id"], p + ".id");
    if (id < 0 || id > 1'000'000'000) fail(p + ".id", "id out of range");
    v.id = static_cast<int>(id);
    const long long ty = get_int(vs[i]["type"], p + ".type");
    if (ty < -1 || ty > 1) fail(p + ".type", "type must be -1, 0 or 1");
    v.type = vertex_type_from_int(static_cast<int>(ty));
    v.weight = get_real(vs[i]["weight"], p + ".weight");
    if (!(v.weight > 0.0)) fail(p + ".weight", "weight must be positive");
    if (!index_of.emplace(id, static_cast<int>(i)).second) fail(p + ".id", "duplicate vertex id");
    s.vertices.push_back(v);
  }

  const json& ts = array_at(doc, "triangles", "$");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string p = fmt::format("$.triangles[{}]", i);
    check_keys(ts[i], p, {"corners"});
    const json& c = ts[i]["corners"];
    if (!c.is_array() || c.size() != 3) fail(p + ".corners", "expected three vertex ids");
    Triangle t;
    for (int k = 0; k < 3; ++k) {
      const std::string pk = fmt::format("{}.corners[{}]", p, k);
      auto it = index_of.find(get_int(c[k], pk));
      if (it == index_of.end()) fail(pk, "unknown vertex id");
      t.corners[k] = it->second;
    }
    s.triangles.push_back(t);
  }
  if (s.triangles.empty()) fail("$.triangles", "no triangles");

  const json& gs = array_at(doc, "gluing", "$");
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const std::string p = fmt::format("$.gluing[{}]", i);
    if (!gs[i].is_array() || gs[i].size() != 2) fail(p, "expected a pair of half-edges");
    Edge e;
    e.halves[0] = get_half(gs[i][0], p + "[0]", s.triangles.size());
    e.halves[1] = get_half(gs[i][1], p + "[1]", s.triangles.size());
    s.edges.push_back(e);
  }

  const json& ls = array_at(doc, "lengths", "$");
  std::vector<bool> has(s.edges.size(), false);
  for (std::size_t i = 0; i < ls.size(); ++i) {
    const std::string p = fmt::format("$.lengths[{}]", i);
    check_keys(ls[i], p, {"pair", "value"});
    const long long e = get_int(ls[i]["pair"], p + ".pair");
    if (e < 0 || static_cast<std::size_t>(e) >= s.edges.size()) fail(p + ".pair", "gluing index out of range");
    const double val = get_real(ls[i]["value"], p + ".value");
    if (has[e]) {
      if (s.edges[e].length != val) fail(p + ".value", "conflicting lengths for one gluing");
    }
    has[e] = true;
    s.edges[e].length = val;
  }
  for (std::size_t e = 0; e < has.size(); ++e)
    if (!has[e]) fail(fmt::format("$.gluing[{}]", e), "no length given");

  check_topology(s);
  s.relink();
  return s;
}

DecoratedSurface load_surface(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_surface(ss.str());
}

std::string write_surface(const DecoratedSurface& s) {
  std::string out = fmt::format("{{\n  \"format\": \"{}\",\n  \"vertices\": [\n", kSurfaceFormat);
  for (std::size_t i = 0; i < s.vertices.size(); ++i) {
    const Vertex& v = s.vertices[i];
    out += fmt::format("    {{\"id\": {}, \"type\": {}, \"weight\": {:.17g}}}{}\n", v.id, eps(v.type), v.weight,
                       i + 1 < s.vertices.size() ? "," : "");
  }
  out += "  ],\n  \"triangles\": [\n";
  for (std::size_t i = 0; i < s.triangles.size(); ++i) {
    const auto& c = s.triangles[i].corners;
    out += fmt::format("    {{\"corners\": [{}, {}, {}]}}{}\n", s.vertices[c[0]].id, s.vertices[c[1]].id,
                       s.vertices[c[2]].id, i + 1 < s.triangles.size() ? "," : "");
  }
  out += "  ],\n  \"gluing\": [\n";
  for (std::size_t i = 0; i < s.edges.size(); ++i) {
    const auto& [h0, h1] = s.edges[i].halves;
    out += fmt::format("    [[{}, {}], [{}, {}]]{}\n", h0.tri, h0.corner, h1.tri, h1.corner,
                       i + 1 < s.edges.size() ? "," : "");
  }
  out += "  ],\n  \"lengths\": [\n";
  for (std::size_t i = 0; i < s.edges.size(); ++i)
    out += fmt::format("    {{\"pair\": {}, \"value\": {:.17g}}}{}\n", i, s.edges[i].length,
                       i + 1 < s.edges.size() ? "," : "");
  out += "  ]\n}\n";
  return out;
}

namespace {

void edge_properness(const DecoratedSurface& s, const std::vector<double>& w, std::vector<PropernessCheck>* out,
                     bool* all_ok) {
  *all_ok = true;
  for (int e = 0; e < static_cast<int>(s.edges.size()); ++e) {
    const auto ends = s.edge_endpoints(e);
    for (int side = 0; side < 2; ++side) {
      const int u = ends[side];
      const int v = ends[1 - side];
      if (s.vertices[v].type != VertexType::Cone) continue;
      if (side == 1 && u == v) continue;
      PropernessCheck c;
      c.edge = e;
      c.u = u;
      c.v = v;
      c.lhs = w[u];
      c.rhs = tau(eps(s.vertices[u].type), s.edges[e].length) * w[v];
      c.ok = c.lhs < c.rhs;
      *all_ok = *all_ok && c.ok;
      if (out) out->push_back(c);
    }
  }
}

void check_weights(const DecoratedSurface& s, const std::vector<double>& w) {
  if (w.size() != s.vertices.size()) throw Error(ErrorCode::InvalidArgument, "weight vector has the wrong size");
  for (double x : w)
    if (!std::isfinite(x) || !(x > 0.0)) throw Error(ErrorCode::NonPositiveWeight, "weights must be positive");
}

}  // namespace

bool is_proper(const DecoratedSurface& s, const std::vector<double>& w) {
  check_weights(s, w);
  bool ok = true;
  edge_properness(s, w, nullptr, &ok);
  return ok;
}

ValidationReport validate_surface(const DecoratedSurface& s) { return validate_surface(s, s.weights()); }

ValidationReport validate_surface(const DecoratedSurface& s, const std::vector<double>& w) {
  check_weights(s, w);
  ValidationReport r;
  r.vertices.resize(s.vertices.size());
  for (std::size_t v = 0; v < s.vertices.size(); ++v) {
    r.vertices[v].index = static_cast<int>(v);
    r.vertices[v].weight_ok = s.vertices[v].type != VertexType::Cone || w[v] > 1.0;
    r.realizable = r.realizable && r.vertices[v].weight_ok;
  }
  for (int t = 0; t < static_cast<int>(s.triangles.size()); ++t) {
    const DecoratedTriangle d = s.triangle_data(t, w);
    bool valid = is_valid_triangle(d);
    if (valid) {
      try {
        const TriangleLift lift = lift_triangle(d);
        for (int k = 0; k < 3; ++k) r.vertices[s.triangles[t].corners[k]].angle_sum += lift.angles[k];
      } catch (const Error&) {
        valid = false;
      }
    }
    r.triangle_valid.push_back(valid);
    r.triangles_ok = r.triangles_ok && valid;
  }
  edge_properness(s, w, &r.properness, &r.proper_ok);
  return r;
}

double edge_tilt_sum(const DecoratedSurface& s, int e, const std::vector<double>& w) {
  double sum = 0.0;
  for (const HalfEdge& h : s.edges.at(e).halves) sum += tilts(s.triangle_data(h.tri, w))[h.corner];
  return sum;
}

const char* to_string(EdgeClass c) {
  switch (c) {
    case EdgeClass::Strict: return "strict";
    case EdgeClass::Flat: return "flat";
    case EdgeClass::Violating: return "violating";
  }
  return "?";
}

EdgeClass classify_tilt_sum(double sum, double tol) {
  if (sum > tol) return EdgeClass::Violating;
  if (sum < -tol) return EdgeClass::Strict;
  return EdgeClass::Flat;
}

std::vector<EdgeStatus> delaunay_report(const DecoratedSurface& s, const std::vector<double>& w, double tol) {
  std::vector<Vec3> t(s.triangles.size());
  for (std::size_t i = 0; i < s.triangles.size(); ++i) t[i] = tilts(s.triangle_data(static_cast<int>(i), w));
  std::vector<EdgeStatus> out;
  for (int e = 0; e < static_cast<int>(s.edges.size()); ++e) {
    double sum = 0.0;
    for (const HalfEdge& h : s.edges[e].halves) sum += t[h.tri][h.corner];
    out.push_back({e, sum, classify_tilt_sum(sum, tol)});
  }
  return out;
}

}  // namespace dechyp
