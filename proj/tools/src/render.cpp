#include "dechyp/cli/render.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <tuple>

#include <fmt/format.h>

#include "dechyp/errors.hpp"
#include "dechyp/hull.hpp"

namespace dechyp::cli {

namespace {

using Key = std::tuple<int, long long, long long, long long, long long, long long, long long>;

Key key_of(int tri, const std::array<MinkVector, 3>& c) {
  // Corner 0 and 1 determine the copy.
  auto r = [](double x) { return std::llround(x * 1e6); };
  return {tri, r(c[0].t), r(c[0].a), r(c[0].b), r(c[1].t), r(c[1].a), r(c[1].b)};
}

std::string num(double x) {
  if (std::abs(x) < 5e-7) x = 0.0;
  return fmt::format("{:.6f}", x);
}

struct Canvas {
  std::string body;

  void geodesic(const MinkVector& line, const std::array<double, 2>& p, const std::array<double, 2>& q,
                const char* cls) {
    const double lt = line.t;
    if (std::abs(lt) < 1e-9 * std::max(1.0, std::hypot(line.a, line.b))) {
      body += fmt::format("<line class=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", cls, num(p[0]), num(p[1]),
                          num(q[0]), num(q[1]));
      return;
    }
    const double cx = line.a / lt;
    const double cy = line.b / lt;
    const double r = 1.0 / std::abs(lt);
    const double cross = (p[0] - cx) * (q[1] - cy) - (p[1] - cy) * (q[0] - cx);
    if (r > 1e4) {
      body += fmt::format("<line class=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", cls, num(p[0]), num(p[1]),
                          num(q[0]), num(q[1]));
      return;
    }
    body += fmt::format("<path class=\"{}\" d=\"M {} {} A {} {} 0 0 {} {} {}\"/>\n", cls, num(p[0]), num(p[1]), num(r),
                        num(r), cross > 0.0 ? 1 : 0, num(q[0]), num(q[1]));
  }
};

MinkVector spatial_line(const MinkVector& x, const MinkVector& y) {
  const MinkVector m = mcross(x, y);
  const double n = norm2(m);
  return n > 0.0 ? m / std::sqrt(n) : m;
}

}  // namespace

std::array<double, 2> project(const MinkVector& v) {
  const double n = norm2(v);
  if (n < -1e-12) {
    const MinkVector u = normalize_timelike(v);
    return {u.a / (1.0 + u.t), u.b / (1.0 + u.t)};
  }
  const double t = std::abs(v.t);
  return {v.a / t, v.b / t};
}

RenderScene develop(const DecoratedSurface& s, const std::vector<double>& w, int seed, int depth, double tol) {
  if (seed < 0 || seed >= static_cast<int>(s.triangles.size()))
    throw Error(ErrorCode::InvalidArgument, "seed face out of range");
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be at least 1");
  RenderScene scene;
  scene.status = delaunay_report(s, w, tol);
  for (const EdgeStatus& st : scene.status)
    if (st.cls == EdgeClass::Violating) throw Error(ErrorCode::NotConverged, "surface is not Delaunay");

  TriangleLift first = lift_triangle(s.triangle_data(seed, w));
  const double fn = norm2(first.face);
  MinkVector centre = fn < 0.0 ? normalize_timelike(first.face)
                               : normalize_timelike(first.cycles[0] * 3.0 + first.cycles[1] + first.cycles[2]);
  const double root = std::sqrt(2.0 * centre.t + 2.0);
  const GroupElement h{(centre.t + centre.b + 1.0) / root, centre.a / root, centre.a / root,
                       (centre.t - centre.b + 1.0) / root};
  const GroupElement back = h.inverse();
  std::array<MinkVector, 3> c0{};
  for (int k = 0; k < 3; ++k) c0[k] = sym2_action(back, first.cycles[k]);

  std::set<Key> seen;
  std::deque<PlacedTriangle> queue;
  const DecoratedTriangle d0 = s.triangle_data(seed, w);
  PlacedTriangle p0{seed, 0, c0, lift_from_cycles(d0.types, d0.weights, c0)};
  seen.insert(key_of(seed, c0));
  queue.push_back(p0);
  while (!queue.empty()) {
    PlacedTriangle cur = queue.front();
    queue.pop_front();
    scene.placed.push_back(cur);
    if (cur.layer + 1 >= depth) continue;
    for (int k = 0; k < 3; ++k) {
      const HalfEdge o = s.opposite({cur.tri, k});
      const DecoratedTriangle d = s.triangle_data(o.tri, w);
      std::array<MinkVector, 3> c{};
      // Our corner k+1 is their corner o+2, ours k+2 is theirs o+1.
      c[(o.corner + 2) % 3] = cur.cycles[(k + 1) % 3];
      c[(o.corner + 1) % 3] = cur.cycles[(k + 2) % 3];
      c[o.corner] = place_apex(c[(o.corner + 1) % 3], c[(o.corner + 2) % 3], cur.lift.lines[k], gram_matrix(d),
                               o.corner, 1e-7);
      if (!seen.insert(key_of(o.tri, c)).second) continue;
      queue.push_back({o.tri, cur.layer + 1, c, lift_from_cycles(d.types, d.weights, c)});
    }
  }
  return scene;
}

std::string render_svg(const DecoratedSurface& s, const std::vector<double>& w, int seed, int depth, double tol) {
  const RenderScene scene = develop(s, w, seed, depth, tol);
  Canvas decor, edges, dual;

  std::set<std::tuple<long long, long long, long long>> drawn_cycles;
  for (const PlacedTriangle& p : scene.placed) {
    for (int k = 0; k < 3; ++k) {
      const MinkVector& c = p.cycles[k];
      auto key = std::make_tuple(std::llround(c.t * 1e6), std::llround(c.a * 1e6), std::llround(c.b * 1e6));
      if (!drawn_cycles.insert(key).second) continue;
      if (c.t <= -1.0 + 1e-9) continue;
      const double mx = c.a / (1.0 + c.t);
      const double my = c.b / (1.0 + c.t);
      const double r2 = mx * mx + my * my + (1.0 - c.t) / (1.0 + c.t);
      if (r2 <= 0.0) continue;
      decor.body += fmt::format("<circle class=\"{}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n", norm2(c) > 0.0 ? "hypercycle" : "cycle",
                                num(mx), num(my), num(std::sqrt(r2)));
    }
  }

  std::map<Key, const PlacedTriangle*> index;
  for (const PlacedTriangle& p : scene.placed) index[key_of(p.tri, p.cycles)] = &p;

  for (const PlacedTriangle& p : scene.placed) {
    std::array<std::array<double, 2>, 3> anchor{};
    for (int k = 0; k < 3; ++k) {
      const auto e = s.triangles[p.tri].edges[k];
      const VertexType t1 = p.lift.types[(k + 1) % 3];
      const VertexType t2 = p.lift.types[(k + 2) % 3];
      const auto a = project(vertex_anchor(t1, p.lift.weights[(k + 1) % 3], p.cycles[(k + 1) % 3], p.lift.lines[k]));
      const auto b = project(vertex_anchor(t2, p.lift.weights[(k + 2) % 3], p.cycles[(k + 2) % 3], p.lift.lines[k]));
      anchor[k] = a;
      if (scene.status[e].cls == EdgeClass::Strict)
        edges.geodesic(p.lift.lines[k], a, b, "edge");
      else
        edges.geodesic(p.lift.lines[k], a, b, "flat");
    }
    if (!(norm2(p.lift.face) < 0.0)) continue;
    const MinkVector x = normalize_timelike(p.lift.face);
    for (int k = 0; k < 3; ++k) {
      if (scene.status[s.triangles[p.tri].edges[k]].cls != EdgeClass::Strict) continue;
      const HalfEdge o = s.opposite({p.tri, k});
      std::array<MinkVector, 3> c{};
      c[(o.corner + 2) % 3] = p.cycles[(k + 1) % 3];
      c[(o.corner + 1) % 3] = p.cycles[(k + 2) % 3];
      const DecoratedTriangle d = s.triangle_data(o.tri, w);
      c[o.corner] = place_apex(c[(o.corner + 1) % 3], c[(o.corner + 2) % 3], p.lift.lines[k], gram_matrix(d),
                               o.corner, 1e-7);
      auto it = index.find(key_of(o.tri, c));
      if (it == index.end() || it->second < &p) continue;
      const MinkVector& f = it->second->lift.face;
      if (!(norm2(f) < 0.0)) continue;
      const MinkVector y = normalize_timelike(f);
      dual.geodesic(spatial_line(x, y), project(x), project(y), "dual");
    }
  }

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"-1.05 -1.05 2.1 2.1\" "
         "width=\"800\" height=\"800\">\n";
  out += "<style>\n"
         ".edge { fill: none; stroke: #000000; stroke-width: 0.004; }\n"
         ".flat { fill: none; stroke: #888888; stroke-width: 0.002; }\n"
         ".dual { fill: none; stroke: #c0392b; stroke-width: 0.003; stroke-dasharray: 0.012 0.008; }\n"
         ".cycle { fill: #3b7dd8; fill-opacity: 0.15; stroke: #3b7dd8; stroke-width: 0.002; }\n"
         ".hypercycle { fill: none; stroke: #3b7dd8; stroke-width: 0.003; }\n"
         ".disc { fill: none; stroke: #000000; stroke-width: 0.006; }\n"
         "</style>\n";
  out += "<defs><clipPath id=\"disc\"><circle cx=\"0\" cy=\"0\" r=\"1\"/></clipPath></defs>\n";
  out += "<g clip-path=\"url(#disc)\">\n";
  out += decor.body;
  out += edges.body;
  out += dual.body;
  out += "</g>\n";
  out += "<circle class=\"disc\" cx=\"0\" cy=\"0\" r=\"1\"/>\n";
  out += "</svg>\n";
  return out;
}

std::string render_fan_svg(const FanReport& report) {
  static const char* palette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d",
                                  "#666666"};
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"-0.05 -0.05 1.1 1.0\" "
         "width=\"800\" height=\"730\">\n";
  const double h = std::sqrt(3.0) / 2.0;
  out += fmt::format("<polygon points=\"0,{0} 1,{0} 0.5,0\" fill=\"none\" stroke=\"#000000\" stroke-width=\"0.003\"/>\n",
                     num(h));
  const double r = 0.45 / std::max(report.resolution, 1);
  for (std::size_t g = 0; g < report.groups.size(); ++g) {
    const FanGroup& grp = report.groups[g];
    out += fmt::format("<g fill=\"{}\">\n", palette[g % 8]);
    for (const auto& w : grp.points) {
      if (w.size() != 3) continue;
      const double sum = w[0] + w[1] + w[2];
      const double x = (w[1] + 0.5 * w[2]) / sum;
      const double y = h - h * w[2] / sum;
      out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n", num(x), num(y), num(r));
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace dechyp::cli
