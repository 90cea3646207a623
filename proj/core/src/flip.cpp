#include "dechyp/flip.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>

#include <fmt/format.h>

#include "dechyp/errors.hpp"

namespace dechyp {

namespace {

int mod3(int k) { return ((k % 3) + 3) % 3; }

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

MinkVector place_apex(const MinkVector& c_tail, const MinkVector& c_head, const MinkVector& line, const Mat3& g,
                      int k, double tol) {
  // c_tail sits at corner k+1, c_head at corner k+2.
  const double p_head = g[k][mod3(k + 2)];
  const double p_tail = g[k][mod3(k + 1)];
  const double g22 = norm2(c_head);
  const double g33 = norm2(c_tail);
  const double g23 = mdot(c_head, c_tail);
  const double det = g22 * g33 - g23 * g23;
  if (std::abs(det) <= tol * std::max({std::abs(g22 * g33), g23 * g23, 1e-300}))
    throw Error(ErrorCode::DegenerateQuad, "edge cycles are dependent");
  const double alpha = (p_head * g33 - p_tail * g23) / det;
  const double beta = (g22 * p_tail - g23 * p_head) / det;
  const MinkVector x = c_head * alpha + c_tail * beta;
  const double rad = g[k][k] - norm2(x);
  if (rad < -tol) throw Error(ErrorCode::DegenerateQuad, "no real position for the apex");
  return x + line * std::sqrt(std::max(rad, 0.0));
}

QuadLift layout_quad(const DecoratedSurface& s, int e, const std::vector<double>& w, double tol) {
  if (e < 0 || e >= static_cast<int>(s.edges.size())) throw Error(ErrorCode::InvalidArgument, "edge index out of range");
  const auto [h0, h1] = s.edges[e].halves;
  const Triangle& t0 = s.triangles[h0.tri];
  const Triangle& t1 = s.triangles[h1.tri];

  QuadLift q;
  q.edge = e;
  const int k0 = h0.corner;
  const int k1 = h1.corner;
  q.vertices = {t0.corners[k0], t0.corners[mod3(k0 + 1)], t0.corners[mod3(k0 + 2)], t1.corners[k1]};
  for (int i = 0; i < 4; ++i) {
    q.types[i] = s.vertices[q.vertices[i]].type;
    q.weights[i] = w.at(q.vertices[i]);
  }

  const DecoratedTriangle d0 = s.triangle_data(h0.tri, w);
  const DecoratedTriangle d1 = s.triangle_data(h1.tri, w);
  q.left = lift_triangle(d0);
  q.cycles[0] = q.left.cycles[k0];
  q.cycles[1] = q.left.cycles[mod3(k0 + 1)];
  q.cycles[2] = q.left.cycles[mod3(k0 + 2)];
  q.line = q.left.lines[k0];

  // Right triangle corners: k1 -> apex, k1+1 -> cycles[2], k1+2 -> cycles[1].
  q.cycles[3] = place_apex(q.cycles[2], q.cycles[1], q.line, gram_matrix(d1), k1, tol);

  std::array<MinkVector, 3> rc{};
  rc[k1] = q.cycles[3];
  rc[mod3(k1 + 1)] = q.cycles[2];
  rc[mod3(k1 + 2)] = q.cycles[1];
  q.right = lift_from_cycles(d1.types, d1.weights, rc);
  return q;
}

MinkVector diagonal_sample(const QuadLift& q) {
  const MinkVector a = vertex_anchor(q.types[1], q.weights[1], q.cycles[1], q.line);
  const MinkVector b = vertex_anchor(q.types[2], q.weights[2], q.cycles[2], q.line);
  return normalize_timelike(a + b);
}

FlipOutcome flip_edge_in_place(DecoratedSurface& s, int e, const std::vector<double>& w, double tol) {
  const auto [h0, h1] = s.edges.at(e).halves;
  if (h0.tri == h1.tri) throw Error(ErrorCode::NotFlippable, fmt::format("edge {} is folded onto one triangle", e));
  const QuadLift q = layout_quad(s, e, w, tol);
  const auto& c = q.cycles;

  // New triangles [p, q, s] and [s, r, p] with p, q, r, s = 0, 1, 2, 3.
  if (!(mdet(c[0], c[1], c[3]) > 0.0) || !(mdet(c[3], c[2], c[0]) > 0.0))
    throw Error(ErrorCode::NotFlippable, fmt::format("quadrilateral at edge {} is not strictly convex", e));

  FlipOutcome out;
  out.new_length = length_from_product(eps(q.types[0]), q.weights[0], eps(q.types[3]), q.weights[3],
                                       -mdot(c[0], c[3]), tol);

  const MinkVector x = diagonal_sample(q);
  out.support_before = support_value(q.left, x, -std::numeric_limits<double>::infinity());

  const std::array<VertexType, 3> ta{q.types[0], q.types[1], q.types[3]};
  const std::array<VertexType, 3> tb{q.types[3], q.types[2], q.types[0]};
  const Vec3 wa{q.weights[0], q.weights[1], q.weights[3]};
  const Vec3 wb{q.weights[3], q.weights[2], q.weights[0]};
  TriangleLift la, lb;
  try {
    la = lift_from_cycles(ta, wa, {c[0], c[1], c[3]});
    lb = lift_from_cycles(tb, wb, {c[3], c[2], c[0]});
  } catch (const Error& err) {
    throw Error(ErrorCode::NotFlippable, fmt::format("edge {}: {}", e, err.what()));
  }

  const Triangle t0 = s.triangles[h0.tri];
  const Triangle t1 = s.triangles[h1.tri];
  const int k0 = h0.corner;
  const int k1 = h1.corner;
  const int e_qs = t1.edges[mod3(k1 + 1)];
  const int e_pq = t0.edges[mod3(k0 + 2)];
  const int e_rp = t0.edges[mod3(k0 + 1)];
  const int e_sr = t1.edges[mod3(k1 + 2)];

  DecoratedTriangle na;
  na.types = ta;
  na.weights = wa;
  na.lengths = {s.edges[e_qs].length, out.new_length, s.edges[e_pq].length};
  DecoratedTriangle nb;
  nb.types = tb;
  nb.weights = wb;
  nb.lengths = {s.edges[e_rp].length, out.new_length, s.edges[e_sr].length};
  if (!is_valid_triangle(na) || !is_valid_triangle(nb))
    throw Error(ErrorCode::NotFlippable, fmt::format("edge {}: flipped triangles are not valid", e));

  // Pick the new face containing the sample; L_ps is outward from q.
  const MinkVector lps = la.lines[1];
  const TriangleLift& holder = mdot(x, lps) <= 0.0 ? la : lb;
  out.support_after = support_value(holder, x, -std::numeric_limits<double>::infinity());

  const HalfEdge old_qs{h1.tri, mod3(k1 + 1)};
  const HalfEdge old_pq{h0.tri, mod3(k0 + 2)};
  const HalfEdge old_rp{h0.tri, mod3(k0 + 1)};
  const HalfEdge old_sr{h1.tri, mod3(k1 + 2)};
  auto remap = [&](const HalfEdge& h) -> HalfEdge {
    if (h == old_qs) return {h0.tri, 0};
    if (h == old_pq) return {h0.tri, 2};
    if (h == old_rp) return {h1.tri, 0};
    if (h == old_sr) return {h1.tri, 2};
    return h;
  };
  std::vector<int> touched{e_qs, e_pq, e_rp, e_sr};
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  for (int id : touched)
    for (HalfEdge& h : s.edges[id].halves) h = remap(h);

  s.triangles[h0.tri].corners = {q.vertices[0], q.vertices[1], q.vertices[3]};
  s.triangles[h1.tri].corners = {q.vertices[3], q.vertices[2], q.vertices[0]};
  s.edges[e].halves = {HalfEdge{h0.tri, 1}, HalfEdge{h1.tri, 1}};
  s.edges[e].length = out.new_length;
  for (int id : touched) for (const HalfEdge& h : s.edges[id].halves) s.triangles[h.tri].edges[h.corner] = id;
  s.triangles[h0.tri].edges[1] = e;
  s.triangles[h1.tri].edges[1] = e;
  return out;
}

DecoratedSurface flip_edge(const DecoratedSurface& s, int e, const std::vector<double>& w, double tol) {
  DecoratedSurface copy = s;
  flip_edge_in_place(copy, e, w, tol);
  return copy;
}

const char* to_string(Termination t) {
  return t == Termination::Converged ? "converged" : "max-flips";
}

FlipResult flip_to_delaunay(const DecoratedSurface& s, const std::vector<double>& w, double tol,
                            long long max_flips) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (max_flips < 1) throw Error(ErrorCode::InvalidArgument, "max flips must be at least 1");
  if (!is_proper(s, w)) throw Error(ErrorCode::ImproperDecoration, "weights violate the edge properness bound");
  for (int t = 0; t < static_cast<int>(s.triangles.size()); ++t)
    if (!is_valid_triangle(s.triangle_data(t, w)))
      throw Error(ErrorCode::InvalidTriangle, fmt::format("triangle {} is not a valid decorated triangle", t));

  FlipResult r;
  r.surface = s;
  DecoratedSurface& cur = r.surface;
  const int ne = static_cast<int>(cur.edges.size());
  std::deque<int> queue;
  std::vector<char> queued(ne, 1);
  for (int e = 0; e < ne; ++e) queue.push_back(e);

  while (!queue.empty()) {
    const int e = queue.front();
    queue.pop_front();
    queued[e] = 0;
    const double sum = edge_tilt_sum(cur, e, w);
    if (classify_tilt_sum(sum, tol) != EdgeClass::Violating) continue;
    if (r.flips >= max_flips) {
      r.reason = Termination::MaxFlips;
      break;
    }
    const auto [h0, h1] = cur.edges[e].halves;
    std::array<int, 4> outer{cur.triangles[h0.tri].edges[mod3(h0.corner + 1)],
                             cur.triangles[h0.tri].edges[mod3(h0.corner + 2)],
                             cur.triangles[h1.tri].edges[mod3(h1.corner + 1)],
                             cur.triangles[h1.tri].edges[mod3(h1.corner + 2)]};
    FlipRecord rec;
    rec.edge = e;
    rec.tilt_sum = sum;
    rec.old_length = cur.edges[e].length;
    FlipOutcome out;
    try {
      out = flip_edge_in_place(cur, e, w, tol);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::NotFlippable || err.code() == ErrorCode::DegenerateQuad)
        throw Error(ErrorCode::ImproperDecoration, err.what());
      throw;
    }
    rec.new_length = out.new_length;
    rec.support_before = out.support_before;
    rec.support_after = out.support_after;
    r.log.push_back(rec);
    ++r.flips;
    r.max_support = std::max({r.max_support, out.support_before, out.support_after});
    for (int o : outer)
      if (o != e && !queued[o]) {
        queued[o] = 1;
        queue.push_back(o);
      }
  }

  bool all_cone = true;
  for (const Edge& e : cur.edges) r.max_edge_length = std::max(r.max_edge_length, e.length);
  double rmax = 0.0;
  for (std::size_t v = 0; v < cur.vertices.size(); ++v) {
    all_cone = all_cone && cur.vertices[v].type == VertexType::Cone && w[v] > 1.0;
    if (all_cone) rmax = std::max(rmax, std::acosh(w[v]));
  }
  r.length_bound = all_cone ? 2.0 * rmax + 2.0 * std::acosh(std::max(1.0, r.max_support))
                            : std::numeric_limits<double>::quiet_NaN();
  return r;
}

std::string format_flip_log(const FlipResult& r) {
  std::string out;
  for (std::size_t i = 0; i < r.log.size(); ++i) {
    const FlipRecord& f = r.log[i];
    out += fmt::format("flip {} edge {} tilt_sum {:.12e} old_length {:.12e} new_length {:.12e} support {:.12e} -> {:.12e}\n",
                       i, f.edge, f.tilt_sum, f.old_length, f.new_length, f.support_before, f.support_after);
  }
  return out;
}

std::vector<MergedFace> merged_faces(const DecoratedSurface& s, const std::vector<double>& w, double tol) {
  const auto status = delaunay_report(s, w, tol);
  std::vector<char> flat(status.size(), 0);
  for (const EdgeStatus& st : status) {
    if (st.cls == EdgeClass::Violating)
      throw Error(ErrorCode::NotConverged, fmt::format("edge {} violates the Delaunay condition", st.edge));
    flat[st.edge] = st.cls == EdgeClass::Flat;
  }
  const int nt = static_cast<int>(s.triangles.size());
  std::vector<int> parent(nt);
  std::iota(parent.begin(), parent.end(), 0);
  for (int e = 0; e < static_cast<int>(s.edges.size()); ++e)
    if (flat[e]) parent[find_root(parent, s.edges[e].halves[0].tri)] = find_root(parent, s.edges[e].halves[1].tri);

  std::map<int, int> group_of_root;
  std::vector<MergedFace> faces;
  for (int t = 0; t < nt; ++t) {
    auto [it, fresh] = group_of_root.emplace(find_root(parent, t), static_cast<int>(faces.size()));
    if (fresh) faces.emplace_back();
    faces[it->second].triangles.push_back(t);
  }

  std::vector<char> used(3 * nt, 0);
  for (MergedFace& f : faces)
    for (int t : f.triangles)
      for (int k = 0; k < 3; ++k) {
        if (flat[s.triangles[t].edges[k]] || used[3 * t + k]) continue;
        std::vector<HalfEdge> cycle;
        HalfEdge h{t, k};
        while (!used[3 * h.tri + h.corner]) {
          used[3 * h.tri + h.corner] = 1;
          cycle.push_back(h);
          HalfEdge n{h.tri, mod3(h.corner + 1)};
          int guard = 0;
          while (flat[s.triangles[n.tri].edges[n.corner]]) {
            const HalfEdge o = s.opposite(n);
            n = {o.tri, mod3(o.corner + 1)};
            if (++guard > 3 * nt) throw Error(ErrorCode::TopologyError, "face boundary walk does not close");
          }
          h = n;
        }
        f.boundary.push_back(std::move(cycle));
      }
  return faces;
}

std::string TessellationSignature::str() const {
  std::string out;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    out += fmt::format("face {}:", i);
    for (const BoundaryCycle& c : faces[i]) {
      out += " (";
      for (std::size_t j = 0; j < c.size(); ++j)
        out += fmt::format("{}{}:{}", j ? " " : "", c[j].first, c[j].second);
      out += ")";
    }
    out += "\n";
  }
  return out;
}

TessellationSignature tessellation_signature(const DecoratedSurface& s, const std::vector<double>& w, double tol) {
  TessellationSignature sig;
  for (const MergedFace& f : merged_faces(s, w, tol)) {
    std::vector<BoundaryCycle> cycles;
    for (const auto& b : f.boundary) {
      BoundaryCycle c;
      for (const HalfEdge& h : b) {
        const int v = s.triangles[h.tri].corners[mod3(h.corner + 1)];
        const double len = s.edges[s.triangles[h.tri].edges[h.corner]].length;
        c.emplace_back(s.vertices[v].id, std::llround(len * 1e6));
      }
      BoundaryCycle best = c;
      for (std::size_t r = 1; r < c.size(); ++r) {
        std::rotate(c.begin(), c.begin() + 1, c.end());
        best = std::min(best, c);
      }
      cycles.push_back(std::move(best));
    }
    std::sort(cycles.begin(), cycles.end());
    sig.faces.push_back(std::move(cycles));
  }
  std::sort(sig.faces.begin(), sig.faces.end());
  return sig;
}

DualComplex voronoi_dual(const DecoratedSurface& s, const std::vector<double>& w, double tol) {
  const auto faces = merged_faces(s, w, tol);
  DualComplex d;
  std::vector<int> face_of(s.triangles.size(), 0);
  for (int i = 0; i < static_cast<int>(faces.size()); ++i) {
    for (int t : faces[i].triangles) face_of[t] = i;
    DualVertex v;
    v.face = i;
    v.face_vector = lift_triangle(s.triangle_data(faces[i].triangles.front(), w)).face;
    v.norm2 = norm2(v.face_vector);
    v.elliptic = v.norm2 < -tol;
    if (v.norm2 < 0.0) v.center = normalize_timelike(v.face_vector);
    d.vertices.push_back(v);
  }
  const auto status = delaunay_report(s, w, tol);
  for (const EdgeStatus& st : status) {
    if (st.cls != EdgeClass::Strict) continue;
    const auto& hv = s.edges[st.edge].halves;
    d.edges.push_back({st.edge, face_of[hv[0].tri], face_of[hv[1].tri]});
  }
  d.faces = static_cast<int>(s.vertices.size());
  return d;
}

}  // namespace dechyp
