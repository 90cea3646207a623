#include "dechyp/fan.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "dechyp/errors.hpp"

namespace dechyp {

std::vector<double> ConeSpec::apply(const std::vector<double>& w) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    double acc = 0.0;
    for (std::size_t v = 0; v < r.size(); ++v) acc += r[v] * w.at(v);
    out.push_back(acc);
  }
  return out;
}

ConeSpec cone_rows(const DecoratedSurface& s) {
  std::vector<Mat3> coeff;
  coeff.reserve(s.triangles.size());
  for (int t = 0; t < static_cast<int>(s.triangles.size()); ++t) coeff.push_back(tilt_coefficients(s.triangle_data(t)));
  ConeSpec c;
  for (int e = 0; e < static_cast<int>(s.edges.size()); ++e) {
    std::vector<double> row(s.vertices.size(), 0.0);
    for (const HalfEdge& h : s.edges[e].halves)
      for (int k = 0; k < 3; ++k) row[s.triangles[h.tri].corners[k]] += coeff[h.tri][h.corner][k];
    c.rows.push_back(std::move(row));
    c.labels.push_back(e);
  }
  return c;
}

ConeSpec delaunay_cone(const DecoratedSurface& s, const std::vector<double>& w0, double tol) {
  for (const EdgeStatus& st : delaunay_report(s, w0, tol))
    if (st.cls == EdgeClass::Violating)
      throw Error(ErrorCode::NotConverged, "surface is not Delaunay at the given weights");
  return cone_rows(s);
}

bool is_maximal(const DecoratedSurface& s, const std::vector<double>& w, double tol) {
  const auto status = delaunay_report(s, w, tol);
  bool any_flat = false;
  for (const EdgeStatus& st : status) any_flat = any_flat || st.cls == EdgeClass::Flat;
  if (!any_flat) return true;
  const ConeSpec c = cone_rows(s);
  for (const EdgeStatus& st : status) {
    if (st.cls != EdgeClass::Flat) continue;
    double n = 0.0;
    for (double x : c.rows[st.edge]) n += x * x;
    if (std::sqrt(n) > tol) return false;
  }
  return true;
}

namespace {

// Visits compositions of `total` into n positive parts in lexicographic order.
template <class F>
void for_each_composition(int n, int total, std::vector<int>& cur, int pos, F&& f) {
  if (pos == n - 1) {
    if (total >= 1) {
      cur[pos] = total;
      f(cur);
    }
    return;
  }
  for (int k = 1; k <= total - (n - 1 - pos); ++k) {
    cur[pos] = k;
    for_each_composition(n, total - k, cur, pos + 1, f);
  }
}

}  // namespace

FanReport fan_sample(const DecoratedSurface& s, int resolution, double tol, long long max_flips, bool keep_points) {
  if (resolution < 2) throw Error(ErrorCode::InvalidArgument, "resolution must be at least 2");
  const int n = static_cast<int>(s.vertices.size());
  FanReport rep;
  rep.resolution = resolution;

  struct Acc {
    FanGroup g;
    DecoratedSurface triangulation;
  };
  std::map<TessellationSignature, Acc> groups;
  std::vector<int> cur(n, 0);

  auto visit = [&](const std::vector<int>& k) {
    ++rep.grid_points;
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = static_cast<double>(k[i]) / resolution;
    if (!is_proper(s, w)) {
      ++rep.skipped;
      return;
    }
    const FlipResult fr = flip_to_delaunay(s, w, tol, max_flips);
    if (fr.reason != Termination::Converged) throw Error(ErrorCode::NotConverged, "flip algorithm hit the flip limit");
    TessellationSignature sig = tessellation_signature(fr.surface, w, tol);
    auto it = groups.find(sig);
    if (it == groups.end()) {
      Acc a;
      a.g.signature = sig;
      a.g.maximal = is_maximal(fr.surface, w, tol);
      a.g.lower = w;
      a.g.upper = w;
      a.g.representative = w;
      a.triangulation = fr.surface;
      it = groups.emplace(std::move(sig), std::move(a)).first;
    }
    FanGroup& g = it->second.g;
    ++g.samples;
    for (int i = 0; i < n; ++i) {
      g.lower[i] = std::min(g.lower[i], w[i]);
      g.upper[i] = std::max(g.upper[i], w[i]);
    }
    // Cross-check against the cone of the representative triangulation.
    const ConeSpec cone = cone_rows(it->second.triangulation);
    for (double x : cone.apply(w)) g.worst_violation = std::max(g.worst_violation, x);
    if (keep_points) g.points.push_back(w);
  };

  if (n == 1) {
    visit(std::vector<int>{resolution});
  } else {
    for_each_composition(n, resolution, cur, 0, visit);
  }

  for (auto& [sig, a] : groups) {
    rep.worst_violation = std::max(rep.worst_violation, a.g.worst_violation);
    if (a.g.maximal) ++rep.maximal_count;
    rep.groups.push_back(std::move(a.g));
  }
  return rep;
}

}  // namespace dechyp
