#include "dechyp/cli/commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "dechyp/cli/render.hpp"
#include "dechyp/errors.hpp"
#include "dechyp/fan.hpp"
#include "dechyp/flip.hpp"
#include "dechyp/hull.hpp"
#include "dechyp/surface.hpp"

namespace dechyp::cli {

namespace {

struct Options {
  std::string file;
  std::string output;
  std::string svg;
  double tol = 1e-9;
  long long max_flips = 1'000'000;
  int samples = 200;
  int seed = 0;
  int depth = 4;
};

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot write " + path);
  out << text;
  if (!out) throw FileError("cannot write " + path);
}

std::string e12(double x) {
  if (std::isnan(x)) return "nan";
  return fmt::format("{:.12e}", x);
}

std::string vec(const MinkVector& v) { return fmt::format("{} {} {}", e12(v.t), e12(v.a), e12(v.b)); }

class Report {
 public:
  void block(const std::string& name) { text_ += fmt::format("[{}]\n", name); }
  template <class T>
  void kv(const std::string& key, const T& value) {
    text_ += fmt::format("{}: {}\n", key, value);
  }
  void real(const std::string& key, double value) { kv(key, e12(value)); }
  void line(const std::string& s) { text_ += s + "\n"; }
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

void surface_block(Report& r, const DecoratedSurface& s) {
  r.block("surface");
  r.kv("vertices", s.vertices.size());
  r.kv("edges", s.edges.size());
  r.kv("triangles", s.triangles.size());
  r.kv("euler_characteristic", s.euler_characteristic());
}

bool validation_blocks(Report& r, const DecoratedSurface& s) {
  const ValidationReport v = validate_surface(s);
  for (const VertexReport& vr : v.vertices) {
    const Vertex& vx = s.vertices[vr.index];
    r.block(fmt::format("vertex {}", vx.id));
    r.kv("type", to_string(vx.type));
    r.real("weight", vx.weight);
    const char* what = vx.type == VertexType::Cone ? "cone_angle" : vx.type == VertexType::Cusp ? "cusp_arc" : "flare_length";
    r.real(what, vr.angle_sum);
    if (vx.type == VertexType::Cone) r.kv("radius_check", vr.weight_ok ? "pass" : "fail");
  }
  for (std::size_t t = 0; t < v.triangle_valid.size(); ++t) {
    r.block(fmt::format("triangle {}", t));
    const auto& c = s.triangles[t].corners;
    r.kv("corners", fmt::format("{} {} {}", s.vertices[c[0]].id, s.vertices[c[1]].id, s.vertices[c[2]].id));
    r.kv("valid", v.triangle_valid[t] ? "yes" : "no");
  }
  r.block("properness");
  r.kv("mode", "edge relaxation");
  int bad = 0;
  for (const PropernessCheck& p : v.properness) bad += p.ok ? 0 : 1;
  r.kv("checks", v.properness.size());
  r.kv("violations", bad);
  for (const PropernessCheck& p : v.properness)
    if (!p.ok)
      r.kv("violated", fmt::format("edge {} vertex {} over cone {}: {} >= {}", p.edge, s.vertices[p.u].id,
                                   s.vertices[p.v].id, e12(p.lhs), e12(p.rhs)));
  r.kv("status", v.proper_ok ? "pass" : "fail");
  r.block("validation");
  r.kv("triangles", v.triangles_ok ? "pass" : "fail");
  r.kv("properness", v.proper_ok ? "pass" : "fail");
  r.kv("realizable", v.realizable ? "pass" : "fail");
  r.kv("status", v.ok() ? "pass" : "fail");
  return v.ok();
}

void edge_blocks(Report& r, const DecoratedSurface& s, const std::vector<EdgeStatus>& st) {
  for (const EdgeStatus& e : st) {
    r.block(fmt::format("edge {}", e.edge));
    const auto ends = s.edge_endpoints(e.edge);
    r.kv("vertices", fmt::format("{} {}", s.vertices[ends[0]].id, s.vertices[ends[1]].id));
    r.real("length", s.edges[e.edge].length);
    r.real("tilt_sum", e.tilt_sum);
    r.kv("class", to_string(e.cls));
  }
}

void signature_block(Report& r, const TessellationSignature& sig) {
  r.block("tessellation");
  r.kv("faces", sig.faces.size());
  for (std::size_t i = 0; i < sig.faces.size(); ++i) {
    std::string line;
    for (const BoundaryCycle& c : sig.faces[i]) {
      if (!line.empty()) line += " | ";
      for (std::size_t j = 0; j < c.size(); ++j) line += fmt::format("{}{}:{}", j ? " " : "", c[j].first, c[j].second);
    }
    r.kv(fmt::format("face {}", i), line);
  }
}

// Runs the flip algorithm, writing the run blocks. Returns false on flip-limit exit.
bool run_flips(Report& r, const DecoratedSurface& s, const Options& o, FlipResult& fr) {
  fr = flip_to_delaunay(s, s.weights(), o.tol, o.max_flips);
  r.block("run");
  r.kv("status", to_string(fr.reason));
  r.kv("flips", fr.flips);
  r.real("tolerance", o.tol);
  for (std::size_t i = 0; i < fr.log.size(); ++i) {
    const FlipRecord& f = fr.log[i];
    r.block(fmt::format("flip {}", i));
    r.kv("edge", f.edge);
    r.real("tilt_sum", f.tilt_sum);
    r.real("old_length", f.old_length);
    r.real("new_length", f.new_length);
    r.real("support_before", f.support_before);
    r.real("support_after", f.support_after);
  }
  if (fr.reason == Termination::MaxFlips) {
    r.block("diagnostics");
    r.real("max_edge_length", fr.max_edge_length);
    r.real("length_bound", fr.length_bound);
    r.real("max_support", fr.max_support);
    return false;
  }
  return true;
}

int cmd_validate(const Options& o, Report& r) {
  const DecoratedSurface s = parse_surface(read_file(o.file));
  surface_block(r, s);
  return validation_blocks(r, s) ? kExitOk : kExitInvalid;
}

int cmd_check(const Options& o, Report& r) {
  const DecoratedSurface s = parse_surface(read_file(o.file));
  surface_block(r, s);
  const bool ok = validation_blocks(r, s);
  if (!validate_surface(s).triangles_ok) return kExitInvalid;
  const auto st = delaunay_report(s, s.weights(), o.tol);
  edge_blocks(r, s, st);
  int counts[3] = {0, 0, 0};
  for (const EdgeStatus& e : st) ++counts[static_cast<int>(e.cls)];
  r.block("delaunay");
  r.kv("strict", counts[0]);
  r.kv("flat", counts[1]);
  r.kv("violating", counts[2]);
  r.kv("locally_delaunay", counts[2] == 0 ? "yes" : "no");
  return ok ? kExitOk : kExitInvalid;
}

int cmd_delaunay(const Options& o, Report& r) {
  const DecoratedSurface s = parse_surface(read_file(o.file));
  surface_block(r, s);
  FlipResult fr;
  if (!run_flips(r, s, o, fr)) return kExitNotConverged;
  edge_blocks(r, fr.surface, delaunay_report(fr.surface, s.weights(), o.tol));
  signature_block(r, tessellation_signature(fr.surface, s.weights(), o.tol));
  if (!o.output.empty()) write_file(o.output, write_surface(fr.surface));
  return kExitOk;
}

int cmd_dual(const Options& o, Report& r) {
  const DecoratedSurface s = parse_surface(read_file(o.file));
  surface_block(r, s);
  FlipResult fr;
  if (!run_flips(r, s, o, fr)) return kExitNotConverged;
  const DualComplex d = voronoi_dual(fr.surface, s.weights(), o.tol);
  r.block("dual");
  r.kv("vertices", d.vertices.size());
  r.kv("edges", d.edges.size());
  r.kv("faces", d.faces);
  r.kv("euler_characteristic", d.euler_characteristic());
  const auto faces = merged_faces(fr.surface, s.weights(), o.tol);
  for (const DualVertex& v : d.vertices) {
    r.block(fmt::format("dual-vertex {}", v.face));
    std::string tris;
    for (int t : faces[v.face].triangles) tris += fmt::format("{}{}", tris.empty() ? "" : " ", t);
    r.kv("triangles", tris);
    r.kv("face_vector", vec(v.face_vector));
    r.real("norm2", v.norm2);
    r.kv("elliptic", v.elliptic ? "yes" : "no");
    if (v.elliptic) r.kv("center", vec(v.center));
  }
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    r.block(fmt::format("dual-edge {}", i));
    r.kv("edge", d.edges[i].edge);
    r.kv("faces", fmt::format("{} {}", d.edges[i].from, d.edges[i].to));
  }
  return kExitOk;
}

int cmd_fan(const Options& o, Report& r) {
  const DecoratedSurface s = parse_surface(read_file(o.file));
  surface_block(r, s);
  const FanReport f = fan_sample(s, o.samples, o.tol, o.max_flips, !o.svg.empty());
  r.block("fan");
  r.kv("resolution", f.resolution);
  r.kv("grid_points", f.grid_points);
  r.kv("skipped_improper", f.skipped);
  r.kv("properness", "edge relaxation");
  r.kv("signatures", f.groups.size());
  r.kv("maximal", f.maximal_count);
  r.real("max_cone_residual", f.worst_violation);
  for (std::size_t g = 0; g < f.groups.size(); ++g) {
    const FanGroup& grp = f.groups[g];
    r.block(fmt::format("group {}", g));
    r.kv("samples", grp.samples);
    r.kv("maximal", grp.maximal ? "yes" : "no");
    std::string lo, hi;
    for (std::size_t i = 0; i < grp.lower.size(); ++i) {
      lo += fmt::format("{}{:.6f}", i ? " " : "", grp.lower[i]);
      hi += fmt::format("{}{:.6f}", i ? " " : "", grp.upper[i]);
    }
    r.kv("lower", lo);
    r.kv("upper", hi);
    r.real("max_cone_residual", grp.worst_violation);
    for (std::size_t i = 0; i < grp.signature.faces.size(); ++i) {
      std::string line;
      for (const BoundaryCycle& c : grp.signature.faces[i]) {
        if (!line.empty()) line += " | ";
        for (std::size_t j = 0; j < c.size(); ++j)
          line += fmt::format("{}{}:{}", j ? " " : "", c[j].first, c[j].second);
      }
      r.kv(fmt::format("face {}", i), line);
    }
  }
  if (!o.svg.empty()) write_file(o.svg, render_fan_svg(f));
  r.line(fmt::format("{} distinct tessellations", f.maximal_count));
  return kExitOk;
}

int cmd_render(const Options& o, Report& r, std::ostream& out) {
  const DecoratedSurface s = parse_surface(read_file(o.file));
  const FlipResult fr = flip_to_delaunay(s, s.weights(), o.tol, o.max_flips);
  if (fr.reason != Termination::Converged) return kExitNotConverged;
  const std::string svg = render_svg(fr.surface, s.weights(), o.seed, o.depth, o.tol);
  if (o.output.empty()) {
    out << svg;
  } else {
    write_file(o.output, svg);
    r.block("render");
    r.kv("output", o.output);
    r.kv("seed", o.seed);
    r.kv("depth", o.depth);
    r.kv("bytes", svg.size());
  }
  return kExitOk;
}

int cmd_hull(const Options& o, Report& r) {
  const OrbitFile f = parse_orbit_file(read_file(o.file));
  const OrbitStore orbit = orbit_generate(f.generators, f.seeds, f.depth);
  const double tol = o.tol;
  const HullReport h = hull_support_verify(f.faces, orbit, tol);
  r.block("hull");
  r.kv("generators", f.generators.size());
  r.kv("depth", h.depth);
  r.kv("orbit_size", h.orbit_size);
  r.kv("faces", h.faces.size());
  r.real("tolerance", tol);
  r.kv("violations", h.violations.size());
  for (std::size_t i = 0; i < h.faces.size(); ++i) {
    r.block(fmt::format("face {}", i));
    r.kv("face_vector", vec(h.faces[i].face_vector));
    r.real("norm2", h.faces[i].norm2);
    r.kv("elliptic", h.faces[i].elliptic ? "yes" : "no");
    r.real("max_product", h.faces[i].max_product);
  }
  for (const HullViolation& v : h.violations) {
    r.block("violation");
    r.kv("face", v.face);
    r.kv("orbit_index", v.orbit_index);
    r.real("product", v.value);
  }
  r.block("verdict");
  r.kv("status", h.ok() ? fmt::format("no violation found up to depth {}", h.depth) : std::string("violations found"));
  return h.ok() ? kExitOk : kExitInvalid;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted Delaunay triangulations of decorated hyperbolic surfaces", "dechyp"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "input file")->required();
    sub->add_option("--tol", o.tol, "classification tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--max-flips", o.max_flips, "flip limit")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--samples", o.samples, "fan grid resolution")->capture_default_str()->check(CLI::Range(2, 100000));
    sub->add_option("--seed", o.seed, "seed face for rendering")->capture_default_str()->check(CLI::NonNegativeNumber);
    sub->add_option("-o,--output", o.output, "output path");
  };
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {{"validate", "check file, topology and decoration"},
                      {"check", "classify every edge"},
                      {"delaunay", "run the flip algorithm"},
                      {"dual", "extract the Voronoi dual"},
                      {"fan", "sample the configuration space"},
                      {"render", "write an SVG of the developed tessellation"},
                      {"hull-verify", "check face vectors against a group orbit"}};
  std::vector<CLI::App*> apps;
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    common(sub);
    apps.push_back(sub);
  }
  apps[4]->add_option("--svg", o.svg, "ternary plot output (three vertices)");
  apps[5]->add_option("--depth", o.depth, "layers of developed copies")->capture_default_str()->check(CLI::Range(1, 12));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }
  if (apps[6]->parsed() && apps[6]->count("--tol") == 0) o.tol = 1e-7;

  Report r;
  int code = kExitOk;
  try {
    if (apps[0]->parsed()) code = cmd_validate(o, r);
    else if (apps[1]->parsed()) code = cmd_check(o, r);
    else if (apps[2]->parsed()) code = cmd_delaunay(o, r);
    else if (apps[3]->parsed()) code = cmd_dual(o, r);
    else if (apps[4]->parsed()) code = cmd_fan(o, r);
    else if (apps[5]->parsed()) code = cmd_render(o, r, out);
    else code = cmd_hull(o, r);
  } catch (const FileError& e) {
    out << r.str();
    err << "error: " << e.what() << "\n";
    return kExitFile;
  } catch (const Error& e) {
    out << r.str();
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::NotConverged ? kExitNotConverged : kExitInvalid;
  }
  out << r.str();
  return code;
}

}  // namespace dechyp::cli
