#include <doctest.h>

#include <random>

#include "dechyp/errors.hpp"
#include "dechyp/surface.hpp"
#include "oracles.hpp"

using namespace dechyp;

namespace {

ErrorCode parse_code(const std::string& text) {
  try {
    parse_surface(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

std::string doc(const std::string& gluing, const std::string& extra = "") {
  return R"({"format": "dechyp-surface-v1",
    "vertices": [{"id": 0, "type": -1, "weight": 1.1}, {"id": 1, "type": -1, "weight": 1.1},
                 {"id": 2, "type": -1, "weight": 1.1}],
    "triangles": [{"corners": [0, 1, 2]}, {"corners": [0, 2, 1]}],
    "gluing": )" + gluing + R"(,
    "lengths": [{"pair": 0, "value": 1.5}, {"pair": 1, "value": 1.5}, {"pair": 2, "value": 1.5}])" + extra + "}";
}

}  // namespace

TEST_CASE("fixtures parse with the expected Euler counts") {
  const DecoratedSurface t = oracle::load_fixture("tri444.json");
  CHECK(t.vertices.size() == 3);
  CHECK(t.triangles.size() == 2);
  CHECK(t.edges.size() == 3);
  CHECK(t.euler_characteristic() == 2);
  const DecoratedSurface c = oracle::load_fixture("cusp_torus.json");
  CHECK(c.vertices.size() == 1);
  CHECK(c.edges.size() == 3);
  CHECK(c.euler_characteristic() == 0);
  const DecoratedSurface f = oracle::load_fixture("flare_torus.json");
  CHECK(f.euler_characteristic() == 0);
  for (const DecoratedSurface* s : {&t, &c, &f})
    for (int e = 0; e < static_cast<int>(s->edges.size()); ++e)
      for (const HalfEdge& h : s->edges[e].halves) {
        CHECK(s->opposite(s->opposite(h)) == h);
        CHECK(s->opposite(h) != h);
      }
}

TEST_CASE("parse errors") {
  const std::string good = "[[[0,0],[1,0]],[[0,1],[1,2]],[[0,2],[1,1]]]";
  CHECK_NOTHROW(parse_surface(doc(good)));
  CHECK(parse_code(doc("[[[0,0],[0,0]],[[0,1],[1,2]],[[0,2],[1,1]]]")) == ErrorCode::TopologyError);
  CHECK(parse_code(doc("[[[0,0],[1,0]],[[0,1],[1,1]],[[0,2],[1,2]]]")) == ErrorCode::TopologyError);
  CHECK(parse_code(doc(good, R"(, "extra": 1)")) == ErrorCode::ParseError);
  CHECK(parse_code("{ not json") == ErrorCode::ParseError);
  std::string v2 = doc(good);
  v2.replace(v2.find("v1"), 2, "v2");
  CHECK(parse_code(v2) == ErrorCode::FormatVersionError);
  std::string bad_id = doc(good);
  bad_id.replace(bad_id.find("[0, 2, 1]"), 9, "[0, 7, 1]");
  CHECK(parse_code(bad_id) == ErrorCode::ParseError);
  try {
    parse_surface(doc(good, R"(, "extra": 1)"));
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("extra") != std::string::npos);
  }
}

TEST_CASE("write and parse round trip") {
  const DecoratedSurface s = oracle::load_fixture("flare_torus.json");
  const DecoratedSurface r = parse_surface(write_surface(s));
  CHECK(write_surface(r) == write_surface(s));
  CHECK(r.edges[0].length == s.edges[0].length);
}

TEST_CASE("validation of the fixtures") {
  const DecoratedSurface t = oracle::load_fixture("tri444.json");
  const ValidationReport r = validate_surface(t);
  CHECK(r.ok());
  for (const auto& v : r.vertices) CHECK(v.angle_sum == doctest::Approx(M_PI / 2).epsilon(1e-12));

  const ValidationReport f = validate_surface(oracle::load_fixture("flare_torus.json"));
  CHECK(f.ok());
  CHECK(f.properness.empty());

  DecoratedSurface low = t;
  low.vertices[0].weight = 1.0;
  const ValidationReport lr = validate_surface(low);
  CHECK_FALSE(lr.realizable);
  CHECK_FALSE(lr.ok());

  DecoratedSurface improper = t;
  improper.vertices[0].weight = 3.0;
  CHECK_FALSE(validate_surface(improper).proper_ok);
}

TEST_CASE("edge tilt sums") {
  const DecoratedSurface t = oracle::load_fixture("tri444.json");
  const std::vector<double> w{1.0, 1.0, 1.0};
  for (int e = 0; e < 3; ++e) {
    CHECK(edge_tilt_sum(t, e, w) < 0);
    CHECK(edge_tilt_sum(t, e, {3.0, 3.0, 3.0}) == doctest::Approx(3.0 * edge_tilt_sum(t, e, w)).epsilon(1e-12));
  }
  const DecoratedSurface f = oracle::load_fixture("flare_torus.json");
  CHECK(std::abs(edge_tilt_sum(f, 0, {0.37})) < 1e-9);
  const auto rep = delaunay_report(f, f.weights());
  CHECK(rep[0].cls == EdgeClass::Flat);
  CHECK(rep[1].cls == EdgeClass::Strict);
  for (const auto& st : delaunay_report(t, w, INFINITY)) CHECK(st.cls == EdgeClass::Flat);
}

TEST_CASE("cusp gauge invariance") {
  const DecoratedSurface c = oracle::load_fixture("cusp_torus.json");
  for (double delta : {-1.0, 0.3, 2.0}) {
    DecoratedSurface g = c;
    for (Edge& e : g.edges) e.length += 2.0 * delta;  // every edge is a loop at the cusp
    g.vertices[0].weight *= std::exp(delta);
    for (int e = 0; e < 3; ++e)
      CHECK(std::abs(edge_tilt_sum(g, e, g.weights()) - edge_tilt_sum(c, e, c.weights())) < 1e-12);
  }
}
