#include "doctest.h"

#include "curvel2/curve_model.hpp"
#include "curvel2/errors.hpp"

using namespace curvel2;

namespace {

CurveSpec spec_of(const std::string& json) { return curve_spec_from_json(nlohmann::json::parse(json)); }

PlaneCurveAnalysis plane(const std::vector<std::string>& factors) { return analyze_plane_curve({factors}); }

int total_delta(const CurveSpec& s) {
  int t = 0;
  for (const auto& p : s.singular_points) t += p.delta.value_or(0);
  return t;
}

}  // namespace

TEST_CASE("validation collects every violation") {
  auto s = spec_of(R"({"components":[{"id":"c1","genus":-1},{"id":"c1","genus":0}],
    "singular_points":[{"id":"p","branches":[{"component":"c9","s":2}]},
                       {"id":"q","branches":[{"component":"c1","s":1}]}]})");
  auto v = validation_errors(s);
  CHECK(v.size() == 4);
  CHECK_THROWS_AS(validate(s), ValidationError);
  CHECK(validation_errors(spec_of(R"({"components":[]})")).size() == 1);
}

TEST_CASE("degree of Z - |Z| and bundle degrees") {
  auto c = validate(spec_of(R"({"components":[{"id":"c1","genus":0},{"id":"c2","genus":2}],
    "singular_points":[{"id":"cusp","branches":[{"component":"c1","s":2}]},
                       {"id":"e6","branches":[{"component":"c2","s":3}]},
                       {"id":"node","branches":[{"component":"c1","s":1},{"component":"c2","s":1}]}]})"));
  CHECK(c.m == 2);
  CHECK(c.g == 2);
  CHECK(deg_Z_minus_absZ(c) == 3);
  auto per = deg_Z_minus_absZ_per_component(c);
  CHECK(per["c1"] == 1);
  CHECK(per["c2"] == 2);

  LineBundleSpec l;
  l.degrees = {{"c1", 3}, {"c2", -1}};
  CHECK(bundle_degree(c, l) == 2);
  CHECK(bundle_degree(c, dual(l)) == -2);
  CHECK(bundle_degree(c, trivial_bundle()) == 0);
  l.degrees["c7"] = 1;
  CHECK_THROWS_AS(bundle_degree(c, l), InputError);
}

TEST_CASE("json round trip") {
  const char* text = R"({"components":[{"id":"a","genus":1,"genus_source":"declared"}],
    "singular_points":[{"id":"p1","branches":[{"component":"a","s":2},{"component":"a","s":3}],"delta":7}],
    "provenance":"test"})";
  auto s = spec_of(text);
  auto j = to_json(s);
  CHECK(j == to_json(curve_spec_from_json(j)));
  CHECK(j["singular_points"][0]["delta"] == 7);
  CHECK_THROWS_AS(spec_of(R"({"components":[{"id":"a"}]})"), InputError);
  CHECK_THROWS_AS(parse_json_text("{", "x"), InputError);

  auto l = line_bundle_from_json(nlohmann::json::parse(R"({"degrees":{"a":2}})"));
  CHECK(!l.trivial);
  CHECK(line_bundle_from_json(nlohmann::json::parse("{}")).trivial);
  CHECK_THROWS_AS(line_bundle_from_json(nlohmann::json::parse(R"({"degrees":{"a":2},"trivial":true})")), InputError);
}

TEST_CASE("plane curves: smooth") {
  auto conic = plane({"x^2 + y^2 - z^2"});
  CHECK(conic.spec.singular_points.empty());
  CHECK(conic.spec.components[0].genus == 0);
  auto cubic = plane({"x^3 + y^3 + z^3"});
  CHECK(cubic.spec.components[0].genus == 1);
  auto quartic = plane({"x^4 + y^4 - z^4"});
  CHECK(quartic.spec.components[0].genus == 3);
  auto line = plane({"x + 2*y"});
  CHECK(line.spec.components[0].genus == 0);
}

TEST_CASE("plane curves: cusp and node") {
  auto cusp = plane({"y^2*z - x^3"});
  REQUIRE(cusp.spec.singular_points.size() == 1);
  CHECK(cusp.spec.components[0].genus == 0);
  CHECK(cusp.spec.components[0].genus_source == "plane_curve");
  const auto& p = cusp.spec.singular_points[0];
  REQUIRE(p.branches.size() == 1);
  CHECK(p.branches[0].s == 2);
  CHECK(p.delta == 1);
  CHECK(p.eta == 2);

  auto node = plane({"y^2*z - x^3 - x^2*z"});
  REQUIRE(node.spec.singular_points.size() == 1);
  CHECK(node.spec.singular_points[0].branches.size() == 2);
  CHECK(node.spec.singular_points[0].delta == 1);
  CHECK(node.spec.components[0].genus == 0);

  // affine input is homogenized
  auto affine = plane({"y^2 - x^3"});
  CHECK(to_json(affine.spec)["singular_points"] == to_json(cusp.spec)["singular_points"]);
}

TEST_CASE("plane curves: higher singularities") {
  auto e6 = plane({"y^3*z - x^4"});
  REQUIRE(e6.spec.singular_points.size() == 1);
  CHECK(e6.spec.singular_points[0].branches[0].s == 3);
  CHECK(e6.spec.singular_points[0].delta == 3);
  CHECK(e6.spec.components[0].genus == 0);
  CHECK(deg_Z_minus_absZ(validate(e6.spec)) == 2);

  auto tacnode = plane({"y^2*z^2 - x^4 - y^4"});
  REQUIRE(tacnode.spec.singular_points.size() == 1);
  CHECK(tacnode.spec.singular_points[0].delta == 2);
  CHECK(tacnode.spec.singular_points[0].branches.size() == 2);
  CHECK(tacnode.spec.components[0].genus == 1);

  // ordinary triple point of a quartic
  auto triple = plane({"(x^2 + y^2)^2 + 3*x^2*y*z - y^3*z"});
  REQUIRE(triple.spec.singular_points.size() == 1);
  CHECK(triple.spec.singular_points[0].delta == 3);
  CHECK(triple.spec.components[0].genus == 0);
}

TEST_CASE("plane curves: several components and conjugate points") {
  auto lines = plane({"x", "y", "x + y - z"});
  CHECK(lines.spec.components.size() == 3);
  CHECK(lines.spec.singular_points.size() == 3);
  for (const auto& c : lines.spec.components) CHECK(c.genus == 0);

  auto conics = plane({"x^2 + y^2 - z^2", "x^2 + 2*y^2 - 3*z^2"});
  CHECK(conics.spec.singular_points.size() == 4);
  CHECK(total_delta(conics.spec) == 4);
  for (const auto& p : conics.spec.singular_points) CHECK(p.branches.size() == 2);

  auto cusp_line = plane({"y^2*z - x^3", "y"});
  // the tangent line meets the cusp with multiplicity 3
  int cusp_delta = 0;
  for (const auto& p : cusp_line.spec.singular_points) cusp_delta = std::max(cusp_delta, *p.delta);
  CHECK(cusp_delta == 4);
  CHECK(cusp_line.spec.components[0].genus == 0);
}

TEST_CASE("plane curves: invariance under projective changes") {
  auto a = plane({"y^2*z - x^3"});
  auto b = plane({"x^2*z - y^3"});
  auto c = plane({"y^2*x - z^3"});
  for (const auto* r : {&b, &c}) {
    REQUIRE(r->spec.singular_points.size() == 1);
    CHECK(r->spec.singular_points[0].delta == a.spec.singular_points[0].delta);
    CHECK(r->spec.singular_points[0].branches[0].s == 2);
    CHECK(r->spec.components[0].genus == 0);
  }
  auto t1 = plane({"y^2*z^2 - x^4 - y^4"});
  auto t2 = plane({"x^2*y^2 - z^4 - x^4"});
  CHECK(t1.spec.components[0].genus == t2.spec.components[0].genus);
  CHECK(total_delta(t1.spec) == total_delta(t2.spec));
}

TEST_CASE("plane curves: input errors") {
  CHECK_THROWS_AS(plane({"x^2 + z"}), InputError);
  CHECK_THROWS_AS(plane({"(x - y)^2*z"}), InputError);
  CHECK_THROWS_AS(plane({"x", "x"}), InputError);
  CHECK_THROWS_AS(plane({"3"}), InputError);
  // a reducible factor passed as one component
  CHECK_THROWS_AS(plane({"x*y*z"}), MathError);

  auto in = plane_curve_from_text(R"({"factors":["x","y"]})");
  CHECK(in.factors.size() == 2);
  CHECK(plane_curve_from_text("# comment\ny^2*z - x^3\n").factors.size() == 1);
  CHECK_THROWS_AS(plane_curve_from_text("{\"bogus\":1}"), InputError);
}
