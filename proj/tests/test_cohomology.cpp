#include <random>

#include "doctest.h"

#include "curvel2/errors.hpp"
#include "curvel2/l2_cohomology.hpp"

using namespace curvel2;

namespace {

CheckedCurve curve(const std::string& json) { return validate(curve_spec_from_json(nlohmann::json::parse(json))); }

const char* kCuspidalCubic = R"({"components":[{"id":"c1","genus":0}],
  "singular_points":[{"id":"p1","branches":[{"component":"c1","s":2}],"eta":2}]})";
const char* kNodalCubic = R"({"components":[{"id":"c1","genus":0}],
  "singular_points":[{"id":"p1","branches":[{"component":"c1","s":1},{"component":"c1","s":1}]}]})";

CheckedCurve smooth(int g) {
  return curve(R"({"components":[{"id":"c1","genus":)" + std::to_string(g) + "}]}");
}

LineBundleSpec bundle(std::map<std::string, int> d) {
  LineBundleSpec l;
  l.degrees = std::move(d);
  return l;
}

long v(const CohomologyTable& t, Extension e, int p, int q) {
  REQUIRE(t.at(e, p, q).is_exact());
  return t.at(e, p, q).lo;
}

bool all_pass(const std::vector<IdentityCheck>& v) {
  for (const auto& c : v) {
    if (!c.pass) return false;
  }
  return true;
}

// dimension of homogeneous polynomials of degree d in two variables
long sections_on_projective_line(int d) {
  long n = 0;
  for (int i = 0; i <= d; ++i) ++n;
  return n;
}

}  // namespace

TEST_CASE("riemann-roch on one component") {
  auto r = rr_on_component(0, 1);
  CHECK(r.h0 == DimValue::exact(2));
  CHECK(r.h1 == DimValue::exact(0));
  r = rr_on_component(2, 5);
  CHECK(r.h0 == DimValue::exact(4));
  CHECK(r.h1 == DimValue::exact(0));
  for (int g = 0; g < 5; ++g) {
    r = rr_on_component(g, -1);
    CHECK(r.h0 == DimValue::exact(0));
    CHECK(r.h1 == DimValue::exact(g));
  }
  r = rr_on_component(1, 0);
  CHECK(r.h0.lo == 0);
  CHECK(r.h0.hi == 1);
  CHECK(r.h0.class_dependent);
  CHECK(rr_on_component(1, 0, Mode::exact, DivisorClass::trivial).h0 == DimValue::exact(1));
  CHECK(rr_on_component(1, 0, Mode::generic).h0.lo == 0);

  for (int d = 0; d < 12; ++d) CHECK(rr_on_component(0, d).h0.lo == sections_on_projective_line(d));

  // the difference is the Euler characteristic at both ends of every interval
  for (int g = 0; g <= 6; ++g) {
    for (int d = -4; d <= 2 * g + 2; ++d) {
      for (Mode m : {Mode::exact, Mode::generic}) {
        auto x = rr_on_component(g, d, m);
        CHECK(x.h0.lo - x.h1.lo == 1 - g + d);
        CHECK(x.h0.hi - x.h1.hi == 1 - g + d);
        CHECK(x.h0.lo >= 0);
        CHECK(x.h1.lo >= 0);
      }
    }
  }
}

TEST_CASE("tables of the worked examples") {
  auto t = full_table(curve(kCuspidalCubic), trivial_bundle());
  CHECK(v(t, Extension::w, 0, 0) == 2);
  CHECK(v(t, Extension::w, 0, 1) == 0);
  CHECK(v(t, Extension::w, 1, 0) == 0);
  CHECK(v(t, Extension::w, 1, 1) == 1);
  CHECK(v(t, Extension::s, 0, 0) == 1);
  CHECK(v(t, Extension::s, 0, 1) == 0);
  CHECK(v(t, Extension::s, 1, 0) == 0);
  CHECK(v(t, Extension::s, 1, 1) == 2);
  CHECK(all_pass(check_rr_w(t)));
  CHECK(all_pass(check_rr_s(t)));
  CHECK(all_pass(check_serre_duality(curve(kCuspidalCubic), trivial_bundle())));

  auto n = full_table(curve(kNodalCubic), bundle({{"c1", 3}}));
  CHECK(v(n, Extension::w, 0, 0) == 4);
  CHECK(v(n, Extension::w, 0, 1) == 0);
  // h^1(O(-3)) on the projective line
  CHECK(v(n, Extension::w, 1, 0) == 2);
  CHECK(v(n, Extension::w, 1, 1) == 0);
  CHECK(all_pass(check_rr_w(n)));

  for (int g = 0; g <= 4; ++g) {
    auto h = full_table(smooth(g), trivial_bundle());
    for (Extension e : {Extension::w, Extension::s}) {
      CHECK(v(h, e, 0, 0) == 1);
      CHECK(v(h, e, 0, 1) == g);
      CHECK(v(h, e, 1, 0) == g);
      CHECK(v(h, e, 1, 1) == 1);
    }
    CHECK(all_pass(check_rr_w(h)));
  }

  auto g2 = full_table(smooth(2), bundle({{"c1", 5}}));
  CHECK(v(g2, Extension::s, 0, 0) == 4);
  CHECK(v(g2, Extension::s, 0, 1) == 0);
}

TEST_CASE("identity reports carry both sides") {
  auto t = full_table(curve(kCuspidalCubic), trivial_bundle());
  auto w = check_rr_w(t);
  REQUIRE(w.size() == 2);
  CHECK(w[0].lhs == "h_w^{0,0} - h_w^{0,1} = 2 - 0 = 2");
  CHECK(w[0].rhs == "m - g + deg L + deg(Z-|Z|) = 1 - 0 + 0 + 1 = 2");

  // a corrupted table fails visibly
  t.at(Extension::w, 0, 0) = DimValue::exact(3);
  CHECK(!check_rr_w(t)[0].pass);
}

TEST_CASE("interval entries in the special range") {
  auto c = smooth(3);
  auto t = full_table(c, bundle({{"c1", 2}}));
  CHECK(t.has_class_dependence());
  CHECK(!t.at(Extension::w, 0, 0).is_exact());
  CHECK(t.at(Extension::w, 0, 0).lo == 0);
  CHECK(t.at(Extension::w, 0, 0).hi == 2);
  CHECK(all_pass(check_rr_w(t)));
  CHECK(all_pass(check_rr_s(t)));
  CHECK(all_pass(check_serre_duality(c, bundle({{"c1", 2}}))));
  auto gen = full_table(c, bundle({{"c1", 2}}), Mode::generic);
  CHECK(gen.at(Extension::w, 0, 0).is_exact());
  CHECK(gen.at(Extension::w, 0, 0).class_dependent);
}

TEST_CASE("random specs satisfy every identity") {
  std::mt19937 rng(7);
  auto uni = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };
  for (int trial = 0; trial < 300; ++trial) {
    CurveSpec s;
    const int m = uni(1, 3);
    for (int i = 0; i < m; ++i) s.components.push_back({"c" + std::to_string(i), uni(0, 5)});
    const int k = uni(0, 4);
    for (int i = 0; i < k; ++i) {
      SingularPointSpec p;
      p.id = "p" + std::to_string(i);
      const int nb = uni(1, 3);
      for (int b = 0; b < nb; ++b) p.branches.push_back({"c" + std::to_string(uni(0, m - 1)), uni(nb == 1 ? 2 : 1, 5)});
      s.singular_points.push_back(p);
    }
    auto c = validate(s);
    LineBundleSpec l;
    for (int i = 0; i < m; ++i) l.degrees["c" + std::to_string(i)] = uni(-10, 10);
    for (Mode mode : {Mode::exact, Mode::generic}) {
      auto t = full_table(c, l, mode);
      CHECK(all_pass(check_rr_w(t)));
      CHECK(all_pass(check_rr_s(t)));
      CHECK(all_pass(check_serre_duality(c, l, mode)));

      // raising the degree on one component shifts both Euler characteristics by one
      LineBundleSpec l2 = l;
      l2.degrees["c0"] += 1;
      auto t2 = full_table(c, l2, mode);
      CHECK((t2.at(Extension::w, 0, 0).lo - t2.at(Extension::w, 0, 1).lo) -
                (t.at(Extension::w, 0, 0).lo - t.at(Extension::w, 0, 1).lo) ==
            1);
      CHECK((t2.at(Extension::w, 1, 1).lo - t2.at(Extension::w, 1, 0).lo) -
                (t.at(Extension::w, 1, 1).lo - t.at(Extension::w, 1, 0).lo) ==
            -1);

      // dualizing twice is the identity
      auto back = full_table(c, dual(dual(l)), mode);
      for (int p = 0; p < 2; ++p) {
        for (int q = 0; q < 2; ++q) {
          CHECK(back.at(Extension::w, p, q) == t.at(Extension::w, p, q));
          CHECK(back.at(Extension::s, p, q) == t.at(Extension::s, p, q));
        }
      }
    }
    if (c.deg_z_minus_absz == 0) {
      auto t = full_table(c, l);
      for (int p = 0; p < 2; ++p) {
        for (int q = 0; q < 2; ++q) {
          const DimValue& a = t.at(Extension::w, p, q);
          const DimValue& b = t.at(Extension::s, p, q);
          CHECK(a.lo == b.lo);
          CHECK(a.hi == b.hi);
        }
      }
    }
  }
}

TEST_CASE("vanishing threshold") {
  auto cusp = curve(kCuspidalCubic);
  CHECK(vanishing_threshold(cusp) == -3);
  for (int d = -2; d <= 3; ++d) CHECK(v(full_table(cusp, bundle({{"c1", d}})), Extension::w, 0, 1) == 0);
  CHECK(vanishing_threshold(smooth(1)) == 0);
  auto two_cusps = curve(R"({"components":[{"id":"c","genus":2}],
    "singular_points":[{"id":"a","branches":[{"component":"c","s":2}]},{"id":"b","branches":[{"component":"c","s":2}]}]})");
  CHECK(vanishing_threshold(two_cusps) == 0);
  for (int d = 1; d <= 5; ++d) CHECK(v(full_table(two_cusps, bundle({{"c", d}})), Extension::w, 0, 1) == 0);
  // at the threshold itself the group can be nonzero
  CHECK(full_table(two_cusps, bundle({{"c", 0}})).at(Extension::w, 0, 1).hi > 0);

  auto two = curve(R"({"components":[{"id":"a","genus":1},{"id":"b","genus":0}]})");
  CHECK_THROWS_AS(vanishing_threshold(two), InputError);
  auto per = vanishing_thresholds(two);
  CHECK(per["a"] == 0);
  CHECK(per["b"] == -2);
}

TEST_CASE("ampleness bound") {
  CHECK(ample_degree_bound(curve(kCuspidalCubic)) == 3);
  CHECK(ample_degree_bound(smooth(4)) == 8);
  auto e6 = curve(R"({"components":[{"id":"c","genus":1}],
    "singular_points":[{"id":"p","branches":[{"component":"c","s":3}]}]})");
  CHECK_THROWS_AS(ample_degree_bound(e6), InputError);
  CHECK(ample_degree_bound(e6, {{"p", 6}}) == 9);
  CHECK_THROWS_AS(ample_degree_bound(curve(kNodalCubic), {{"p1", 2}}), InputError);
}

TEST_CASE("local table") {
  auto find = [](const std::vector<LocalGroup>& t, const std::string& label) {
    for (const auto& g : t) {
      if (g.label == label) return g;
    }
    FAIL("missing group " << label);
    return LocalGroup{};
  };
  CHECK(local_table(1).size() == 16);
  for (const auto& g : local_table(1)) {
    if (!g.zero) CHECK(g.k_min == 0);
  }
  auto t2 = local_table(2);
  CHECK(find(t2, "H_w^{0,0}").k_min == -1);
  CHECK(find(t2, "H_{s,w}^{1,0}").k_min == 1);
  CHECK(find(t2, "H_w^{0,0}").basis() == "{t^k : k >= -1}");
  CHECK(find(t2, "H_{s,w}^{1,0}").basis() == "{t^k dt : k >= 1}");
  auto t3 = local_table(3);
  CHECK(find(t3, "H_w^{1,1}").zero);
  CHECK(find(t3, "H_s^{1,1}").k_min == -2);
  CHECK(find(t3, "H_s^{0,0}").zero);
  for (int s = 1; s <= 6; ++s) {
    auto t = local_table(s);
    CHECK(find(t, "H_{s,w}^{1,0}").k_min - find(t, "H_w^{0,0}").k_min == 2 * (s - 1));
    CHECK(find(t, "H_w^{1,0}").k_min == 0);
    CHECK(find(t, "H_{w,s}^{0,1}").k_min == s - 1);
  }
  CHECK_THROWS_AS(local_table(0), InputError);
}
