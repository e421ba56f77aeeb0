#include "doctest.h"

#include "curvel2/errors.hpp"
#include "curvel2/factor.hpp"
#include "curvel2/number_field.hpp"
#include "curvel2/upoly.hpp"

using namespace curvel2;

namespace {

UPoly q(std::vector<long> c) {
  std::vector<mpq_class> v(c.begin(), c.end());
  return UPoly::from_rationals(v);
}

UPoly product(const std::vector<PolyFactor>& fs) {
  UPoly r = UPoly::constant(fs.empty() ? NumberField::rationals() : fs[0].poly.field(), AlgebraicNumber(1));
  for (const auto& f : fs) {
    for (int i = 0; i < f.multiplicity; ++i) r *= f.poly;
  }
  return r;
}

}  // namespace

TEST_CASE("rational field arithmetic") {
  AlgebraicNumber a(mpq_class(1, 2));
  AlgebraicNumber b(3);
  CHECK((a * b).to_rational() == mpq_class(3, 2));
  CHECK((a / b).to_rational() == mpq_class(1, 6));
  CHECK(a.inverse().to_rational() == 2);
}

TEST_CASE("quadratic extension") {
  auto k = NumberField::make_extension(NumberField::rationals(), "a1", {AlgebraicNumber(-2), AlgebraicNumber(0), AlgebraicNumber(1)});
  AlgebraicNumber r2 = k->generator(k);
  CHECK((r2 * r2).to_rational() == 2);
  AlgebraicNumber x = r2 + AlgebraicNumber(1);
  CHECK((x * x.inverse()).is_one());
  // N(1 + sqrt2) = 1 - 2 = -1
  CHECK(x.norm_to_parent().to_rational() == -1);
}

TEST_CASE("two-level tower") {
  auto k1 = adjoin_root(NumberField::rationals(), q({-2, 0, 1}), "a1");
  auto k2 = adjoin_root(k1, q({1, 0, 1}), "a2");
  AlgebraicNumber s = k1->generator(k1).lifted(k2);
  AlgebraicNumber i = k2->generator(k2);
  AlgebraicNumber z = (s + s * i) / AlgebraicNumber(2);  // primitive 8th root of unity
  AlgebraicNumber z4 = z.pow(4);
  CHECK(z4.is_rational());
  CHECK(z4.to_rational() == -1);
  CHECK(k2->absolute_degree() == 4);
}

TEST_CASE("resultant and interpolation") {
  // Res(x^2 - 2, x - 1) = (1)^2 - 2 = -1 up to sign convention (-1)^{2*1}
  CHECK(UPoly::resultant(q({-2, 0, 1}), q({-1, 1})).to_rational() == -1);
  std::vector<AlgebraicNumber> nodes = {AlgebraicNumber(0), AlgebraicNumber(1), AlgebraicNumber(2)};
  std::vector<AlgebraicNumber> vals = {AlgebraicNumber(1), AlgebraicNumber(2), AlgebraicNumber(5)};
  CHECK(interpolate(NumberField::rationals(), nodes, vals) == q({1, 0, 1}));
}

TEST_CASE("factorization over Q") {
  SUBCASE("x^4 + 1 irreducible") {
    auto f = factor(q({1, 0, 0, 0, 1}));
    REQUIRE(f.size() == 1);
    CHECK(f[0].poly.degree() == 4);
  }
  SUBCASE("x^6 - 1") {
    auto f = factor(q({-1, 0, 0, 0, 0, 0, 1}));
    CHECK(f.size() == 4);
    CHECK(product(f) == q({-1, 0, 0, 0, 0, 0, 1}));
  }
  SUBCASE("repeated factors") {
    UPoly p = q({-1, 1}) * q({-1, 1}) * q({2, 0, 1});
    auto f = factor(p);
    REQUIRE(f.size() == 2);
    CHECK(f[0].multiplicity == 2);
    CHECK(f[1].poly == q({2, 0, 1}));
  }
  SUBCASE("Swinnerton-Dyer style x^4 - 10x^2 + 1") {
    CHECK(factor(q({1, 0, -10, 0, 1})).size() == 1);
  }
  SUBCASE("high degree product") {
    UPoly p = q({3, 1, 0, 1}) * q({-5, 0, 2, 0, 1}) * q({7, -1}) * q({1, 1, 1, 1, 1});
    auto f = factor(p);
    CHECK(f.size() == 4);
    CHECK(product(f) == p.monic());
  }
}

TEST_CASE("factorization over towers") {
  auto k = adjoin_root(NumberField::rationals(), q({1, 1, 1}), "a1");  // primitive cube root of unity
  auto f = factor(q({-1, 0, 0, 1}).lifted(k));
  CHECK(f.size() == 3);
  auto s2 = adjoin_root(NumberField::rationals(), q({-2, 0, 1}), "a1");
  auto g = factor(q({1, 0, 0, 0, 1}).lifted(s2));
  REQUIRE(g.size() == 2);
  CHECK(g[0].poly.degree() == 2);
  CHECK(product(g) == q({1, 0, 0, 0, 1}).lifted(s2));
  CHECK(factor(q({-3, 0, 1}).lifted(s2)).size() == 1);
}

TEST_CASE("adjoin_root rejects reducible minimal polynomials") {
  CHECK_THROWS_AS(adjoin_root(NumberField::rationals(), q({-4, 0, 1}), "a1"), MathError);
}
