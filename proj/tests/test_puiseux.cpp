#include "doctest.h"

#include <numeric>

#include "curvel2/puiseux.hpp"

using namespace curvel2;

namespace {

BivariatePoly P(const std::string& s) { return BivariatePoly::parse(s); }

mpq_class c(const PuiseuxBranch& b, int k) { return b.series.coeff(k).to_rational(); }

}  // namespace

TEST_CASE("parser") {
  auto f = P("w^2 - z^3");
  CHECK(f.coeff(0, 2) == 1);
  CHECK(f.coeff(3, 0) == -1);
  CHECK(P("1/2*z*w - 3/4").coeff(1, 1) == mpq_class(1, 2));
  CHECK(P("(w - z)^2").coeff(1, 1) == -2);
  CHECK_THROWS_AS(P("w^2 - x"), InputError);
  CHECK_THROWS_AS(P("w - w"), InputError);
  CHECK_THROWS_AS(P("w^2 +"), InputError);
}

TEST_CASE("squarefree check") {
  CHECK(P("w^2 - z^3").is_squarefree());
  CHECK_FALSE(P("(w - z)^2").is_squarefree());
  CHECK_FALSE(P("z^2*w").is_squarefree());
  CHECK(P("z*w").is_squarefree());
}

TEST_CASE("newton polygon") {
  auto cusp = newton_polygon(P("w^2 - z^3"));
  REQUIRE(cusp.edges.size() == 1);
  CHECK(cusp.edges[0].slope == mpq_class(3, 2));
  auto line = newton_polygon(P("w - z"));
  REQUIRE(line.edges.size() == 1);
  CHECK(line.edges[0].slope == 1);
  auto node = newton_polygon(P("w^2 - z^2 - z^3"));
  REQUIRE(node.edges.size() == 1);
  CHECK(node.edges[0].slope == 1);
  CHECK(node.edges[0].lattice_length == 2);
  auto two = newton_polygon(P("(w - z)*(w - z^2)"));
  REQUIRE(two.edges.size() == 2);
  CHECK(two.edges[0].slope < two.edges[1].slope);
  CHECK_THROWS_AS(newton_polygon(P("w - z + 1")), InputError);
}

TEST_CASE("expansions of the spec examples") {
  auto cusp = puiseux_expand(P("w^2 - z^3"), 12);
  REQUIRE(cusp.size() == 1);
  CHECK(cusp[0].s == 2);
  CHECK(cusp[0].coefficients().size() == 1);
  CHECK(c(cusp[0], 3) == 1);

  auto line = puiseux_expand(P("w - z"), 12);
  REQUIRE(line.size() == 1);
  CHECK(line[0].s == 1);
  CHECK(c(line[0], 1) == 1);

  // w = +-(t + t^2/2 - t^3/8 + t^4/16 ...), binomial series of sqrt(1+t) times t
  auto node = puiseux_expand(P("w^2 - z^2*(1 + z)"), 6);
  REQUIRE(node.size() == 2);
  mpq_class binom[] = {1, mpq_class(1, 2), mpq_class(-1, 8), mpq_class(1, 16), mpq_class(-5, 128)};
  for (const auto& b : node) {
    CHECK(b.s == 1);
    const mpq_class sign = c(b, 1);
    CHECK(abs(sign) == 1);
    for (int k = 1; k <= 5; ++k) CHECK(c(b, k) == sign * binom[k - 1]);
  }
}

TEST_CASE("truncation below the ramification index") {
  CHECK_THROWS_AS(puiseux_expand(P("w^5 - z^7"), 3), TruncationError);
}

TEST_CASE("vertical component rejected") {
  CHECK_THROWS_AS(puiseux_expand(P("z*(w - z)"), 8), InputError);
  // tangent alignment shears it away
  auto b = puiseux_expand(P("z*(w - z)"), 8, true);
  CHECK(b.size() == 2);
}

TEST_CASE("multiplicities") {
  CHECK(multiplicity_initial_form(P("w^2 - z^3")) == 2);
  CHECK(multiplicity_initial_form(P("w^2 - z^2")) == 2);
  CHECK(multiplicity_initial_form(P("w^3 - z^4")) == 3);
  CHECK(multiplicity_branches(puiseux_expand(P("w^2 - z^3"), 12)) == 2);
  CHECK(multiplicity_branches(puiseux_expand(P("w^2 - z^2 - z^3"), 12)) == 2);
  CHECK(multiplicity_branches(puiseux_expand(P("w^3 - z^4"), 12)) == 3);
  CHECK(mult_prime(puiseux_expand(P("w^2 - z^3"), 12)) == 1);
  CHECK(mult_prime(puiseux_expand(P("w^2 - z^2 - z^3"), 12)) == 0);
  CHECK(mult_prime(puiseux_expand(P("w^3 - z^4"), 12)) == 2);
  // vertical tangent: w^3 = z^2 has multiplicity 2
  CHECK(multiplicity_branches(puiseux_expand(P("w^3 - z^2"), 12)) == 2);
  CHECK_THROWS_AS(multiplicity_branches({}), InputError);
}

TEST_CASE("intersection multiplicity") {
  auto node = puiseux_expand(P("w^2 - z^2 - z^3"), 12);
  REQUIRE(node.size() == 2);
  CHECK(intersection_multiplicity(node[0], node[1]) == 1);

  auto cl = puiseux_expand(P("w*(w^2 - z^3)"), 12);
  REQUIRE(cl.size() == 2);
  CHECK(intersection_multiplicity(cl[0], cl[1]) == 3);
  CHECK(intersection_multiplicity(cl[1], cl[0]) == 3);

  auto tl = puiseux_expand(P("(w - z)*(w - z - z^2)"), 12);
  REQUIRE(tl.size() == 2);
  CHECK(intersection_multiplicity(tl[0], tl[1]) == 2);

  auto same = puiseux_expand(P("w - z"), 6);
  CHECK_THROWS_AS(intersection_multiplicity(same[0], same[0]), TruncationError);
}

TEST_CASE("delta and conductor") {
  CHECK(delta_invariant(puiseux_expand(P("w^2 - z^3"), 12)) == 1);
  CHECK(delta_invariant(puiseux_expand(P("w^2 - z^2 - z^3"), 12)) == 1);
  CHECK(delta_invariant(puiseux_expand(P("w^2 - z^4"), 12)) == 2);
  CHECK(conductor_exponent(puiseux_expand(P("w^2 - z^3"), 12)[0]) == 2);
  CHECK(conductor_exponent(puiseux_expand(P("w - z^2"), 12)[0]) == 0);
  CHECK(conductor_exponent(puiseux_expand(P("w^3 - z^4"), 12)[0]) == 6);
  CHECK_THROWS_AS(conductor_exponent(puiseux_expand(P("w^2 + z^2"), 12)[0]), InputError);
}

// Milnor number oracle for w^a - z^b: mu = (a-1)(b-1), r = gcd(a, b) branches,
// 2 delta = mu + r - 1.
TEST_CASE("Brieskorn-Pham delta oracle") {
  for (int a = 2; a <= 4; ++a) {
    for (int b = 2; b <= 7; ++b) {
      const std::string eq = "w^" + std::to_string(a) + " - z^" + std::to_string(b);
      CAPTURE(eq);
      const int r = std::gcd(a, b);
      const int expected = ((a - 1) * (b - 1) + r - 1) / 2;
      auto inv = singularity_invariants(P(eq));
      CHECK(inv.delta == expected);
      CHECK(inv.branch_count == r);
      CHECK(inv.multiplicity == std::min(a, b));
    }
  }
}

TEST_CASE("higher singularities") {
  // two-Puiseux-pair branch: delta 8, multiplicity 4
  auto inv = singularity_invariants(P("(w^2 - z^3)^2 - 4*z^5*w - z^7"));
  CHECK(inv.branch_count == 1);
  CHECK(inv.multiplicity == 4);
  CHECK(inv.delta == 8);
  CHECK(inv.conductor == 16);

  // conjugate branches over Q(sqrt 2) and pairwise intersections
  auto two = singularity_invariants(P("(w^2 - z^2 - z^3)*(w^2 - 2*z^3)"));
  CHECK(two.branch_count == 3);
  CHECK(two.multiplicity == 4);
  // delta = 1 + 1 + I(node, cusp) = 2 + 2*2 = 6
  CHECK(two.delta == 6);

  auto quad = singularity_invariants(P("w^4 - z^6"));
  CHECK(quad.branch_count == 2);
  CHECK(quad.delta == 8);
}

TEST_CASE("pairwise and polar cross terms agree") {
  for (const char* eq : {"w*(w - z)*(w + z)", "w*(w^2 - z^3)", "(w^2 - z^3)*(w - z)", "w^2 - z^6", "(w - z^2)*(w + z^2)*(w - 2*z^3)"}) {
    CAPTURE(eq);
    auto br = puiseux_expand(P(eq), 24);
    long pair = 0;
    for (std::size_t i = 0; i < br.size(); ++i) {
      for (std::size_t j = i + 1; j < br.size(); ++j) pair += intersection_multiplicity(br[i], br[j]);
    }
    long twice = 0;
    for (const auto& b : br) {
      twice += b.count * (order_along(b.equation->derivative_w(), b) - 2 * branch_delta(b) - b.s + 1);
    }
    CHECK(twice == 2 * pair);
  }
}

TEST_CASE("tangent-aligned output") {
  for (const char* eq : {"w^2 - z^2 - z^3", "w^3 - z^2", "(w - z)*(w^2 - z^3)", "w^2 - 2*z^3 + z*w^3", "w*(w - z)*(w + z)"}) {
    CAPTURE(eq);
    auto br = puiseux_expand(P(eq), 16, true);
    int total = 0;
    for (const auto& b : br) {
      CHECK(b.tangent_aligned);
      CHECK(b.order() >= b.s + 1);
      CHECK(b.substitution_residual().is_zero_to_precision());
      total += static_cast<int>(b.count) * b.s;
    }
    CHECK(total == multiplicity_initial_form(P(eq)));
  }
}

TEST_CASE("primitive parametrizations") {
  for (const char* eq : {"w^2 - z^3", "w^3 - z^4", "(w^2 - z^3)^2 - 4*z^5*w - z^7", "w^4 - z^6", "w^3 - z^5"}) {
    CAPTURE(eq);
    for (const auto& b : puiseux_expand(P(eq), 32)) {
      int g = b.s;
      for (const auto& [k, v] : b.coefficients()) g = std::gcd(g, k);
      CHECK(g == 1);
    }
  }
}
