#include <cmath>
#include <cstdio>
#include <numbers>

#include "doctest.h"

#include "curvel2/errors.hpp"
#include "curvel2/local_analysis.hpp"

using namespace curvel2;

namespace {

constexpr double kPi = std::numbers::pi;

// closed form of 2 pi * int_r^1 rho^(2k + 2 alpha + 1) d rho
double annulus_exact(int k, double alpha, double r) {
  const double g = 2 * k + 2 * alpha + 2;
  if (g == 0) return 2 * kPi * std::log(1 / r);
  return 2 * kPi * (1 - std::pow(r, g)) / g;
}

std::complex<double> bump(std::complex<double> t) {
  const double a = 1 - 4 * std::norm(t);
  return a > 0 ? a * a * a * a : 0.0;
}

std::complex<double> bump_dbar(std::complex<double> t) {
  const double a = 1 - 4 * std::norm(t);
  return a > 0 ? -16.0 * t * a * a * a : 0.0;
}

std::complex<double> conj_bump(std::complex<double> t) { return std::conj(t) * bump(t); }

std::complex<double> conj_bump_dbar(std::complex<double> t) {
  const double a = 1 - 4 * std::norm(t);
  return a > 0 ? a * a * a * a - 16 * std::norm(t) * a * a * a : 0.0;
}

double inversion_error(int n, std::complex<double> (*u)(std::complex<double>),
                       std::complex<double> (*f)(std::complex<double>)) {
  auto ug = GridFunction::sample(n, u, 0.5);
  auto fg = GridFunction::sample(n, f, 0.5);
  return l2_distance(cauchy_transform(fg), ug) / l2_norm(ug);
}

}  // namespace

TEST_CASE("pullback exponents and the analytic rule") {
  for (int s = 1; s <= 6; ++s) {
    CHECK(pullback_weight_exponent(0, 0, s) == s - 1);
    CHECK(pullback_weight_exponent(1, 0, s) == 0);
    CHECK(pullback_weight_exponent(0, 1, s) == 0);
    CHECK(pullback_weight_exponent(1, 1, s) == 1 - s);
    CHECK(pullback_weight_exponent(0, 0, s) + pullback_weight_exponent(1, 1, s) == 0);
    CHECK(monomial_in_L2(1 - s, s - 1));
    CHECK(!monomial_in_L2(-s, s - 1));
  }
  CHECK(monomial_in_L2(0, 0));
  CHECK(monomial_in_L2(-1, 1));
  CHECK(!monomial_in_L2(-1, 0));
  CHECK_THROWS_AS(pullback_weight_exponent(2, 0, 1), InputError);
}

TEST_CASE("quadrature matches the radial antiderivative") {
  for (int k = -3; k <= 3; ++k) {
    for (double alpha : {0.0, 1.0, 2.5}) {
      auto disk = default_disk(alpha);
      auto r = quadrature_membership(k, alpha, disk);
      for (std::size_t i = 0; i < disk.radii.size(); ++i) {
        CHECK(r.integrals[i] == doctest::Approx(annulus_exact(k, alpha, disk.radii[i])).epsilon(1e-9));
      }
    }
  }
  auto flat = quadrature_membership(0, 0, default_disk(0));
  CHECK(flat.verdict == Membership::converged);
  CHECK(flat.integrals.back() == doctest::Approx(kPi).epsilon(1e-12));
  auto pole = quadrature_membership(-1, 0, default_disk(0));
  CHECK(pole.verdict == Membership::marginal_divergent);
  CHECK(pole.integrals.back() == doctest::Approx(2 * kPi * std::log(1e8)));
  CHECK(quadrature_membership(-2, 1, default_disk(1)).verdict == Membership::marginal_divergent);
  CHECK(quadrature_membership(-2, 0, default_disk(0)).verdict == Membership::diverged);
}

TEST_CASE("membership thresholds over the exponent grid") {
  int agree = 0;
  for (int s = 1; s <= 6; ++s) {
    const double alpha = s - 1;
    for (int k = -6; k <= 6; ++k) {
      auto par = quadrature_membership(k, alpha, default_disk(alpha), Exec::parallel);
      auto ser = quadrature_membership(k, alpha, default_disk(alpha), Exec::serial);
      CHECK(par.integrals == ser.integrals);
      const bool in = par.verdict == Membership::converged;
      const bool out = par.verdict == Membership::diverged || par.verdict == Membership::marginal_divergent;
      CHECK(in != out);
      if (in == monomial_in_L2(k, alpha)) ++agree;
      if (k + alpha == -1) CHECK(par.verdict == Membership::marginal_divergent);
    }
  }
  CHECK(agree == 78);
  // exponents gained by the weak extension: k in [1-s, -1]
  for (int s = 2; s <= 6; ++s) {
    int gained = 0;
    for (int k = -10; k < 0; ++k) gained += monomial_in_L2(k, s - 1) && !monomial_in_L2(k, 0);
    CHECK(gained == s - 1);
  }
}

TEST_CASE("cauchy transform inverts dbar") {
  auto zero = GridFunction::sample(32, [](std::complex<double>) { return 0.0; });
  auto u0 = cauchy_transform(zero);
  CHECK(l2_norm(u0) == 0);
  CHECK(verify_dbar_solution(u0, zero).absolute);
  CHECK(verify_dbar_solution(u0, zero).value == 0);

  // the FFT path agrees with the direct sum
  auto f32 = GridFunction::sample(32, bump_dbar, 0.5);
  auto fft = cauchy_transform(f32);
  auto direct = cauchy_transform_direct(f32, Exec::serial);
  auto direct_par = cauchy_transform_direct(f32, Exec::parallel);
  CHECK(l2_distance(fft, direct) < 1e-12 * l2_norm(direct));
  CHECK(direct.values == direct_par.values);

  const double e128 = inversion_error(128, bump, bump_dbar);
  const double e256 = inversion_error(256, bump, bump_dbar);
  CHECK(e128 <= 1e-2);
  CHECK(e256 < e128);
  const double c128 = inversion_error(128, conj_bump, conj_bump_dbar);
  const double c256 = inversion_error(256, conj_bump, conj_bump_dbar);
  CHECK(c128 <= 1e-2);
  CHECK(c256 < c128);

  auto f128 = GridFunction::sample(128, bump_dbar, 0.5);
  CHECK(verify_dbar_solution(cauchy_transform(f128), f128).value <= 1e-2);

  // smoothed indicator of the disk of radius 1/4
  auto smooth_disk = [](std::complex<double> t) -> std::complex<double> {
    return 0.5 * (1 - std::tanh((std::abs(t) - 0.25) / 0.03));
  };
  auto fd = GridFunction::sample(128, smooth_disk, 0.5);
  for (auto& v : fd.values) {
    if (std::abs(v) < 1e-14) v = 0;
  }
  CHECK(verify_dbar_solution(cauchy_transform(fd), fd).value <= 5e-2);
}

TEST_CASE("centred differences converge at second order") {
  auto residual = [](int n) {
    auto u = GridFunction::sample(n, conj_bump, 0.5);
    auto f = GridFunction::sample(n, conj_bump_dbar, 0.5);
    return verify_dbar_solution(u, f).value;
  };
  const double ratio = residual(64) / residual(128);
  CHECK(ratio > 3.0);
  CHECK(ratio < 5.0);
}

TEST_CASE("cauchy transform rejects support near the boundary") {
  auto f = GridFunction::sample(64, [](std::complex<double>) { return 1.0; });
  CHECK_THROWS_AS(cauchy_transform(f), InputError);
  CHECK_THROWS_AS(cauchy_transform_direct(f), InputError);
}

TEST_CASE("cut-off norms") {
  double prev = 1e9;
  for (int k = 1; k <= 6; ++k) {
    auto c = cutoff_norm(k);
    CHECK(c.exact == doctest::Approx(2 * kPi * std::exp(-k)));
    CHECK(c.relative_difference < 1e-2);
    CHECK(c.quadrature < prev);
    prev = c.quadrature;
    CHECK(cutoff_norm(k, 1e-2, Exec::serial).quadrature == c.quadrature);
  }
  CHECK(cutoff_norm(1).exact == doctest::Approx(2.311455).epsilon(1e-6));
  CHECK(cutoff_norm(2).exact == doctest::Approx(0.850337).epsilon(1e-6));
  CHECK_THROWS_AS(cutoff_norm(0), InputError);
}

TEST_CASE("grid files round trip") {
  auto f = GridFunction::sample(16, bump_dbar, 0.5);
  const std::string path = "test_local_grid.bin";
  write_grid(path, f);
  auto g = read_grid(path);
  CHECK(g.n == 16);
  CHECK(g.support_radius == 0.5);
  CHECK(g.values == f.values);
  {
    std::FILE* fp = std::fopen(path.c_str(), "ab");
    std::fputc(0, fp);
    std::fclose(fp);
  }
  CHECK_THROWS_AS(read_grid(path), InputError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_grid("does_not_exist.bin"), InputError);
}
