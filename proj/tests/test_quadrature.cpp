#include <cmath>

#include "doctest.h"
#include "quadrature.hpp"

using namespace rh;

TEST_CASE("halfline: power tail beyond a jump") {
  RadialIntegrand f{[](double t) { return t > 1.0 ? std::pow(t, -2.5) : 0.0; }, kInf, -2.5, {1.0}};
  QuadratureResult r = integrate_halfline(f, 1e-10);
  CHECK(r.status == QuadStatus::Ok);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("halfline: exponential") {
  RadialIntegrand f{[](double t) { return std::exp(-t); }, 0.0, -kInf, {}};
  QuadratureResult r = integrate_halfline(f, 1e-10);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("halfline: harmonic divergence at zero") {
  RadialIntegrand declared{[](double t) { return t < 1.0 ? 1.0 / t : 0.0; }, -1.0, -kInf, {1.0}};
  CHECK(integrate_halfline(declared, 1e-10).status == QuadStatus::Divergent);
  // mis-declared exponent: the panel gate still catches the non-decay
  RadialIntegrand hidden{[](double t) { return t < 1.0 ? 1.0 / t : 0.0; }, 0.0, -kInf, {1.0}};
  CHECK(integrate_halfline(hidden, 1e-10).status == QuadStatus::Divergent);
}

TEST_CASE("halfline: tail bound dominates the truncated mass on power laws") {
  for (double e : {-1.3, -2.0, -3.5}) {
    RadialIntegrand f{[e](double t) { return t > 1.0 ? std::pow(t, e) : 0.0; }, kInf, e, {1.0}};
    QuadratureResult r = integrate_halfline(f, 1e-9);
    const double exact = -1.0 / (e + 1.0);
    CHECK(std::fabs(r.value - exact) <= r.tail_bound + r.abs_error_estimate + 1e-12 * exact);
  }
}

TEST_CASE("sphere integrals") {
  auto one = [](const Vec &) { return 1.0; };
  CHECK(integrate_sphere(2, one, 1e-12).value == doctest::Approx(2 * kPi).epsilon(1e-13));
  CHECK(integrate_sphere(3, one, 1e-12).value == doctest::Approx(4 * kPi).epsilon(1e-13));
  CHECK(integrate_sphere(1, [](const Vec &x) { return x[0]; }, 1e-12).value == 0.0);
  QuadratureResult c = integrate_sphere(2, [](const Vec &x) { return 2.0 + x[0]; }, 1e-12);
  CHECK(std::fabs(c.value - 4 * kPi) < 1e-12);
  CHECK(c.panels <= 64);
  CHECK(integrate_sphere(3, [](const Vec &x) { return x[2] * x[2]; }, 1e-12).value ==
        doctest::Approx(4 * kPi / 3).epsilon(1e-12));
}

TEST_CASE("region integrals") {
  auto one = [](const Vec &) { return 1.0; };
  CHECK(integrate_region(1, one, Region::ball(2.0), 1e-10).value == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(integrate_region(2, [](const Vec &x) { return norm(x, 2); }, Region::ball(1.0), 1e-10).value ==
        doctest::Approx(2 * kPi / 3).epsilon(1e-10));
  CHECK(integrate_region(1, one, Region::annulus(0), 1e-10).value == doctest::Approx(1.0).epsilon(1e-12));
}
