#include <cmath>

#include "bounds.hpp"
#include "doctest.h"

using namespace rh;

TEST_CASE("C1") {
  CHECK(c1(kernel_hardy(2), 2, 0, -0.25).value == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  BoundConstant d = c1(kernel_adjoint_hardy(), 1, 0, 0);
  CHECK(d.divergent);
  CHECK(std::isinf(d.value));
  CHECK(c1(kernel_t_exp(), 1, 0, 0).value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(c1(kernel_hardy(1), 1, -1.0, 0), Error);
}

TEST_CASE("C2 and its proof variant") {
  CHECK(c2(kernel_hardy(1), 1, 0, 2).value == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(c2(kernel_zero(), 1, 0, 2).value == 0.0);
  BoundConstant a = c2(kernel_hardy(1), 1, 0, 2, 0.25);
  CHECK(a.id == "c2_proof_alpha");
  CHECK(a.value == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(std::fabs(c2(kernel_gaussian(), 2, 0.5, 3, 0.0).value - c2(kernel_gaussian(), 2, 0.5, 3).value) < 1e-10);
}

TEST_CASE("C3") {
  CHECK(c3(kernel_hardy(1), 1, 0, 1, 0.5, 0).value == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(c3(kernel_zero(), 1, 0, 1, 0.5, 0).value == 0.0);
  // integrand chi_(0,1)(t) t^{1/2}
  CHECK(c3(kernel_adjoint_hardy(), 1, 0, 1, 0.5, 1).value == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("C4") {
  BoundConstant e = c4(kernel_exp_cutoff(), 2, 0.5, 2, 0.3, 0.5);
  CHECK(!e.divergent);
  CHECK(std::isfinite(e.value));
  CHECK(c4(kernel_zero(), 1, 0, 2, 0.5, 0.5).value == 0.0);
  const double v = c4(kernel_hardy(1), 1, 0, 2, 0.5, 0.5).value;
  CHECK(v >= 4.0 / 3.0);
  CHECK(v <= 4.0 / 3.0 * std::sqrt(2.0));
  CHECK_THROWS_AS(c4(kernel_hardy(1), 1, 0, 2, 0.5, 0.5, 0.7), Error);
  CHECK_NOTHROW(c4(kernel_hardy(1), 1, 0, 2, 0.5, 0.5, 1.5));
  CHECK_THROWS_AS(c4(kernel_hardy(1), 1, 0, 2, -0.1, 0.5), Error);
}

TEST_CASE("C5 variants") {
  CHECK(c5(kernel_zero(), 1, 0, 1, -0.25, 0.25, C5Variant::Herz).value == 0.0);
  CHECK(std::isfinite(c5(kernel_exp_cutoff(), 2, 1, 2, 0.3, 0.5, C5Variant::MorreyHerz, 0.7).value));
  const double v = c5(kernel_hardy(1), 1, 0, 1, -0.25, 0.25, C5Variant::Herz).value;
  CHECK(v >= 4.0);
  CHECK(v <= 4.0 * std::pow(2.0, 0.25));
  const double h = c5(kernel_gaussian(), 2, 0.5, 2, 0.2, 0.5, C5Variant::Herz).value;
  const double m = c5(kernel_gaussian(), 2, 0.5, 2, 0.2, 0.5, C5Variant::MorreyHerz, 0.0).value;
  CHECK(std::fabs(h - m) < 1e-12 * h);
  CHECK_THROWS_AS(c5(kernel_hardy(1), 1, 0, 1, -0.25, 0.25, C5Variant::Herz, 0, 0.0), Error);
  CHECK_NOTHROW(c5(kernel_hardy(1), 1, 0, 1, -0.25, 0.25, C5Variant::Herz, 0, -0.5));
}

TEST_CASE("power counting matches the finite/divergent verdicts") {
  // hardy(n): integrand t^{-n+e} on (1, inf) converges iff -n+e < -1
  for (int n = 1; n <= 3; ++n)
    for (double lambda : {-0.9, -0.5, -0.1, 0.0, 0.4}) {
      const double e = -1.0 - n * lambda;
      CHECK(c1(kernel_hardy(n), n, 0, lambda).divergent == !(-n + e < -1.0));
      CHECK(c1(kernel_adjoint_hardy(), n, 0, lambda).divergent == !(e > -1.0));
    }
}

TEST_CASE("lower bound factor") {
  CHECK(lower_bound_factor(AngularProfile::constant(2, 1.0), 2, Weight::power(2, 0.7)) ==
        doctest::Approx(std::sqrt(2 * kPi)).epsilon(1e-12));
  CHECK(lower_bound_factor(AngularProfile::constant(1, 1.0), 2, Weight::power(1, 0)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  AngularProfile om = AngularProfile::expression(2, "2 + cos(theta)");
  CHECK(lower_bound_factor(om, 2, Weight::power(2, 0)) == doctest::Approx(std::sqrt(9 * kPi)).epsilon(1e-12));
  for (double p : {1.5, 2.0, 4.0}) {
    const double r = conjugate(p);
    CHECK(std::fabs(lower_bound_factor(om, r, Weight::power(2, -0.3)) - omega_norm(om, r)) < 1e-10 * omega_norm(om, r));
  }
}
