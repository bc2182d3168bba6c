#include <cmath>

#include "bounds.hpp"
#include "doctest.h"
#include "extremals.hpp"
#include "operators.hpp"
#include "spaces.hpp"

using namespace rh;

TEST_CASE("Morrey extremal closed form") {
  Weight w = Weight::power(1, 0.0);
  ExtremalFamily e = morrey_extremal(AngularProfile::constant(1, 1.0), w, -0.1, 2);
  CHECK(*e.closed_form_norm == doctest::Approx(1.1983).epsilon(1e-4));
  NormResult r = central_morrey_norm(e.function, 2, -0.1, w);
  CHECK(std::fabs(r.value / *e.closed_form_norm - 1.0) < 1e-4);
  CHECK(*e.closed_form_image_exponent == doctest::Approx(-0.1));
  ExtremalFamily z = morrey_extremal(AngularProfile::constant(1, 1.0), w, 0.0, 2);
  CHECK(z.function.radial_part()(123.0) == 1.0);
  CHECK_THROWS_AS(morrey_extremal(AngularProfile::constant(1, 1.0), w, -0.1, 1), Error);
  CHECK_THROWS_AS(morrey_extremal(AngularProfile(2, [](const Vec &x) { return x[0]; }, false), Weight::power(2, 0), -0.1, 2), Error);
}

TEST_CASE("Morrey extremal image") {
  Weight w = Weight::power(2, 0.5);
  AngularProfile om = AngularProfile::expression(2, "2 + cos(theta)");
  const double p = 3, lambda = -0.2;
  ExtremalFamily e = morrey_extremal(om, w, lambda, p);
  HausdorffOperator h(kernel_hardy(2), om);
  const double amp = std::pow(omega_norm(om, conjugate(p)), conjugate(p)) * c1_1(kernel_hardy(2), 2, 0.5, lambda).value;
  for (double r : {0.1, 1.0, 10.0})
    CHECK(std::fabs(hausdorff_apply(h, e.function, {r, 0, 0}) / (amp * std::pow(r, *e.closed_form_image_exponent)) - 1) < 1e-8);
}

TEST_CASE("Herz extremal chunks") {
  Weight w = Weight::power(1, 0.0);
  AngularProfile one = AngularProfile::constant(1, 1.0);
  ExtremalFamily e = herz_extremal(one, w, 2, 0.5, 10, 2);
  CHECK(e.chunk(-3) == 0.0);
  CHECK(annulus_norm(e.function, 2, w, -3) == 0.0);
  for (int k = 0; k <= 3; ++k) CHECK(std::fabs(annulus_norm(e.function, 2, w, k) - e.chunk(k)) <= 1e-8 * std::max(1.0, e.chunk(k)));
  const double s = 0.5 + std::ldexp(1.0, -10);
  CHECK(e.chunk(1) == doctest::Approx(std::pow(2.0, -s) * std::sqrt((std::pow(2.0, 2 * s) - 1) / (2 * s)) * std::sqrt(2.0)));
  CHECK_THROWS_AS(herz_extremal(one, w, 2, 0.5, 21, 2), Error);
  CHECK_THROWS_AS(herz_extremal(one, w, 2, -1.0 / 1024, 10, 2), Error);
  double prev = 0.0;
  for (int K = 1; K <= 400; ++K) {
    double s2 = 0.0;
    for (int k = 0; k <= K; ++k) s2 += std::pow(std::exp2(k * 0.5) * e.chunk(k), 2);
    CHECK(s2 >= prev);
    prev = s2;
  }
  CHECK(std::sqrt(prev) <= *e.closed_form_norm * (1 + 1e-12));
}

TEST_CASE("truncation sets") {
  CHECK(herz_truncation_set(1).lower == 1.0);
  CHECK(herz_truncation_set(3).lower == 0.25);
  for (int m = 1; m < 20; ++m) CHECK(herz_truncation_set(m).subset_of(herz_truncation_set(m + 1)));
}

TEST_CASE("Morrey-Herz extremal") {
  Weight w = Weight::power(1, 0.0);
  AngularProfile one = AngularProfile::constant(1, 1.0);
  ExtremalFamily e = morrey_herz_extremal(one, w, 2, 0.0, 0.5, 2);
  CHECK(*e.closed_form_image_exponent == doctest::Approx(0.0));
  ExtremalFamily g = morrey_herz_extremal(one, w, 1.5, 0.0, 0.5, 2);
  CHECK(*g.closed_form_image_exponent == doctest::Approx(-1 / 1.5 + 0.5));
  ExtremalFamily eq = morrey_herz_extremal(one, w, 2, 0.5, 0.5, 2);
  CHECK(eq.chunk(0) == doctest::Approx(std::sqrt(std::log(2.0)) * std::sqrt(2.0)));
  CHECK(eq.chunk(5) == doctest::Approx(eq.chunk(-4)));
  for (int k = -1; k <= 2; ++k) CHECK(std::fabs(annulus_norm(eq.function, 2, w, k) / eq.chunk(k) - 1) < 1e-8);
  NormResult r = morrey_herz_norm(e.function, 0.0, 0.5, 2, 2, w);
  CHECK(std::fabs(r.value / *e.closed_form_norm - 1) < 1e-8);
}
