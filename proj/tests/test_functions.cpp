#include <cmath>
#include <random>

#include "doctest.h"
#include "expr.hpp"
#include "functions.hpp"
#include "weights.hpp"

using namespace rh;

TEST_CASE("expression grammar") {
  Expr e = Expr::parse("2*r^2 - pow(r, 0.5) + indicator(1, 2)", {"r"});
  CHECK(e.eval1(1.5) == doctest::Approx(2 * 2.25 - std::sqrt(1.5) + 1));
  CHECK(e.eval1(4.0) == doctest::Approx(32 - 2));
  REQUIRE(e.breakpoints().size() == 2);
  CHECK(Expr::parse("-2^2", {"r"}).eval1(0) == doctest::Approx(-4));
  CHECK(Expr::parse("exp(-t)*abs(sin(pi/2))", {"t"}).eval1(1) == doctest::Approx(std::exp(-1)));
  CHECK_THROWS_AS(Expr::parse("r +* 2", {"r"}), Error);
  CHECK_THROWS_AS(Expr::parse("foo(r)", {"r"}), Error);
  CHECK_THROWS_AS(Expr::parse("q", {"r"}), Error);
}

TEST_CASE("omega norms") {
  CHECK(omega_norm(AngularProfile::constant(2, 1.0), 2) == doctest::Approx(std::sqrt(2 * kPi)));
  Weight w = Weight::power(1, 0.3);
  CHECK(omega_norm(AngularProfile::constant(1, 1.0), 2, &w) == doctest::Approx(std::sqrt(2.0)));
  CHECK(omega_norm(AngularProfile::expression(2, "2 + cos(theta)"), 2) ==
        doctest::Approx(std::sqrt(9 * kPi)).epsilon(1e-12));
  CHECK(omega_norm(AngularProfile::expression(2, "2 + cos(theta)"), kInf) == doctest::Approx(3.0));
}

TEST_CASE("kernel presets") {
  RadialKernel h = kernel_hardy(2);
  CHECK(h(2.0) == doctest::Approx(0.25));
  CHECK(h(0.5) == 0.0);
  RadialKernel a = kernel_adjoint_hardy();
  CHECK(a(0.5) == 1.0);
  CHECK(a(2.0) == 0.0);
  CHECK(kernel_power(-2.5, 1.0, kInf)(4.0) == doctest::Approx(std::pow(4.0, -2.5)));
  CHECK(kernel_from_spec("hardy:3").exponent_at_infinity == -3.0);
  CHECK_THROWS_AS(kernel_from_spec("nope"), Error);
}

TEST_CASE("kernel exponents match fitted decay") {
  auto near = [](double a, double b) { return (std::isinf(a) && a == b) || std::fabs(a - b) < 0.05; };
  for (const RadialKernel &k : {kernel_hardy(1), kernel_hardy(3), kernel_adjoint_hardy(),
                                kernel_power(-1.5, 0.0, kInf), kernel_gaussian(), kernel_t_exp(),
                                kernel_exp_cutoff()}) {
    FittedExponents f = fit_exponents(k.eval);
    CHECK_MESSAGE(near(f.at_zero, k.exponent_at_zero), k.label);
    CHECK_MESSAGE(near(f.at_infinity, k.exponent_at_infinity), k.label);
  }
  RadialKernel e = kernel_expression("t^2/(1+t^5)");
  CHECK(e.exponent_at_zero == doctest::Approx(2.0).epsilon(0.02));
  CHECK(e.exponent_at_infinity == doctest::Approx(-3.0).epsilon(0.02));
}

TEST_CASE("declared kernel sign is checked") {
  RadialKernel k = kernel_expression("cos(t)");
  CHECK(k.sign == KernelSign::Mixed);
  k.sign = KernelSign::Nonnegative;
  CHECK_THROWS_AS(validate_kernel(k), Error);
}

TEST_CASE("separable evaluation identity") {
  TestFunction f = TestFunction::separable(
      2, [](double r) { return r * std::exp(-r); }, angular_expression(2, "2 + cos(theta)"), 1, -kInf);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 10000; ++i) {
    Vec x{nd(rng), nd(rng), 0.0};
    const double r = norm(x, 2);
    const double expect = f.radial_part()(r) * f.angular_part()(scaled(x, 1.0 / r));
    CHECK(f(x) == expect);
    CHECK(std::fabs(expect - r * std::exp(-r) * (2.0 + x[0] / r)) <= 1e-14 * std::fabs(expect));
  }
}

TEST_CASE("Lipschitz presets") {
  LipschitzSymbol b1 = LipschitzSymbol::power(2, 1.0);
  CHECK(std::fabs(b1({3, 4, 0}) - b1({0, 0, 0})) == doctest::Approx(5.0));
  CHECK_THROWS_AS(LipschitzSymbol::power(2, 1.5), Error);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> u(-12.0, 4.0);
  for (double beta : {0.25, 0.5, 1.0}) {
    LipschitzSymbol b = LipschitzSymbol::power(2, beta);
    double worst = 0.0;
    for (int i = 0; i < 100000; ++i) {
      Vec x{nd(rng), nd(rng), 0.0};
      x = scaled(x, std::pow(10.0, u(rng)) / norm(x, 2));
      Vec y;
      if (i % 2) {  // near the diagonal
        Vec d{nd(rng), nd(rng), 0.0};
        y = {x[0] + d[0] * 1e-6 * norm(x, 2), x[1] + d[1] * 1e-6 * norm(x, 2), 0.0};
      } else {
        y = {nd(rng) * std::pow(10.0, u(rng)), nd(rng) * std::pow(10.0, u(rng)), 0.0};
      }
      const double dist = std::hypot(x[0] - y[0], x[1] - y[1]);
      if (dist == 0.0) continue;
      worst = std::max(worst, std::fabs(b(x) - b(y)) / std::pow(dist, beta));
    }
    CHECK(worst <= b.lip_norm() * (1.0 + 1e-12));
  }
  LipschitzSymbol lin = LipschitzSymbol::linear(2, {1, 0, 0});
  CHECK(std::fabs(lin({3, 4, 0}) - lin({1, 1, 0})) <= std::hypot(2.0, 3.0));
}
