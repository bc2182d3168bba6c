#pragma once

#include <vector>

#include "common.hpp"

namespace rh {

// Integrand on (0, inf) with declared power-law behaviour at both ends.
// +inf at zero (or -inf at infinity) declares that the integrand vanishes
// identically, or faster than any power, near that end.
struct RadialIntegrand {
  ScalarFn eval;
  double exponent_at_zero = 0.0;
  double exponent_at_infinity = -2.0;
  std::vector<double> breakpoints;  // jumps or kinks, in t
};

enum class QuadStatus { Ok, Divergent, ToleranceNotMet };

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  double tail_bound = 0.0;  // uncertainty left by truncating the half-line
  bool converged = false;
  QuadStatus status = QuadStatus::Ok;
  int panels = 0;
};

struct HalflineOptions {
  double rel_tol = 0.0;     // stop when tails fall below max(tol, rel_tol*|value|)
  double panel_rel_tol = 1e-12;
  int max_panels_per_side = 260;
  // Consecutive non-decaying panels before an end is called divergent. An
  // integrand can climb towards an interior peak first (e^{-r/t} at large r).
  int max_nondecay_panels = 48;
};

// t = e^u on panels of width ln 2 in u, expanded outward from the region
// holding the breakpoints.
QuadratureResult integrate_halfline(const RadialIntegrand &f, double tol,
                                    const HalflineOptions &opt = {});

// Adaptive Gauss-Kronrod on [a, b], split at any breakpoints inside.
QuadratureResult integrate_interval(const ScalarFn &f, double a, double b,
                                    const std::vector<double> &breakpoints,
                                    double rel_tol = 1e-12);

// Counting measure for n = 1, periodic trapezoid for n = 2,
// Gauss-Legendre in cos(polar) x trapezoid in azimuth for n = 3.
QuadratureResult integrate_sphere(int n, const PointFn &g, double tol);

struct SphereNode {
  Vec x;
  double weight;
};
// Fixed-resolution node set used for sampled checks on the sphere.
const std::vector<SphereNode> &sphere_nodes(int n, int level);
int sphere_levels();

struct Region {
  enum Kind { Ball, Annulus, Shell } kind = Ball;
  double a = 0.0, b = 1.0;  // radii; Annulus k becomes Shell(2^{k-1}, 2^k)
  static Region ball(double R) { return {Ball, 0.0, R}; }
  static Region annulus(int k) { return {Annulus, std::ldexp(1.0, k - 1), std::ldexp(1.0, k)}; }
  static Region shell(double a, double b) { return {Shell, a, b}; }
};

// Polar factorisation: int_r r^{n-1} int_S f(r x') dsigma dr.
// The exponents describe |f| near the origin and at infinity, radial_breaks
// lists radii where f jumps.
QuadratureResult integrate_region(int n, const PointFn &f, const Region &region, double tol,
                                  double exponent_at_zero = 0.0,
                                  const std::vector<double> &radial_breaks = {},
                                  double exponent_at_infinity = -kInf);

double require_value(const QuadratureResult &r, const char *what);

}  // namespace rh
