#include "bounds.hpp"

#include "quadrature.hpp"

namespace rh {

namespace {

void require_gamma(int n, double gamma) {
  check_dim(n);
  if (!(gamma > -n)) throw Error(ErrorCode::NonIntegrable, "constant: need gamma > -n");
}

// int phi(t) t^{e} (1+1/t)^{beta} dt, phi already transformed as needed
BoundConstant integrate_constant(std::string id, const ScalarFn &phi, double phi_e0,
                                 double phi_einf, std::vector<double> breaks, double e,
                                 double beta, double tol, std::map<std::string, double> params) {
  BoundConstant c;
  c.id = std::move(id);
  c.params = std::move(params);
  RadialIntegrand ri;
  ri.eval = [&](double t) {
    const double v = phi(t);
    if (v == 0.0) return 0.0;
    double w = v * std::pow(t, e);
    if (beta != 0.0) w *= std::pow(1.0 + 1.0 / t, beta);
    return w;
  };
  ri.exponent_at_zero = phi_e0 + e - beta;
  ri.exponent_at_infinity = phi_einf + e;
  if (std::isnan(ri.exponent_at_zero)) ri.exponent_at_zero = kInf;
  if (std::isnan(ri.exponent_at_infinity)) ri.exponent_at_infinity = -kInf;
  ri.breakpoints = std::move(breaks);
  HalflineOptions opt;
  opt.rel_tol = 1e-12;
  QuadratureResult q = integrate_halfline(ri, tol, opt);
  if (q.status == QuadStatus::Divergent) {
    c.divergent = true;
    c.value = kInf;
    return c;
  }
  if (q.status == QuadStatus::ToleranceNotMet)
    throw Error(ErrorCode::ToleranceNotMet, c.id + ": tolerance not met");
  c.value = q.value;
  c.abs_error = q.abs_error_estimate + q.tail_bound;
  return c;
}

ScalarFn abs_of(const RadialKernel &phi) {
  return [&phi](double t) { return std::fabs(phi(t)); };
}

}  // namespace

BoundConstant c1(const RadialKernel &phi, int n, double gamma, double lambda, double tol) {
  require_gamma(n, gamma);
  return integrate_constant("c1", abs_of(phi), phi.exponent_at_zero, phi.exponent_at_infinity,
                            phi.breakpoints, -1.0 - (n + gamma) * lambda, 0.0, tol,
                            {{"n", n}, {"gamma", gamma}, {"lambda", lambda}});
}

BoundConstant c1_1(const RadialKernel &phi, int n, double gamma, double lambda, double tol) {
  require_gamma(n, gamma);
  return integrate_constant("c1_1", phi.eval, phi.exponent_at_zero, phi.exponent_at_infinity,
                            phi.breakpoints, -1.0 - (n + gamma) * lambda, 0.0, tol,
                            {{"n", n}, {"gamma", gamma}, {"lambda", lambda}});
}

BoundConstant c2(const RadialKernel &phi, int n, double gamma, double q,
                 std::optional<double> alpha, double tol) {
  require_gamma(n, gamma);
  if (!(q >= 1.0)) throw Error(ErrorCode::Parameter, "c2: need q >= 1");
  const double a = alpha.value_or(0.0);
  const double e = 1.0 - 2.0 * n - gamma / q - n / q - a;
  std::vector<double> br;
  for (double b : phi.breakpoints) br.push_back(1.0 / b);
  std::map<std::string, double> params{{"n", n}, {"gamma", gamma}, {"q", q}};
  if (alpha) params["alpha"] = a;
  ScalarFn inv = [&phi](double t) { return std::fabs(phi(1.0 / t)); };
  return integrate_constant(alpha ? "c2_proof_alpha" : "c2", inv, -phi.exponent_at_infinity,
                            -phi.exponent_at_zero, br, e, 0.0, tol, std::move(params));
}

BoundConstant c3(const RadialKernel &phi, int n, double gamma, double q, double lambda,
                 double alpha, double tol) {
  check_dim(n);
  if (!(q >= 1.0)) throw Error(ErrorCode::Parameter, "c3: need q >= 1");
  if (!(lambda > 0.0)) throw Error(ErrorCode::Parameter, "c3: need lambda > 0");
  return integrate_constant(
      "c3", abs_of(phi), phi.exponent_at_zero, phi.exponent_at_infinity, phi.breakpoints,
      -(1.0 - gamma / q - n / q + lambda - alpha), 0.0, tol,
      {{"n", n}, {"gamma", gamma}, {"q", q}, {"lambda", lambda}, {"alpha", alpha}});
}

BoundConstant c4(const RadialKernel &phi, int n, double gamma, double p, double lambda1,
                 double beta, std::optional<double> lambda, double tol) {
  require_gamma(n, gamma);
  if (!(p > 0.0)) throw Error(ErrorCode::Parameter, "c4: need p > 0");
  if (!(beta > 0.0 && beta <= 1.0)) throw Error(ErrorCode::Parameter, "c4: beta must lie in (0, 1]");
  if (lambda) {
    const double expect = *lambda - beta * p / (n + gamma);
    if (std::fabs(expect - lambda1) > 1e-12 * std::max(1.0, std::fabs(expect)))
      throw Error(ErrorCode::Parameter, "c4: lambda1 must equal lambda - beta p/(n+gamma)");
  }
  if (!(lambda1 > 0.0)) throw Error(ErrorCode::Parameter, "c4: need lambda1 > 0");
  std::map<std::string, double> params{
      {"n", n}, {"gamma", gamma}, {"p", p}, {"lambda1", lambda1}, {"beta", beta}};
  if (lambda) params["lambda"] = *lambda;
  return integrate_constant("c4", abs_of(phi), phi.exponent_at_zero, phi.exponent_at_infinity,
                            phi.breakpoints, -1.0 - (gamma + n) * (lambda1 - 1.0) / p, beta, tol,
                            std::move(params));
}

BoundConstant c5(const RadialKernel &phi, int n, double gamma, double q, double alpha1,
                 double beta, C5Variant variant, double lambda, std::optional<double> alpha2,
                 double tol) {
  require_gamma(n, gamma);
  if (!(q >= 1.0)) throw Error(ErrorCode::Parameter, "c5: need q >= 1");
  if (!(beta > 0.0 && beta <= 1.0)) throw Error(ErrorCode::Parameter, "c5: beta must lie in (0, 1]");
  if (alpha2) {
    const double expect = *alpha2 + n * beta / (n + gamma);
    if (std::fabs(expect - alpha1) > 1e-12 * std::max(1.0, std::fabs(expect)))
      throw Error(ErrorCode::Parameter, "c5: alpha1 must equal alpha2 + n beta/(n+gamma)");
  }
  const double s = 1.0 + gamma / n;
  const double base = 1.0 - gamma / q - n / q;
  const bool herz = variant == C5Variant::Herz;
  const double e = herz ? -(base - alpha1 * s) : -(base + (lambda - alpha1) * s);
  std::map<std::string, double> params{
      {"n", n}, {"gamma", gamma}, {"q", q}, {"alpha1", alpha1}, {"beta", beta}};
  if (!herz) params["lambda"] = lambda;
  if (alpha2) params["alpha2"] = *alpha2;
  return integrate_constant(herz ? "c5_herz" : "c5_mherz", abs_of(phi), phi.exponent_at_zero,
                            phi.exponent_at_infinity, phi.breakpoints, e, beta, tol,
                            std::move(params));
}

BoundConstant herz_truncated_constant(const RadialKernel &phi, int n, double gamma, double q,
                                      int m, double tol) {
  require_gamma(n, gamma);
  if (m < 1) throw Error(ErrorCode::Parameter, "S_m needs m >= 1");
  const double u0 = std::ldexp(1.0, -(m - 1));
  const double e = 1.0 - 2.0 * n - gamma / q - n / q - std::ldexp(1.0, -m);
  std::vector<double> br{u0};
  for (double b : phi.breakpoints) br.push_back(1.0 / b);
  ScalarFn inv = [&phi, u0](double u) { return u < u0 ? 0.0 : std::fabs(phi(1.0 / u)); };
  BoundConstant c = integrate_constant("s_m", inv, kInf, -phi.exponent_at_zero, br, e, 0.0, tol,
                                       {{"n", n}, {"gamma", gamma}, {"q", q}, {"m", m}});
  return c;
}

double lower_bound_factor(const AngularProfile &omega, double r, const Weight &w) {
  if (!(r > 1.0)) throw Error(ErrorCode::Parameter, "lower_bound_factor: need r = p' > 1");
  if (!omega.nonvanishing())
    throw Error(ErrorCode::Domain, "lower_bound_factor: Omega must be nonvanishing");
  if (std::isinf(r)) {
    if (!w.angular_is_constant())
      throw Error(ErrorCode::Parameter, "lower_bound_factor: r = inf needs a constant angular weight");
    return omega_norm(omega, r) / w.angular()({1.0, 0.0, 0.0});
  }
  const double weighted = omega_norm(omega, r, &w);
  if (!(weighted > 0.0)) throw Error(ErrorCode::Domain, "lower_bound_factor: zero weighted norm");
  return std::pow(omega_norm(omega, r), r) / std::pow(weighted, r - 1.0);
}

}  // namespace rh
