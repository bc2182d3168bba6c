#include "operators.hpp"

#include <algorithm>
#include <set>

#include "quadrature.hpp"

namespace rh {

namespace {

constexpr double kApplyRelTol = 1e-12;

double clean(double e, double fallback) { return std::isnan(e) ? fallback : e; }

// Exponents in t of Phi(t)/t * F(r/t) where |F(s)| ~ s^{a0} at 0 and s^{ainf} at infinity.
struct TExponents {
  double e0, einf;
};

TExponents t_exponents(const RadialKernel &phi, const TestFunction &f, double extra_inf = 0.0) {
  const auto s = f.support();
  TExponents e;
  e.e0 = std::isfinite(s.r_max) ? kInf
                                 : clean(phi.exponent_at_zero - 1.0 - (f.exponent_at_infinity() + extra_inf), kInf);
  e.einf = s.r_min > 0.0 ? -kInf : clean(phi.exponent_at_infinity - 1.0 - f.exponent_at_zero(), -kInf);
  return e;
}

std::vector<double> t_breaks(const RadialKernel &phi, const TestFunction &f, double r) {
  std::vector<double> out(phi.breakpoints);
  auto add = [&](double b) {
    if (b > 0.0 && std::isfinite(b)) out.push_back(r / b);
  };
  for (double b : f.breakpoints()) add(b);
  add(f.support().r_min);
  add(f.support().r_max);
  return out;
}

bool outside_support(const TestFunction &f, double s) {
  const auto sp = f.support();
  return s < sp.r_min || s > sp.r_max;
}

double run_halfline(RadialIntegrand ri, double tol, const char *what) {
  HalflineOptions opt;
  opt.rel_tol = kApplyRelTol;
  QuadratureResult q = integrate_halfline(ri, tol, opt);
  return require_value(q, what);
}

// int_S Omega h dsigma for separable f
double sphere_factor(const HausdorffOperator &op, const TestFunction &f, double tol) {
  const int n = op.dim();
  if (f.angular_constant()) {
    const double c = *f.angular_constant();
    if (c == 0.0) return 0.0;
    if (op.omega().constant_value()) return c * *op.omega().constant_value() * sphere_area(n);
    QuadratureResult q = integrate_sphere(n, op.omega().fn(), tol);
    return c * require_value(q, "sphere factor");
  }
  const PointFn &h = f.angular_part();
  const AngularProfile &om = op.omega();
  QuadratureResult q = integrate_sphere(n, [&](const Vec &y) { return om(y) * h(y); }, tol);
  return require_value(q, "sphere factor");
}

bool use_separable(const TestFunction &f, ApplyPath path) {
  if (path == ApplyPath::Separable && !f.is_separable())
    throw Error(ErrorCode::Parameter, "separable path requested for a non-separable function");
  return path == ApplyPath::Separable || (path == ApplyPath::Auto && f.is_separable());
}

double radius_of(const Vec &x, int n) {
  const double r = norm(x, n);
  if (!(r > 0.0)) throw Error(ErrorCode::Domain, "operator evaluation at the origin");
  return r;
}

}  // namespace

HausdorffOperator::HausdorffOperator(RadialKernel phi, AngularProfile omega)
    : phi_(std::move(phi)), omega_(std::move(omega)) {
  validate_kernel(phi_);
}

double hausdorff_apply(const HausdorffOperator &op, const TestFunction &f, const Vec &x, double tol,
                       ApplyPath path) {
  const int n = op.dim();
  if (f.dim() != n) throw Error(ErrorCode::Parameter, "operator and function dimensions differ");
  const double r = radius_of(x, n);
  if (f.is_zero()) return 0.0;
  const RadialKernel &phi = op.phi();
  const TExponents e = t_exponents(phi, f);
  RadialIntegrand ri;
  ri.exponent_at_zero = e.e0;
  ri.exponent_at_infinity = e.einf;
  ri.breakpoints = t_breaks(phi, f, r);

  if (use_separable(f, path)) {
    const double a = sphere_factor(op, f, tol / 3.0);
    if (a == 0.0) return 0.0;
    const ScalarFn &g = f.radial_part();
    ri.eval = [&](double t) {
      const double s = r / t;
      if (outside_support(f, s)) return 0.0;
      const double k = phi(t);
      if (k == 0.0) return 0.0;
      const double v = g(s);
      return v == 0.0 ? 0.0 : k / t * v;
    };
    return a * run_halfline(ri, tol / (3.0 * std::fabs(a)), "hausdorff_apply");
  }
  const AngularProfile &om = op.omega();
  ri.eval = [&](double t) {
    const double s = r / t;
    if (outside_support(f, s)) return 0.0;
    const double k = phi(t);
    if (k == 0.0) return 0.0;
    QuadratureResult q = integrate_sphere(
        n, [&](const Vec &y) { return om(y) * f(scaled(y, s)); }, tol / 3.0);
    return q.value == 0.0 ? 0.0 : k / t * q.value;
  };
  return run_halfline(ri, tol / 3.0, "hausdorff_apply");
}

double hardy_apply(const TestFunction &f, const Vec &x, int n, double tol) {
  if (f.dim() != n) throw Error(ErrorCode::Parameter, "hardy_apply: dimension mismatch");
  const double r = radius_of(x, n);
  if (f.is_zero()) return 0.0;
  QuadratureResult q = integrate_region(n, [&](const Vec &y) { return f(y); }, Region::ball(r),
                                        tol * std::pow(r, n), f.exponent_at_zero(), f.breakpoints());
  return require_value(q, "hardy_apply") / std::pow(r, n);
}

double adjoint_hardy_apply(const TestFunction &f, const Vec &x, int n, double tol) {
  if (f.dim() != n) throw Error(ErrorCode::Parameter, "adjoint_hardy_apply: dimension mismatch");
  const double r = radius_of(x, n);
  if (f.is_zero()) return 0.0;
  std::vector<double> br(f.breakpoints());
  if (std::isfinite(f.support().r_max)) br.push_back(f.support().r_max);
  const double rmax = f.support().r_max;
  if (r >= rmax) return 0.0;
  const Region region = std::isfinite(rmax) ? Region::shell(r, rmax) : Region::shell(r, kInf);
  QuadratureResult q = integrate_region(
      n, [&](const Vec &y) { return f(y) / std::pow(norm(y, n), n); }, region, tol,
      f.exponent_at_zero() - n, br, f.exponent_at_infinity() - n);
  return require_value(q, "adjoint_hardy_apply");
}

double commutator_apply(const CommutatorOperator &op, const TestFunction &f, const Vec &x,
                        double tol, ApplyPath path) {
  const HausdorffOperator &h = op.base;
  const LipschitzSymbol &b = op.symbol;
  const int n = h.dim();
  if (f.dim() != n || b.dim() != n)
    throw Error(ErrorCode::Parameter, "commutator: dimension mismatch");
  const double r = radius_of(x, n);
  if (f.is_zero() || b.kind() == LipschitzSymbol::Kind::Constant) return 0.0;
  const RadialKernel &phi = h.phi();
  const TExponents e = t_exponents(phi, f, b.beta());
  RadialIntegrand ri;
  ri.exponent_at_zero = e.e0;
  ri.exponent_at_infinity = e.einf;
  ri.breakpoints = t_breaks(phi, f, r);
  const double bx = b(x);

  const bool radial_b = b.kind() == LipschitzSymbol::Kind::Power;
  if (radial_b && use_separable(f, path)) {
    const double a = sphere_factor(h, f, tol / 3.0);
    if (a == 0.0) return 0.0;
    const ScalarFn &g = f.radial_part();
    const double beta = b.beta();
    ri.eval = [&](double t) {
      const double s = r / t;
      if (outside_support(f, s)) return 0.0;
      const double k = phi(t);
      if (k == 0.0) return 0.0;
      const double v = g(s);
      return v == 0.0 ? 0.0 : k / t * v * (bx - std::pow(s, beta));
    };
    return a * run_halfline(ri, tol / (3.0 * std::fabs(a)), "commutator_apply");
  }
  if (path == ApplyPath::Separable)
    throw Error(ErrorCode::Parameter, "separable commutator path needs a radial power symbol");
  const AngularProfile &om = h.omega();
  ri.eval = [&](double t) {
    const double s = r / t;
    if (outside_support(f, s)) return 0.0;
    const double k = phi(t);
    if (k == 0.0) return 0.0;
    QuadratureResult q = integrate_sphere(
        n,
        [&](const Vec &y) {
          const Vec z = scaled(y, s);
          const double fz = f(z);
          return fz == 0.0 ? 0.0 : om(y) * fz * (bx - b(z));
        },
        tol / 3.0);
    return q.value == 0.0 ? 0.0 : k / t * q.value;
  };
  return run_halfline(ri, tol / 3.0, "commutator_apply");
}

LipschitzCheck lipschitz_pointwise_bound(const LipschitzSymbol &b, const Vec &x, double t,
                                         const Vec &yp) {
  const int n = b.dim();
  const double r = radius_of(x, n);
  if (!(t > 0.0)) throw Error(ErrorCode::Parameter, "lipschitz bound: t must be positive");
  if (std::fabs(norm(yp, n) - 1.0) > 1e-12)
    throw Error(ErrorCode::Parameter, "lipschitz bound: y' must be a unit vector");
  LipschitzCheck c;
  c.bound = b.lip_norm() * std::pow(r, b.beta()) * std::pow(1.0 + 1.0 / t, b.beta());
  c.actual = std::fabs(b(x) - b(scaled(yp, r / t)));
  c.holds = c.actual <= c.bound * (1.0 + 1e-12);
  return c;
}

namespace {

std::vector<double> image_breaks(const RadialKernel &phi, const TestFunction &f) {
  std::set<double> out;
  std::vector<double> fb(f.breakpoints());
  fb.push_back(f.support().r_min);
  fb.push_back(f.support().r_max);
  for (double b : fb)
    if (b > 0.0 && std::isfinite(b))
      for (double c : phi.breakpoints) out.insert(b * c);
  return {out.begin(), out.end()};
}

}  // namespace

TestFunction hausdorff_image(const HausdorffOperator &op, const TestFunction &f) {
  const int n = op.dim();
  if (f.is_zero()) return TestFunction::zero(n);
  const RadialKernel &phi = op.phi();
  const double a0 = std::min(phi.exponent_at_zero, f.exponent_at_zero());
  const double ainf = std::max(phi.exponent_at_infinity, f.exponent_at_infinity());
  auto g = [op, f](double r) {
    return r > 0.0 ? hausdorff_apply(op, f, {r, 0.0, 0.0}, 1e-300) : 0.0;
  };
  return TestFunction::radial(n, g, a0, ainf, image_breaks(phi, f), {}, "H(" + f.label() + ")");
}

TestFunction commutator_image(const CommutatorOperator &op, const TestFunction &f) {
  const int n = op.base.dim();
  if (f.is_zero() || op.symbol.kind() == LipschitzSymbol::Kind::Constant)
    return TestFunction::zero(n);
  const RadialKernel &phi = op.base.phi();
  const double beta = op.symbol.beta();
  const double a0 = std::min(phi.exponent_at_zero, f.exponent_at_zero() + beta);
  const double ainf = std::max(phi.exponent_at_infinity, f.exponent_at_infinity()) + beta;
  const std::string label = "Hb(" + f.label() + ")";
  if (op.symbol.kind() == LipschitzSymbol::Kind::Power && f.is_separable()) {
    auto g = [op, f](double r) {
      return r > 0.0 ? commutator_apply(op, f, {r, 0.0, 0.0}, 1e-300) : 0.0;
    };
    return TestFunction::radial(n, g, a0, ainf, image_breaks(phi, f), {}, label);
  }
  auto g = [op, f](const Vec &x) { return commutator_apply(op, f, x, 1e-300); };
  return TestFunction::general(n, g, a0, ainf, image_breaks(phi, f), {}, label);
}

}  // namespace rh
