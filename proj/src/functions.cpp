#include "functions.hpp"

#include <algorithm>
#include <sstream>

#include "expr.hpp"
#include "quadrature.hpp"
#include "weights.hpp"

namespace rh {

namespace {

bool nonvanishing_at_nodes(int n, const PointFn &g) {
  for (const SphereNode &p : sphere_nodes(n, sphere_levels() - 1))
    if (!(std::fabs(g(p.x)) > 0.0)) return false;
  return true;
}

}  // namespace

AngularProfile::AngularProfile(int n, PointFn eval, bool nonvanishing, std::string label,
                               std::optional<double> constant)
    : n_(n), eval_(std::move(eval)), nonvanishing_(nonvanishing), label_(std::move(label)),
      constant_(constant) {
  check_dim(n);
  if (!eval_) throw Error(ErrorCode::Parameter, "angular profile: missing evaluator");
  if (nonvanishing_ && !nonvanishing_at_nodes(n, eval_))
    throw Error(ErrorCode::Domain, "angular profile declared nonvanishing but vanishes at a node");
}

AngularProfile AngularProfile::constant(int n, double c) {
  std::ostringstream os;
  os << "const(" << c << ")";
  return AngularProfile(n, [c](const Vec &) { return c; }, c != 0.0, os.str(), c);
}

AngularProfile AngularProfile::expression(int n, const std::string &src) {
  PointFn g = angular_expression(n, src);
  return AngularProfile(n, g, nonvanishing_at_nodes(n, g), src);
}

AngularProfile AngularProfile::scaled(double c) const {
  PointFn g = eval_;
  std::optional<double> k;
  if (constant_) k = *constant_ * c;
  return AngularProfile(n_, [g, c](const Vec &x) { return c * g(x); }, nonvanishing_ && c != 0.0,
                        label_, k);
}

PointFn angular_expression(int n, const std::string &src) {
  check_dim(n);
  Expr e = Expr::parse(src, {"x", "y", "z", "theta", "phi"});
  return [e, n](const Vec &p) {
    double v[5] = {p[0], p[1], p[2], 0.0, 0.5 * kPi};
    if (n == 1) v[3] = p[0] > 0.0 ? 0.0 : kPi;
    else v[3] = std::atan2(p[1], p[0]);
    if (n == 3) v[4] = std::acos(std::clamp(p[2], -1.0, 1.0));
    return e.eval(v);
  };
}

const char *kernel_sign_name(KernelSign s) {
  switch (s) {
    case KernelSign::Nonnegative: return "nonnegative";
    case KernelSign::Nonpositive: return "nonpositive";
    case KernelSign::Mixed: return "mixed";
  }
  return "mixed";
}

RadialKernel kernel_hardy(int n) {
  check_dim(n);
  RadialKernel k;
  k.eval = [n](double t) { return t > 1.0 ? std::pow(t, -n) : 0.0; };
  k.exponent_at_zero = kInf;
  k.exponent_at_infinity = -n;
  k.sign = KernelSign::Nonnegative;
  k.breakpoints = {1.0};
  k.label = "hardy:" + std::to_string(n);
  return k;
}

RadialKernel kernel_adjoint_hardy() {
  RadialKernel k;
  k.eval = [](double t) { return t < 1.0 ? 1.0 : 0.0; };
  k.exponent_at_zero = 0.0;
  k.exponent_at_infinity = -kInf;
  k.sign = KernelSign::Nonnegative;
  k.breakpoints = {1.0};
  k.label = "adjoint_hardy";
  return k;
}

RadialKernel kernel_power(double a, double t1, double t2) {
  if (!(t1 >= 0.0) || !(t2 > t1))
    throw Error(ErrorCode::Parameter, "power kernel: need 0 <= t1 < t2");
  RadialKernel k;
  k.eval = [a, t1, t2](double t) { return (t > t1 && t < t2) ? std::pow(t, a) : 0.0; };
  k.exponent_at_zero = t1 > 0.0 ? kInf : a;
  k.exponent_at_infinity = std::isfinite(t2) ? -kInf : a;
  k.sign = KernelSign::Nonnegative;
  if (t1 > 0.0) k.breakpoints.push_back(t1);
  if (std::isfinite(t2)) k.breakpoints.push_back(t2);
  std::ostringstream os;
  os << "power:" << a << ":" << t1 << ":" << t2;
  k.label = os.str();
  return k;
}

RadialKernel kernel_gaussian() {
  RadialKernel k;
  k.eval = [](double t) { return std::exp(-t * t); };
  k.exponent_at_zero = 0.0;
  k.exponent_at_infinity = -kInf;
  k.sign = KernelSign::Nonnegative;
  k.label = "gaussian";
  return k;
}

RadialKernel kernel_exp_cutoff() {
  RadialKernel k;
  k.eval = [](double t) { return std::exp(-t - 1.0 / t); };
  k.exponent_at_zero = kInf;
  k.exponent_at_infinity = -kInf;
  k.sign = KernelSign::Nonnegative;
  k.label = "exp_cutoff";
  return k;
}

RadialKernel kernel_t_exp() {
  RadialKernel k;
  k.eval = [](double t) { return t * std::exp(-t); };
  k.exponent_at_zero = 1.0;
  k.exponent_at_infinity = -kInf;
  k.sign = KernelSign::Nonnegative;
  k.label = "t_exp";
  return k;
}

RadialKernel kernel_zero() {
  RadialKernel k;
  k.eval = [](double) { return 0.0; };
  k.exponent_at_zero = kInf;
  k.exponent_at_infinity = -kInf;
  k.sign = KernelSign::Nonnegative;
  k.label = "zero";
  return k;
}

namespace {

double slope(const ScalarFn &g, double t1, double t2) {
  return std::log(std::fabs(g(t2) / g(t1))) / std::log(t2 / t1);
}

// Shared by both ends: t runs from the far end inwards.
double fit_end(const ScalarFn &g, double ta, double tb, double tc, double vanish) {
  const double a = g(ta), b = g(tb), c = g(tc);
  if (a == 0.0 || b == 0.0) return vanish;
  if (c == 0.0) return vanish;
  const double s1 = slope(g, ta, tb), s2 = slope(g, tb, tc);
  if (!std::isfinite(s1)) return vanish;
  // a slope still steepening towards the end means faster than any power
  if (std::fabs(s1 - s2) > 0.05 && std::fabs(s1) > std::fabs(s2) && std::fabs(s1) > 20.0)
    return vanish;
  return s1;
}

}  // namespace

FittedExponents fit_exponents(const ScalarFn &g) {
  FittedExponents f;
  f.at_zero = fit_end(g, 1e-9, 1e-8, 1e-7, kInf);
  f.at_infinity = fit_end(g, 1e9, 1e8, 1e7, -kInf);
  return f;
}

void validate_kernel(const RadialKernel &k) {
  if (!k.eval) throw Error(ErrorCode::Parameter, "kernel: missing evaluator");
  if (k.sign == KernelSign::Mixed) return;
  for (int i = 0; i <= 480; ++i) {
    const double t = std::pow(10.0, -6.0 + 12.0 * i / 480.0);
    const double v = k.eval(t);
    if (k.sign == KernelSign::Nonnegative ? v < 0.0 : v > 0.0) {
      std::ostringstream os;
      os << "kernel '" << k.label << "' declared " << kernel_sign_name(k.sign)
         << " but Phi(" << t << ") = " << v;
      throw Error(ErrorCode::Parameter, os.str());
    }
  }
}

RadialKernel kernel_expression(const std::string &src, std::optional<double> e0,
                               std::optional<double> einf) {
  Expr e = Expr::parse(src, {"t"});
  RadialKernel k;
  k.eval = [e](double t) { return e.eval1(t); };
  FittedExponents fit{0.0, 0.0};
  if (!e0 || !einf) fit = fit_exponents(k.eval);
  k.exponent_at_zero = e0 ? *e0 : fit.at_zero;
  k.exponent_at_infinity = einf ? *einf : fit.at_infinity;
  for (double b : e.breakpoints())
    if (b > 0.0 && std::isfinite(b)) k.breakpoints.push_back(b);
  bool neg = false, pos = false;
  for (int i = 0; i <= 480; ++i) {
    const double v = k.eval(std::pow(10.0, -6.0 + 12.0 * i / 480.0));
    neg = neg || v < 0.0;
    pos = pos || v > 0.0;
  }
  k.sign = neg && pos ? KernelSign::Mixed : neg ? KernelSign::Nonpositive : KernelSign::Nonnegative;
  k.label = "expr:" + src;
  return k;
}

RadialKernel kernel_from_spec(const std::string &spec) {
  std::vector<std::string> parts;
  if (spec.rfind("expr:", 0) == 0) return kernel_expression(spec.substr(5));
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.empty()) throw Error(ErrorCode::Config, "empty kernel spec");
  auto num = [&](std::size_t i) {
    if (i >= parts.size()) throw Error(ErrorCode::Config, "kernel '" + spec + "': missing field");
    const std::string &s = parts[i];
    if (s == "inf") return kInf;
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception &) {
      throw Error(ErrorCode::Config, "kernel '" + spec + "': bad number '" + s + "'");
    }
  };
  const std::string &kind = parts[0];
  if (kind == "hardy") return kernel_hardy(parts.size() > 1 ? static_cast<int>(num(1)) : 1);
  if (kind == "adjoint_hardy") return kernel_adjoint_hardy();
  if (kind == "power") return kernel_power(num(1), num(2), num(3));
  if (kind == "gaussian") return kernel_gaussian();
  if (kind == "exp_cutoff") return kernel_exp_cutoff();
  if (kind == "t_exp") return kernel_t_exp();
  if (kind == "zero") return kernel_zero();
  throw Error(ErrorCode::Config, "unknown kernel '" + spec + "'");
}

TestFunction TestFunction::separable(int n, ScalarFn radial, PointFn angular,
                                     double exponent_at_zero, double exponent_at_infinity,
                                     std::vector<double> breakpoints, Support support,
                                     std::string label, std::optional<double> angular_constant) {
  check_dim(n);
  TestFunction f;
  f.n_ = n;
  f.separable_ = true;
  f.radial_ = std::move(radial);
  f.angular_ = std::move(angular);
  f.angular_constant_ = angular_constant;
  f.e0_ = exponent_at_zero;
  f.einf_ = exponent_at_infinity;
  f.breaks_ = std::move(breakpoints);
  f.support_ = support;
  f.label_ = std::move(label);
  return f;
}

TestFunction TestFunction::radial(int n, ScalarFn radial, double exponent_at_zero,
                                  double exponent_at_infinity, std::vector<double> breakpoints,
                                  Support support, std::string label) {
  return separable(n, std::move(radial), [](const Vec &) { return 1.0; }, exponent_at_zero,
                   exponent_at_infinity, std::move(breakpoints), support, std::move(label), 1.0);
}

TestFunction TestFunction::general(int n, PointFn eval, double exponent_at_zero,
                                   double exponent_at_infinity, std::vector<double> breakpoints,
                                   Support support, std::string label) {
  check_dim(n);
  TestFunction f;
  f.n_ = n;
  f.separable_ = false;
  f.general_ = std::move(eval);
  f.e0_ = exponent_at_zero;
  f.einf_ = exponent_at_infinity;
  f.breaks_ = std::move(breakpoints);
  f.support_ = support;
  f.label_ = std::move(label);
  return f;
}

TestFunction TestFunction::zero(int n) {
  TestFunction f = radial(n, [](double) { return 0.0; }, kInf, -kInf, {}, {}, "zero");
  f.zero_ = true;
  return f;
}

double TestFunction::operator()(const Vec &x) const {
  if (zero_) return 0.0;
  if (!separable_) return general_(x);
  const double r = norm(x, n_);
  const double g = radial_(r);
  if (g == 0.0) return 0.0;
  if (angular_constant_) return g * *angular_constant_;
  if (r == 0.0) throw Error(ErrorCode::Domain, "test function: angular part undefined at 0");
  return g * angular_(rh::scaled(x, 1.0 / r));
}

TestFunction TestFunction::scaled(double c) const {
  TestFunction f = *this;
  if (c == 0.0) return zero(n_);
  if (separable_) {
    ScalarFn g = radial_;
    f.radial_ = [g, c](double r) { return c * g(r); };
  } else {
    PointFn g = general_;
    f.general_ = [g, c](const Vec &x) { return c * g(x); };
  }
  return f;
}

TestFunction TestFunction::dilated(double s) const {
  if (!(s > 0.0)) throw Error(ErrorCode::Parameter, "dilation factor must be positive");
  TestFunction f = *this;
  for (double &b : f.breaks_) b /= s;
  f.support_.r_min /= s;
  f.support_.r_max /= s;
  if (zero_) return f;
  if (separable_) {
    ScalarFn g = radial_;
    f.radial_ = [g, s](double r) { return g(s * r); };
  } else {
    PointFn g = general_;
    f.general_ = [g, s](const Vec &x) { return g(rh::scaled(x, s)); };
  }
  return f;
}

TestFunction TestFunction::times_radial_power(double beta) const {
  TestFunction f = *this;
  if (zero_) return f;
  f.e0_ += beta;
  f.einf_ += beta;
  if (separable_) {
    ScalarFn g = radial_;
    f.radial_ = [g, beta](double r) {
      const double v = g(r);
      return v == 0.0 ? 0.0 : v * std::pow(r, beta);
    };
  } else {
    PointFn g = general_;
    const int n = n_;
    f.general_ = [g, beta, n](const Vec &x) {
      const double v = g(x);
      return v == 0.0 ? 0.0 : v * std::pow(norm(x, n), beta);
    };
  }
  return f;
}

TestFunction linear_combination(double a, const TestFunction &f, double b, const TestFunction &g) {
  if (f.dim() != g.dim()) throw Error(ErrorCode::Parameter, "linear_combination: dimension mismatch");
  if (f.is_zero() || a == 0.0) return g.scaled(b);
  if (g.is_zero() || b == 0.0) return f.scaled(a);
  std::vector<double> br = f.breakpoints();
  br.insert(br.end(), g.breakpoints().begin(), g.breakpoints().end());
  TestFunction::Support s{std::min(f.support().r_min, g.support().r_min),
                          std::max(f.support().r_max, g.support().r_max)};
  const double e0 = std::min(f.exponent_at_zero(), g.exponent_at_zero());
  const double einf = std::max(f.exponent_at_infinity(), g.exponent_at_infinity());
  const std::string label = "lincomb(" + f.label() + "," + g.label() + ")";
  if (f.is_separable() && g.is_separable() && f.angular_constant() && g.angular_constant()) {
    const double ca = a * *f.angular_constant(), cb = b * *g.angular_constant();
    ScalarFn rf = f.radial_part(), rg = g.radial_part();
    return TestFunction::radial(
        f.dim(), [=](double r) { return ca * rf(r) + cb * rg(r); }, e0, einf, br, s, label);
  }
  return TestFunction::general(
      f.dim(), [=](const Vec &x) { return a * f(x) + b * g(x); }, e0, einf, br, s, label);
}

LipschitzSymbol LipschitzSymbol::power(int n, double beta, double lip_norm) {
  check_dim(n);
  if (!(beta > 0.0 && beta <= 1.0))
    throw Error(ErrorCode::Parameter, "Lipschitz exponent beta must lie in (0, 1]");
  LipschitzSymbol b;
  b.n_ = n;
  b.kind_ = Kind::Power;
  b.beta_ = beta;
  b.lip_norm_ = lip_norm;
  return b;
}

LipschitzSymbol LipschitzSymbol::linear(int n, const Vec &e) {
  check_dim(n);
  const double len = norm(e, n);
  if (std::fabs(len - 1.0) > 1e-12)
    throw Error(ErrorCode::Parameter, "linear Lipschitz symbol needs a unit direction");
  LipschitzSymbol b;
  b.n_ = n;
  b.kind_ = Kind::Linear;
  b.beta_ = 1.0;
  b.lip_norm_ = 1.0;
  b.e_ = e;
  return b;
}

LipschitzSymbol LipschitzSymbol::constant(int n, double c) {
  check_dim(n);
  LipschitzSymbol b;
  b.n_ = n;
  b.kind_ = Kind::Constant;
  b.beta_ = 1.0;
  b.lip_norm_ = 0.0;
  b.c_ = c;
  return b;
}

double LipschitzSymbol::operator()(const Vec &x) const {
  switch (kind_) {
    case Kind::Power: return std::pow(norm(x, n_), beta_);
    case Kind::Linear: {
      double s = 0.0;
      for (int i = 0; i < n_; ++i) s += x[i] * e_[i];
      return s;
    }
    case Kind::Constant: return c_;
  }
  return 0.0;
}

LipschitzSymbol LipschitzSymbol::with_declared_norm(double v) const {
  LipschitzSymbol b = *this;
  b.lip_norm_ = v;
  return b;
}

double omega_norm(const AngularProfile &omega, double r, const Weight *w) {
  const int n = omega.dim();
  if (w && w->dim() != n) throw Error(ErrorCode::Parameter, "omega_norm: dimension mismatch");
  if (!(r >= 1.0)) throw Error(ErrorCode::Parameter, "omega_norm: exponent must be >= 1");
  if (std::isinf(r)) {
    double m = 0.0;
    for (const SphereNode &p : sphere_nodes(n, sphere_levels() - 1))
      m = std::max(m, std::fabs(omega(p.x)));
    return m;
  }
  const PointFn &ang = w ? w->angular() : PointFn();
  QuadratureResult q = integrate_sphere(
      n,
      [&](const Vec &x) {
        const double v = std::pow(std::fabs(omega(x)), r);
        return ang ? v * ang(x) : v;
      },
      1e-13);
  return std::pow(require_value(q, "omega_norm"), 1.0 / r);
}

}  // namespace rh
