#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"

namespace rh {

class Weight;

// Rough symbol Omega on S^{n-1}, real valued.
class AngularProfile {
 public:
  AngularProfile(int n, PointFn eval, bool nonvanishing, std::string label = "",
                 std::optional<double> constant = std::nullopt);
  static AngularProfile constant(int n, double c);
  // Expression in x, y, z (coordinates of x'), theta (azimuth) and phi (polar angle).
  static AngularProfile expression(int n, const std::string &src);

  int dim() const { return n_; }
  double operator()(const Vec &xp) const { return eval_(xp); }
  const PointFn &fn() const { return eval_; }
  bool nonvanishing() const { return nonvanishing_; }
  const std::string &label() const { return label_; }
  std::optional<double> constant_value() const { return constant_; }
  AngularProfile scaled(double c) const;

 private:
  int n_;
  PointFn eval_;
  bool nonvanishing_;
  std::string label_;
  std::optional<double> constant_;
};

PointFn angular_expression(int n, const std::string &src);

enum class KernelSign { Nonnegative, Nonpositive, Mixed };
const char *kernel_sign_name(KernelSign s);

// Phi(t) on (0, inf). Exponent +inf at zero (-inf at infinity) means Phi
// vanishes there identically or faster than any power.
struct RadialKernel {
  ScalarFn eval;
  double exponent_at_zero = 0.0;
  double exponent_at_infinity = 0.0;
  KernelSign sign = KernelSign::Mixed;
  std::vector<double> breakpoints;
  std::string label;

  double operator()(double t) const { return eval(t); }
};

RadialKernel kernel_hardy(int n);
RadialKernel kernel_adjoint_hardy();
RadialKernel kernel_power(double a, double t1, double t2);
RadialKernel kernel_gaussian();
RadialKernel kernel_exp_cutoff();  // e^{-t-1/t}
RadialKernel kernel_t_exp();       // t e^{-t}
RadialKernel kernel_zero();
// Exponents not given are fitted from log-log slopes.
RadialKernel kernel_expression(const std::string &src, std::optional<double> e0 = std::nullopt,
                               std::optional<double> einf = std::nullopt);
// "hardy:N", "adjoint_hardy", "power:a:t1:t2", "gaussian", "exp_cutoff",
// "t_exp", "zero" or "expr:<expression in t>".
RadialKernel kernel_from_spec(const std::string &spec);

// Checks the declared sign against sampled values; throws Parameter.
void validate_kernel(const RadialKernel &k);

struct FittedExponents {
  double at_zero;
  double at_infinity;
};
FittedExponents fit_exponents(const ScalarFn &g);

struct RadialSupport {
  double r_min = 0.0, r_max = kInf;
};

// Operand f on R^n. Separable functions evaluate as radial(|x|) * angular(x/|x|).
class TestFunction {
 public:
  using Support = RadialSupport;

  static TestFunction separable(int n, ScalarFn radial, PointFn angular,
                                double exponent_at_zero, double exponent_at_infinity,
                                std::vector<double> breakpoints = {}, Support support = {},
                                std::string label = "",
                                std::optional<double> angular_constant = std::nullopt);
  static TestFunction radial(int n, ScalarFn radial, double exponent_at_zero,
                             double exponent_at_infinity, std::vector<double> breakpoints = {},
                             Support support = {}, std::string label = "");
  static TestFunction general(int n, PointFn eval, double exponent_at_zero,
                              double exponent_at_infinity, std::vector<double> breakpoints = {},
                              Support support = {}, std::string label = "");
  static TestFunction zero(int n);

  int dim() const { return n_; }
  bool is_separable() const { return separable_; }
  bool is_zero() const { return zero_; }
  double operator()(const Vec &x) const;
  // Separable parts; angular() returns a constant 1 for radial functions.
  const ScalarFn &radial_part() const { return radial_; }
  const PointFn &angular_part() const { return angular_; }
  std::optional<double> angular_constant() const { return angular_constant_; }
  // Power-law behaviour of |f| near 0 and at infinity; +inf / -inf when it vanishes there.
  double exponent_at_zero() const { return e0_; }
  double exponent_at_infinity() const { return einf_; }
  const std::vector<double> &breakpoints() const { return breaks_; }
  Support support() const { return support_; }
  const std::string &label() const { return label_; }

  TestFunction scaled(double c) const;
  // f(s x)
  TestFunction dilated(double s) const;
  // |x|^beta f(x)
  TestFunction times_radial_power(double beta) const;

 private:
  int n_ = 1;
  bool separable_ = true;
  bool zero_ = false;
  ScalarFn radial_;
  PointFn angular_;
  PointFn general_;
  std::optional<double> angular_constant_;
  double e0_ = 0.0, einf_ = -kInf;
  std::vector<double> breaks_;
  Support support_;
  std::string label_;
};

TestFunction linear_combination(double a, const TestFunction &f, double b, const TestFunction &g);

class LipschitzSymbol {
 public:
  enum class Kind { Power, Linear, Constant };

  static LipschitzSymbol power(int n, double beta, double lip_norm = 1.0);
  static LipschitzSymbol linear(int n, const Vec &e);
  static LipschitzSymbol constant(int n, double c);

  int dim() const { return n_; }
  Kind kind() const { return kind_; }
  double beta() const { return beta_; }
  double lip_norm() const { return lip_norm_; }
  double operator()(const Vec &x) const;
  // Same symbol with a different declared norm (used by negative controls).
  LipschitzSymbol with_declared_norm(double v) const;

 private:
  int n_ = 1;
  Kind kind_ = Kind::Constant;
  double beta_ = 1.0, lip_norm_ = 1.0, c_ = 0.0;
  Vec e_{};
};

// (int_S |Omega|^r [w angular] dsigma)^{1/r}; r = inf takes the node maximum.
double omega_norm(const AngularProfile &omega, double r, const Weight *w = nullptr);

// Holder conjugate; 1 maps to inf.
inline double conjugate(double p) { return p == 1.0 ? kInf : p / (p - 1.0); }

}  // namespace rh
