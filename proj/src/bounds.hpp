#pragma once

#include <map>
#include <optional>
#include <string>

#include "functions.hpp"
#include "weights.hpp"

namespace rh {

struct BoundConstant {
  std::string id;  // c1, c1_1, c2, c2_proof_alpha, c3, c4, c5_herz, c5_mherz, s_m
  double value = 0.0;  // +inf when divergent
  bool divergent = false;
  double abs_error = 0.0;
  std::map<std::string, double> params;
};

// int |Phi(t)| t^{-1-(n+gamma) lambda} dt
BoundConstant c1(const RadialKernel &phi, int n, double gamma, double lambda, double tol = 1e-9);
// Same integral without the absolute value.
BoundConstant c1_1(const RadialKernel &phi, int n, double gamma, double lambda, double tol = 1e-9);
// int |Phi(1/t)| t^{1-2n-gamma/q-n/q[-alpha]} dt; id c2_proof_alpha when alpha is given
BoundConstant c2(const RadialKernel &phi, int n, double gamma, double q,
                 std::optional<double> alpha = std::nullopt, double tol = 1e-9);
// int |Phi(t)| t^{-(1-gamma/q-n/q+lambda-alpha)} dt
BoundConstant c3(const RadialKernel &phi, int n, double gamma, double q, double lambda,
                 double alpha, double tol = 1e-9);
// int |Phi(t)| t^{-1-(gamma+n)(lambda1-1)/p} (1+1/t)^beta dt; lambda, when given,
// must reproduce lambda1 = lambda - beta p/(n+gamma)
BoundConstant c4(const RadialKernel &phi, int n, double gamma, double p, double lambda1,
                 double beta, std::optional<double> lambda = std::nullopt, double tol = 1e-9);

enum class C5Variant { Herz, MorreyHerz };
// Herz: t^{-(1-gamma/q-n/q-alpha1(1+gamma/n))}; Morrey-Herz: t^{-(1-gamma/q-n/q+(lambda-alpha1)(1+gamma/n))};
// both times |Phi(t)| (1+1/t)^beta. alpha2, when given, must satisfy alpha1 = alpha2 + n beta/(n+gamma).
BoundConstant c5(const RadialKernel &phi, int n, double gamma, double q, double alpha1,
                 double beta, C5Variant variant, double lambda = 0.0,
                 std::optional<double> alpha2 = std::nullopt, double tol = 1e-9);

// int over S_m = [2^{-(m-1)}, inf) of |Phi(1/u)| u^{1-2n-gamma/q-n/q-2^{-m}} du
BoundConstant herz_truncated_constant(const RadialKernel &phi, int n, double gamma, double q,
                                      int m, double tol = 1e-9);

// ||Omega||_r^r / ||Omega||_{r, w dsigma}^{r/p} with r = p'
double lower_bound_factor(const AngularProfile &omega, double r, const Weight &w);

}  // namespace rh
