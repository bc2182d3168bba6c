#pragma once

#include "functions.hpp"

namespace rh {

class HausdorffOperator {
 public:
  HausdorffOperator(RadialKernel phi, AngularProfile omega);

  int dim() const { return omega_.dim(); }
  const RadialKernel &phi() const { return phi_; }
  const AngularProfile &omega() const { return omega_; }

 private:
  RadialKernel phi_;
  AngularProfile omega_;
};

struct CommutatorOperator {
  HausdorffOperator base;
  LipschitzSymbol symbol;
};

enum class ApplyPath { Auto, Separable, Nested };

// Polar form int_0^inf Phi(t)/t int_S Omega(y') f(|x| y'/t) dsigma dt.
// tol is absolute; a relative floor of 1e-12 always applies.
double hausdorff_apply(const HausdorffOperator &op, const TestFunction &f, const Vec &x,
                       double tol = 1e-12, ApplyPath path = ApplyPath::Auto);

// Direct region integrals, no kernel machinery.
double hardy_apply(const TestFunction &f, const Vec &x, int n, double tol = 1e-12);
double adjoint_hardy_apply(const TestFunction &f, const Vec &x, int n, double tol = 1e-12);

double commutator_apply(const CommutatorOperator &op, const TestFunction &f, const Vec &x,
                        double tol = 1e-12, ApplyPath path = ApplyPath::Auto);

struct LipschitzCheck {
  double bound = 0.0;
  double actual = 0.0;
  bool holds = true;
};
// ||b|| |x|^beta (1 + 1/t)^beta against |b(x) - b(|x| y'/t)|.
LipschitzCheck lipschitz_pointwise_bound(const LipschitzSymbol &b, const Vec &x, double t,
                                         const Vec &yp);

// H f as a radial function; f must be separable.
TestFunction hausdorff_image(const HausdorffOperator &op, const TestFunction &f);
// Commutator image for a radial power symbol and separable f (radial output),
// otherwise a general function evaluated by nested quadrature.
TestFunction commutator_image(const CommutatorOperator &op, const TestFunction &f);

}  // namespace rh
