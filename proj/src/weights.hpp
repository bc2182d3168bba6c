#pragma once

#include <optional>

#include "common.hpp"

namespace rh {

// Absolutely homogeneous weight |x|^gamma * angular(x/|x|).
class Weight {
 public:
  Weight(int n, double gamma, PointFn angular, std::optional<double> lower_bound = std::nullopt,
         std::string label = "");
  static Weight power(int n, double gamma);

  int dim() const { return n_; }
  double gamma() const { return gamma_; }
  const PointFn &angular() const { return angular_; }
  std::optional<double> lower_bound() const { return lower_bound_; }
  bool angular_is_constant() const { return constant_; }
  const std::string &label() const { return label_; }

  // int_{S^{n-1}} angular dsigma
  double sphere_mass() const { return sphere_mass_; }
  // Smallest angular value over the densest check grid.
  double sampled_min() const { return sampled_min_; }
  // Declared lower bound if present, otherwise the sampled minimum.
  double angular_floor() const { return lower_bound_ ? *lower_bound_ : sampled_min_; }

  double eval(const Vec &x) const;
  double ball_mass(double R) const;
  double annulus_mass(int k) const;
  double dilation_mass_ratio(double t) const;

 private:
  void require_integrable() const;

  int n_;
  double gamma_;
  PointFn angular_;
  std::optional<double> lower_bound_;
  std::string label_;
  bool constant_ = false;
  double sphere_mass_ = 0.0;
  double sampled_min_ = 0.0;
};

}  // namespace rh
