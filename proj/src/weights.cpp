#include "weights.hpp"

#include <algorithm>

#include "quadrature.hpp"

namespace rh {

Weight::Weight(int n, double gamma, PointFn angular, std::optional<double> lower_bound,
               std::string label)
    : n_(n), gamma_(gamma), angular_(std::move(angular)), lower_bound_(lower_bound),
      label_(std::move(label)) {
  check_dim(n);
  if (!std::isfinite(gamma)) throw Error(ErrorCode::Parameter, "weight: gamma must be finite");
  if (!angular_) throw Error(ErrorCode::Parameter, "weight: missing angular part");
  if (lower_bound_ && !(*lower_bound_ > 0.0))
    throw Error(ErrorCode::Parameter, "weight: angular lower bound must be positive");

  QuadratureResult m = integrate_sphere(n, angular_, 1e-13);
  if (!m.converged || !std::isfinite(m.value) || !(m.value > 0.0))
    throw Error(ErrorCode::Domain, "weight: angular mass must be finite and positive");
  sphere_mass_ = m.value;

  const auto &nodes = sphere_nodes(n, sphere_levels() - 2);
  double lo = kInf, hi = -kInf;
  for (const SphereNode &p : nodes) {
    const double v = angular_(p.x);
    if (!(v > 0.0) || !std::isfinite(v))
      throw Error(ErrorCode::Domain, "weight: angular part must be positive and finite");
    if (lower_bound_ && v < *lower_bound_)
      throw Error(ErrorCode::Domain, "weight: angular part falls below the declared lower bound");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  sampled_min_ = lo;
  constant_ = hi - lo <= 1e-15 * hi;
}

Weight Weight::power(int n, double gamma) {
  return Weight(n, gamma, [](const Vec &) { return 1.0; }, 1.0, "power");
}

double Weight::eval(const Vec &x) const {
  const double r = norm(x, n_);
  if (r == 0.0) throw Error(ErrorCode::Domain, "weight: undefined at the origin");
  return std::pow(r, gamma_) * angular_(scaled(x, 1.0 / r));
}

void Weight::require_integrable() const {
  if (!(gamma_ > -n_))
    throw Error(ErrorCode::NonIntegrable, "weight: gamma <= -n is not locally integrable");
}

double Weight::ball_mass(double R) const {
  require_integrable();
  if (!(R > 0.0)) throw Error(ErrorCode::Parameter, "ball_mass: radius must be positive");
  return std::pow(R, n_ + gamma_) * sphere_mass_ / (n_ + gamma_);
}

double Weight::annulus_mass(int k) const {
  return ball_mass(std::ldexp(1.0, k)) - ball_mass(std::ldexp(1.0, k - 1));
}

double Weight::dilation_mass_ratio(double t) const {
  require_integrable();
  if (!(t > 0.0)) throw Error(ErrorCode::Parameter, "dilation_mass_ratio: t must be positive");
  return std::pow(t, -(gamma_ + n_));
}

}  // namespace rh
