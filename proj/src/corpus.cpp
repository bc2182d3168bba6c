#include "corpus.hpp"

#include <string>

namespace rh {

namespace {

struct RadialPart {
  ScalarFn g;
  double e0, einf;
  std::vector<double> breaks;
  RadialSupport support;
  std::string label;
};

RadialPart shell(double a, double b) {
  return {[a, b](double r) { return r >= a && r <= b ? 1.0 : 0.0; },
          a > 0.0 ? kInf : 0.0,
          -kInf,
          {a, b},
          {a, b},
          "shell[" + std::to_string(a) + "," + std::to_string(b) + "]"};
}

RadialPart bump(double a, double r1, double r2) {
  return {[a, r1, r2](double r) { return r >= r1 && r <= r2 ? std::pow(r, a) : 0.0; },
          r1 > 0.0 ? kInf : a,
          -kInf,
          {r1, r2},
          {r1, r2},
          "bump r^" + std::to_string(a) + "[" + std::to_string(r1) + "," + std::to_string(r2) + "]"};
}

RadialPart trunc_exp(double s, double R) {
  return {[s, R](double r) { return r <= R ? std::exp(-s * r) : 0.0; },
          0.0,
          -kInf,
          {R},
          {0.0, R},
          "exp(-" + std::to_string(s) + "r)[0," + std::to_string(R) + "]"};
}

std::vector<RadialPart> radial_parts() {
  return {shell(0.0, 1.0),        shell(0.5, 1.0),     shell(1.0, 8.0),
          bump(1.0, 0.5, 2.0),    bump(-0.3, 0.0, 1.0), bump(2.0, 1.0, 3.0),
          trunc_exp(1.0, 4.0),    trunc_exp(0.25, 16.0), shell(0.0625, 0.125),
          bump(0.5, 0.0, 0.25),   trunc_exp(3.0, 1.0)};
}

}  // namespace

std::vector<TestFunction> default_corpus(const AngularProfile &omega, double r, int count) {
  const int n = omega.dim();
  const std::vector<RadialPart> rad = radial_parts();

  struct Ang {
    PointFn h;
    std::optional<double> c;
    std::string label;
  };
  std::vector<Ang> ang;
  ang.push_back({[](const Vec &) { return 1.0; }, 1.0, "1"});
  ang.push_back({angular_expression(n, "2 + cos(theta)"), std::nullopt, "2+cos(theta)"});
  {
    const PointFn g = omega.fn();
    std::optional<double> c;
    if (omega.constant_value()) {
      const double v = *omega.constant_value();
      c = std::isinf(r) ? (v > 0 ? 1.0 : v < 0 ? -1.0 : 0.0) : std::pow(std::fabs(v), r - 2.0) * v;
    }
    PointFn h = [g, r](const Vec &x) {
      const double v = g(x);
      if (std::isinf(r)) return v > 0 ? 1.0 : v < 0 ? -1.0 : 0.0;
      if (v == 0.0) return 0.0;
      return std::pow(std::fabs(v), r - 2.0) * v;
    };
    ang.push_back({h, c, "matched"});
  }

  // (i mod |rad|, i mod 3) runs through distinct pairs since gcd(11, 3) = 1
  std::vector<TestFunction> out;
  for (int i = 0; i < count; ++i) {
    const RadialPart &p = rad[i % rad.size()];
    const Ang &a = ang[i % ang.size()];
    out.push_back(TestFunction::separable(n, p.g, a.h, p.e0, p.einf, p.breaks, p.support,
                                          p.label + " * " + a.label, a.c));
  }
  return out;
}

}  // namespace rh
