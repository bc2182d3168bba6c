#include "extremals.hpp"

namespace rh {

namespace {

void require_extremal_omega(const AngularProfile &omega, const Weight &w, double r_exp) {
  if (omega.dim() != w.dim()) throw Error(ErrorCode::Parameter, "extremal: dimension mismatch");
  if (!omega.nonvanishing())
    throw Error(ErrorCode::Domain, "extremal: Omega must be nonvanishing");
  if (!(r_exp > 1.0) || !std::isfinite(r_exp))
    throw Error(ErrorCode::Parameter, "extremal: exponent must satisfy 1 < p < inf");
}

// |Omega|^{r-2} Omega with r the conjugate exponent
PointFn matched_angular(const AngularProfile &omega, double r) {
  const PointFn g = omega.fn();
  return [g, r](const Vec &x) {
    const double v = g(x);
    return std::pow(std::fabs(v), r - 2.0) * v;
  };
}

std::optional<double> matched_constant(const AngularProfile &omega, double r) {
  if (!omega.constant_value()) return std::nullopt;
  const double v = *omega.constant_value();
  return std::pow(std::fabs(v), r - 2.0) * v;
}

}  // namespace

ExtremalFamily morrey_extremal(const AngularProfile &omega, const Weight &w, double lambda,
                               double p) {
  require_extremal_omega(omega, w, p);
  const int n = w.dim();
  const double gamma = w.gamma();
  if (!(gamma > -n)) throw Error(ErrorCode::NonIntegrable, "Morrey extremal: need gamma > -n");
  if (!(1.0 + lambda * p > 0.0))
    throw Error(ErrorCode::Parameter, "Morrey extremal: need 1 + lambda p > 0");
  const double pc = conjugate(p);
  const double e = (n + gamma) * lambda;
  TestFunction f = TestFunction::separable(
      n, [e](double r) { return e == 0.0 ? 1.0 : std::pow(r, e); }, matched_angular(omega, pc), e,
      e, {}, {}, "morrey_extremal", matched_constant(omega, pc));
  const double ws = w.sphere_mass();
  const double norm_w = omega_norm(omega, pc, &w);
  const double closed = std::pow((n + gamma) / ws, lambda) * std::pow(1.0 + lambda * p, -1.0 / p) *
                        std::pow(ws, -1.0 / p) * std::pow(norm_w, pc / p);
  return {ExtremalKind::Morrey,
          {{"n", n}, {"gamma", gamma}, {"lambda", lambda}, {"p", p}},
          f,
          closed,
          e,
          {}};
}

ExtremalFamily herz_extremal(const AngularProfile &omega, const Weight &w, double q, double alpha,
                             int m, double p) {
  require_extremal_omega(omega, w, q);
  if (m < 1 || m > 20) throw Error(ErrorCode::Parameter, "Herz extremal: m must lie in [1, 20]");
  const double eps = std::ldexp(1.0, -m);
  if (alpha + eps == 0.0) throw Error(ErrorCode::Parameter, "Herz extremal: alpha + 2^-m = 0");
  if (!(p > 0.0)) throw Error(ErrorCode::Parameter, "Herz extremal: need p > 0");
  const int n = w.dim();
  const double gamma = w.gamma();
  const double qc = conjugate(q);
  const double e = -alpha - gamma / q - n / q - eps;
  TestFunction f = TestFunction::separable(
      n, [e](double r) { return r >= 1.0 ? std::pow(r, e) : 0.0; }, matched_angular(omega, qc),
      kInf, e, {1.0}, {1.0, kInf}, "herz_extremal", matched_constant(omega, qc));
  const double s = alpha + eps;
  const double amp = std::pow(std::fabs((std::exp2(q * s) - 1.0) / (s * q)), 1.0 / q) *
                     std::pow(omega_norm(omega, qc, &w), qc / q);
  auto chunk = [amp, s](int k) { return k >= 1 ? std::exp2(-k * s) * amp : 0.0; };
  // sum_{k>=1} 2^{k alpha p} chunk_k^p = amp^p sum_{k>=1} 2^{-k p eps}
  const double r = std::exp2(-p * eps);
  const double closed = amp * std::pow(r / (1.0 - r), 1.0 / p);
  return {ExtremalKind::Herz,
          {{"n", n}, {"gamma", gamma}, {"q", q}, {"alpha", alpha}, {"m", m}, {"p", p}},
          f,
          closed,
          std::nullopt,
          chunk};
}

ExtremalFamily morrey_herz_extremal(const AngularProfile &omega, const Weight &w, double q,
                                    double alpha, double lambda, double p) {
  require_extremal_omega(omega, w, q);
  if (!(lambda > 0.0)) throw Error(ErrorCode::Parameter, "Morrey-Herz extremal: need lambda > 0");
  if (!(p > 0.0)) throw Error(ErrorCode::Parameter, "Morrey-Herz extremal: need p > 0");
  const int n = w.dim();
  const double gamma = w.gamma();
  const double qc = conjugate(q);
  const double e = -alpha - n / q - gamma / q + lambda;
  TestFunction f = TestFunction::separable(
      n, [e](double r) { return e == 0.0 ? 1.0 : std::pow(r, e); }, matched_angular(omega, qc), e,
      e, {}, {}, "morrey_herz_extremal", matched_constant(omega, qc));
  const double d = lambda - alpha;
  const double base = d == 0.0 ? std::pow(std::log(2.0), 1.0 / q)
                               : std::pow(std::fabs((1.0 - std::exp2(-q * d)) / (q * d)), 1.0 / q);
  const double amp = base * std::pow(omega_norm(omega, qc, &w), qc / q);
  auto chunk = [amp, d](int k) { return std::exp2(k * d) * amp; };
  // terms 2^{k alpha p} chunk_k^p = amp^p 2^{k lambda p}; the k0 sup is scale invariant
  const double closed = amp * std::pow(1.0 - std::exp2(-lambda * p), -1.0 / p);
  return {ExtremalKind::MorreyHerz,
          {{"n", n}, {"gamma", gamma}, {"q", q}, {"alpha", alpha}, {"lambda", lambda}, {"p", p}},
          f,
          closed,
          e,
          chunk};
}

TruncationSet herz_truncation_set(int m) {
  if (m < 1) throw Error(ErrorCode::Parameter, "S_m needs m >= 1");
  return {std::ldexp(1.0, -(m - 1))};
}

}  // namespace rh
