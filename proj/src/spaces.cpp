#include "spaces.hpp"

#include <algorithm>
#include <vector>

namespace rh {

namespace {

constexpr double kShellRelTol = 1e-11;
constexpr double kFlatTol = 1e-9;

// r -> r^{n-1+gamma} int_S |f(r x')|^q w(x') dsigma, the radial density of |f|^q w.
class Density {
 public:
  Density(const TestFunction &f, double q, const Weight &w) : f_(f), q_(q), w_(w) {
    if (f.dim() != w.dim()) throw Error(ErrorCode::Parameter, "norm: weight dimension mismatch");
    if (!(q >= 1.0) || !std::isfinite(q))
      throw Error(ErrorCode::Parameter, "norm: exponent q must satisfy 1 <= q < inf");
    const int n = f.dim();
    if (f.is_separable()) {
      if (f.angular_constant()) {
        ang_mass_ = std::pow(std::fabs(*f.angular_constant()), q) * w.sphere_mass();
      } else {
        const PointFn &h = f.angular_part();
        const PointFn &a = w.angular();
        QuadratureResult s = integrate_sphere(
            n, [&](const Vec &x) { return std::pow(std::fabs(h(x)), q) * a(x); }, 1e-14);
        ang_mass_ = s.value;
      }
    }
    e0_ = n - 1 + w.gamma() + q * f.exponent_at_zero();
    einf_ = n - 1 + w.gamma() + q * f.exponent_at_infinity();
    if (std::isnan(e0_)) e0_ = kInf;
    if (std::isnan(einf_)) einf_ = -kInf;
    for (double b : f.breakpoints())
      if (b > 0.0 && std::isfinite(b)) breaks_.push_back(b);
    const auto s = f.support();
    if (s.r_min > 0.0) breaks_.push_back(s.r_min);
    if (std::isfinite(s.r_max)) breaks_.push_back(s.r_max);
    std::sort(breaks_.begin(), breaks_.end());
  }

  double operator()(double r) const {
    if (f_.is_zero() || !(r > 0.0)) return 0.0;
    const auto s = f_.support();
    if (r < s.r_min || r > s.r_max) return 0.0;
    const int n = f_.dim();
    double sph;
    if (f_.is_separable()) {
      const double g = f_.radial_part()(r);
      if (g == 0.0) return 0.0;
      sph = std::pow(std::fabs(g), q_) * ang_mass_;
    } else {
      const PointFn &a = w_.angular();
      sph = integrate_sphere(
                n, [&](const Vec &x) { return std::pow(std::fabs(f_(scaled(x, r))), q_) * a(x); },
                1e-300)
                .value;
      if (sph == 0.0) return 0.0;
    }
    return std::pow(r, n - 1 + w_.gamma()) * sph;
  }

  // int_a^b with 0 < a < b < inf
  double mass(double a, double b) const {
    const auto s = f_.support();
    a = std::max(a, s.r_min);
    b = std::min(b, s.r_max);
    if (f_.is_zero() || !(b > a)) return 0.0;
    std::vector<double> cuts;
    for (double c : breaks_)
      if (c > a && c < b) cuts.push_back(c);
    ScalarFn g = [this](double r) { return (*this)(r); };
    return integrate_interval(g, a, b, cuts, kShellRelTol).value;
  }

  // int_0^R
  QuadratureResult inner(double R) const {
    QuadratureResult res;
    res.converged = true;
    const auto s = f_.support();
    if (f_.is_zero() || R <= s.r_min) return res;
    if (s.r_min > 0.0) {
      res.value = mass(s.r_min, R);
      return res;
    }
    RadialIntegrand ri;
    ri.eval = [this, R](double r) { return r <= R ? (*this)(r) : 0.0; };
    ri.exponent_at_zero = e0_;
    ri.exponent_at_infinity = -kInf;
    ri.breakpoints = breaks_;
    ri.breakpoints.push_back(R);
    HalflineOptions opt;
    opt.rel_tol = 1e-12;
    return integrate_halfline(ri, 1e-300, opt);
  }

  QuadratureResult all() const {
    QuadratureResult res;
    res.converged = true;
    if (f_.is_zero()) return res;
    const auto s = f_.support();
    if (s.r_min > 0.0 && std::isfinite(s.r_max)) {
      res.value = mass(s.r_min, s.r_max);
      return res;
    }
    RadialIntegrand ri;
    ri.eval = [this](double r) { return (*this)(r); };
    ri.exponent_at_zero = s.r_min > 0.0 ? kInf : e0_;
    ri.exponent_at_infinity = std::isfinite(s.r_max) ? -kInf : einf_;
    ri.breakpoints = breaks_;
    HalflineOptions opt;
    opt.rel_tol = 1e-12;
    return integrate_halfline(ri, 1e-300, opt);
  }

 private:
  const TestFunction &f_;
  double q_;
  const Weight &w_;
  double ang_mass_ = 0.0;
  double e0_ = 0.0, einf_ = 0.0;
  std::vector<double> breaks_;
};

double pw(double x, double e) { return x == 0.0 ? 0.0 : std::pow(x, e); }

void check_window(const Window &win) {
  if (win.k_max - win.k_min < 2) throw Error(ErrorCode::Parameter, "dyadic window too narrow");
}

// Annulus terms T_k = (P(k) ||f chi_k||_{q,w})^p for k in the window.
std::vector<double> herz_terms(const Density &d, double p, double q,
                               const std::function<double(int)> &prefactor, const Window &win) {
  std::vector<double> t;
  for (int k = win.k_min; k <= win.k_max; ++k) {
    const double m = d.mass(std::ldexp(1.0, k - 1), std::ldexp(1.0, k));
    t.push_back(pw(prefactor(k) * pw(m, 1.0 / q), p));
  }
  return t;
}

// Geometric continuation of the last two terms; returns (sum, ratio) and flags non-decay.
struct Tail {
  double sum = 0.0;
  double ratio = 0.0;
  double last = 0.0;
  bool diverges = false;
};

Tail geometric_tail(double prev, double last) {
  Tail t;
  t.last = last;
  if (last == 0.0) return t;
  if (prev == 0.0) {
    t.diverges = true;
    t.sum = kInf;
    return t;
  }
  t.ratio = last / prev;
  if (t.ratio >= 1.0) {
    t.diverges = true;
    t.sum = kInf;
    return t;
  }
  t.sum = last * t.ratio / (1.0 - t.ratio);
  return t;
}

NormResult herz_generic(const TestFunction &f, double p, double q, const Weight &w,
                        const std::function<double(int)> &prefactor, const Window &win) {
  check_window(win);
  if (!(p > 0.0) || !std::isfinite(p)) throw Error(ErrorCode::Parameter, "Herz: need 0 < p < inf");
  Density d(f, q, w);
  NormResult res;
  res.k_min = win.k_min;
  res.k_max = win.k_max;
  if (f.is_zero()) return res;
  const std::vector<double> t = herz_terms(d, p, q, prefactor, win);
  double s = 0.0;
  for (double v : t) s += v;
  const std::size_t m = t.size();
  const Tail right = geometric_tail(t[m - 2], t[m - 1]);
  const Tail left = geometric_tail(t[1], t[0]);
  res.value = pw(s, 1.0 / p);
  if (right.diverges || left.diverges) {
    res.divergent = true;
    res.tail_bound = kInf;
  } else {
    res.tail_bound = pw(s + right.sum + left.sum, 1.0 / p) - res.value;
  }
  return res;
}

NormResult morrey_herz_generic(const TestFunction &f, double p, double q, const Weight &w,
                               const std::function<double(int)> &prefactor,
                               const std::function<double(int)> &sup_prefactor,
                               const Window &win) {
  check_window(win);
  if (!(p > 0.0) || !std::isfinite(p))
    throw Error(ErrorCode::Parameter, "Morrey-Herz: need 0 < p < inf");
  Density d(f, q, w);
  NormResult res;
  res.k_min = win.k_min;
  res.k_max = win.k_max;
  if (f.is_zero()) return res;
  const std::vector<double> t = herz_terms(d, p, q, prefactor, win);
  const std::size_t m = t.size();
  const Tail left = geometric_tail(t[1], t[0]);

  double s = 0.0, best = 0.0, best_ext = 0.0;
  int arg = win.k_min;
  for (std::size_t i = 0; i < m; ++i) {
    s += t[i];
    const int k0 = win.k_min + static_cast<int>(i);
    const double v = sup_prefactor(k0) * pw(s, 1.0 / p);
    if (v > best) {
      best = v;
      arg = k0;
    }
    if (!left.diverges) best_ext = std::max(best_ext, sup_prefactor(k0) * pw(s + left.sum, 1.0 / p));
  }
  res.value = best;
  res.attained_at = arg;
  if (left.diverges) {
    res.divergent = true;
    res.tail_bound = kInf;
    return res;
  }

  constexpr int kSteps = 200;
  bool grows = false;
  // k0 above the window: terms continue with the fitted ratio (which may exceed 1)
  if (t[m - 1] > 0.0 && t[m - 2] > 0.0) {
    const double rho = t[m - 1] / t[m - 2];
    const double qr = sup_prefactor(win.k_max) / sup_prefactor(win.k_max - 1);
    double term = t[m - 1], sum = s + left.sum, pre = sup_prefactor(win.k_max);
    double prev = pre * pw(sum, 1.0 / p);
    for (int i = 0; i < kSteps; ++i) {
      term *= rho;
      sum += term;
      pre *= qr;
      const double v = pre * pw(sum, 1.0 / p);
      if (!std::isfinite(v)) {
        grows = true;
        break;
      }
      best_ext = std::max(best_ext, v);
      if (i == kSteps - 1 && v > prev * (1.0 + kFlatTol)) grows = true;
      prev = v;
    }
  }
  // k0 below the window: only the left tail remains in the partial sums
  if (t[0] > 0.0 && left.ratio > 0.0) {
    const double ql = sup_prefactor(win.k_min) / sup_prefactor(win.k_min + 1);
    double tail = left.sum, pre = sup_prefactor(win.k_min);
    double prev = best_ext;
    for (int i = 0; i < kSteps && tail > 0.0; ++i) {
      pre *= ql;
      const double v = pre * pw(tail, 1.0 / p);
      if (!std::isfinite(v)) {
        grows = true;
        break;
      }
      best_ext = std::max(best_ext, v);
      if (i == kSteps - 1 && v > prev * (1.0 + kFlatTol)) grows = true;
      prev = v;
      tail *= left.ratio;
    }
  }
  if (grows) {
    res.divergent = true;
    res.tail_bound = kInf;
  } else {
    res.tail_bound = std::max(0.0, best_ext - best);
  }
  return res;
}

// sup_R (mass(R)^{-e} int_{B_R} |f|^p w)^{1/p} on R = 2^{j/4}
NormResult morrey_generic(const TestFunction &f, double p, const Weight &w_int,
                          const Weight &w_mass, double e, const Window &win) {
  check_window(win);
  Density d(f, p, w_int);
  NormResult res;
  res.k_min = win.k_min;
  res.k_max = win.k_max;
  if (f.is_zero()) return res;
  const int j0 = 4 * win.k_min, j1 = 4 * win.k_max;
  auto radius = [](int j) { return std::exp2(0.25 * j); };
  QuadratureResult first = d.inner(radius(j0));
  if (first.status == QuadStatus::Divergent) {
    res.value = kInf;
    res.divergent = true;
    res.tail_bound = kInf;
    return res;
  }
  double acc = first.value;
  std::vector<double> v;
  for (int j = j0; j <= j1; ++j) {
    if (j > j0) acc += d.mass(radius(j - 1), radius(j));
    v.push_back(pw(acc / std::pow(w_mass.ball_mass(radius(j)), e), 1.0 / p));
  }
  std::size_t arg = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[arg]) arg = i;
  res.value = v[arg];
  res.attained_at = radius(j0 + static_cast<int>(arg));
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > 0.0 && v[i - 1] > 0.0)
      res.grid_factor = std::max(res.grid_factor, std::max(v[i] / v[i - 1], v[i - 1] / v[i]));
  const std::size_t m = v.size();
  const bool grows_right = v[m - 1] > v[m - 2] * (1.0 + kFlatTol);
  const bool grows_left = v[0] > v[1] * (1.0 + kFlatTol);
  if (grows_left || grows_right) {
    res.divergent = true;
    res.tail_bound = kInf;
  }
  return res;
}

void need(const std::optional<double> &v, const char *name, SpaceKind k) {
  if (!v)
    throw Error(ErrorCode::Parameter,
                std::string(space_kind_name(k)) + ": missing parameter " + name);
}
void forbid(bool present, const char *name, SpaceKind k) {
  if (present)
    throw Error(ErrorCode::Parameter,
                std::string(space_kind_name(k)) + ": parameter " + name + " does not apply");
}

}  // namespace

const char *space_kind_name(SpaceKind k) {
  switch (k) {
    case SpaceKind::Lq: return "lq";
    case SpaceKind::CentralMorrey: return "central_morrey";
    case SpaceKind::Herz: return "herz";
    case SpaceKind::MorreyHerz: return "morrey_herz";
    case SpaceKind::TwoWeightMorrey: return "two_weight_morrey";
    case SpaceKind::TwoWeightHerz: return "two_weight_herz";
    case SpaceKind::TwoWeightMorreyHerz: return "two_weight_morrey_herz";
  }
  return "?";
}

SpaceKind space_kind_from_name(const std::string &s) {
  for (SpaceKind k : {SpaceKind::Lq, SpaceKind::CentralMorrey, SpaceKind::Herz,
                      SpaceKind::MorreyHerz, SpaceKind::TwoWeightMorrey, SpaceKind::TwoWeightHerz,
                      SpaceKind::TwoWeightMorreyHerz})
    if (s == space_kind_name(k)) return k;
  throw Error(ErrorCode::Config, "unknown space kind '" + s + "'");
}

void SpaceSpec::validate() const {
  const SpaceKind k = kind;
  const bool two = k == SpaceKind::TwoWeightMorrey || k == SpaceKind::TwoWeightHerz ||
                   k == SpaceKind::TwoWeightMorreyHerz;
  if (!w1) throw Error(ErrorCode::Parameter, std::string(space_kind_name(k)) + ": missing weight");
  if (two && !w2)
    throw Error(ErrorCode::Parameter, std::string(space_kind_name(k)) + ": missing second weight");
  forbid(!two && w2.has_value(), "w2", k);
  if (w2 && w2->dim() != w1->dim())
    throw Error(ErrorCode::Parameter, "weights of different dimensions");
  switch (k) {
    case SpaceKind::Lq:
      need(q, "q", k);
      forbid(p.has_value(), "p", k);
      forbid(alpha.has_value(), "alpha", k);
      forbid(lambda.has_value(), "lambda", k);
      if (!(*q >= 1.0)) throw Error(ErrorCode::Parameter, "lq: q must be >= 1");
      break;
    case SpaceKind::CentralMorrey:
      need(p, "p", k);
      need(lambda, "lambda", k);
      forbid(q.has_value(), "q", k);
      forbid(alpha.has_value(), "alpha", k);
      if (!(*p >= 1.0)) throw Error(ErrorCode::Parameter, "central_morrey: p must be >= 1");
      if (!(1.0 + *lambda * *p > 0.0))
        throw Error(ErrorCode::Parameter, "central_morrey: need 1 + lambda p > 0");
      break;
    case SpaceKind::TwoWeightMorrey:
      need(p, "p", k);
      need(lambda, "lambda", k);
      forbid(q.has_value(), "q", k);
      forbid(alpha.has_value(), "alpha", k);
      if (!(*p > 0.0) || !(*lambda > 0.0))
        throw Error(ErrorCode::Parameter, "two_weight_morrey: need p > 0 and lambda > 0");
      break;
    case SpaceKind::Herz:
    case SpaceKind::TwoWeightHerz:
      need(alpha, "alpha", k);
      need(p, "p", k);
      need(q, "q", k);
      forbid(lambda.has_value(), "lambda", k);
      break;
    case SpaceKind::MorreyHerz:
    case SpaceKind::TwoWeightMorreyHerz:
      need(alpha, "alpha", k);
      need(p, "p", k);
      need(q, "q", k);
      need(lambda, "lambda", k);
      if (!(*lambda >= 0.0)) throw Error(ErrorCode::Parameter, "Morrey-Herz: need lambda >= 0");
      break;
  }
  if (p && (!(*p > 0.0) || !std::isfinite(*p)))
    throw Error(ErrorCode::Parameter, "p must satisfy 0 < p < inf");
  if (q && (!(*q >= 1.0) || !std::isfinite(*q)))
    throw Error(ErrorCode::Parameter, "q must satisfy 1 <= q < inf");
}

NormResult evaluate_norm(const SpaceSpec &s, const TestFunction &f, const Window &win) {
  s.validate();
  switch (s.kind) {
    case SpaceKind::Lq: {
      NormResult r;
      r.value = lq_norm(f, *s.q, *s.w1, Region::shell(0.0, kInf));
      return r;
    }
    case SpaceKind::CentralMorrey: return central_morrey_norm(f, *s.p, *s.lambda, *s.w1, win);
    case SpaceKind::Herz: return herz_norm(f, *s.alpha, *s.p, *s.q, *s.w1, win);
    case SpaceKind::MorreyHerz:
      return morrey_herz_norm(f, *s.alpha, *s.lambda, *s.p, *s.q, *s.w1, win);
    case SpaceKind::TwoWeightMorrey:
      return two_weight_morrey_norm(f, *s.p, *s.lambda, *s.w1, *s.w2, win);
    case SpaceKind::TwoWeightHerz:
      return two_weight_herz_norm(f, *s.alpha, *s.p, *s.q, *s.w1, *s.w2, win);
    case SpaceKind::TwoWeightMorreyHerz:
      return two_weight_morrey_herz_norm(f, *s.alpha, *s.lambda, *s.p, *s.q, *s.w1, *s.w2, win);
  }
  throw Error(ErrorCode::Parameter, "unknown space kind");
}

double lq_norm(const TestFunction &f, double q, const Weight &w, const Region &region) {
  Density d(f, q, w);
  if (f.is_zero()) return 0.0;
  double m;
  if (region.a > 0.0 && std::isfinite(region.b)) {
    m = d.mass(region.a, region.b);
  } else if (region.a == 0.0 && std::isfinite(region.b)) {
    m = require_value(d.inner(region.b), "lq_norm");
  } else if (region.a == 0.0) {
    m = require_value(d.all(), "lq_norm");
  } else {
    const QuadratureResult all = d.all();
    const QuadratureResult in = d.inner(region.a);
    m = require_value(all, "lq_norm") - require_value(in, "lq_norm");
  }
  return pw(std::max(m, 0.0), 1.0 / q);
}

double annulus_norm(const TestFunction &f, double q, const Weight &w, int k) {
  return lq_norm(f, q, w, Region::annulus(k));
}

NormResult central_morrey_norm(const TestFunction &f, double p, double lambda, const Weight &w,
                               const Window &win) {
  if (!(p >= 1.0)) throw Error(ErrorCode::Parameter, "central Morrey: need p >= 1");
  if (!(1.0 + lambda * p > 0.0))
    throw Error(ErrorCode::Parameter, "central Morrey: need 1 + lambda p > 0");
  return morrey_generic(f, p, w, w, 1.0 + lambda * p, win);
}

NormResult two_weight_morrey_norm(const TestFunction &f, double p, double lambda, const Weight &w1,
                                  const Weight &w2, const Window &win) {
  if (!(p > 0.0) || !(lambda > 0.0))
    throw Error(ErrorCode::Parameter, "two-weight Morrey: need p > 0 and lambda > 0");
  return morrey_generic(f, p, w1, w2, lambda, win);
}

NormResult herz_norm(const TestFunction &f, double alpha, double p, double q, const Weight &w,
                     const Window &win) {
  return herz_generic(f, p, q, w, [alpha](int k) { return std::exp2(k * alpha); }, win);
}

NormResult two_weight_herz_norm(const TestFunction &f, double alpha, double p, double q,
                                const Weight &w1, const Weight &w2, const Window &win) {
  const int n = w1.dim();
  return herz_generic(
      f, p, q, w2,
      [&w1, alpha, n](int k) { return std::pow(w1.ball_mass(std::ldexp(1.0, k)), alpha / n); },
      win);
}

NormResult morrey_herz_norm(const TestFunction &f, double alpha, double lambda, double p, double q,
                            const Weight &w, const Window &win) {
  if (!(lambda >= 0.0)) throw Error(ErrorCode::Parameter, "Morrey-Herz: need lambda >= 0");
  return morrey_herz_generic(
      f, p, q, w, [alpha](int k) { return std::exp2(k * alpha); },
      [lambda](int k0) { return std::exp2(-k0 * lambda); }, win);
}

NormResult two_weight_morrey_herz_norm(const TestFunction &f, double alpha, double lambda, double p,
                                       double q, const Weight &w1, const Weight &w2,
                                       const Window &win) {
  if (!(lambda >= 0.0)) throw Error(ErrorCode::Parameter, "Morrey-Herz: need lambda >= 0");
  const int n = w1.dim();
  return morrey_herz_generic(
      f, p, q, w2,
      [&w1, alpha, n](int k) { return std::pow(w1.ball_mass(std::ldexp(1.0, k)), alpha / n); },
      [&w1, lambda, n](int k0) { return std::pow(w1.ball_mass(std::ldexp(1.0, k0)), -lambda / n); },
      win);
}

}  // namespace rh
