#include "quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>

namespace rh {

const char *error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Domain: return "domain";
    case ErrorCode::NonIntegrable: return "non_integrable";
    case ErrorCode::Divergent: return "divergent";
    case ErrorCode::ToleranceNotMet: return "tolerance_not_met";
    case ErrorCode::Parameter: return "parameter";
    case ErrorCode::Config: return "config";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

double require_value(const QuadratureResult &r, const char *what) {
  if (r.status == QuadStatus::Divergent)
    throw Error(ErrorCode::Divergent, std::string(what) + ": integral diverges");
  if (r.status == QuadStatus::ToleranceNotMet)
    throw Error(ErrorCode::ToleranceNotMet, std::string(what) + ": tolerance not met");
  return r.value;
}

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

constexpr double kLn2 = 0.69314718055994530942;

struct Piece {
  double value = 0.0;
  double error = 0.0;
};

Piece gk_piece(const ScalarFn &f, double a, double b, double rel_tol, unsigned depth = 10) {
  Piece p;
  if (!(b > a)) return p;
  // Boost's error floor is absolute in the mapped variable; on narrow intervals
  // far from 1 it never converges, so integrate over [0, 1] and rescale.
  const double h = b - a;
  double err = 0.0;
  p.value = h * GK::integrate([&](double s) { return f(a + h * s); }, 0.0, 1.0, depth, rel_tol, &err);
  p.error = h * err;
  return p;
}

Piece gk_split(const ScalarFn &f, double a, double b, const std::vector<double> &cuts,
               double rel_tol) {
  Piece total;
  double lo = a;
  for (double c : cuts) {
    if (c <= lo || c >= b) continue;
    Piece p = gk_piece(f, lo, c, rel_tol);
    total.value += p.value;
    total.error += p.error;
    lo = c;
  }
  Piece p = gk_piece(f, lo, b, rel_tol);
  total.value += p.value;
  total.error += p.error;
  return total;
}

double geometric_sum(double r) { return r / (1.0 - r); }

}  // namespace

QuadratureResult integrate_interval(const ScalarFn &f, double a, double b,
                                    const std::vector<double> &breakpoints, double rel_tol) {
  QuadratureResult res;
  std::vector<double> cuts(breakpoints);
  std::sort(cuts.begin(), cuts.end());
  Piece p = gk_split(f, a, b, cuts, rel_tol);
  res.value = p.value;
  res.abs_error_estimate = p.error;
  res.converged = true;
  res.panels = 1 + static_cast<int>(cuts.size());
  return res;
}

QuadratureResult integrate_halfline(const RadialIntegrand &f, double tol,
                                    const HalflineOptions &opt) {
  if (!(tol > 0.0)) throw Error(ErrorCode::Parameter, "integrate_halfline: tol must be positive");
  QuadratureResult res;
  const double e0 = f.exponent_at_zero;
  const double einf = f.exponent_at_infinity;
  if (!(e0 > -1.0) || !(einf < -1.0)) {
    res.status = QuadStatus::Divergent;
    res.value = kInf;
    return res;
  }

  std::vector<double> ucuts;
  for (double b : f.breakpoints)
    if (b > 0.0 && std::isfinite(b)) ucuts.push_back(std::log(b));
  std::sort(ucuts.begin(), ucuts.end());

  const double h = kLn2;
  double umin = 0.0, umax = 0.0;
  if (!ucuts.empty()) {
    umin = std::min(umin, ucuts.front());
    umax = std::max(umax, ucuts.back());
  }
  const long j_lo = static_cast<long>(std::floor(umin / h)) - 2;
  const long j_hi = static_cast<long>(std::ceil(umax / h)) + 2;

  ScalarFn g = [&f](double u) {
    const double t = std::exp(u);
    const double v = f.eval(t);
    return v == 0.0 ? 0.0 : v * t;
  };

  auto panel = [&](long j) {
    const double a = static_cast<double>(j) * h;
    return gk_split(g, a, a + h, ucuts, opt.panel_rel_tol);
  };

  double total = 0.0, err = 0.0;
  int count = 0;
  double first = 0.0, last = 0.0, second = 0.0, second_last = 0.0;
  for (long j = j_lo; j < j_hi; ++j) {
    Piece p = panel(j);
    total += p.value;
    err += p.error;
    if (j == j_lo) first = p.value;
    if (j == j_lo + 1) second = p.value;
    if (j == j_hi - 2) second_last = p.value;
    last = p.value;
    ++count;
  }

  // direction +1 walks towards infinity, -1 towards zero
  auto expand = [&](int dir, double prev, double prev2, double rho, double &tail) -> QuadStatus {
    long j = dir > 0 ? j_hi : j_lo - 1;
    // A finite declared exponent means the integrand has not ended; zeros there
    // are underflow ahead of a far peak.
    const int zero_run = rho > 0.0 ? 64 : 2;
    int zeros = (prev == 0.0) ? 1 : 0;
    int nondecay = 0;
    double obs_prev = (prev2 != 0.0) ? std::fabs(prev / prev2) : -1.0;
    for (int step = 0; step < opt.max_panels_per_side; ++step, j += dir) {
      Piece p = panel(j);
      total += p.value;
      err += p.error;
      ++count;
      const double side_tol = 0.25 * std::max(tol, opt.rel_tol * std::fabs(total));
      if (p.value == 0.0) {
        if (++zeros >= zero_run) {
          tail = 0.0;
          return QuadStatus::Ok;
        }
        prev = 0.0;
        obs_prev = -1.0;
        continue;
      }
      zeros = 0;
      if (prev == 0.0) {
        prev = p.value;
        obs_prev = -1.0;
        continue;
      }
      const double obs = std::fabs(p.value / prev);
      if (obs >= 1.0) {
        if (++nondecay >= opt.max_nondecay_panels) return QuadStatus::Divergent;
        prev = p.value;
        obs_prev = obs;
        continue;
      }
      nondecay = 0;
      const double r = std::max(obs, rho);
      const double cons = std::fabs(p.value) * geometric_sum(r);
      if (cons <= side_tol && std::fabs(p.value) <= side_tol) {
        tail = cons;
        return QuadStatus::Ok;
      }
      if (rho > 0.0 && obs_prev >= 0.0 && obs_prev < 1.0) {
        // power-law regime: extrapolate the tail with the declared ratio
        const double unc = std::fabs(p.value) * (std::fabs(geometric_sum(obs) - geometric_sum(rho)) +
                                                 std::fabs(geometric_sum(obs) - geometric_sum(obs_prev)));
        if (unc <= side_tol) {
          total += p.value * geometric_sum(rho);
          tail = unc;
          return QuadStatus::Ok;
        }
      }
      obs_prev = obs;
      prev = p.value;
    }
    return QuadStatus::ToleranceNotMet;
  };

  const double rho_inf = std::isfinite(einf) ? std::exp((einf + 1.0) * h) : 0.0;
  const double rho_zero = std::isfinite(e0) ? std::exp(-(e0 + 1.0) * h) : 0.0;
  double tail_r = 0.0, tail_l = 0.0;
  QuadStatus sr = expand(+1, last, second_last, rho_inf, tail_r);
  QuadStatus sl = sr == QuadStatus::Divergent ? sr : expand(-1, first, second, rho_zero, tail_l);

  res.value = total;
  res.abs_error_estimate = err;
  res.tail_bound = tail_r + tail_l;
  res.panels = count;
  if (sr == QuadStatus::Divergent || sl == QuadStatus::Divergent) {
    res.status = QuadStatus::Divergent;
    res.value = kInf;
  } else if (sr == QuadStatus::ToleranceNotMet || sl == QuadStatus::ToleranceNotMet) {
    res.status = QuadStatus::ToleranceNotMet;
  }
  const double budget = std::max(tol, opt.rel_tol * std::fabs(res.value));
  res.converged = res.status == QuadStatus::Ok && res.abs_error_estimate + res.tail_bound <= budget;
  return res;
}

namespace {

constexpr int kSphereLevels = 6;

struct SphereTables {
  // n = 3: Gauss-Legendre nodes and weights in z = cos(polar) per level
  std::vector<std::vector<double>> z, wz;
  std::vector<std::vector<SphereNode>> nodes2, nodes3;
};

int gl_points(int level) { return 8 << level; }
int trap_points(int level) { return 16 << level; }

void gauss_legendre(int m, std::vector<double> &x, std::vector<double> &w) {
  x.clear();
  w.clear();
  std::vector<double> pos = boost::math::legendre_p_zeros<double>(m);
  for (double r : pos) {
    const double d = boost::math::legendre_p_prime<double>(m, r);
    const double weight = 2.0 / ((1.0 - r * r) * d * d);
    if (r == 0.0) {
      x.push_back(0.0);
      w.push_back(weight);
    } else {
      x.push_back(r);
      w.push_back(weight);
      x.push_back(-r);
      w.push_back(weight);
    }
  }
}

const SphereTables &tables() {
  static const SphereTables t = [] {
    SphereTables s;
    s.z.resize(kSphereLevels);
    s.wz.resize(kSphereLevels);
    s.nodes2.resize(kSphereLevels);
    s.nodes3.resize(kSphereLevels);
    for (int L = 0; L < kSphereLevels; ++L) {
      gauss_legendre(gl_points(L), s.z[L], s.wz[L]);
      const int m2 = trap_points(L);
      for (int k = 0; k < m2; ++k) {
        const double th = 2.0 * kPi * k / m2;
        s.nodes2[L].push_back({{std::cos(th), std::sin(th), 0.0}, 2.0 * kPi / m2});
      }
      const int maz = 2 * gl_points(L);
      for (std::size_t i = 0; i < s.z[L].size(); ++i) {
        const double z = s.z[L][i];
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        for (int k = 0; k < maz; ++k) {
          const double th = 2.0 * kPi * (k + 0.5) / maz;
          s.nodes3[L].push_back({{rho * std::cos(th), rho * std::sin(th), z},
                                 s.wz[L][i] * 2.0 * kPi / maz});
        }
      }
    }
    return s;
  }();
  return t;
}

}  // namespace

int sphere_levels() { return kSphereLevels; }

const std::vector<SphereNode> &sphere_nodes(int n, int level) {
  static const std::vector<SphereNode> s0 = {{{-1.0, 0.0, 0.0}, 1.0}, {{1.0, 0.0, 0.0}, 1.0}};
  check_dim(n);
  level = std::clamp(level, 0, kSphereLevels - 1);
  if (n == 1) return s0;
  return n == 2 ? tables().nodes2[level] : tables().nodes3[level];
}

QuadratureResult integrate_sphere(int n, const PointFn &g, double tol) {
  check_dim(n);
  QuadratureResult res;
  if (n == 1) {
    res.value = g({-1.0, 0.0, 0.0}) + g({1.0, 0.0, 0.0});
    res.converged = true;
    return res;
  }
  if (n == 2) {
    int m = trap_points(0);
    double sum = 0.0;
    for (int k = 0; k < m; ++k) {
      const double th = 2.0 * kPi * k / m;
      sum += g({std::cos(th), std::sin(th), 0.0});
    }
    double prev = 2.0 * kPi * sum / m;
    for (int it = 0; it < 12; ++it) {
      double odd = 0.0;
      for (int k = 0; k < m; ++k) {
        const double th = 2.0 * kPi * (k + 0.5) / m;
        odd += g({std::cos(th), std::sin(th), 0.0});
      }
      sum += odd;
      m *= 2;
      const double cur = 2.0 * kPi * sum / m;
      const double diff = std::fabs(cur - prev);
      res.value = cur;
      res.abs_error_estimate = diff;
      res.panels = m;
      if (diff <= std::max(tol, 1e-14 * std::fabs(cur))) {
        res.converged = true;
        return res;
      }
      prev = cur;
    }
    res.status = QuadStatus::ToleranceNotMet;
    return res;
  }
  auto level_sum = [&](int L) {
    double s = 0.0;
    for (const SphereNode &p : tables().nodes3[L]) s += p.weight * g(p.x);
    return s;
  };
  double prev = level_sum(0);
  for (int L = 1; L < kSphereLevels; ++L) {
    const double cur = level_sum(L);
    const double diff = std::fabs(cur - prev);
    res.value = cur;
    res.abs_error_estimate = diff;
    res.panels = static_cast<int>(tables().nodes3[L].size());
    if (diff <= std::max(tol, 1e-14 * std::fabs(cur))) {
      res.converged = true;
      return res;
    }
    prev = cur;
  }
  res.status = QuadStatus::ToleranceNotMet;
  return res;
}

QuadratureResult integrate_region(int n, const PointFn &f, const Region &region, double tol,
                                  double exponent_at_zero,
                                  const std::vector<double> &radial_breaks,
                                  double exponent_at_infinity) {
  check_dim(n);
  const double a = region.a, b = region.b;
  if (!(b > a) || a < 0.0)
    throw Error(ErrorCode::Parameter, "integrate_region: empty region");
  bool sphere_ok = true;
  const double tol_s = tol / 3.0;
  auto radial = [&](double r) {
    if (r < a || r > b) return 0.0;
    QuadratureResult s = integrate_sphere(n, [&](const Vec &xp) { return f(scaled(xp, r)); }, tol_s);
    if (!s.converged) sphere_ok = false;
    return s.value == 0.0 ? 0.0 : std::pow(r, n - 1) * s.value;
  };
  std::vector<double> cuts;
  for (double c : radial_breaks)
    if (c > a && c < b) cuts.push_back(c);

  QuadratureResult res;
  if (a > 0.0 && std::isfinite(b)) {
    res = integrate_interval(radial, a, b, cuts, 1e-12);
  } else {
    RadialIntegrand ri;
    ri.eval = radial;
    ri.exponent_at_zero = a > 0.0 ? kInf : n - 1 + exponent_at_zero;
    ri.exponent_at_infinity = std::isfinite(b) ? -kInf : n - 1 + exponent_at_infinity;
    ri.breakpoints = cuts;
    if (a > 0.0) ri.breakpoints.push_back(a);
    if (std::isfinite(b)) ri.breakpoints.push_back(b);
    HalflineOptions opt;
    opt.rel_tol = 1e-13;
    res = integrate_halfline(ri, tol / 3.0, opt);
  }
  if (!sphere_ok && res.status == QuadStatus::Ok) {
    res.status = QuadStatus::ToleranceNotMet;
    res.converged = false;
  }
  return res;
}

}  // namespace rh
