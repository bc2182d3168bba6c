#include "roughh/roughh.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "bounds.hpp"
#include "expr.hpp"
#include "harness.hpp"
#include "json.hpp"
#include "operators.hpp"
#include "spaces.hpp"

struct rh_function {
  rh::TestFunction f;
};

struct rh_operator {
  rh::HausdorffOperator op;
  std::optional<rh::LipschitzSymbol> symbol;
};

struct rh_report {
  rh::VerificationReport r;
};

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

thread_local std::string g_last_error;

int fail(int code, const std::string &msg) {
  g_last_error = msg;
  return code;
}

// Runs body, translating exceptions into status codes.
template <class F>
int guard(F &&body) {
  try {
    body();
    g_last_error.clear();
    return RH_OK;
  } catch (const rh::Error &e) {
    return fail(static_cast<int>(e.code()), e.what());
  } catch (const json::exception &e) {
    return fail(RH_ERR_CONFIG, e.what());
  } catch (const std::bad_alloc &) {
    return fail(RH_ERR_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return fail(RH_ERR_INTERNAL, e.what());
  }
}

void require(const void *p, const char *what) {
  if (!p) throw rh::Error(rh::ErrorCode::Parameter, std::string(what) + " is null");
}

char *dup_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

rh::Vec to_vec(const double *x, int n) {
  rh::Vec v{0.0, 0.0, 0.0};
  for (int i = 0; i < n; ++i) v[i] = x[i];
  return v;
}

// Fills unknown exponents from log-log slopes of g.
void settle_exponents(const rh::ScalarFn &g, double &e0, double &einf) {
  if (!std::isnan(e0) && !std::isnan(einf)) return;
  const rh::FittedExponents fit = rh::fit_exponents([&g](double r) { return std::fabs(g(r)); });
  if (std::isnan(e0)) e0 = fit.at_zero;
  if (std::isnan(einf)) einf = fit.at_infinity;
}

rh::Weight weight_from_json(const json &w) {
  const int n = w.at("n").get<int>();
  const double g = w.at("gamma").get<double>();
  std::optional<double> lb;
  if (w.contains("lower_bound")) lb = w["lower_bound"].get<double>();
  if (!w.contains("angular")) return rh::Weight::power(n, g);
  const std::string src = w["angular"].get<std::string>();
  return rh::Weight(n, g, rh::angular_expression(n, src), lb, src);
}

rh::SpaceSpec space_from_json(const std::string &text) {
  const json j = json::parse(text);
  static const std::set<std::string> known{"kind", "p", "q", "alpha", "lambda", "weight", "weight2"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      throw rh::Error(rh::ErrorCode::Config, "space: unknown key '" + it.key() + "'");
  rh::SpaceSpec s;
  s.kind = rh::space_kind_from_name(j.at("kind").get<std::string>());
  for (const char *k : {"p", "q", "alpha", "lambda"})
    if (j.contains(k)) {
      const double v = j[k].get<double>();
      if (!std::strcmp(k, "p")) s.p = v;
      if (!std::strcmp(k, "q")) s.q = v;
      if (!std::strcmp(k, "alpha")) s.alpha = v;
      if (!std::strcmp(k, "lambda")) s.lambda = v;
    }
  if (!j.contains("weight")) throw rh::Error(rh::ErrorCode::Config, "space: missing weight");
  s.w1 = weight_from_json(j["weight"]);
  if (j.contains("weight2")) s.w2 = weight_from_json(j["weight2"]);
  return s;
}

rh::BoundConstant compute_constant(const std::string &id, const rh::RadialKernel &phi,
                                   const std::map<std::string, double> &params) {
  std::set<std::string> used;
  auto get = [&](const char *k) {
    auto it = params.find(k);
    if (it == params.end())
      throw rh::Error(rh::ErrorCode::Parameter, id + ": missing parameter '" + k + "'");
    used.insert(k);
    return it->second;
  };
  auto opt = [&](const char *k) -> std::optional<double> {
    auto it = params.find(k);
    if (it == params.end()) return std::nullopt;
    used.insert(k);
    return it->second;
  };
  auto dim = [&] {
    const double n = get("n");
    if (n != std::floor(n)) throw rh::Error(rh::ErrorCode::Parameter, "n must be an integer");
    return static_cast<int>(n);
  };

  rh::BoundConstant c;
  if (id == "c1") c = rh::c1(phi, dim(), get("gamma"), get("lambda"));
  else if (id == "c1_1") c = rh::c1_1(phi, dim(), get("gamma"), get("lambda"));
  else if (id == "c2") c = rh::c2(phi, dim(), get("gamma"), get("q"));
  else if (id == "c2_proof_alpha") c = rh::c2(phi, dim(), get("gamma"), get("q"), get("alpha"));
  else if (id == "c3")
    c = rh::c3(phi, dim(), get("gamma"), get("q"), get("lambda"), get("alpha"));
  else if (id == "c4")
    c = rh::c4(phi, dim(), get("gamma"), get("p"), get("lambda1"), get("beta"), opt("lambda"));
  else if (id == "c5_herz")
    c = rh::c5(phi, dim(), get("gamma"), get("q"), get("alpha1"), get("beta"), rh::C5Variant::Herz,
               0.0, opt("alpha2"));
  else if (id == "c5_mherz")
    c = rh::c5(phi, dim(), get("gamma"), get("q"), get("alpha1"), get("beta"),
               rh::C5Variant::MorreyHerz, get("lambda"), opt("alpha2"));
  else if (id == "s_m") {
    const double m = get("m");
    if (m != std::floor(m)) throw rh::Error(rh::ErrorCode::Parameter, "m must be an integer");
    c = rh::herz_truncated_constant(phi, dim(), get("gamma"), get("q"), static_cast<int>(m));
  } else {
    throw rh::Error(rh::ErrorCode::Parameter, "unknown constant id '" + id + "'");
  }
  for (const auto &[k, v] : params)
    if (!used.count(k)) throw rh::Error(rh::ErrorCode::Parameter, id + ": parameter '" + k + "' does not apply");
  return c;
}

}  // namespace

extern "C" {

const char *rh_last_error(void) { return g_last_error.c_str(); }

void rh_string_free(char *s) { std::free(s); }

int rh_function_separable(int n, const char *radial_expr, const char *angular_expr, double e0,
                          double einf, rh_function **out) {
  return guard([&] {
    require(radial_expr, "radial_expr");
    require(out, "out");
    rh::check_dim(n);
    rh::Expr e = rh::Expr::parse(radial_expr, {"r"});
    rh::ScalarFn g = [e](double r) { return e.eval1(r); };
    settle_exponents(g, e0, einf);
    std::vector<double> br;
    for (double b : e.breakpoints())
      if (b > 0.0 && std::isfinite(b)) br.push_back(b);
    const std::string label = std::string(radial_expr) + (angular_expr ? std::string(" * ") + angular_expr : "");
    rh::TestFunction f =
        angular_expr ? rh::TestFunction::separable(n, g, rh::angular_expression(n, angular_expr), e0,
                                                   einf, br, {}, label)
                     : rh::TestFunction::radial(n, g, e0, einf, br, {}, label);
    *out = new rh_function{std::move(f)};
  });
}

int rh_function_general(int n, const char *expr, double e0, double einf, rh_function **out) {
  return guard([&] {
    require(expr, "expr");
    require(out, "out");
    rh::check_dim(n);
    rh::Expr e = rh::Expr::parse(expr, {"r", "x", "y", "z", "theta", "phi"});
    rh::PointFn g = [e, n](const rh::Vec &p) {
      const double r = rh::norm(p, n);
      double v[6] = {r, p[0], p[1], p[2], 0.0, 0.5 * rh::kPi};
      if (n == 1) v[4] = p[0] >= 0.0 ? 0.0 : rh::kPi;
      else v[4] = std::atan2(p[1], p[0]);
      if (n == 3 && r > 0.0) v[5] = std::acos(std::clamp(p[2] / r, -1.0, 1.0));
      return e.eval(v);
    };
    settle_exponents([&g](double r) { return g({r, 0.0, 0.0}); }, e0, einf);
    std::vector<double> br;
    for (double b : e.breakpoints())
      if (b > 0.0 && std::isfinite(b)) br.push_back(b);
    *out = new rh_function{rh::TestFunction::general(n, g, e0, einf, br, {}, expr)};
  });
}

int rh_function_eval(const rh_function *f, const double *x, double *out) {
  return guard([&] {
    require(f, "f");
    require(x, "x");
    require(out, "out");
    *out = f->f(to_vec(x, f->f.dim()));
  });
}

void rh_function_free(rh_function *f) { delete f; }

int rh_operator_create(int n, const char *kernel_spec, const char *omega_expr, rh_operator **out) {
  return guard([&] {
    require(kernel_spec, "kernel_spec");
    require(omega_expr, "omega_expr");
    require(out, "out");
    rh::RadialKernel k = rh::kernel_from_spec(kernel_spec);
    rh::validate_kernel(k);
    *out = new rh_operator{rh::HausdorffOperator(k, rh::AngularProfile::expression(n, omega_expr)),
                           std::nullopt};
  });
}

int rh_operator_set_power_symbol(rh_operator *op, double beta, double lip_norm) {
  return guard([&] {
    require(op, "op");
    op->symbol = rh::LipschitzSymbol::power(op->op.dim(), beta, lip_norm);
  });
}

int rh_operator_apply(const rh_operator *op, const rh_function *f, const double *x, double tol,
                      double *out) {
  return guard([&] {
    require(op, "op");
    require(f, "f");
    require(x, "x");
    require(out, "out");
    if (f->f.dim() != op->op.dim())
      throw rh::Error(rh::ErrorCode::Parameter, "operator and function dimensions differ");
    const rh::Vec p = to_vec(x, op->op.dim());
    *out = op->symbol ? rh::commutator_apply({op->op, *op->symbol}, f->f, p, tol)
                      : rh::hausdorff_apply(op->op, f->f, p, tol);
  });
}

void rh_operator_free(rh_operator *op) { delete op; }

int rh_norm(const char *space_json, const rh_function *f, int k_min, int k_max,
            rh_norm_result *out) {
  return guard([&] {
    require(space_json, "space_json");
    require(f, "f");
    require(out, "out");
    const rh::SpaceSpec s = space_from_json(space_json);
    const rh::NormResult r = rh::evaluate_norm(s, f->f, {k_min, k_max});
    out->value = r.value;
    out->tail_bound = r.tail_bound;
    out->divergent = r.divergent ? 1 : 0;
    out->k_min = r.k_min;
    out->k_max = r.k_max;
  });
}

int rh_constant(const char *id, const char *kernel_spec, const char *params_json, char **json_out) {
  return guard([&] {
    require(id, "id");
    require(kernel_spec, "kernel_spec");
    require(json_out, "json_out");
    std::map<std::string, double> params;
    if (params_json) {
      const json j = json::parse(params_json);
      if (!j.is_object()) throw rh::Error(rh::ErrorCode::Config, "params must be a JSON object");
      for (auto it = j.begin(); it != j.end(); ++it) params[it.key()] = it->get<double>();
    }
    rh::RadialKernel k = rh::kernel_from_spec(kernel_spec);
    rh::validate_kernel(k);
    const rh::BoundConstant c = compute_constant(id, k, params);
    ojson o;
    o["id"] = c.id;
    if (c.divergent) o["value"] = "divergent";
    else o["value"] = c.value;
    ojson p = ojson::object();
    p["phi"] = k.label;
    for (const auto &[key, v] : params) p[key] = v;
    o["params"] = p;
    o["abs_error"] = c.abs_error;
    *json_out = dup_string(o.dump(2));
  });
}

int rh_verify_file(const char *config_path, rh_report **out) {
  return guard([&] {
    require(config_path, "config_path");
    require(out, "out");
    *out = new rh_report{rh::run_suite(rh::load_config(config_path))};
  });
}

int rh_verify_text(const char *config_text, rh_report **out) {
  return guard([&] {
    require(config_text, "config_text");
    require(out, "out");
    *out = new rh_report{rh::run_suite(rh::parse_config(config_text))};
  });
}

int rh_report_load(const char *report_json_path, rh_report **out) {
  return guard([&] {
    require(report_json_path, "report_json_path");
    require(out, "out");
    std::ifstream in(report_json_path, std::ios::binary);
    if (!in) throw rh::Error(rh::ErrorCode::Io, std::string("cannot open ") + report_json_path);
    std::stringstream ss;
    ss << in.rdbuf();
    *out = new rh_report{rh::report_from_json(ss.str())};
  });
}

int rh_report_write(const rh_report *r, const char *dir) {
  return guard([&] {
    require(r, "report");
    require(dir, "dir");
    rh::write_report(r->r, dir);
  });
}

int rh_report_render(const rh_report *r, const char *format, char **text_out) {
  return guard([&] {
    require(r, "report");
    require(format, "format");
    require(text_out, "text_out");
    const std::string fmt = format;
    std::string text;
    if (fmt == "json") {
      text = rh::report_json(r->r);
    } else if (fmt == "csv") {
      text = rh::report_csv(r->r);
    } else if (fmt == "summary") {
      std::ostringstream os;
      for (const rh::ReportRow &x : r->r.rows)
        if (x.verdict != rh::Verdict::Pass || x.theorem != "Lemma2_1")
          os << rh::verdict_name(x.verdict) << "  " << x.case_id << "  " << x.quantity << "  "
             << x.note << "\n";
      os << "PASS " << r->r.count(rh::Verdict::Pass) << ", FAIL " << r->r.count(rh::Verdict::Fail)
         << ", SKIPPED " << r->r.count(rh::Verdict::Skipped) << ", DIVERGENT-AS-PREDICTED "
         << r->r.count(rh::Verdict::DivergentAsPredicted) << "\n";
      text = os.str();
    } else {
      throw rh::Error(rh::ErrorCode::Parameter, "unknown report format '" + fmt + "'");
    }
    *text_out = dup_string(text);
  });
}

int rh_report_count(const rh_report *r, const char *verdict) {
  if (!r || !verdict) return -fail(RH_ERR_PARAMETER, "null argument");
  try {
    return r->r.count(rh::verdict_from_name(verdict));
  } catch (const std::exception &e) {
    return -fail(RH_ERR_PARAMETER, e.what());
  }
}

int rh_report_exit_code(const rh_report *r) { return r ? rh::exit_code(r->r) : 1; }

double rh_report_runtime(const rh_report *r) { return r ? r->r.runtime_seconds : 0.0; }

void rh_report_free(rh_report *r) { delete r; }

}  // extern "C"
