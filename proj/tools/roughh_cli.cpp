// roughh-cli: operator evaluation, norms, constants and verification campaigns.
// Exit codes: 0 success (all PASS/SKIPPED), 1 some FAIL, 2 bad input or config.

#include <cmath>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "roughh/roughh.h"

namespace {

using ojson = nlohmann::ordered_json;

constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct InputError {
  std::string msg;
};

void check(int status) {
  if (status != RH_OK) throw InputError{rh_last_error()};
}

ojson num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

struct FunctionOpts {
  std::string general, radial, angular;
  std::optional<double> e0, einf;

  void add(CLI::App *app) {
    app->add_option("--f", general, "f as an expression in r, x, y, z, theta, phi");
    app->add_option("--radial", radial, "radial part of a separable f, expression in r");
    app->add_option("--angular", angular, "angular part of a separable f (default 1)");
    app->add_option("--e0", e0, "exponent of |f| at 0 (fitted when absent)");
    app->add_option("--einf", einf, "exponent of |f| at infinity (fitted when absent)");
  }

  rh_function *build(int n) const {
    if (general.empty() == radial.empty()) throw InputError{"give exactly one of --f or --radial"};
    const double a = e0.value_or(NAN), b = einf.value_or(NAN);
    rh_function *f = nullptr;
    if (!general.empty()) check(rh_function_general(n, general.c_str(), a, b, &f));
    else check(rh_function_separable(n, radial.c_str(), angular.empty() ? nullptr : angular.c_str(), a, b, &f));
    return f;
  }
};

std::vector<double> parse_point(const std::string &s, int n) {
  std::vector<double> x;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      x.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception &) {
      throw InputError{"bad coordinate '" + item + "' in point '" + s + "'"};
    }
  }
  if (static_cast<int>(x.size()) != n)
    throw InputError{"point '" + s + "' needs " + std::to_string(n) + " coordinates"};
  return x;
}

int cmd_apply(int n, const std::string &phi, const std::string &omega, const FunctionOpts &fo,
              const std::vector<std::string> &points, std::optional<double> beta, double lip,
              double tol) {
  rh_function *f = fo.build(n);
  rh_operator *op = nullptr;
  const int st = rh_operator_create(n, phi.c_str(), omega.c_str(), &op);
  if (st != RH_OK) {
    rh_function_free(f);
    check(st);
  }
  ojson out;
  out["phi"] = phi;
  out["omega"] = omega;
  out["n"] = n;
  if (beta) out["commutator_beta"] = *beta;
  ojson vals = ojson::array();
  try {
    if (beta) check(rh_operator_set_power_symbol(op, *beta, lip));
    for (const std::string &p : points) {
      const std::vector<double> x = parse_point(p, n);
      double v = 0.0;
      check(rh_operator_apply(op, f, x.data(), tol, &v));
      vals.push_back({{"x", x}, {"value", num(v)}});
    }
  } catch (...) {
    rh_operator_free(op);
    rh_function_free(f);
    throw;
  }
  rh_operator_free(op);
  rh_function_free(f);
  out["points"] = vals;
  std::cout << out.dump(2) << "\n";
  return 0;
}

struct WeightOpts {
  double gamma = 0.0;
  std::string angular;
  std::optional<double> lower_bound;

  ojson to_json(int n) const {
    ojson w{{"n", n}, {"gamma", gamma}};
    if (!angular.empty()) w["angular"] = angular;
    if (lower_bound) w["lower_bound"] = *lower_bound;
    return w;
  }
};

int cmd_norm(int n, const std::string &kind, const std::map<std::string, std::optional<double>> &par,
             const WeightOpts &w1, const std::optional<WeightOpts> &w2, const FunctionOpts &fo,
             int kmin, int kmax) {
  ojson spec;
  spec["kind"] = kind;
  for (const auto &[k, v] : par)
    if (v) spec[k] = *v;
  spec["weight"] = w1.to_json(n);
  if (w2) spec["weight2"] = w2->to_json(n);
  rh_function *f = fo.build(n);
  rh_norm_result r{};
  const int st = rh_norm(spec.dump().c_str(), f, kmin, kmax, &r);
  rh_function_free(f);
  check(st);
  ojson out;
  out["space"] = spec;
  out["value"] = num(r.value);
  out["tail_bound"] = num(r.tail_bound);
  out["divergent"] = r.divergent != 0;
  out["window"] = {r.k_min, r.k_max};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_constant(const std::string &id, const std::string &phi,
                 const std::map<std::string, std::optional<double>> &par) {
  ojson p = ojson::object();
  for (const auto &[k, v] : par)
    if (v) p[k] = *v;
  char *text = nullptr;
  check(rh_constant(id.c_str(), phi.c_str(), p.dump().c_str(), &text));
  std::cout << text << "\n";
  rh_string_free(text);
  return 0;
}

int finish_report(rh_report *r, const std::string &out_dir, const std::string &format) {
  int code = 0;
  try {
    if (!out_dir.empty()) check(rh_report_write(r, out_dir.c_str()));
    char *text = nullptr;
    check(rh_report_render(r, format.c_str(), &text));
    std::cout << text;
    rh_string_free(text);
    code = rh_report_exit_code(r) == 0 ? 0 : kExitFail;
  } catch (...) {
    rh_report_free(r);
    throw;
  }
  rh_report_free(r);
  return code;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Rough Hausdorff operators: evaluation, norms, constants and verification"};
  app.require_subcommand(1);

  int n = 1;
  std::string phi = "hardy:1", omega = "1";
  FunctionOpts fo;

  auto *apply = app.add_subcommand("apply", "evaluate the operator (or commutator) at points");
  std::vector<std::string> points;
  std::optional<double> beta;
  double lip = 1.0, tol = 1e-12;
  apply->add_option("--n", n, "dimension")->check(CLI::Range(1, 3));
  apply->add_option("--phi", phi, "kernel spec, e.g. hardy:1, adjoint_hardy, power:a:t1:t2");
  apply->add_option("--omega", omega, "Omega as an expression in x, y, z, theta, phi");
  apply->add_option("--point", points, "comma separated coordinates; repeatable")->required();
  apply->add_option("--commutator-beta", beta, "apply the commutator with b(x) = |x|^beta");
  apply->add_option("--lip-norm", lip, "declared Lipschitz norm of b");
  apply->add_option("--tol", tol, "absolute tolerance");
  fo.add(apply);

  auto *norm = app.add_subcommand("norm", "norm of f in a weighted space");
  std::string kind = "lq";
  std::map<std::string, std::optional<double>> spar{{"p", {}}, {"q", {}}, {"alpha", {}}, {"lambda", {}}};
  WeightOpts w1, w2;
  std::optional<double> gamma2;
  int kmin = -24, kmax = 24;
  norm->add_option("--n", n, "dimension")->check(CLI::Range(1, 3));
  norm->add_option("--space", kind,
                   "lq, central_morrey, herz, morrey_herz, two_weight_morrey, two_weight_herz, "
                   "two_weight_morrey_herz");
  for (auto &[k, v] : spar) norm->add_option("--" + k, v, k);
  norm->add_option("--gamma", w1.gamma, "weight exponent");
  norm->add_option("--weight-angular", w1.angular, "angular factor of the weight");
  norm->add_option("--weight-lower-bound", w1.lower_bound, "declared lower bound of that factor");
  norm->add_option("--gamma2", gamma2, "second weight exponent (two-weight spaces)");
  norm->add_option("--weight2-angular", w2.angular, "angular factor of the second weight");
  norm->add_option("--weight2-lower-bound", w2.lower_bound, "declared lower bound of that factor");
  norm->add_option("--kmin", kmin, "dyadic window start");
  norm->add_option("--kmax", kmax, "dyadic window end");
  fo.add(norm);

  auto *constant = app.add_subcommand("constant", "sharp constants C1 to C5 and S_m");
  std::string id;
  std::map<std::string, std::optional<double>> cpar;
  for (const char *k : {"n", "gamma", "p", "q", "alpha", "lambda", "lambda1", "beta", "alpha1", "alpha2", "m"})
    cpar[k];
  constant->add_option("--id", id, "c1, c1_1, c2, c2_proof_alpha, c3, c4, c5_herz, c5_mherz, s_m")->required();
  constant->add_option("--phi", phi, "kernel spec");
  for (auto &[k, v] : cpar) constant->add_option("--" + k, v, k);

  auto *verify = app.add_subcommand("verify", "run a verification campaign");
  std::string config, out_dir = "report", format = "summary";
  verify->add_option("--config", config, "JSON config")->required();
  verify->add_option("--out", out_dir, "output directory for report artifacts");
  verify->add_option("--format", format, "stdout rendering: summary, json or csv");

  auto *report = app.add_subcommand("report", "re-render a stored report.json");
  std::string in_path, report_out;
  report->add_option("--in", in_path, "report.json to read")->required();
  report->add_option("--format", format, "summary, json or csv");
  report->add_option("--out", report_out, "rewrite all artifacts into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*apply) return cmd_apply(n, phi, omega, fo, points, beta, lip, tol);
    if (*norm) {
      std::optional<WeightOpts> second;
      if (gamma2) {
        w2.gamma = *gamma2;
        second = w2;
      }
      return cmd_norm(n, kind, spar, w1, second, fo, kmin, kmax);
    }
    if (*constant) return cmd_constant(id, phi, cpar);
    if (*verify) {
      rh_report *r = nullptr;
      check(rh_verify_file(config.c_str(), &r));
      return finish_report(r, out_dir, format);
    }
    if (*report) {
      rh_report *r = nullptr;
      check(rh_report_load(in_path.c_str(), &r));
      return finish_report(r, report_out, format);
    }
  } catch (const InputError &e) {
    std::cerr << "error: " << e.msg << "\n";
    return kExitInput;
  }
  return kExitInput;
}
