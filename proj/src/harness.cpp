#include "harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "corpus.hpp"
#include "extremals.hpp"
#include "json.hpp"

namespace rh {

using nlohmann::json;

const char *theorem_name(Theorem t) {
  switch (t) {
    case Theorem::T3_1: return "T3_1";
    case Theorem::T3_2: return "T3_2";
    case Theorem::T3_3: return "T3_3";
    case Theorem::T3_4: return "T3_4";
    case Theorem::T3_5: return "T3_5";
    case Theorem::T3_6: return "T3_6";
    case Theorem::Cor3_1: return "Cor3_1";
    case Theorem::Cor3_2: return "Cor3_2";
    case Theorem::Cor3_3: return "Cor3_3";
    case Theorem::Lemma2_1: return "Lemma2_1";
    case Theorem::Ineq3_8: return "Ineq3_8";
  }
  return "?";
}

Theorem theorem_from_name(const std::string &s) {
  for (Theorem t : {Theorem::T3_1, Theorem::T3_2, Theorem::T3_3, Theorem::T3_4, Theorem::T3_5,
                    Theorem::T3_6, Theorem::Cor3_1, Theorem::Cor3_2, Theorem::Cor3_3,
                    Theorem::Lemma2_1, Theorem::Ineq3_8})
    if (s == theorem_name(t)) return t;
  throw Error(ErrorCode::Config, "unknown theorem '" + s + "'");
}

const char *verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Skipped: return "SKIPPED";
    case Verdict::DivergentAsPredicted: return "DIVERGENT-AS-PREDICTED";
  }
  return "?";
}

Verdict verdict_from_name(const std::string &s) {
  for (Verdict v : {Verdict::Pass, Verdict::Fail, Verdict::Skipped, Verdict::DivergentAsPredicted})
    if (s == verdict_name(v)) return v;
  throw Error(ErrorCode::Config, "unknown verdict '" + s + "'");
}

int VerificationReport::count(Verdict v) const {
  return static_cast<int>(
      std::count_if(rows.begin(), rows.end(), [v](const ReportRow &r) { return r.verdict == v; }));
}

double margin_of(double value, double bound) { return (bound - value) / std::fabs(bound); }

// ---------------------------------------------------------------------------
// Config parsing

namespace {

std::string pointer_escape(const std::string &key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

std::pair<int, int> line_col(const std::string &text, std::size_t offset) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// JSON pointer -> offset of the value. Only run on text nlohmann already accepted.
class PositionIndex {
 public:
  explicit PositionIndex(const std::string &text) : s_(text) { value(""); }

  std::pair<int, int> at(const std::string &ptr) const {
    auto it = pos_.find(ptr);
    return line_col(s_, it == pos_.end() ? 0 : it->second);
  }

 private:
  void ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  std::string string() {
    std::string out;
    ++i_;
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\') ++i_;
      if (i_ < s_.size()) out += s_[i_++];
    }
    ++i_;
    return out;
  }
  void value(const std::string &path) {
    ws();
    pos_[path] = i_;
    if (i_ >= s_.size()) return;
    const char c = s_[i_];
    if (c == '{') {
      ++i_;
      for (;;) {
        ws();
        if (i_ >= s_.size() || s_[i_] == '}') break;
        const std::string key = string();
        ws();
        ++i_;  // ':'
        value(path + "/" + pointer_escape(key));
        ws();
        if (i_ < s_.size() && s_[i_] == ',') ++i_;
      }
      ++i_;
    } else if (c == '[') {
      ++i_;
      for (int k = 0;; ++k) {
        ws();
        if (i_ >= s_.size() || s_[i_] == ']') break;
        value(path + "/" + std::to_string(k));
        ws();
        if (i_ < s_.size() && s_[i_] == ',') ++i_;
      }
      ++i_;
    } else if (c == '"') {
      string();
    } else {
      while (i_ < s_.size() && !std::strchr(",]} \t\r\n", s_[i_])) ++i_;
    }
  }

  const std::string &s_;
  std::size_t i_ = 0;
  std::map<std::string, std::size_t> pos_;
};

struct Ctx {
  const PositionIndex &idx;
  std::string source;

  [[noreturn]] void fail(const std::string &ptr, const std::string &msg) const {
    const auto [l, c] = idx.at(ptr);
    std::ostringstream os;
    os << source << ": line " << l << ", column " << c << ": " << msg;
    if (!ptr.empty()) os << " (at " << ptr << ")";
    throw Error(ErrorCode::Config, os.str());
  }

  double num(const json &j, const std::string &ptr) const {
    if (!j.is_number()) fail(ptr, "expected a number");
    return j.get<double>();
  }
  int integer(const json &j, const std::string &ptr) const {
    if (!j.is_number_integer()) fail(ptr, "expected an integer");
    return j.get<int>();
  }
  std::string str(const json &j, const std::string &ptr) const {
    if (!j.is_string()) fail(ptr, "expected a string");
    return j.get<std::string>();
  }
  const json &obj(const json &j, const std::string &ptr) const {
    if (!j.is_object()) fail(ptr, "expected an object");
    return j;
  }
  const json &arr(const json &j, const std::string &ptr) const {
    if (!j.is_array()) fail(ptr, "expected an array");
    return j;
  }
  // Wraps library errors raised while building objects from config values.
  template <class F>
  auto build(const std::string &ptr, F &&f) const -> decltype(f()) {
    try {
      return f();
    } catch (const Error &e) {
      if (e.code() == ErrorCode::Config) fail(ptr, e.what());
      fail(ptr, std::string(error_code_name(e.code())) + ": " + e.what());
    }
  }
};

const std::vector<std::string> kNumericParams = {"p",      "q",      "alpha",  "lambda",
                                                 "beta",   "lambda1", "alpha1", "alpha2",
                                                 "lip",    "corrupt_factor"};

const std::vector<std::string> kCaseKeys = {
    "id",     "theorem", "kernel",      "omega",   "weight",   "weight2",  "symbol",
    "corpus", "include_extremal",      "extremal_ms", "gammas", "dims",   "k_range",
    "samples", "seed",   "expect",      "n",       "p",        "q",        "alpha",
    "lambda", "beta",    "lambda1",     "alpha1",  "alpha2",   "lip",      "corrupt_factor"};

double case_r(const TheoremCase &c) {
  const bool morrey = c.theorem == Theorem::T3_1 || c.theorem == Theorem::Cor3_1 ||
                      c.theorem == Theorem::T3_4;
  const auto it = c.params.find(morrey ? "p" : "q");
  return it == c.params.end() ? 2.0 : conjugate(it->second);
}

}  // namespace

SuiteConfig parse_config(const std::string &text, const std::string &source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error &e) {
    const auto [l, c] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    std::ostringstream os;
    os << source << ": line " << l << ", column " << c << ": JSON syntax error";
    throw Error(ErrorCode::Config, os.str());
  }
  const PositionIndex idx(text);
  const Ctx cx{idx, source};
  cx.obj(root, "");

  SuiteConfig cfg;
  static const std::vector<std::string> top = {"weights", "kernels",         "omegas",
                                               "cases",   "tolerances",      "dyadic_window",
                                               "extremal_window", "control_windows", "threads"};
  for (auto it = root.begin(); it != root.end(); ++it)
    if (std::find(top.begin(), top.end(), it.key()) == top.end())
      cx.fail("/" + pointer_escape(it.key()), "unknown section '" + it.key() + "'");

  if (root.contains("tolerances")) {
    const json &t = cx.obj(root["tolerances"], "/tolerances");
    for (auto it = t.begin(); it != t.end(); ++it) {
      const std::string p = "/tolerances/" + pointer_escape(it.key());
      if (it.key() == "rel") cfg.rel_tol = cx.num(*it, p);
      else if (it.key() == "quad") cfg.quad_tol = cx.num(*it, p);
      else cx.fail(p, "unknown tolerance '" + it.key() + "'");
    }
    if (!(cfg.rel_tol > 0.0)) cx.fail("/tolerances/rel", "tolerance must be positive");
    if (!(cfg.quad_tol > 0.0)) cx.fail("/tolerances/quad", "tolerance must be positive");
  }
  if (root.contains("dyadic_window")) {
    const json &w = cx.arr(root["dyadic_window"], "/dyadic_window");
    if (w.size() != 2) cx.fail("/dyadic_window", "expected [k_min, k_max]");
    cfg.window.k_min = cx.integer(w[0], "/dyadic_window/0");
    cfg.window.k_max = cx.integer(w[1], "/dyadic_window/1");
    if (cfg.window.k_min >= cfg.window.k_max) cx.fail("/dyadic_window", "empty window");
  }
  if (root.contains("extremal_window")) {
    cfg.extremal_window = cx.integer(root["extremal_window"], "/extremal_window");
    if (cfg.extremal_window < 1) cx.fail("/extremal_window", "must be positive");
  }
  if (root.contains("control_windows")) {
    const json &w = cx.arr(root["control_windows"], "/control_windows");
    cfg.control_windows.clear();
    for (std::size_t i = 0; i < w.size(); ++i) {
      const std::string p = "/control_windows/" + std::to_string(i);
      const int k = cx.integer(w[i], p);
      if (k < 1) cx.fail(p, "window size must be positive");
      cfg.control_windows.push_back(k);
    }
  }
  if (root.contains("threads")) {
    cfg.threads = cx.integer(root["threads"], "/threads");
    if (cfg.threads < 1) cx.fail("/threads", "must be at least 1");
  }

  std::map<std::string, Weight> weights;
  if (root.contains("weights")) {
    const json &ws = cx.obj(root["weights"], "/weights");
    for (auto it = ws.begin(); it != ws.end(); ++it) {
      const std::string p = "/weights/" + pointer_escape(it.key());
      const json &w = cx.obj(*it, p);
      if (!w.contains("n") || !w.contains("gamma")) cx.fail(p, "weight needs n and gamma");
      const int n = cx.integer(w["n"], p + "/n");
      const double g = cx.num(w["gamma"], p + "/gamma");
      std::optional<double> lb;
      if (w.contains("lower_bound")) lb = cx.num(w["lower_bound"], p + "/lower_bound");
      if (w.contains("angular")) {
        const std::string src = cx.str(w["angular"], p + "/angular");
        weights.emplace(it.key(), cx.build(p + "/angular", [&] {
          return Weight(n, g, angular_expression(n, src), lb, src);
        }));
      } else {
        weights.emplace(it.key(), cx.build(p, [&] { return Weight::power(n, g); }));
      }
    }
  }

  std::map<std::string, RadialKernel> kernels;
  if (root.contains("kernels")) {
    const json &ks = cx.obj(root["kernels"], "/kernels");
    for (auto it = ks.begin(); it != ks.end(); ++it) {
      const std::string p = "/kernels/" + pointer_escape(it.key());
      const std::string spec = cx.str(*it, p);
      kernels.emplace(it.key(), cx.build(p, [&] {
        RadialKernel k = kernel_from_spec(spec);
        validate_kernel(k);
        return k;
      }));
    }
  }

  std::map<std::string, AngularProfile> omegas;
  if (root.contains("omegas")) {
    const json &os = cx.obj(root["omegas"], "/omegas");
    for (auto it = os.begin(); it != os.end(); ++it) {
      const std::string p = "/omegas/" + pointer_escape(it.key());
      const json &o = cx.obj(*it, p);
      if (!o.contains("n")) cx.fail(p, "omega needs n");
      const int n = cx.integer(o["n"], p + "/n");
      if (o.contains("constant")) {
        const double v = cx.num(o["constant"], p + "/constant");
        omegas.emplace(it.key(), cx.build(p, [&] { return AngularProfile::constant(n, v); }));
      } else if (o.contains("expr")) {
        const std::string src = cx.str(o["expr"], p + "/expr");
        omegas.emplace(it.key(),
                       cx.build(p + "/expr", [&] { return AngularProfile::expression(n, src); }));
      } else {
        cx.fail(p, "omega needs 'constant' or 'expr'");
      }
    }
  }

  if (root.contains("cases")) {
    const json &cs = cx.arr(root["cases"], "/cases");
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string p = "/cases/" + std::to_string(i);
      const json &j = cx.obj(cs[i], p);
      for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(kCaseKeys.begin(), kCaseKeys.end(), it.key()) == kCaseKeys.end())
          cx.fail(p + "/" + pointer_escape(it.key()), "unknown case field '" + it.key() + "'");
      TheoremCase c;
      if (!j.contains("id")) cx.fail(p, "case needs an id");
      c.id = cx.str(j["id"], p + "/id");
      if (std::find(ids.begin(), ids.end(), c.id) != ids.end())
        cx.fail(p + "/id", "duplicate case id '" + c.id + "'");
      ids.push_back(c.id);
      if (!j.contains("theorem")) cx.fail(p, "case needs a theorem");
      c.theorem = cx.build(p + "/theorem", [&] { return theorem_from_name(cx.str(j["theorem"], p + "/theorem")); });
      for (const std::string &k : kNumericParams)
        if (j.contains(k)) c.params[k] = cx.num(j[k], p + "/" + k);
      if (j.contains("expect")) {
        const std::string e = cx.str(j["expect"], p + "/expect");
        if (e != "fail" && e != "pass") cx.fail(p + "/expect", "expect must be 'pass' or 'fail'");
        c.expect_fail = e == "fail";
      }

      auto lookup = [&](auto &table, const char *key, const char *what) {
        const std::string kp = p + "/" + key;
        const std::string name = cx.str(j[key], kp);
        auto it = table.find(name);
        if (it == table.end()) cx.fail(kp, std::string("unknown ") + what + " '" + name + "'");
        return it->second;
      };

      if (c.theorem == Theorem::Lemma2_1) {
        if (j.contains("gammas")) {
          const json &g = cx.arr(j["gammas"], p + "/gammas");
          for (std::size_t k = 0; k < g.size(); ++k)
            c.gammas.push_back(cx.num(g[k], p + "/gammas/" + std::to_string(k)));
        } else {
          c.gammas = {-0.9, -0.5, 0.0, 1.0, 2.5};
        }
        if (j.contains("dims")) {
          const json &d = cx.arr(j["dims"], p + "/dims");
          for (std::size_t k = 0; k < d.size(); ++k) {
            const std::string dp = p + "/dims/" + std::to_string(k);
            const int n = cx.integer(d[k], dp);
            if (n < 1 || n > 3) cx.fail(dp, "dimension must be 1, 2 or 3");
            c.dims.push_back(n);
          }
        } else {
          c.dims = {1, 2, 3};
        }
        if (j.contains("k_range")) {
          const json &k = cx.arr(j["k_range"], p + "/k_range");
          if (k.size() != 2) cx.fail(p + "/k_range", "expected [k_lo, k_hi]");
          c.k_lo = cx.integer(k[0], p + "/k_range/0");
          c.k_hi = cx.integer(k[1], p + "/k_range/1");
        }
        cfg.cases.push_back(std::move(c));
        continue;
      }

      if (c.theorem == Theorem::Ineq3_8) {
        if (!j.contains("n")) cx.fail(p, "Ineq3_8 needs n");
        const int n = cx.integer(j["n"], p + "/n");
        const double beta = c.params.count("beta") ? c.params["beta"] : 1.0;
        const double lip = c.params.count("lip") ? c.params["lip"] : 1.0;
        std::string kind = "power";
        if (j.contains("symbol")) kind = cx.str(j["symbol"], p + "/symbol");
        c.symbol = cx.build(p, [&] {
          if (kind == "power") return LipschitzSymbol::power(n, beta, lip);
          if (kind == "constant") return LipschitzSymbol::constant(n, lip);
          throw Error(ErrorCode::Config, "symbol must be 'power' or 'constant'");
        });
        if (c.params.count("corrupt_factor"))
          c.symbol = c.symbol->with_declared_norm(c.symbol->lip_norm() * c.params["corrupt_factor"]);
        if (j.contains("samples")) c.samples = cx.integer(j["samples"], p + "/samples");
        if (j.contains("seed")) c.seed = static_cast<std::uint64_t>(cx.integer(j["seed"], p + "/seed"));
        cfg.cases.push_back(std::move(c));
        continue;
      }

      for (const char *k : {"kernel", "omega", "weight"})
        if (!j.contains(k)) cx.fail(p, std::string("case needs '") + k + "'");
      c.phi = lookup(kernels, "kernel", "kernel");
      c.omega = lookup(omegas, "omega", "omega");
      c.w1 = lookup(weights, "weight", "weight");
      if (c.omega->dim() != c.w1->dim()) cx.fail(p + "/omega", "omega and weight dimensions differ");
      const bool commutator =
          c.theorem == Theorem::T3_4 || c.theorem == Theorem::T3_5 || c.theorem == Theorem::T3_6;
      if (commutator) {
        if (!j.contains("weight2")) cx.fail(p, "commutator case needs 'weight2'");
        c.w2 = lookup(weights, "weight2", "weight");
        if (c.w2->dim() != c.w1->dim() || c.w2->gamma() != c.w1->gamma())
          cx.fail(p + "/weight2", "both weights must lie in the same class W_gamma");
        if (!c.params.count("beta")) cx.fail(p, "commutator case needs beta");
        const double lip = c.params.count("lip") ? c.params["lip"] : 1.0;
        c.symbol = cx.build(p + "/beta", [&] {
          return LipschitzSymbol::power(c.w1->dim(), c.params["beta"], lip);
        });
      }
      const std::vector<std::string> need =
          c.theorem == Theorem::T3_1 || c.theorem == Theorem::Cor3_1 ? std::vector<std::string>{"p", "lambda"}
          : c.theorem == Theorem::T3_2 || c.theorem == Theorem::Cor3_2 ? std::vector<std::string>{"p", "q", "alpha"}
          : c.theorem == Theorem::T3_3 || c.theorem == Theorem::Cor3_3 ? std::vector<std::string>{"p", "q", "alpha", "lambda"}
          : c.theorem == Theorem::T3_4 ? std::vector<std::string>{"p", "lambda", "lambda1"}
          : c.theorem == Theorem::T3_5 ? std::vector<std::string>{"p", "q", "alpha1", "alpha2"}
                                       : std::vector<std::string>{"p", "q", "alpha1", "alpha2", "lambda"};
      for (const std::string &k : need)
        if (!c.params.count(k)) cx.fail(p, c.id + ": missing parameter '" + k + "'");

      int count = 20;
      if (j.contains("corpus")) count = cx.integer(j["corpus"], p + "/corpus");
      if (count < 0) cx.fail(p + "/corpus", "corpus size must be nonnegative");
      c.corpus = cx.build(p, [&] { return default_corpus(*c.omega, case_r(c), count); });
      if (j.contains("include_extremal") && j["include_extremal"].is_boolean() &&
          j["include_extremal"].get<bool>()) {
        if (c.theorem != Theorem::T3_1 && c.theorem != Theorem::Cor3_1)
          cx.fail(p + "/include_extremal", "only the Morrey cases have a scale-free extremal");
        c.corpus.push_back(cx.build(p, [&] {
          return morrey_extremal(*c.omega, *c.w1, c.params["lambda"], c.params["p"]).function;
        }));
      }
      if (j.contains("extremal_ms")) {
        const json &m = cx.arr(j["extremal_ms"], p + "/extremal_ms");
        for (std::size_t k = 0; k < m.size(); ++k) {
          const std::string mp = p + "/extremal_ms/" + std::to_string(k);
          const int v = cx.integer(m[k], mp);
          if (v < 1 || v > 20) cx.fail(mp, "m must lie in [1, 20]");
          c.extremal_ms.push_back(v);
        }
      } else if (c.theorem == Theorem::T3_2 || c.theorem == Theorem::Cor3_2) {
        c.extremal_ms = {6, 8, 10};
      }
      cfg.cases.push_back(std::move(c));
    }
  }
  return cfg;
}

SuiteConfig load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

// ---------------------------------------------------------------------------
// Checks

namespace {

struct Skip {
  std::string reason;
};

bool is_commutator(Theorem t) {
  return t == Theorem::T3_4 || t == Theorem::T3_5 || t == Theorem::T3_6;
}
bool is_corollary(Theorem t) {
  return t == Theorem::Cor3_1 || t == Theorem::Cor3_2 || t == Theorem::Cor3_3;
}
bool morrey_family(Theorem t) {
  return t == Theorem::T3_1 || t == Theorem::Cor3_1 || t == Theorem::T3_4;
}
bool herz_family(Theorem t) { return t == Theorem::T3_2 || t == Theorem::Cor3_2; }

double par(const TheoremCase &c, const char *k) {
  auto it = c.params.find(k);
  if (it == c.params.end()) throw Skip{std::string("missing parameter ") + k};
  return it->second;
}

ReportRow row(const TheoremCase &c, std::string quantity, double value, double bound,
              double margin, Verdict v, std::string note = "") {
  return {c.id, theorem_name(c.theorem), std::move(quantity), value, bound, margin, v,
          std::move(note)};
}

Verdict judge(double margin, double tol) { return margin >= -tol ? Verdict::Pass : Verdict::Fail; }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct Spaces {
  SpaceSpec src, tgt;
};

Spaces spaces_for(const TheoremCase &c) {
  Spaces s;
  const Weight &w = *c.w1;
  switch (c.theorem) {
    case Theorem::T3_1:
    case Theorem::Cor3_1:
      s.src = {SpaceKind::CentralMorrey, par(c, "p"), std::nullopt, std::nullopt, par(c, "lambda"), w, std::nullopt};
      s.tgt = s.src;
      break;
    case Theorem::T3_2:
    case Theorem::Cor3_2:
      s.src = {SpaceKind::Herz, par(c, "p"), par(c, "q"), par(c, "alpha"), std::nullopt, w, std::nullopt};
      s.tgt = s.src;
      break;
    case Theorem::T3_3:
    case Theorem::Cor3_3:
      s.src = {SpaceKind::MorreyHerz, par(c, "p"), par(c, "q"), par(c, "alpha"), par(c, "lambda"), w, std::nullopt};
      s.tgt = s.src;
      break;
    case Theorem::T3_4:
      s.src = {SpaceKind::TwoWeightMorrey, par(c, "p"), std::nullopt, std::nullopt, par(c, "lambda1"), w, *c.w2};
      s.tgt = {SpaceKind::TwoWeightMorrey, par(c, "p"), std::nullopt, std::nullopt, par(c, "lambda"), w, *c.w2};
      break;
    case Theorem::T3_5:
      s.src = {SpaceKind::TwoWeightHerz, par(c, "p"), par(c, "q"), par(c, "alpha1"), std::nullopt, w, *c.w2};
      s.tgt = {SpaceKind::TwoWeightHerz, par(c, "p"), par(c, "q"), par(c, "alpha2"), std::nullopt, w, *c.w2};
      break;
    case Theorem::T3_6:
      s.src = {SpaceKind::TwoWeightMorreyHerz, par(c, "p"), par(c, "q"), par(c, "alpha1"), par(c, "lambda"), w, *c.w2};
      s.tgt = {SpaceKind::TwoWeightMorreyHerz, par(c, "p"), par(c, "q"), par(c, "alpha2"), par(c, "lambda"), w, *c.w2};
      break;
    default:
      throw Skip{"no function spaces for this theorem"};
  }
  return s;
}

// Hypotheses shared by the upper and lower directions; throws Skip.
void check_hypotheses(const TheoremCase &c) {
  if (!c.phi || !c.omega || !c.w1) throw Skip{"case lacks kernel, omega or weight"};
  const int n = c.w1->dim();
  const double gamma = c.w1->gamma();
  if (!(gamma > -n)) throw Skip{"hypothesis gamma > -n violated"};
  const double p = par(c, "p");
  if (!(p > 0.0)) throw Skip{"hypothesis p > 0 violated"};
  switch (c.theorem) {
    case Theorem::T3_1:
    case Theorem::Cor3_1:
      if (!(1.0 + par(c, "lambda") * p > 0.0)) throw Skip{"hypothesis 1 + lambda p > 0 violated"};
      break;
    case Theorem::T3_2:
    case Theorem::Cor3_2:
      if (!(par(c, "q") >= 1.0)) throw Skip{"hypothesis q >= 1 violated"};
      if (n != 1) throw Skip{"C2 exponent 1-2n-gamma/q-n/q matches the dilation count only for n = 1"};
      break;
    case Theorem::T3_3:
    case Theorem::Cor3_3:
      if (!(par(c, "q") >= 1.0)) throw Skip{"hypothesis q >= 1 violated"};
      if (!(par(c, "lambda") > 0.0)) throw Skip{"hypothesis lambda > 0 violated"};
      break;
    case Theorem::T3_4: {
      const double l1 = par(c, "lambda") - par(c, "beta") * p / (n + gamma);
      if (!(l1 > 0.0)) throw Skip{"hypothesis lambda1 = lambda - beta p/(n+gamma) > 0 violated"};
      if (std::fabs(l1 - par(c, "lambda1")) > 1e-12 * std::max(1.0, std::fabs(l1)))
        throw Skip{"lambda1 does not equal lambda - beta p/(n+gamma)"};
      break;
    }
    case Theorem::T3_5:
    case Theorem::T3_6: {
      if (!(par(c, "q") >= 1.0)) throw Skip{"hypothesis q >= 1 violated"};
      const double a1 = par(c, "alpha2") + n * par(c, "beta") / (n + gamma);
      if (std::fabs(a1 - par(c, "alpha1")) > 1e-12 * std::max(1.0, std::fabs(a1)))
        throw Skip{"alpha1 does not equal alpha2 + n beta/(n+gamma)"};
      break;
    }
    default:
      break;
  }
  if (is_commutator(c.theorem)) {
    const double beta = par(c, "beta");
    if (!(beta > 0.0 && beta <= 1.0)) throw Skip{"hypothesis 0 < beta <= 1 violated"};
  }
  if (is_corollary(c.theorem)) {
    if (!c.w1->angular_is_constant() || std::fabs(c.w1->angular()({1, 0, 0}) - 1.0) > 0.0)
      throw Skip{"corollary needs the power weight |x|^gamma"};
    if (c.phi->sign != KernelSign::Nonnegative) throw Skip{"corollary needs a nonnegative kernel"};
  }
}

BoundConstant case_constant(const TheoremCase &c) {
  const RadialKernel &phi = *c.phi;
  const int n = c.w1->dim();
  const double g = c.w1->gamma();
  switch (c.theorem) {
    case Theorem::T3_1:
    case Theorem::Cor3_1:
      return c1(phi, n, g, par(c, "lambda"));
    case Theorem::T3_2:
    case Theorem::Cor3_2:
      return c2(phi, n, g, par(c, "q"), par(c, "alpha"));
    case Theorem::T3_3:
    case Theorem::Cor3_3:
      return c3(phi, n, g, par(c, "q"), par(c, "lambda"), par(c, "alpha"));
    case Theorem::T3_4:
      return c4(phi, n, g, par(c, "p"), par(c, "lambda1"), par(c, "beta"), par(c, "lambda"));
    case Theorem::T3_5:
      return c5(phi, n, g, par(c, "q"), par(c, "alpha1"), par(c, "beta"), C5Variant::Herz, 0.0,
                par(c, "alpha2"));
    case Theorem::T3_6:
      return c5(phi, n, g, par(c, "q"), par(c, "alpha1"), par(c, "beta"), C5Variant::MorreyHerz,
                par(c, "lambda"), par(c, "alpha2"));
    default:
      throw Skip{"no constant for this theorem"};
  }
}

TestFunction image_of(const TheoremCase &c, const TestFunction &f) {
  HausdorffOperator op(*c.phi, *c.omega);
  if (is_commutator(c.theorem)) return commutator_image(CommutatorOperator{op, *c.symbol}, f);
  return hausdorff_image(op, f);
}

double straddle(double s) { return (1.0 + std::exp2(s)) * std::max(1.0, std::exp2(-s)); }

struct CorpusRatios {
  std::vector<double> ratios;  // NaN for skipped members
  int skipped = 0;
  double max = 0.0;
  int argmax = -1;
};

CorpusRatios corpus_ratios(const TheoremCase &c, const Window &win, bool with_tail) {
  const Spaces s = spaces_for(c);
  CorpusRatios out;
  for (std::size_t i = 0; i < c.corpus.size(); ++i) {
    const TestFunction &f = c.corpus[i];
    const NormResult src = evaluate_norm(s.src, f, win);
    const double sv = with_tail ? src.with_tail() : src.value;
    if (f.is_zero() || src.divergent || !(sv > 0.0) || !std::isfinite(sv)) {
      ++out.skipped;
      out.ratios.push_back(std::nan(""));
      continue;
    }
    const NormResult tgt = evaluate_norm(s.tgt, image_of(c, f), win);
    const double tv = tgt.divergent && with_tail ? kInf : with_tail ? tgt.with_tail() : tgt.value;
    const double r = tv / sv;
    out.ratios.push_back(r);
    if (out.argmax < 0 || r > out.max) {
      out.max = r;
      out.argmax = static_cast<int>(i);
    }
  }
  return out;
}

}  // namespace

double kappa_lower(const Weight &w, double r) { return std::pow(w.sphere_mass(), 1.0 / r); }

double slack_upper(const TheoremCase &c) {
  const Weight &w = *c.w1;
  const int n = w.dim();
  const double g = w.gamma();
  auto hold = [](const Weight &x, double r) {
    return std::pow(x.sphere_mass() / x.angular_floor(), 1.0 / r);
  };
  switch (c.theorem) {
    case Theorem::T3_1:
    case Theorem::Cor3_1:
      return hold(w, par(c, "p"));
    case Theorem::T3_2:
      return hold(w, par(c, "q")) * straddle(par(c, "alpha"));
    case Theorem::Cor3_2:
      return hold(w, par(c, "q"));
    case Theorem::T3_3:
      return hold(w, par(c, "q")) * straddle(-(par(c, "lambda") - par(c, "alpha")));
    case Theorem::Cor3_3:
      return hold(w, par(c, "q"));
    case Theorem::T3_4: {
      const double k2 = c.w2->sphere_mass() / (n + g);
      return hold(w, par(c, "p")) * std::pow(k2, -par(c, "beta") / (n + g));
    }
    case Theorem::T3_5: {
      const double k1 = w.sphere_mass() / (n + g);
      const double s = par(c, "alpha1") * (1.0 + g / n);
      return hold(*c.w2, par(c, "q")) * std::pow(k1, -par(c, "beta") / (n + g)) * straddle(s);
    }
    case Theorem::T3_6: {
      const double k1 = w.sphere_mass() / (n + g);
      const double s = (par(c, "lambda") - par(c, "alpha1")) * (1.0 + g / n);
      return hold(*c.w2, par(c, "q")) * std::pow(k1, -par(c, "beta") / (n + g)) * straddle(-s);
    }
    default:
      return 1.0;
  }
}

CaseResult check_upper(const TheoremCase &c, const SuiteConfig &cfg) {
  CaseResult out;
  try {
    check_hypotheses(c);
    if (par(c, "p") < 1.0) throw Skip{"p < 1: the Minkowski step of the upper bound needs p >= 1"};
    const BoundConstant C = case_constant(c);
    const double r = case_r(c);
    const double om = omega_norm(*c.omega, r);
    const double lip = c.symbol ? c.symbol->lip_norm() : 1.0;

    if (C.divergent) {
      // necessity control: ratios must grow with the window
      out.rows.push_back(row(c, "constant_" + C.id, kInf, kInf, 0.0, Verdict::DivergentAsPredicted,
                             "constant diverges; upper check inapplicable"));
      Series sr{c.id + "_ratio_vs_window", {}};
      double prev = -kInf;
      bool grows = true;
      for (int K : cfg.control_windows) {
        const CorpusRatios cr = corpus_ratios(c, Window{-K, K}, false);
        sr.points.push_back({static_cast<double>(K), cr.max});
        out.rows.push_back(row(c, "max_ratio_window_" + std::to_string(K), cr.max, prev, 0.0,
                               Verdict::Pass,
                               cr.argmax >= 0 ? "argmax " + c.corpus[cr.argmax].label() : ""));
        if (!(cr.max > prev)) grows = false;
        prev = cr.max;
      }
      const double first = sr.points.empty() ? 0.0 : sr.points.front().second;
      out.rows.push_back(row(c, "ratio_growth", prev, first, prev > first ? (prev - first) / first : 0.0,
                             grows ? Verdict::DivergentAsPredicted : Verdict::Fail,
                             grows ? "max ratio strictly increasing over windows"
                                   : "max ratio not monotone in the window"));
      out.series.push_back(std::move(sr));
      return out;
    }

    const double K = slack_upper(c);
    const double B = K * C.value * om * lip;
    const CorpusRatios cr = corpus_ratios(c, cfg.window, true);
    out.degenerate += cr.skipped;
    Series sr{c.id + "_corpus_ratios", {}};
    for (std::size_t i = 0; i < cr.ratios.size(); ++i)
      if (!std::isnan(cr.ratios[i])) sr.points.push_back({static_cast<double>(i), cr.ratios[i]});
    std::ostringstream note;
    note << "C=" << fmt(C.value) << " (" << C.id << "), K=" << fmt(K) << ", ||Omega||=" << fmt(om);
    if (is_commutator(c.theorem)) note << ", ||b||=" << fmt(lip);
    note << "; " << (cr.ratios.size() - cr.skipped) << " ratios, " << cr.skipped << " skipped";
    if (cr.argmax >= 0) note << "; max at " << c.corpus[cr.argmax].label();
    if (cr.argmax < 0) {
      out.rows.push_back(row(c, "upper_max_ratio", 0.0, B, 1.0, Verdict::Skipped,
                             "no nondegenerate corpus member"));
    } else {
      const double m = margin_of(cr.max, B);
      out.rows.push_back(row(c, "upper_max_ratio", cr.max, B, m, judge(m, cfg.rel_tol), note.str()));
    }
    out.series.push_back(std::move(sr));
  } catch (const Skip &s) {
    out.rows.push_back(row(c, "upper_max_ratio", 0.0, 0.0, 0.0, Verdict::Skipped, s.reason));
  }
  return out;
}

namespace {

void lower_morrey(const TheoremCase &c, const SuiteConfig &cfg, CaseResult &out) {
  const double p = par(c, "p"), lambda = par(c, "lambda");
  const Weight &w = *c.w1;
  const ExtremalFamily e = morrey_extremal(*c.omega, w, lambda, p);
  const NormResult nf = central_morrey_norm(e.function, p, lambda, w, cfg.window);
  const double cf = *e.closed_form_norm;
  const double mc = std::fabs(nf.value - cf) / cf;
  out.rows.push_back(row(c, "extremal_norm_closed_form", nf.value, cf, -mc,
                         mc <= 1e-4 ? Verdict::Pass : Verdict::Fail, "relative error " + fmt(mc)));
  const NormResult nh = central_morrey_norm(image_of(c, e.function), p, lambda, w, cfg.window);
  const double R = nh.value / nf.value;
  const BoundConstant C = c1(*c.phi, w.dim(), w.gamma(), lambda);
  const double L = C.value * lower_bound_factor(*c.omega, conjugate(p), w) * kappa_lower(w, p);
  const double m = (R - L) / L;
  out.rows.push_back(row(c, "extremal_ratio", R, L, m, judge(m, cfg.rel_tol),
                         "bound C1 * lower_bound_factor * omega(S)^(1/p)"));
  if (is_corollary(c.theorem)) {
    const double d = std::fabs(R / L - 1.0);
    out.rows.push_back(row(c, "two_sided_equality", R, L, -d,
                           d <= cfg.rel_tol ? Verdict::Pass : Verdict::Fail,
                           "power weight: extremal ratio equals C1 ||Omega|| omega(S)^(1/p)"));
  }
}

void lower_herz(const TheoremCase &c, const SuiteConfig &cfg, CaseResult &out) {
  const double p = par(c, "p"), q = par(c, "q"), alpha = par(c, "alpha");
  if (alpha != 0.0) throw Skip{"the truncated S_m integral carries no alpha; lower check needs alpha = 0"};
  const Weight &w = *c.w1;
  const Window ext{-cfg.extremal_window, cfg.extremal_window};
  const double lbf = lower_bound_factor(*c.omega, conjugate(q), w) * kappa_lower(w, q);
  Series sr{c.id + "_ratio_vs_m", {}};
  double prev = -kInf;
  bool monotone = true;
  for (int m : c.extremal_ms) {
    const ExtremalFamily e = herz_extremal(*c.omega, w, q, alpha, m, p);
    const NormResult nf = herz_norm(e.function, alpha, p, q, w, ext);
    const NormResult nh = herz_norm(image_of(c, e.function), alpha, p, q, w, ext);
    const double R = nh.with_tail() / nf.with_tail();
    const BoundConstant S = herz_truncated_constant(*c.phi, w.dim(), w.gamma(), q, m);
    const double L = S.value * lbf;
    const double mg = (R - L) / L;
    out.rows.push_back(row(c, "extremal_ratio_m" + std::to_string(m), R, L, mg, judge(mg, cfg.rel_tol),
                           "bound S_m * lower_bound_factor * omega(S)^(1/q); window +-" +
                               std::to_string(cfg.extremal_window) + " plus tail model"));
    sr.points.push_back({static_cast<double>(m), R});
    if (!(R >= prev)) monotone = false;
    prev = R;
  }
  if (c.extremal_ms.size() > 1)
    out.rows.push_back(row(c, "extremal_ratio_monotone_in_m", prev, sr.points.front().second, 0.0,
                           monotone ? Verdict::Pass : Verdict::Fail,
                           monotone ? "nondecreasing in m" : "not monotone in m"));
  out.series.push_back(std::move(sr));
}

void lower_morrey_herz(const TheoremCase &c, const SuiteConfig &cfg, CaseResult &out) {
  const double p = par(c, "p"), q = par(c, "q"), alpha = par(c, "alpha"), lambda = par(c, "lambda");
  const Weight &w = *c.w1;
  const int n = w.dim();
  const ExtremalFamily e = morrey_herz_extremal(*c.omega, w, q, alpha, lambda, p);
  const TestFunction img = image_of(c, e.function);
  // pushforward: pure power with the predicted exponent and amplitude
  const double ex = *e.closed_form_image_exponent;
  const double r0 = 0.1, r1 = 1.0, r2 = 10.0;
  const double v0 = img({r0, 0, 0}), v1 = img({r1, 0, 0}), v2 = img({r2, 0, 0});
  const double s01 = std::log(v1 / v0) / std::log(r1 / r0);
  const double s12 = std::log(v2 / v1) / std::log(r2 / r1);
  const double resid = std::max(std::fabs(s01 - ex), std::fabs(s12 - ex));
  out.rows.push_back(row(c, "pushforward_exponent", 0.5 * (s01 + s12), ex, -resid,
                         resid < 1e-6 ? Verdict::Pass : Verdict::Fail,
                         "log-log slopes over [0.1, 10], residual " + fmt(resid)));
  const double qc = conjugate(q);
  const double amp_expect = c3(*c.phi, n, w.gamma(), q, lambda, alpha).value *
                            std::pow(omega_norm(*c.omega, qc), qc);
  const double amp = v1;
  const double da = std::fabs(amp / amp_expect - 1.0);
  out.rows.push_back(row(c, "pushforward_amplitude", amp, amp_expect, -da,
                         da < cfg.rel_tol ? Verdict::Pass : Verdict::Fail, "C3 * ||Omega||^{q'}_{q'}"));
  const NormResult nf = morrey_herz_norm(e.function, alpha, lambda, p, q, w, cfg.window);
  const NormResult nh = morrey_herz_norm(img, alpha, lambda, p, q, w, cfg.window);
  const double R = nh.value / nf.value;
  const double L = c3(*c.phi, n, w.gamma(), q, lambda, alpha).value *
                   lower_bound_factor(*c.omega, qc, w) * kappa_lower(w, q);
  const double m = (R - L) / L;
  out.rows.push_back(row(c, "extremal_ratio", R, L, m, judge(m, cfg.rel_tol),
                         "bound C3 * lower_bound_factor * omega(S)^(1/q)"));
  if (is_corollary(c.theorem)) {
    const double d = std::fabs(R / L - 1.0);
    out.rows.push_back(row(c, "two_sided_equality", R, L, -d,
                           d <= cfg.rel_tol ? Verdict::Pass : Verdict::Fail,
                           "power weight: extremal ratio equals C3 ||Omega|| omega(S)^(1/q)"));
  }
}

}  // namespace

CaseResult check_lower(const TheoremCase &c, const SuiteConfig &cfg) {
  CaseResult out;
  if (is_commutator(c.theorem)) {
    out.rows.push_back(row(c, "lower", 0.0, 0.0, 0.0, Verdict::Skipped,
                           "N/A: no necessity statement for the commutator"));
    return out;
  }
  try {
    check_hypotheses(c);
    if (c.phi->sign == KernelSign::Mixed) throw Skip{"lower bound needs a kernel of constant sign"};
    if (!c.omega->nonvanishing()) throw Skip{"extremal needs a nonvanishing Omega"};
    const BoundConstant C = case_constant(c);
    if (C.divergent) throw Skip{"constant diverges; see the window-growth rows"};
    if (morrey_family(c.theorem)) lower_morrey(c, cfg, out);
    else if (herz_family(c.theorem)) lower_herz(c, cfg, out);
    else lower_morrey_herz(c, cfg, out);
  } catch (const Skip &s) {
    out.rows.push_back(row(c, "lower", 0.0, 0.0, 0.0, Verdict::Skipped, s.reason));
  } catch (const Error &e) {
    if (e.code() == ErrorCode::Parameter || e.code() == ErrorCode::Domain)
      out.rows.push_back(row(c, "lower", 0.0, 0.0, 0.0, Verdict::Skipped,
                             std::string("extremal construction: ") + e.what()));
    else
      throw;
  }
  return out;
}

CaseResult check_lemma_2_1(const TheoremCase &c, const SuiteConfig &) {
  CaseResult out;
  for (double g : c.gammas)
    for (int n : c.dims) {
      if (!(g > -n)) {
        out.rows.push_back(row(c, "annulus_ratio_n" + std::to_string(n) + "_g" + fmt(g), 0, 0, 0,
                               Verdict::Skipped, "gamma <= -n"));
        continue;
      }
      const Weight w = Weight::power(n, g);
      const double expect = 1.0 - std::exp2(-g - n);
      for (int k = c.k_lo; k <= c.k_hi; ++k) {
        const double ratio = w.annulus_mass(k) / w.ball_mass(std::ldexp(1.0, k));
        const double err = std::fabs(ratio - expect);
        std::ostringstream q;
        q << "annulus_ratio_n" << n << "_g" << g << "_k" << k;
        out.rows.push_back(row(c, q.str(), ratio, expect, margin_of(err, 1e-8),
                               err < 1e-8 ? Verdict::Pass : Verdict::Fail,
                               "|error| " + fmt(err) + " < 1e-8"));
      }
    }
  return out;
}

CaseResult check_ineq_3_8(const TheoremCase &c, const SuiteConfig &) {
  CaseResult out;
  if (!c.symbol) throw Error(ErrorCode::Parameter, "Ineq3_8 needs a symbol");
  const LipschitzSymbol &b = *c.symbol;
  const int n = b.dim();
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> logu(std::log(1e-3), std::log(1e3));
  std::normal_distribution<double> nd;
  auto direction = [&] {
    Vec v{0, 0, 0};
    double s = 0.0;
    while (!(s > 0.0)) {
      for (int i = 0; i < n; ++i) v[i] = nd(rng);
      s = norm(v, n);
    }
    return scaled(v, 1.0 / s);
  };
  double worst = 0.0;
  std::optional<std::string> witness;
  for (int i = 0; i < c.samples; ++i) {
    const Vec x = scaled(direction(), std::exp(logu(rng)));
    const double t = std::exp(logu(rng));
    const Vec yp = direction();
    const LipschitzCheck r = lipschitz_pointwise_bound(b, x, t, yp);
    if (r.bound > 0.0) worst = std::max(worst, r.actual / r.bound);
    if (!r.holds && !witness) {
      std::ostringstream os;
      os.precision(6);
      os << "witness x=(" << x[0];
      for (int k = 1; k < n; ++k) os << "," << x[k];
      os << ") t=" << t << " y'=(" << yp[0];
      for (int k = 1; k < n; ++k) os << "," << yp[k];
      os << "): |b(x)-b(|x|y'/t)|=" << r.actual << " > " << r.bound;
      witness = os.str();
    }
  }
  const bool holds = !witness;
  std::string q = "ineq_3_8_max_slack";
  if (c.expect_fail) {
    out.rows.push_back(row(c, q, worst, 1.0, margin_of(worst, 1.0), holds ? Verdict::Fail : Verdict::Pass,
                           holds ? "negative control: no violation found in " + std::to_string(c.samples) + " samples"
                                 : "negative control failed as expected; " + *witness));
  } else {
    out.rows.push_back(row(c, q, worst, 1.0, margin_of(worst, 1.0), holds ? Verdict::Pass : Verdict::Fail,
                           holds ? std::to_string(c.samples) + " samples" : *witness));
  }
  return out;
}

CaseResult run_case(const TheoremCase &c, const SuiteConfig &cfg) {
  try {
    if (c.theorem == Theorem::Lemma2_1) return check_lemma_2_1(c, cfg);
    if (c.theorem == Theorem::Ineq3_8) return check_ineq_3_8(c, cfg);
    CaseResult up = check_upper(c, cfg);
    CaseResult lo = check_lower(c, cfg);
    up.rows.insert(up.rows.end(), lo.rows.begin(), lo.rows.end());
    up.series.insert(up.series.end(), lo.series.begin(), lo.series.end());
    up.degenerate += lo.degenerate;
    return up;
  } catch (const Error &e) {
    CaseResult out;
    const bool hyp = e.code() == ErrorCode::Parameter || e.code() == ErrorCode::Domain ||
                     e.code() == ErrorCode::NonIntegrable;
    out.rows.push_back(row(c, "case", 0.0, 0.0, 0.0, hyp ? Verdict::Skipped : Verdict::Fail,
                           std::string(error_code_name(e.code())) + ": " + e.what()));
    return out;
  }
}

VerificationReport run_suite(const SuiteConfig &cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<CaseResult> results(cfg.cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cfg.cases.size(); i = next++) results[i] = run_case(cfg.cases[i], cfg);
  };
  const int nt = std::max(1, std::min<int>(cfg.threads, static_cast<int>(cfg.cases.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < nt; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread &t : pool) t.join();

  VerificationReport rep;
  rep.meta = cfg;
  rep.meta.cases.clear();
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (ReportRow &r : results[i].rows) rep.rows.push_back(std::move(r));
    for (Series &s : results[i].series) rep.series.push_back(std::move(s));
    rep.degenerate_skipped += results[i].degenerate;
  }
  rep.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

int exit_code(const VerificationReport &r) { return r.any_fail() ? 1 : 0; }

}  // namespace rh
