#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "functions.hpp"
#include "operators.hpp"
#include "spaces.hpp"
#include "weights.hpp"

namespace rh {

enum class Theorem { T3_1, T3_2, T3_3, T3_4, T3_5, T3_6, Cor3_1, Cor3_2, Cor3_3, Lemma2_1, Ineq3_8 };
const char *theorem_name(Theorem t);
Theorem theorem_from_name(const std::string &s);

enum class Verdict { Pass, Fail, Skipped, DivergentAsPredicted };
const char *verdict_name(Verdict v);
Verdict verdict_from_name(const std::string &s);

struct TheoremCase {
  std::string id;
  Theorem theorem = Theorem::T3_1;
  // p, q, alpha, lambda, beta, lambda1, alpha1, alpha2 as the theorem needs them
  std::map<std::string, double> params;
  std::optional<RadialKernel> phi;
  std::optional<AngularProfile> omega;
  std::optional<Weight> w1, w2;
  std::optional<LipschitzSymbol> symbol;
  std::vector<TestFunction> corpus;
  std::vector<int> extremal_ms;
  // Lemma2_1 grid
  std::vector<double> gammas;
  std::vector<int> dims;
  int k_lo = -5, k_hi = 5;
  // Ineq3_8
  int samples = 10000;
  std::uint64_t seed = 1;
  // Negative controls: the raw check is expected to fail.
  bool expect_fail = false;
};

struct SuiteConfig {
  std::vector<TheoremCase> cases;
  double rel_tol = 1e-3;
  double quad_tol = 1e-10;
  Window window{-24, 24};
  int extremal_window = 60;
  std::vector<int> control_windows{8, 16, 24};
  int threads = 1;
};

struct ReportRow {
  std::string case_id;
  std::string theorem;
  std::string quantity;
  double value = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  Verdict verdict = Verdict::Skipped;
  std::string note;
};

struct Series {
  std::string name;  // e.g. "<case>_ratio_vs_m"
  std::vector<std::pair<double, double>> points;
};

struct CaseResult {
  std::vector<ReportRow> rows;
  std::vector<Series> series;
  int degenerate = 0;  // corpus members skipped for a zero or infinite source norm
};

struct VerificationReport {
  SuiteConfig meta;  // cases left empty; tolerances and windows only
  std::vector<ReportRow> rows;
  std::vector<Series> series;
  int degenerate_skipped = 0;
  double runtime_seconds = 0.0;  // never written into the report body

  int count(Verdict v) const;
  bool any_fail() const { return count(Verdict::Fail) > 0; }
};

// Parses a JSON config; errors are ErrorCode::Config and carry "line L, column C".
SuiteConfig parse_config(const std::string &text, const std::string &source = "<config>");
SuiteConfig load_config(const std::string &path);

CaseResult check_upper(const TheoremCase &c, const SuiteConfig &cfg);
CaseResult check_lower(const TheoremCase &c, const SuiteConfig &cfg);
CaseResult check_lemma_2_1(const TheoremCase &c, const SuiteConfig &cfg);
CaseResult check_ineq_3_8(const TheoremCase &c, const SuiteConfig &cfg);
CaseResult run_case(const TheoremCase &c, const SuiteConfig &cfg);
VerificationReport run_suite(const SuiteConfig &cfg);

// Tracked slack constants (see README). kappa_lower is omega(S)^{1/r}.
double slack_upper(const TheoremCase &c);
double kappa_lower(const Weight &w, double r);

// margin = (bound - value)/|bound|; for lower checks callers pass the negated pair.
double margin_of(double value, double bound);

// Report rendering (report.cpp). The body excludes runtime.
std::string report_json(const VerificationReport &r);
std::string report_csv(const VerificationReport &r);
std::string series_data(const Series &s);
VerificationReport report_from_json(const std::string &text);
// Writes report.json, report.csv and one <series>.dat per series into dir.
void write_report(const VerificationReport &r, const std::string &dir);
int exit_code(const VerificationReport &r);

}  // namespace rh
