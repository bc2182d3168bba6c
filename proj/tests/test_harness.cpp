#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "harness.hpp"

using namespace rh;

namespace {

const char *kBase = R"({
  "weights": {"pw": {"n": 1, "gamma": 0.3}},
  "kernels": {"hardy": "hardy:1", "adj": "adjoint_hardy"},
  "omegas": {"one": {"n": 1, "constant": 1}},
  "cases": [%CASES%]
})";

std::string with_cases(const std::string &cases) {
  std::string s = kBase;
  s.replace(s.find("%CASES%"), 7, cases);
  return s;
}

std::string config_error(const std::string &text) {
  try {
    parse_config(text, "t.json");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::Config);
    return e.what();
  }
  FAIL("config parsed unexpectedly");
  return "";
}

const ReportRow *find_row(const CaseResult &r, const std::string &q) {
  for (const ReportRow &x : r.rows)
    if (x.quantity == q) return &x;
  return nullptr;
}

}  // namespace

TEST_CASE("config errors carry line and column") {
  const std::string msg = config_error("{\n  \"cases\": [],\n  \"bogus\": 1\n}");
  CHECK(msg.find("t.json: line 3, column") != std::string::npos);
  CHECK(msg.find("bogus") != std::string::npos);

  const std::string syntax = config_error("{\n  \"cases\": [\n}");
  CHECK(syntax.find("line 3") != std::string::npos);

  const std::string kernel = config_error(
      with_cases(R"({"id": "a", "theorem": "Cor3_1", "kernel": "nope", "omega": "one", "weight": "pw", "p": 2, "lambda": -0.1})"));
  CHECK(kernel.find("unknown kernel") != std::string::npos);
  CHECK(kernel.find("line ") != std::string::npos);

  const std::string field = config_error(
      with_cases(R"({"id": "a", "theorem": "Cor3_1", "kernel": "hardy", "omega": "one", "weight": "pw", "p": 2, "lambda": -0.1, "colour": 1})"));
  CHECK(field.find("unknown case field 'colour'") != std::string::npos);

  const std::string missing = config_error(
      with_cases(R"({"id": "a", "theorem": "Cor3_1", "kernel": "hardy", "omega": "one", "weight": "pw", "p": 2})"));
  CHECK(missing.find("missing parameter 'lambda'") != std::string::npos);

  CHECK(config_error(with_cases(R"({"id": "a", "theorem": "T9_9"})")).find("line") != std::string::npos);
}

TEST_CASE("empty case list gives an empty report and exit 0") {
  const SuiteConfig cfg = parse_config(with_cases(""));
  const VerificationReport r = run_suite(cfg);
  CHECK(r.rows.empty());
  CHECK(exit_code(r) == 0);
}

TEST_CASE("lambda <= -1/p is skipped with the hypothesis named") {
  const SuiteConfig cfg = parse_config(with_cases(
      R"({"id": "bad", "theorem": "Cor3_1", "kernel": "hardy", "omega": "one", "weight": "pw", "p": 2, "lambda": -0.6, "corpus": 2})"));
  const VerificationReport r = run_suite(cfg);
  REQUIRE(!r.rows.empty());
  for (const ReportRow &x : r.rows) {
    CHECK(x.verdict == Verdict::Skipped);
    CHECK(x.note.find("1 + lambda p > 0") != std::string::npos);
  }
  CHECK(exit_code(r) == 0);
}

TEST_CASE("zero corpus member is skipped and counted") {
  SuiteConfig cfg = parse_config(with_cases(
      R"({"id": "z", "theorem": "Cor3_1", "kernel": "hardy", "omega": "one", "weight": "pw", "p": 2, "lambda": -0.1, "corpus": 3})"));
  TheoremCase &c = cfg.cases.at(0);
  c.corpus.push_back(TestFunction::zero(1));
  const CaseResult up = check_upper(c, cfg);
  CHECK(up.degenerate >= 1);
  const ReportRow *row = find_row(up, "upper_max_ratio");
  REQUIRE(row);
  CHECK(row->verdict == Verdict::Pass);
  CHECK(std::isfinite(row->value));
}

TEST_CASE("lower check is homogeneous in Omega") {
  SuiteConfig cfg = parse_config(with_cases(
      R"({"id": "h", "theorem": "T3_1", "kernel": "hardy", "omega": "one", "weight": "pw", "p": 2, "lambda": -0.1, "corpus": 0})"));
  TheoremCase c = cfg.cases.at(0);
  c.omega = AngularProfile(1, [](const Vec &x) { return 2.0 + x[0]; }, true, "2+x");
  TheoremCase d = c;
  d.omega = c.omega->scaled(2.0);
  const CaseResult rc = check_lower(c, cfg);
  const CaseResult rd = check_lower(d, cfg);
  const ReportRow *a = find_row(rc, "extremal_ratio");
  const ReportRow *b = find_row(rd, "extremal_ratio");
  REQUIRE(a);
  REQUIRE(b);
  CHECK(b->value / b->bound == doctest::Approx(a->value / a->bound).epsilon(1e-10));
  CHECK(b->value == doctest::Approx(2.0 * a->value).epsilon(1e-9));
}

TEST_CASE("run_suite is deterministic and keeps declared order") {
  SuiteConfig cfg = parse_config(with_cases(
      R"({"id": "b", "theorem": "Cor3_1", "kernel": "hardy", "omega": "one", "weight": "pw", "p": 2, "lambda": -0.1, "corpus": 4},
         {"id": "a", "theorem": "Lemma2_1", "gammas": [0, 1], "dims": [1], "k_range": [-1, 1]})"));
  cfg.threads = 3;
  const VerificationReport r1 = run_suite(cfg);
  const VerificationReport r2 = run_suite(cfg);
  CHECK(report_json(r1) == report_json(r2));
  CHECK(report_csv(r1) == report_csv(r2));
  REQUIRE(!r1.rows.empty());
  CHECK(r1.rows.front().case_id == "b");
  CHECK(r1.rows.back().case_id == "a");
  CHECK(report_json(r1).find("runtime") == std::string::npos);
}

TEST_CASE("report round-trips through JSON and writes artifacts") {
  const SuiteConfig cfg = parse_config(with_cases(
      R"({"id": "lem", "theorem": "Lemma2_1", "gammas": [0.5], "dims": [2], "k_range": [0, 1]},
         {"id": "ctl", "theorem": "Cor3_1", "kernel": "adj", "omega": "one", "weight": "pw", "p": 2, "lambda": 0, "corpus": 2})"));
  const VerificationReport r = run_suite(cfg);
  const VerificationReport back = report_from_json(report_json(r));
  CHECK(report_json(back) == report_json(r));

  const auto dir = std::filesystem::temp_directory_path() / "roughh_report_test";
  std::filesystem::remove_all(dir);
  write_report(r, dir.string());
  for (const char *f : {"report.json", "report.csv", "run_info.json", "cases/lem.csv", "cases/ctl.csv",
                        "ctl_ratio_vs_window.dat"})
    CHECK(std::filesystem::exists(dir / f));
  std::ifstream in(dir / "cases" / "lem.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "case_id,quantity,value,bound,margin,verdict");
  std::filesystem::remove_all(dir);
}

TEST_CASE("divergent constant yields the window-growth control") {
  const SuiteConfig cfg = parse_config(with_cases(
      R"({"id": "ctl", "theorem": "T3_1", "kernel": "adj", "omega": "one", "weight": "pw", "p": 2, "lambda": 0, "corpus": 4})"));
  const CaseResult r = run_case(cfg.cases.at(0), cfg);
  const ReportRow *g = find_row(r, "ratio_growth");
  REQUIRE(g);
  CHECK(g->verdict == Verdict::DivergentAsPredicted);
  CHECK(g->value > g->bound);
}

TEST_CASE("inequality negative control fails with a witness unless expected") {
  const std::string ineq = R"({"id": "bad", "theorem": "Ineq3_8", "n": 2, "beta": 0.5, "corrupt_factor": 0.5, "samples": 2000%EXPECT%})";
  auto run = [&](const std::string &expect) {
    std::string c = ineq;
    c.replace(c.find("%EXPECT%"), 8, expect);
    const SuiteConfig cfg = parse_config(with_cases(c));
    return run_suite(cfg);
  };
  const VerificationReport raw = run("");
  REQUIRE(raw.rows.size() == 1);
  CHECK(raw.rows[0].verdict == Verdict::Fail);
  CHECK(raw.rows[0].note.find("witness") != std::string::npos);
  CHECK(exit_code(raw) == 1);

  const VerificationReport ctl = run(R"(, "expect": "fail")");
  CHECK(ctl.rows[0].verdict == Verdict::Pass);
  CHECK(exit_code(ctl) == 0);
}

TEST_CASE("slack constants for a power weight on S^0") {
  const SuiteConfig cfg = parse_config(with_cases(
      R"({"id": "s", "theorem": "Cor3_1", "kernel": "hardy", "omega": "one", "weight": "pw", "p": 2, "lambda": -0.1, "corpus": 0})"));
  // power weight on S^0: mass 2, floor 1, so only omega(S)^{1/p} remains
  CHECK(slack_upper(cfg.cases[0]) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(kappa_lower(*cfg.cases[0].w1, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(margin_of(1.0, 2.0) == doctest::Approx(0.5));
  CHECK(margin_of(3.0, 2.0) == doctest::Approx(-0.5));
}
