#include <cmath>
#include <cstring>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "roughh/roughh.h"

TEST_CASE("C API: operator application on the Hardy preset") {
  rh_function *f = nullptr;
  REQUIRE(rh_function_separable(1, "indicator(0,1)", nullptr, 0.0, -INFINITY, &f) == RH_OK);
  rh_operator *op = nullptr;
  REQUIRE(rh_operator_create(1, "hardy:1", "1", &op) == RH_OK);
  double x = 2.0, v = 0.0;
  REQUIRE(rh_operator_apply(op, f, &x, 1e-12, &v) == RH_OK);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  x = 0.5;
  REQUIRE(rh_operator_apply(op, f, &x, 1e-12, &v) == RH_OK);
  CHECK(v == doctest::Approx(2.0).epsilon(1e-12));

  // commutator with b(x) = |x| at x = 0.5: 0.5 * 2 - 2 * int_0^0.5 y dy / 0.5
  REQUIRE(rh_operator_set_power_symbol(op, 1.0, 1.0) == RH_OK);
  REQUIRE(rh_operator_apply(op, f, &x, 1e-12, &v) == RH_OK);
  CHECK(v == doctest::Approx(0.5).epsilon(1e-10));

  x = 0.0;
  CHECK(rh_operator_apply(op, f, &x, 1e-12, &v) == RH_ERR_DOMAIN);
  CHECK(std::strlen(rh_last_error()) > 0);
  rh_operator_free(op);
  rh_function_free(f);
}

TEST_CASE("C API: errors map to codes") {
  rh_operator *op = nullptr;
  CHECK(rh_operator_create(1, "unknown", "1", &op) == RH_ERR_CONFIG);
  CHECK(std::string(rh_last_error()).find("unknown kernel") != std::string::npos);
  CHECK(rh_operator_create(4, "hardy:1", "1", &op) == RH_ERR_PARAMETER);
  CHECK(rh_operator_create(1, nullptr, "1", &op) == RH_ERR_PARAMETER);
  rh_function *f = nullptr;
  CHECK(rh_function_general(2, "r +* 1", 0.0, 0.0, &f) == RH_ERR_CONFIG);
  CHECK(f == nullptr);
}

TEST_CASE("C API: norms and fitted exponents") {
  rh_function *f = nullptr;
  REQUIRE(rh_function_separable(2, "exp(-r)", "2 + cos(theta)", NAN, NAN, &f) == RH_OK);
  const double x[2] = {0.0, 1.0};
  double v = 0.0;
  REQUIRE(rh_function_eval(f, x, &v) == RH_OK);
  CHECK(v == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-14));
  rh_norm_result r{};
  REQUIRE(rh_norm(R"({"kind": "lq", "q": 2, "weight": {"n": 2, "gamma": 0}})", f, -24, 24, &r) == RH_OK);
  // int_0^inf e^{-2r} r dr * int (2 + cos)^2 = (1/4) * 9 pi
  CHECK(r.value == doctest::Approx(std::sqrt(9.0 * M_PI / 4.0)).epsilon(1e-9));
  CHECK(rh_norm(R"({"kind": "lq", "p": 2, "weight": {"n": 2, "gamma": 0}})", f, -24, 24, &r) ==
        RH_ERR_PARAMETER);
  CHECK(rh_norm(R"({"kind": "lq", "q": 2, "weigth": {}})", f, -24, 24, &r) == RH_ERR_CONFIG);
  rh_function_free(f);
}

TEST_CASE("C API: constants as JSON") {
  char *text = nullptr;
  REQUIRE(rh_constant("c3", "hardy:1", R"({"n": 1, "gamma": 0, "q": 1, "lambda": 0.5, "alpha": 0})",
                      &text) == RH_OK);
  const auto j = nlohmann::json::parse(text);
  rh_string_free(text);
  CHECK(j["id"] == "c3");
  CHECK(j["value"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(j["params"]["lambda"].get<double>() == 0.5);
  CHECK(j.contains("abs_error"));

  REQUIRE(rh_constant("c1", "adjoint_hardy", R"({"n": 1, "gamma": 0, "lambda": 0})", &text) == RH_OK);
  CHECK(nlohmann::json::parse(text)["value"] == "divergent");
  rh_string_free(text);

  CHECK(rh_constant("c1", "hardy:1", R"({"n": 1, "gamma": 0, "lambda": 0, "q": 2})", &text) ==
        RH_ERR_PARAMETER);
  CHECK(rh_constant("c9", "hardy:1", "{}", &text) == RH_ERR_PARAMETER);
}

TEST_CASE("C API: verification campaign") {
  rh_report *r = nullptr;
  REQUIRE(rh_verify_text(R"({"cases": [{"id": "l", "theorem": "Lemma2_1", "dims": [1], "gammas": [0], "k_range": [0, 2]}]})",
                         &r) == RH_OK);
  CHECK(rh_report_count(r, "PASS") == 3);
  CHECK(rh_report_count(r, "FAIL") == 0);
  CHECK(rh_report_count(r, "MAYBE") < 0);
  CHECK(rh_report_exit_code(r) == 0);
  char *csv = nullptr;
  REQUIRE(rh_report_render(r, "csv", &csv) == RH_OK);
  CHECK(std::string(csv).rfind("case_id,quantity,value,bound,margin,verdict\n", 0) == 0);
  rh_string_free(csv);
  CHECK(rh_report_render(r, "pdf", &csv) == RH_ERR_PARAMETER);
  rh_report_free(r);

  r = nullptr;
  CHECK(rh_verify_text("{\"cases\": 3}", &r) == RH_ERR_CONFIG);
  CHECK(std::string(rh_last_error()).find("line 1") != std::string::npos);
  CHECK(rh_verify_file("/nonexistent/config.json", &r) == RH_ERR_IO);
}
