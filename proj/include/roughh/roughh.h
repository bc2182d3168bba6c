/* C interface to the rough Hausdorff operator toolkit.
 *
 * Every function returning int reports RH_OK or one of the RH_ERR_* codes;
 * on failure rh_last_error() holds a message for the calling thread.
 * Handles are opaque and owned by the caller, who releases them with the
 * matching *_free function. Strings returned through char ** are released
 * with rh_string_free.
 */
#ifndef ROUGHH_ROUGHH_H
#define ROUGHH_ROUGHH_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(ROUGHH_BUILDING)
#define RH_API __attribute__((visibility("default")))
#else
#define RH_API
#endif

enum {
  RH_OK = 0,
  RH_ERR_DOMAIN = 1,
  RH_ERR_NONINTEGRABLE = 2,
  RH_ERR_DIVERGENT = 3,
  RH_ERR_TOLERANCE = 4,
  RH_ERR_PARAMETER = 5,
  RH_ERR_CONFIG = 6,
  RH_ERR_IO = 7,
  RH_ERR_INTERNAL = 99
};

typedef struct rh_function rh_function;
typedef struct rh_operator rh_operator;
typedef struct rh_report rh_report;

RH_API const char *rh_last_error(void);
RH_API void rh_string_free(char *s);

/* Test functions on R^n, n in {1, 2, 3}.
 * Separable: radial_expr in r times angular_expr in x, y, z, theta, phi
 * (coordinates of x/|x|); angular_expr may be NULL for a radial function.
 * General: expr in r, x, y, z, theta, phi.
 * e0 / einf are the power-law exponents of |f| at 0 and infinity; pass NaN
 * to fit them from samples along the first axis. */
RH_API int rh_function_separable(int n, const char *radial_expr, const char *angular_expr,
                                 double e0, double einf, rh_function **out);
RH_API int rh_function_general(int n, const char *expr, double e0, double einf,
                               rh_function **out);
RH_API int rh_function_eval(const rh_function *f, const double *x, double *out);
RH_API void rh_function_free(rh_function *f);

/* Operator with radial kernel Phi ("hardy:1", "adjoint_hardy", "power:a:t1:t2",
 * "gaussian", "exp_cutoff", "t_exp", "zero" or "expr:<t>") and angular symbol
 * Omega given as an expression in x, y, z, theta, phi. */
RH_API int rh_operator_create(int n, const char *kernel_spec, const char *omega_expr,
                              rh_operator **out);
/* Turns the operator into the commutator with b(x) = |x|^beta. */
RH_API int rh_operator_set_power_symbol(rh_operator *op, double beta, double lip_norm);
/* x has n coordinates; tol is absolute (a 1e-12 relative floor applies). */
RH_API int rh_operator_apply(const rh_operator *op, const rh_function *f, const double *x,
                             double tol, double *out);
RH_API void rh_operator_free(rh_operator *op);

typedef struct {
  double value;      /* truncated to the dyadic window */
  double tail_bound; /* modelled contribution from outside the window */
  int divergent;
  int k_min, k_max;
} rh_norm_result;

/* space_json: {"kind": "lq" | "central_morrey" | "herz" | "morrey_herz" |
 * "two_weight_morrey" | "two_weight_herz" | "two_weight_morrey_herz",
 * "p", "q", "alpha", "lambda" as the kind needs,
 * "weight": {"n", "gamma", "angular"?, "lower_bound"?}, "weight2": {...}} */
RH_API int rh_norm(const char *space_json, const rh_function *f, int k_min, int k_max,
                   rh_norm_result *out);

/* id: c1, c1_1, c2, c2_proof_alpha, c3, c4, c5_herz, c5_mherz, s_m.
 * params_json: object of numbers (n, gamma, p, q, alpha, lambda, lambda1,
 * beta, alpha1, alpha2, m). Writes {"id", "value" | "divergent", "params",
 * "abs_error"} as JSON text. */
RH_API int rh_constant(const char *id, const char *kernel_spec, const char *params_json,
                       char **json_out);

/* Verification campaigns. */
RH_API int rh_verify_file(const char *config_path, rh_report **out);
RH_API int rh_verify_text(const char *config_text, rh_report **out);
RH_API int rh_report_load(const char *report_json_path, rh_report **out);
/* Writes report.json, report.csv, cases/<id>.csv, series .dat files and run_info.json. */
RH_API int rh_report_write(const rh_report *r, const char *dir);
/* format: "json", "csv" or "summary" */
RH_API int rh_report_render(const rh_report *r, const char *format, char **text_out);
/* verdict: "PASS", "FAIL", "SKIPPED" or "DIVERGENT-AS-PREDICTED".
 * Returns the row count, or minus an error code. */
RH_API int rh_report_count(const rh_report *r, const char *verdict);
/* 0 when no row failed, 1 otherwise. */
RH_API int rh_report_exit_code(const rh_report *r);
RH_API double rh_report_runtime(const rh_report *r);
RH_API void rh_report_free(rh_report *r);

#ifdef __cplusplus
}
#endif

#endif
