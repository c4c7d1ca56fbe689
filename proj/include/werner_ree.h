/* C interface to the Werner-state relative-entropy-of-entanglement library.
 *
 * All functions are thread-safe for concurrent calls on distinct handles;
 * handles are single-owner and freed with the matching _destroy call.
 * Every fallible call returns a wree_status; outputs are written through
 * pointers only on WREE_OK (exception: wree_solve and wree_certify on
 * WREE_ERR_CERTIFICATION, which still produce their result). */
#ifndef WERNER_REE_H
#define WERNER_REE_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wree_status {
  WREE_OK = 0,
  WREE_ERR_INVALID_ARGUMENT = 1,
  WREE_ERR_DOMAIN = 2,          /* parameter outside its mathematical domain */
  WREE_ERR_REGIME = 3,          /* certificate requested outside its regime */
  WREE_ERR_SIZE = 4,            /* size guard (n cap, dense budget) violated */
  WREE_ERR_DIMENSION = 5,       /* mismatched vector/matrix dimensions */
  WREE_ERR_OVERFLOW = 6,        /* exact integer range exceeded */
  WREE_ERR_MAX_ITERATIONS = 7,  /* solver iteration cap hit */
  WREE_ERR_NUMERICAL = 8,       /* numerical breakdown */
  WREE_ERR_CERTIFICATION = 9    /* duality gap above tol_gap */
} wree_status;

const char* wree_version(void);
const char* wree_status_name(wree_status s);

typedef struct wree_tolerances {
  double tol_eq;   /* normalization residual, default 1e-12 */
  double tol_feas; /* PPT residual, default 1e-9 */
  double tol_gap;  /* certified duality gap in bits, default 1e-8 */
} wree_tolerances;

wree_tolerances wree_default_tolerances(void);

/* ---- closed forms ---- */

wree_status wree_binary_entropy(double p, double* out);
/* p'(d) = (d+2)/(2d), the branch-change abscissa */
wree_status wree_threshold(int d, double* out);
/* asymptotic E_R(sigma(p))/copy in bits */
wree_status wree_asymptotic_ree(int d, double p, double* out);
/* 0 = zero branch, 1 = entropic branch, 2 = linear branch */
wree_status wree_asymptotic_branch(int d, double p, int* out);
/* 1 iff sigma(p) has positive partial transpose (p <= 1/2) */
wree_status wree_single_copy_ppt(int d, double p, int* out);

/* ---- analytic certificates ---- */

/* best finite-n trial upper bound on E_R(sigma(p)^n)/n */
wree_status wree_finite_upper(int d, double p, int n, double* out);
/* best analytic dual lower bound */
wree_status wree_dual_lower(int d, double p, int n, double* out);
/* n -> infinity limit of the trial bound (d >= 3, p >= p'(d)) */
wree_status wree_asymptotic_upper(int d, double p, double* out);

/* ---- dense oracle ---- */

/* lg of the trace norm of the partial transpose of sigma(p); d <= 6 */
wree_status wree_log_negativity(int d, double p, double* out);

/* ---- reduced convex program ---- */

typedef struct wree_problem wree_problem;
typedef struct wree_solution wree_solution;

/* d >= 2, 1/2 < p <= 1, 1 <= n <= 30 */
wree_status wree_problem_create(int d, double p, int n, wree_problem** out);
void wree_problem_destroy(wree_problem* problem);

/* tol may be null for defaults.  On WREE_ERR_CERTIFICATION *out is still a
 * valid solution whose gap field holds the offending (too large) gap. */
wree_status wree_solve(const wree_problem* problem, const wree_tolerances* tol,
                       wree_solution** out);
void wree_solution_destroy(wree_solution* solution);

wree_status wree_solution_value(const wree_solution* s, double* out);
wree_status wree_solution_gap(const wree_solution* s, double* out);
wree_status wree_solution_dual_g(const wree_solution* s, double* out);
wree_status wree_solution_ppt_residual(const wree_solution* s, double* out);
wree_status wree_solution_norm_residual(const wree_solution* s, double* out);
wree_status wree_solution_iterations(const wree_solution* s, int* out);
/* copies the n+1 type-class coordinates; len must be >= n+1 */
wree_status wree_solution_chi(const wree_solution* s, double* buffer, int len);

/* ---- certified bracket for one (d, p, n) ---- */

typedef struct wree_certificate {
  int d;
  int n;
  double p;
  double lower;          /* best analytic dual g */
  double primal;         /* solver value, valid when has_primal */
  double upper;          /* best finite trial value */
  double asymptotic;     /* closed-form n -> infinity value */
  double gap;            /* solver certified gap, valid when has_primal */
  double log_negativity; /* valid when has_log_negativity (d <= 6) */
  int has_primal;        /* solver ran (n <= 30) */
  int has_log_negativity;
  int primal_feasible;
  int dual_feasible;
  int trial_feasible;
  int iterations;
} wree_certificate;

/* p <= 1/2 rows are exact zeros without invoking the solver (sigma(p) is
 * itself PPT).  WREE_ERR_CERTIFICATION still fills the whole report. */
wree_status wree_certify(int d, double p, int n, const wree_tolerances* tol,
                         wree_certificate* out);

/* ---- dense-oracle verification suite ---- */

typedef struct wree_oracle_report wree_oracle_report;

/* inject_fault != 0 perturbs one reduced-path value above tolerance so the
 * harness provably reports mismatches */
wree_status wree_oracle_run(int inject_fault, wree_oracle_report** out);
void wree_oracle_report_destroy(wree_oracle_report* report);
int wree_oracle_count(const wree_oracle_report* report);
const char* wree_oracle_name(const wree_oracle_report* report, int i);
int wree_oracle_passed(const wree_oracle_report* report, int i);
double wree_oracle_error(const wree_oracle_report* report, int i);
double wree_oracle_tolerance(const wree_oracle_report* report, int i);
const char* wree_oracle_detail(const wree_oracle_report* report, int i);

#ifdef __cplusplus
}
#endif

#endif /* WERNER_REE_H */
