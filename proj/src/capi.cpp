#include <cstring>
#include <vector>

#include "werner_ree.h"
#include "wree/certificates.hpp"
#include "wree/dense.hpp"
#include "wree/oracle_suite.hpp"
#include "wree/problem.hpp"
#include "wree/version.hpp"

struct wree_problem {
  wree::ReducedProblem impl;
};
struct wree_solution {
  wree::PrimalSolution impl;
};
struct wree_oracle_report {
  std::vector<wree::OracleCheck> checks;
};

namespace {

wree_status to_status(wree::status s) { return static_cast<wree_status>(static_cast<int>(s)); }

wree::ToleranceSet to_tolerances(const wree_tolerances* tol) {
  wree::ToleranceSet ts;
  if (tol) {
    ts.eq = tol->tol_eq;
    ts.feas = tol->tol_feas;
    ts.gap = tol->tol_gap;
  }
  return ts;
}

// Runs f inside the C boundary, translating exceptions to status codes.
template <typename F>
wree_status guarded(F&& f) {
  try {
    f();
    return WREE_OK;
  } catch (const wree::error& e) {
    return to_status(e.code());
  } catch (...) {
    return WREE_ERR_NUMERICAL;
  }
}

bool in_range(const wree_oracle_report* report, int i) {
  return report && i >= 0 && i < static_cast<int>(report->checks.size());
}

}  // namespace

extern "C" {

const char* wree_version(void) { return wree::version; }

const char* wree_status_name(wree_status s) {
  return wree::status_name(static_cast<wree::status>(static_cast<int>(s)));
}

wree_tolerances wree_default_tolerances(void) {
  const wree::ToleranceSet ts;
  return {ts.eq, ts.feas, ts.gap};
}

wree_status wree_binary_entropy(double p, double* out) {
  if (!out) return WREE_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = wree::binary_entropy(p); });
}

wree_status wree_threshold(int d, double* out) {
  if (!out) return WREE_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = wree::threshold(d); });
}

wree_status wree_asymptotic_ree(int d, double p, double* out) {
  if (!out) return WREE_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = wree::asymptotic_ree({d, p}); });
}

wree_status wree_asymptotic_branch(int d, double p, int* out) {
  if (!out) return WREE_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = static_cast<int>(wree::asymptotic_branch({d, p})); });
}

wree_status wree_single_copy_ppt(int d, double p, int* out) {
  if (!out) return WREE_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = wree::single_copy_ppt({d, p}) ? 1 : 0; });
}

wree_status wree_finite_upper(int d, double p, int n, double* out) {
  if (!out) return WREE_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = wree::best_finite_upper({d, p}, n); });
}

wree_status wree_dual_lower(int d, double p, int n, double* out) {
  if (!out) return WREE_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = wree::dual_lower({d, p}, n); });
}

wree_status wree_asymptotic_upper(int d, double p, double* out) {
  if (!out) return WREE_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = wree::asymptotic_upper({d, p}); });
}

wree_status wree_log_negativity(int d, double p, double* out) {
  if (!out) return WREE_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = wree::log_negativity(wree::build_werner({d, p})); });
}

wree_status wree_problem_create(int d, double p, int n, wree_problem** out) {
  if (!out) return WREE_ERR_INVALID_ARGUMENT;
  *out = nullptr;
  return guarded([&] { *out = new wree_problem{wree::build_problem({d, p}, n)}; });
}

void wree_problem_destroy(wree_problem* problem) { delete problem; }

wree_status wree_solve(const wree_problem* problem, const wree_tolerances* tol,
                       wree_solution** out) {
  if (!problem || !out) return WREE_ERR_INVALID_ARGUMENT;
  *out = nullptr;
  try {
    *out = new wree_solution{wree::solve(problem->impl, to_tolerances(tol))};
    return WREE_OK;
  } catch (const wree::certification_failure& e) {
    *out = new wree_solution{e.solution};
    return WREE_ERR_CERTIFICATION;
  } catch (const wree::error& e) {
    return to_status(e.code());
  } catch (...) {
    return WREE_ERR_NUMERICAL;
  }
}

void wree_solution_destroy(wree_solution* solution) { delete solution; }

wree_status wree_solution_value(const wree_solution* s, double* out) {
  if (!s || !out) return WREE_ERR_INVALID_ARGUMENT;
  *out = s->impl.value;
  return WREE_OK;
}

wree_status wree_solution_gap(const wree_solution* s, double* out) {
  if (!s || !out) return WREE_ERR_INVALID_ARGUMENT;
  *out = s->impl.gap;
  return WREE_OK;
}

wree_status wree_solution_dual_g(const wree_solution* s, double* out) {
  if (!s || !out) return WREE_ERR_INVALID_ARGUMENT;
  *out = s->impl.dual_g;
  return WREE_OK;
}

wree_status wree_solution_ppt_residual(const wree_solution* s, double* out) {
  if (!s || !out) return WREE_ERR_INVALID_ARGUMENT;
  *out = s->impl.ppt_residual;
  return WREE_OK;
}

wree_status wree_solution_norm_residual(const wree_solution* s, double* out) {
  if (!s || !out) return WREE_ERR_INVALID_ARGUMENT;
  *out = s->impl.norm_residual;
  return WREE_OK;
}

wree_status wree_solution_iterations(const wree_solution* s, int* out) {
  if (!s || !out) return WREE_ERR_INVALID_ARGUMENT;
  *out = s->impl.iterations;
  return WREE_OK;
}

wree_status wree_solution_chi(const wree_solution* s, double* buffer, int len) {
  if (!s || !buffer) return WREE_ERR_INVALID_ARGUMENT;
  const int need = s->impl.chi.n + 1;
  if (len < need) return WREE_ERR_DIMENSION;
  std::memcpy(buffer, s->impl.chi.values.data(), sizeof(double) * need);
  return WREE_OK;
}

wree_status wree_certify(int d, double p, int n, const wree_tolerances* tol,
                         wree_certificate* out) {
  if (!out) return WREE_ERR_INVALID_ARGUMENT;
  std::memset(out, 0, sizeof(*out));
  try {
    const wree::WernerParams params{d, p};
    wree::validate(params);
    if (n < 1) throw wree::size_error("wree_certify: n must be >= 1");
    const wree::ToleranceSet ts = to_tolerances(tol);
    out->d = d;
    out->n = n;
    out->p = p;
    out->asymptotic = wree::asymptotic_ree(params);
    if (d <= 6) {
      out->log_negativity = wree::log_negativity(wree::build_werner(params));
      out->has_log_negativity = 1;
    }
    if (p <= 0.5) {
      // sigma(p) is itself PPT: the optimum is 0 exactly at every n and all
      // bracket columns collapse without running the solver.
      out->has_primal = 1;
      out->primal_feasible = 1;
      out->dual_feasible = 1;
      out->trial_feasible = 1;
      return WREE_OK;
    }
    out->lower = wree::dual_lower(params, n);
    out->upper = wree::best_finite_upper(params, n);
    out->dual_feasible = 1;   // analytic certificate points, feasible by construction
    out->trial_feasible = 1;
    wree_status rc = WREE_OK;
    if (n <= 30) {
      wree::PrimalSolution sol;
      try {
        sol = wree::solve(wree::build_problem(params, n), ts);
      } catch (const wree::certification_failure& e) {
        sol = e.solution;
        rc = WREE_ERR_CERTIFICATION;
      }
      out->has_primal = 1;
      out->primal = sol.value;
      out->gap = sol.gap;
      out->iterations = sol.iterations;
      out->primal_feasible =
          (sol.ppt_residual >= -ts.feas && sol.norm_residual <= ts.eq) ? 1 : 0;
    }
    return rc;
  } catch (const wree::error& e) {
    return to_status(e.code());
  } catch (...) {
    return WREE_ERR_NUMERICAL;
  }
}

wree_status wree_oracle_run(int inject_fault, wree_oracle_report** out) {
  if (!out) return WREE_ERR_INVALID_ARGUMENT;
  *out = nullptr;
  return guarded([&] { *out = new wree_oracle_report{wree::run_oracle_suite(inject_fault != 0)}; });
}

void wree_oracle_report_destroy(wree_oracle_report* report) { delete report; }

int wree_oracle_count(const wree_oracle_report* report) {
  return report ? static_cast<int>(report->checks.size()) : 0;
}

const char* wree_oracle_name(const wree_oracle_report* report, int i) {
  return in_range(report, i) ? report->checks[i].name.c_str() : "";
}

int wree_oracle_passed(const wree_oracle_report* report, int i) {
  return in_range(report, i) && report->checks[i].passed ? 1 : 0;
}

double wree_oracle_error(const wree_oracle_report* report, int i) {
  return in_range(report, i) ? report->checks[i].max_error : 0.0;
}

double wree_oracle_tolerance(const wree_oracle_report* report, int i) {
  return in_range(report, i) ? report->checks[i].tolerance : 0.0;
}

const char* wree_oracle_detail(const wree_oracle_report* report, int i) {
  return in_range(report, i) ? report->checks[i].detail.c_str() : "";
}

}  // extern "C"
