#pragma once

#include "wree/problem.hpp"

namespace wree {

// Primal trial state: mixture of two n-fold product profiles with sigma_0
// weights a1 <= 1/2 <= a2 and mixture weights w1 + w2 = 1, giving
// chi_a = sum_i w_i (1-a_i)^{n-a} a_i^a.
struct TrialState {
  int n = 1;
  double w1 = 0.0, a1 = 0.5;
  double w2 = 1.0, a2 = 0.5;
  double z = 1.0;  // (d+2-4 a1)/d for the regime-2 construction
  TypeClassVector chi;
};

// Uniform trial chi_a = 2^{-n} (w1 = 0, a2 = 1/2): PPT with boundary
// contact; its objective equals 1 - H(p) for every p.
TrialState trial_regime1(int n);

// The two-profile trial for the linear regime:
//   a1 = (d+2)(1-p)/(d+2-4p),  a2 = (1+d-(d+2)a1)/(d+2-4a1),
//   z = (d+2-4a1)/d,  w1 = 1/(1+z^n).
// Requires d >= 3 and p >= p'(d) (at p = p'(d) it degenerates to the
// uniform trial); regime error otherwise.
TrialState trial_regime2(const WernerParams& params, int n);

// Exact finite-n value of the objective at the trial state, via the
// binomial sum with the inner two-term mixture evaluated in log domain.
double finite_upper(const TrialState& trial, const WernerParams& params, int n);

// min over the applicable analytic trials (regime 1 always, regime 2 when
// d >= 3 and p >= p'(d)).
double best_finite_upper(const WernerParams& params, int n);

struct AsymptoticRates {
  double t1 = 0.0, t2 = 0.0, q1 = 0.0, q2 = 0.0;
};

AsymptoticRates asymptotic_rates(const WernerParams& params);

// Limit of the regime-2 trial bound: -H(p) - lg(max(t1,t2)/max(q1,q2)) with
//   t1 = d (d-2)^p (d+2)^{1-p} (1-p)^{1-p} p^p,
//   t2 = (d-2+d^2(1-p))^p (d^2 p-d-2)^{1-p},
//   q1 = d^2-4,  q2 = d(d+2-4p).
// Requires d >= 3, p >= p'(d); equals lg((d-2)/d) + p lg((d+2)/(d-2)) there.
double asymptotic_upper(const WernerParams& params);

// Dual feasible point for the reduced program.  g is computed from the
// stored multipliers through the dual function
//   g = (1+ln(n ln2))/(n ln2) + (1/n) sum_a C(n,a) p^{n-a}(1-p)^a lg mu_a - nu.
struct DualPoint {
  int n = 1;
  TypeClassVector lambda;  // per-index multipliers, >= 0
  double nu = 0.0;
  TypeClassVector mu;      // mu_a = nu - (K lambda)_a
  double g = 0.0;          // -inf when infeasible
  bool feasible = false;
};

// Evaluates the dual function at (lambda, nu): mu = nu - K lambda; any
// mu_a <= 0 marks the point infeasible with g = -inf (returned, not thrown).
DualPoint eval_dual(const WernerParams& params, int n, const TypeClassVector& lambda, double nu);

// Analytic dual point for 1/2 <= p <= p'(d):
//   nu = 1/(n ln2),  lambda_a = nu (d+1)^a [1-(d+1-2dp)^{n-a}]/d^n,
//   mu_a = nu 2^n p^{n-a}(1-p)^a,  g = 1 - H(p).
DualPoint dual_point_regime1(const WernerParams& params, int n);

// Analytic dual point for p >= p'(d), d >= 3:
//   nu = 1/(n ln2),  lambda_a = nu (d+1)^a [1-(-1)^{n-a}]/d^n,
//   mu_a = nu (d+2)^{n-a}(d-2)^a/d^n,
//   g = lg((d+2)/d) + (1-p) lg((d-2)/(d+2)).
DualPoint dual_point_regime2(const WernerParams& params, int n);

// Sign/log-magnitude form of the regime-1 lambda entry, stable for n far
// beyond the exact-binomial range (used to check lambda >= 0 at huge n).
struct SignedLog {
  int sign = 0;        // -1, 0, +1
  double log2_mag = 0; // lg |lambda_a|; -inf when sign == 0
};
SignedLog dual_lambda_regime1_log(const WernerParams& params, int n, int a);

// Best analytic dual value: 0 for p <= 1/2 (lambda = 0 point), 1 - H(p) on
// the entropic regime, the regime-2 closed form above p'(d).
double dual_lower(const WernerParams& params, int n);

// Recovers multipliers from a barrier iterate centered at mu_center
// (lambda_b = mu_center / (y_b C(n,b)), projected to >= 0), picks the
// exactly optimal nu for that lambda by safeguarded bisection, then runs a
// deterministic projected-Newton ascent on the concave dual to tighten g.
// Sets solution.gap and solution.dual_g; throws certification_error if the
// gap still exceeds tol.gap.
DualPoint extract_dual(const ReducedProblem& problem, PrimalSolution& solution,
                       const ToleranceSet& tol = {}, double mu_center = barrier_mu_min);

}  // namespace wree
