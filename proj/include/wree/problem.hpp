#pragma once

#include <utility>
#include <vector>

#include "wree/typeclass.hpp"
#include "wree/werner.hpp"

namespace wree {

struct ToleranceSet {
  double eq = 1e-12;    // normalization residual
  double feas = 1e-9;   // PPT residual
  double gap = 1e-8;    // certified duality gap, in bits
};

// Final (smallest) barrier weight of the solve schedule; extract_dual seeds
// its multipliers from the matching central-path relation mu = y_b C(n,b) lambda_b.
inline constexpr double barrier_mu_min = 1e-12;

// Symmetry-reduced convex program for E_R(sigma(p)^{(x) n})/n:
//   minimize  -H(p) - (1/n) sum_a weights[a] lg chi[a]
//   s.t.      apply(K, chi) >= 0,  sum_a C(n,a) chi[a] = 1,  chi > 0,
// where weights[a] = C(n,a) p^{n-a} (1-p)^a aggregates the z-distribution
// by type class and K is the reduced T^{(x) n}.
struct ReducedProblem {
  WernerParams params;
  int n = 1;
  TypeClassVector weights;
  ReducedKronecker k;
  std::vector<double> norm_coeffs;  // C(n,a)
};

struct PrimalSolution {
  TypeClassVector chi;       // strictly positive optimizer
  double value = 0.0;        // objective in bits
  double ppt_residual = 0.0; // min_b (K chi)[b]
  double norm_residual = 0.0;
  double gap = 0.0;          // value - g of the extracted dual certificate
  double dual_g = 0.0;       // g of the extracted dual certificate
  int iterations = 0;        // total Newton steps across barrier stages
};

// Assembles the reduced program.  Requires d >= 2, 1/2 < p <= 1 and
// 1 <= n <= 30; p <= 1/2 is rejected (E_R is 0 there, nothing to solve).
ReducedProblem build_problem(const WernerParams& params, int n);

// -H(p) - (1/n) sum_a weights[a] lg chi[a]; domain error on chi[a] <= 0.
double objective(const ReducedProblem& problem, const TypeClassVector& chi);

// certification_error variant that carries the uncertified solution, so
// callers (the C API, grid drivers) can still report value/gap without
// re-solving.
class certification_failure : public certification_error {
 public:
  certification_failure(const certification_error& base, PrimalSolution sol)
      : certification_error(base.what(), base.gap(), base.dual_g()), solution(std::move(sol)) {}
  PrimalSolution solution;
};

// Logarithmic-barrier interior-point solve: barrier on the PPT inequalities
// and on chi > 0, equality-constrained Newton steps for the normalization,
// geometric barrier schedule (x0.1 down to 1e-12), backtracking line search
// with a 0.99 fraction-to-boundary rule.  The returned solution carries a
// certified duality gap recovered by extract_dual; throws
// certification_failure (a certification_error) if that gap exceeds tol.gap.
PrimalSolution solve(const ReducedProblem& problem, const ToleranceSet& tol = {});

}  // namespace wree
