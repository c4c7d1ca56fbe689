#include "wree/problem.hpp"

#include <cmath>

namespace wree {

ReducedProblem build_problem(const WernerParams& params, int n) {
  validate(params);
  if (params.p <= 0.5)
    throw domain_error("build_problem: p <= 1/2 rejected; sigma(p) is PPT there and E_R = 0");
  if (n < 1 || n > 30) throw size_error("build_problem: n must lie in [1, 30]");

  ReducedProblem problem;
  problem.params = params;
  problem.n = n;
  problem.k = reduce_kron_matrix(ppt_matrix(params.d), n);
  problem.weights.n = n;
  problem.weights.values.resize(static_cast<std::size_t>(n) + 1);
  problem.norm_coeffs.resize(static_cast<std::size_t>(n) + 1);
  const double p = params.p;
  for (int a = 0; a <= n; ++a) {
    problem.norm_coeffs[a] = static_cast<double>(binomial(n, a));
    // Log domain keeps the tails alive for n near the solver cap; the exact
    // zeros at p = 1 are preserved explicitly.
    if (p == 1.0) {
      problem.weights.values[a] = (a == 0) ? 1.0 : 0.0;
    } else {
      problem.weights.values[a] =
          std::exp(log_binomial(n, a) + (n - a) * std::log(p) + a * std::log1p(-p));
    }
  }
  return problem;
}

double objective(const ReducedProblem& problem, const TypeClassVector& chi) {
  if (chi.n != problem.n) throw dimension_error("objective: chi size mismatch");
  const int n = problem.n;
  const double ln2 = std::log(2.0);
  double acc = 0.0;
  for (int a = 0; a <= n; ++a) {
    const double w = problem.weights.values[a];
    const double x = chi.values[a];
    if (!(x > 0.0)) throw domain_error("objective: chi must be strictly positive");
    if (w > 0.0) acc += w * std::log(x);
  }
  return -binary_entropy(problem.params.p) - acc / (n * ln2);
}

}  // namespace wree
