#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "wree/certificates.hpp"
#include "wree/problem.hpp"

namespace wree {

namespace {

constexpr double kInnerTol = 1e-24;    // Newton decrement^2 / 2 threshold
constexpr int kStageIterations = 60;   // Newton cap per barrier stage
constexpr int kTotalIterationCap = 10000;

double barrier_phi(const Eigen::VectorXd& w, const Eigen::MatrixXd& k, double inv_nln2, double mu,
                   const Eigen::VectorXd& x) {
  if ((x.array() <= 0.0).any()) return std::numeric_limits<double>::infinity();
  Eigen::VectorXd y = k * x;
  if ((y.array() <= 0.0).any()) return std::numeric_limits<double>::infinity();
  const double obj = -inv_nln2 * (w.array() * x.array().log()).sum();
  return obj - mu * y.array().log().sum() - mu * x.array().log().sum();
}

}  // namespace

PrimalSolution solve(const ReducedProblem& problem, const ToleranceSet& tol) {
  const int n = problem.n;
  const int m = n + 1;
  const double ln2 = std::log(2.0);
  const double inv_nln2 = 1.0 / (n * ln2);

  const Eigen::Map<const Eigen::VectorXd> w(problem.weights.values.data(), m);
  const Eigen::Map<const Eigen::VectorXd> c(problem.norm_coeffs.data(), m);
  const Eigen::MatrixXd& k = problem.k.k;

  // Strictly feasible start: the product profile with sigma_0 weight 3/4
  // (per-factor image under T is (1/2, 1 - 3/(2(d+1))), strictly positive);
  // its multiplicity-weighted sum is (1/4 + 3/4)^n = 1, already normalized.
  TypeClassVector chi0 = kron_power_vec(0.25, 0.75, n);
  Eigen::VectorXd chi = Eigen::Map<Eigen::VectorXd>(chi0.values.data(), m);
  chi /= c.dot(chi);

  std::vector<double> stages;
  for (double mu = 1e-1; mu > barrier_mu_min; mu *= 0.1) stages.push_back(mu);
  stages.push_back(barrier_mu_min);

  int iterations = 0;
  // Last iterate that finished a whole barrier stage, with that stage's mu.
  // If a later stage hits a numerically singular KKT system (possible at
  // degenerate corners such as p = 1, where all but one weight vanish), the
  // half-recentered iterate is worthless for multiplier recovery, so we fall
  // back to this one; the residual and gap checks below still gate it.
  Eigen::VectorXd chi_centered = chi;
  double mu_centered = stages.front();
  bool singular = false;
  for (double mu : stages) {
    double last_dec = std::numeric_limits<double>::infinity();
    for (int it = 0; it < kStageIterations; ++it) {
      if (iterations >= kTotalIterationCap)
        throw max_iterations_error("solve: barrier Newton iteration cap exceeded");
      Eigen::VectorXd y = k * chi;
      Eigen::VectorXd grad = -inv_nln2 * (w.array() / chi.array()).matrix() -
                             mu * (k.transpose() * y.cwiseInverse()) -
                             mu * chi.cwiseInverse();
      Eigen::VectorXd hd =
          (inv_nln2 * w.array() / chi.array().square() + mu / chi.array().square()).matrix();
      Eigen::MatrixXd hess =
          mu * (k.transpose() * y.array().square().inverse().matrix().asDiagonal() * k);
      hess.diagonal() += hd;

      // Bordered KKT system for the normalization equality.
      Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(m + 1, m + 1);
      kkt.topLeftCorner(m, m) = hess;
      kkt.topRightCorner(m, 1) = c;
      kkt.bottomLeftCorner(1, m) = c.transpose();
      Eigen::VectorXd rhs(m + 1);
      rhs.head(m) = -grad;
      rhs(m) = -(c.dot(chi) - 1.0);
      // Symmetric equilibration before the LU: the Hessian diagonal spans
      // ~20 orders of magnitude near degenerate corners (p = 1 leaves all
      // but one weight zero), enough to drive an unscaled factorization
      // into an exactly zero pivot.
      Eigen::VectorXd scale(m + 1);
      for (int i = 0; i <= m; ++i) {
        const double r = kkt.row(i).cwiseAbs().maxCoeff();
        scale(i) = (std::isfinite(r) && r > 0.0) ? 1.0 / std::sqrt(r) : 1.0;
      }
      kkt = scale.asDiagonal() * kkt * scale.asDiagonal();
      Eigen::VectorXd sol =
          kkt.partialPivLu().solve((rhs.array() * scale.array()).matrix());
      sol.array() *= scale.array();
      if (!sol.allFinite()) {
        singular = true;
        break;
      }
      Eigen::VectorXd dchi = sol.head(m);

      const double dec2 = dchi.dot(hess * dchi);
      if (!std::isfinite(dec2)) throw numerical_error("solve: Newton decrement not finite");
      if (dec2 / 2.0 < kInnerTol) break;

      // Fraction-to-boundary: stay strictly inside chi > 0 and K chi > 0.
      double alpha = 1.0;
      Eigen::VectorXd dy = k * dchi;
      for (int i = 0; i < m; ++i) {
        if (dchi(i) < 0.0) alpha = std::min(alpha, 0.99 * (-chi(i) / dchi(i)));
        if (dy(i) < 0.0) alpha = std::min(alpha, 0.99 * (-y(i) / dy(i)));
      }
      const double f0 = barrier_phi(w, k, inv_nln2, mu, chi);
      const double gd = grad.dot(dchi);
      double t = alpha;
      for (int ls = 0; ls < 60; ++ls) {
        if (barrier_phi(w, k, inv_nln2, mu, chi + t * dchi) <= f0 + 1e-4 * t * gd) break;
        t *= 0.5;
      }
      chi += t * dchi;
      ++iterations;
      // Stop when the decrement stalls at machine-precision level: further
      // steps are rounding noise and decenter the iterate.
      if (dec2 >= last_dec && dec2 < 1e-18) break;
      last_dec = dec2;
    }
    if (singular) {
      chi = chi_centered;
      break;
    }
    chi_centered = chi;
    mu_centered = mu;
  }

  PrimalSolution solution;
  solution.chi.n = n;
  solution.chi.values.assign(chi.data(), chi.data() + m);
  solution.value = objective(problem, solution.chi);
  Eigen::VectorXd y = k * chi;
  solution.ppt_residual = y.minCoeff();
  solution.norm_residual = std::abs(c.dot(chi) - 1.0);
  solution.iterations = iterations;
  if (solution.norm_residual > tol.eq)
    throw numerical_error("solve: normalization residual above tol_eq");
  if (solution.ppt_residual < -tol.feas)
    throw numerical_error("solve: PPT residual below -tol_feas");
  try {
    extract_dual(problem, solution, tol, mu_centered);  // fills gap/dual_g
  } catch (const certification_failure&) {
    throw;
  } catch (const certification_error& e) {
    throw certification_failure(e, solution);  // keep the uncertified solution
  }
  return solution;
}

}  // namespace wree
