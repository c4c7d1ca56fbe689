#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "wree/certificates.hpp"

namespace wree {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double xlogy(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(y); }

// (1 + ln(n ln 2)) / (n ln 2), the constant term of the dual function.
double dual_const(int n) {
  const double nl = n * std::log(2.0);
  return (1.0 + std::log(nl)) / nl;
}

// w_a = C(n,a) p^{n-a} (1-p)^a, exact zeros at p in {0,1}.
std::vector<double> weight_vector(const WernerParams& params, int n) {
  std::vector<double> w(n + 1);
  for (int a = 0; a <= n; ++a) {
    double lw = log_binomial(n, a);
    if (n - a > 0) lw += (n - a) * std::log(params.p);
    if (a > 0) lw += a * std::log1p(-params.p);
    w[a] = std::exp(lw);
  }
  return w;
}

// ln of one mixture component of chi_k; -inf when the component vanishes.
double component_log(double wi, double ai, int k, int n) {
  if (!(wi > 0.0)) return -kInf;
  double v = std::log(wi);
  if (n - k > 0) {
    if (!(ai < 1.0)) return -kInf;
    v += (n - k) * std::log1p(-ai);
  }
  if (k > 0) {
    if (!(ai > 0.0)) return -kInf;
    v += k * std::log(ai);
  }
  return v;
}

}  // namespace

TrialState trial_regime1(int n) {
  if (n < 1) throw size_error("trial_regime1: n must be >= 1");
  TrialState t;
  t.n = n;
  t.w1 = 0.0;
  t.a1 = 0.5;
  t.w2 = 1.0;
  t.a2 = 0.5;
  t.z = 1.0;
  t.chi = kron_power_vec(0.5, 0.5, n);
  return t;
}

TrialState trial_regime2(const WernerParams& params, int n) {
  validate(params);
  if (n < 1) throw size_error("trial_regime2: n must be >= 1");
  if (params.d < 3 || params.p < threshold(params.d))
    throw regime_error("trial_regime2: requires d >= 3 and p >= (d+2)/(2d)");
  const double d = params.d, p = params.p;
  TrialState t;
  t.n = n;
  t.a1 = (d + 2.0) * (1.0 - p) / (d + 2.0 - 4.0 * p);
  t.a2 = (1.0 + d - (d + 2.0) * t.a1) / (d + 2.0 - 4.0 * t.a1);
  t.z = (d + 2.0 - 4.0 * t.a1) / d;
  t.w1 = 1.0 / (1.0 + std::pow(t.z, n));  // z in [1,(d+2)/d]; w1 -> 0 benignly
  t.w2 = 1.0 - t.w1;
  TypeClassVector c1 = kron_power_vec(1.0 - t.a1, t.a1, n);
  TypeClassVector c2 = kron_power_vec(1.0 - t.a2, t.a2, n);
  t.chi.n = n;
  t.chi.values.resize(n + 1);
  for (int a = 0; a <= n; ++a)
    t.chi.values[a] = t.w1 * c1.values[a] + t.w2 * c2.values[a];
  return t;
}

double finite_upper(const TrialState& trial, const WernerParams& params, int n) {
  validate(params);
  if (n < 1) throw size_error("finite_upper: n must be >= 1");
  if (trial.n != n) throw dimension_error("finite_upper: trial built for a different n");
  const std::vector<double> w = weight_vector(params, n);
  double acc = 0.0;  // sum_k w_k ln chi_k
  for (int k = 0; k <= n; ++k) {
    if (w[k] == 0.0) continue;
    const double t1 = component_log(trial.w1, trial.a1, k, n);
    const double t2 = component_log(trial.w2, trial.a2, k, n);
    const double m = std::max(t1, t2);
    if (m == -kInf) return kInf;  // chi_k = 0 where the state has weight
    acc += w[k] * (m + std::log(std::exp(t1 - m) + std::exp(t2 - m)));
  }
  return -binary_entropy(params.p) - acc / (n * std::log(2.0));
}

double best_finite_upper(const WernerParams& params, int n) {
  validate(params);
  if (n < 1) throw size_error("best_finite_upper: n must be >= 1");
  double best = finite_upper(trial_regime1(n), params, n);
  if (params.d >= 3 && params.p >= threshold(params.d))
    best = std::min(best, finite_upper(trial_regime2(params, n), params, n));
  return best;
}

AsymptoticRates asymptotic_rates(const WernerParams& params) {
  validate(params);
  if (params.d < 3 || params.p < threshold(params.d))
    throw regime_error("asymptotic_rates: requires d >= 3 and p >= (d+2)/(2d)");
  const double d = params.d, p = params.p;
  AsymptoticRates r;
  r.t1 = d * std::exp(xlogy(p, d - 2.0) + xlogy(1.0 - p, d + 2.0) +
                      xlogy(1.0 - p, 1.0 - p) + xlogy(p, p));
  const double arg2 = d * d * p - d - 2.0;
  if (arg2 <= 0.0)  // >= (d^2-4)/2 on the admissible regime; defensive
    throw domain_error("asymptotic_rates: d^2 p - d - 2 must be positive");
  r.t2 = std::exp(xlogy(p, d - 2.0 + d * d * (1.0 - p)) + xlogy(1.0 - p, arg2));
  r.q1 = d * d - 4.0;
  r.q2 = d * (d + 2.0 - 4.0 * p);
  return r;
}

double asymptotic_upper(const WernerParams& params) {
  const AsymptoticRates r = asymptotic_rates(params);
  return -binary_entropy(params.p) - lg(std::max(r.t1, r.t2) / std::max(r.q1, r.q2));
}

DualPoint eval_dual(const WernerParams& params, int n, const TypeClassVector& lambda, double nu) {
  validate(params);
  if (n < 1) throw size_error("eval_dual: n must be >= 1");
  if (lambda.n != n || static_cast<int>(lambda.values.size()) != n + 1)
    throw dimension_error("eval_dual: lambda built for a different n");
  const ReducedKronecker k = reduce_kron_matrix(ppt_matrix(params.d), n);
  const TypeClassVector m = apply(k, lambda);
  DualPoint pt;
  pt.n = n;
  pt.lambda = lambda;
  pt.nu = nu;
  pt.mu.n = n;
  pt.mu.values.resize(n + 1);
  bool feasible = std::isfinite(nu);
  for (int a = 0; a <= n; ++a) {
    const double mu = nu - m.values[a];
    pt.mu.values[a] = mu;
    if (!(mu > 0.0) || !std::isfinite(mu)) feasible = false;
    if (lambda.values[a] < 0.0) feasible = false;
  }
  if (!feasible) {
    pt.feasible = false;
    pt.g = -kInf;
    return pt;
  }
  const std::vector<double> w = weight_vector(params, n);
  double acc = 0.0;
  for (int a = 0; a <= n; ++a)
    if (w[a] > 0.0) acc += w[a] * lg(pt.mu.values[a]);
  pt.g = dual_const(n) + acc / n - nu;
  pt.feasible = true;
  return pt;
}

DualPoint dual_point_regime1(const WernerParams& params, int n) {
  validate(params);
  if (n < 1) throw size_error("dual_point_regime1: n must be >= 1");
  if (params.p < 0.5 || params.p > threshold(params.d))
    throw regime_error("dual_point_regime1: requires 1/2 <= p <= (d+2)/(2d)");
  const double d = params.d, p = params.p;
  const double nu = 1.0 / (n * std::log(2.0));
  const double s = d + 1.0 - 2.0 * d * p;  // |s| <= 1 on the regime
  DualPoint pt;
  pt.n = n;
  pt.nu = nu;
  pt.lambda.n = n;
  pt.lambda.values.resize(n + 1);
  pt.mu.n = n;
  pt.mu.values.resize(n + 1);
  const std::vector<double> w = weight_vector(params, n);
  double acc = 0.0;  // sum_a w_a lg mu_a, mu in log domain
  for (int a = 0; a <= n; ++a) {
    const double scale = std::exp(a * std::log(d + 1.0) - n * std::log(d));
    pt.lambda.values[a] = nu * scale * (1.0 - std::pow(s, static_cast<double>(n - a)));
    double lg_mu = lg(nu) + n;  // lg(nu 2^n p^{n-a}(1-p)^a)
    if (n - a > 0) lg_mu += (n - a) * lg(p);
    if (a > 0) lg_mu += a * lg(1.0 - p);
    pt.mu.values[a] = std::exp2(lg_mu);
    if (w[a] > 0.0) acc += w[a] * lg_mu;
  }
  pt.g = dual_const(n) + acc / n - nu;
  pt.feasible = true;  // lambda in [0, 2 nu (d+1)^a/d^n], mu >= 0 with mu > 0 wherever w > 0
  return pt;
}

DualPoint dual_point_regime2(const WernerParams& params, int n) {
  validate(params);
  if (n < 1) throw size_error("dual_point_regime2: n must be >= 1");
  if (params.d < 3 || params.p < threshold(params.d))
    throw regime_error("dual_point_regime2: requires d >= 3 and p >= (d+2)/(2d)");
  const double d = params.d;
  const double nu = 1.0 / (n * std::log(2.0));
  DualPoint pt;
  pt.n = n;
  pt.nu = nu;
  pt.lambda.n = n;
  pt.lambda.values.resize(n + 1);
  pt.mu.n = n;
  pt.mu.values.resize(n + 1);
  const std::vector<double> w = weight_vector(params, n);
  double acc = 0.0;
  for (int a = 0; a <= n; ++a) {
    const double scale = std::exp(a * std::log(d + 1.0) - n * std::log(d));
    pt.lambda.values[a] = nu * scale * ((n - a) % 2 == 0 ? 0.0 : 2.0);  // 1-(-1)^{n-a}
    const double lg_mu =
        lg(nu) + (n - a) * lg(d + 2.0) + a * lg(d - 2.0) - n * lg(d);
    pt.mu.values[a] = std::exp2(lg_mu);
    if (w[a] > 0.0) acc += w[a] * lg_mu;
  }
  pt.g = dual_const(n) + acc / n - nu;
  pt.feasible = true;  // lambda >= 0, mu > 0 by construction
  return pt;
}

SignedLog dual_lambda_regime1_log(const WernerParams& params, int n, int a) {
  validate(params);
  if (n < 1) throw size_error("dual_lambda_regime1_log: n must be >= 1");
  if (a < 0 || a > n) throw domain_error("dual_lambda_regime1_log: index a out of [0,n]");
  if (params.p < 0.5 || params.p > threshold(params.d))
    throw regime_error("dual_lambda_regime1_log: requires 1/2 <= p <= (d+2)/(2d)");
  const double d = params.d;
  const double s = d + 1.0 - 2.0 * d * params.p;
  const double factor = 1.0 - std::pow(s, static_cast<double>(n - a));  // in [0,2]
  SignedLog out;
  if (factor <= 0.0) {
    out.sign = 0;
    out.log2_mag = -kInf;
    return out;
  }
  out.sign = 1;
  const double nu = 1.0 / (n * std::log(2.0));
  out.log2_mag = lg(nu) + a * lg(d + 1.0) - n * lg(d) + lg(factor);
  return out;
}

double dual_lower(const WernerParams& params, int n) {
  validate(params);
  if (n < 1) throw size_error("dual_lower: n must be >= 1");
  if (params.p <= 0.5) return 0.0;  // lambda = 0, nu = 1/(n ln2) attains exactly 0
  if (params.p <= threshold(params.d)) return dual_point_regime1(params, n).g;
  return dual_point_regime2(params, n).g;
}

namespace {

// Dual objective at (lambda, nu) given m = K lambda; -inf outside the domain.
double g_of(const Eigen::VectorXd& w, const Eigen::VectorXd& m, double nu, int n) {
  if (!std::isfinite(nu)) return -kInf;
  double acc = 0.0;
  for (int a = 0; a < m.size(); ++a) {
    const double mu = nu - m(a);
    if (!(mu > 0.0) || !std::isfinite(mu)) return -kInf;
    if (w(a) > 0.0) acc += w(a) * std::log2(mu);
  }
  return dual_const(n) + acc / n - nu;
}

// Exactly optimal nu for fixed lambda: the root of
//   h(nu) = (1/(n ln2)) sum_a w_a/(nu - m_a) - 1
// above max(m).  The bracket grows by relative steps so it always advances
// even when |max(m)| is so large that max(m) + 1 == max(m).
double opt_nu(const Eigen::VectorXd& w, const Eigen::VectorXd& m, int n) {
  const double mplus = m.maxCoeff();
  if (!std::isfinite(mplus)) return kInf;
  const double nl = n * std::log(2.0);
  auto h = [&](double nu) {
    double s = 0.0;
    for (int a = 0; a < m.size(); ++a)
      if (w(a) > 0.0) s += w(a) / (nu - m(a));
    return s / nl - 1.0;
  };
  double hi = mplus + std::max(1.0, std::abs(mplus) * 1e-12);
  while (std::isfinite(hi) && h(hi) > 0.0) hi = mplus + 2.0 * (hi - mplus);
  if (!std::isfinite(hi)) return kInf;
  double lo = mplus;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (h(mid) > 0.0 ? lo : hi) = mid;
  }
  // Return the h <= 0 endpoint: it sits strictly above every m_a, so the
  // resulting mu stays positive even when the root is within an ulp of
  // max(m) (tiny trailing weights push it that close).
  return hi;
}

struct PolishState {
  Eigen::VectorXd lambda;
  double nu = 0.0;
  double g = -kInf;
};

// Deterministic projected-Newton ascent on the concave reduced dual
// g(lambda) = max_nu g(lambda, nu): nu is re-optimized exactly every
// iteration, the Hessian is the nu-eliminated Schur complement, and every
// candidate is validated through g_of, so the best point only improves.
PolishState dual_polish(const Eigen::VectorXd& w, const Eigen::MatrixXd& k,
                        Eigen::VectorXd lam, int n) {
  const int msz = n + 1;
  const double nl = n * std::log(2.0);
  lam = lam.cwiseMax(0.0);

  PolishState best;
  best.nu = opt_nu(w, k * lam, n);
  best.g = g_of(w, k * lam, best.nu, n);
  best.lambda = lam;

  auto try_step = [&](const Eigen::VectorXd& dir) {
    double t = 1.0;
    for (int ls = 0; ls < 80; ++ls) {
      Eigen::VectorXd lam_t = (lam + t * dir).cwiseMax(0.0);
      Eigen::VectorXd mt = k * lam_t;
      const double nu_t = opt_nu(w, mt, n);
      const double gt = g_of(w, mt, nu_t, n);
      if (gt > best.g + 1e-18) {
        best.g = gt;
        best.lambda = lam_t;
        best.nu = nu_t;
        lam = lam_t;
        return true;
      }
      t *= 0.5;
    }
    return false;
  };

  int fails = 0;
  for (int it = 0; it < 300; ++it) {
    Eigen::VectorXd m = k * lam;
    const double nu = opt_nu(w, m, n);
    if (!std::isfinite(nu)) break;
    Eigen::VectorXd u = Eigen::VectorXd::Zero(msz);     // w/(n ln2 mu)
    Eigen::VectorXd dvec = Eigen::VectorXd::Zero(msz);  // w/(n ln2 mu^2)
    for (int a = 0; a < msz; ++a) {
      if (w(a) <= 0.0) continue;
      const double mu = std::max(nu - m(a), 1e-300);
      u(a) = w(a) / (nl * mu);
      dvec(a) = w(a) / (nl * mu * mu);
    }
    Eigen::VectorXd grad = -(k.transpose() * u);
    const double sd = dvec.sum();
    if (!(sd > 0.0)) break;
    // nu-eliminated Hessian of the concave envelope (Schur complement).
    Eigen::VectorXd ktd = k.transpose() * dvec;
    Eigen::MatrixXd hs =
        -(k.transpose() * dvec.asDiagonal() * k) + (ktd * ktd.transpose()) / sd;

    std::vector<int> free_idx;
    for (int a = 0; a < msz; ++a)
      if (lam(a) > 0.0 || grad(a) > 0.0) free_idx.push_back(a);
    if (free_idx.empty()) break;
    const int nf = static_cast<int>(free_idx.size());
    Eigen::MatrixXd hf(nf, nf);
    Eigen::VectorXd gf(nf);
    for (int i = 0; i < nf; ++i) {
      gf(i) = grad(free_idx[i]);
      for (int j = 0; j < nf; ++j) hf(i, j) = hs(free_idx[i], free_idx[j]);
    }
    hf.diagonal().array() -= 1e-13;
    Eigen::VectorXd sf = hf.partialPivLu().solve(-gf);

    bool improved = false;
    if (sf.allFinite()) {
      Eigen::VectorXd step = Eigen::VectorXd::Zero(msz);
      for (int i = 0; i < nf; ++i) step(free_idx[i]) = sf(i);
      // Cap the Newton step: when the reduced Hessian is (near) rank
      // deficient -- e.g. a single weighted entry makes the envelope linear
      // in lambda -- the regularized solve returns a huge vector whose
      // useful scales would fall outside the line search range.
      const double smax = step.cwiseAbs().maxCoeff();
      const double cap = 1e6 * (1.0 + lam.cwiseAbs().maxCoeff());
      if (smax > cap) step *= cap / smax;
      improved = try_step(step);
    }
    if (!improved) improved = try_step(grad);  // plain ascent fallback
    if (improved) {
      fails = 0;
    } else if (++fails >= 2) {
      break;
    }
  }
  return best;
}

}  // namespace

DualPoint extract_dual(const ReducedProblem& problem, PrimalSolution& solution,
                       const ToleranceSet& tol, double mu_center) {
  const int n = problem.n;
  const int msz = n + 1;
  if (solution.chi.n != n || static_cast<int>(solution.chi.values.size()) != msz)
    throw dimension_error("extract_dual: solution built for a different n");
  const Eigen::Map<const Eigen::VectorXd> chi(solution.chi.values.data(), msz);
  const Eigen::Map<const Eigen::VectorXd> w(problem.weights.values.data(), msz);
  const Eigen::MatrixXd& k = problem.k.k;

  // Central-path multipliers at barrier parameter mu_center: mu = y_b c_b lambda_b.
  Eigen::VectorXd y = k * chi;
  Eigen::VectorXd lam0(msz);
  for (int b = 0; b < msz; ++b) {
    if (!(y(b) > 0.0))
      throw numerical_error("extract_dual: iterate is not strictly feasible");
    lam0(b) = mu_center / (y(b) * problem.norm_coeffs[b]);
  }
  const PolishState res = dual_polish(w, k, lam0, n);

  DualPoint pt;
  pt.n = n;
  pt.lambda.n = n;
  pt.lambda.values.assign(res.lambda.data(), res.lambda.data() + msz);
  pt.nu = res.nu;
  Eigen::VectorXd mu = (res.nu - (k * res.lambda).array()).matrix();
  pt.mu.n = n;
  pt.mu.values.assign(mu.data(), mu.data() + msz);
  pt.g = res.g;
  pt.feasible = std::isfinite(res.g);

  solution.dual_g = res.g;
  solution.gap = solution.value - res.g;
  if (!(solution.gap <= tol.gap))
    throw certification_error("extract_dual: certified duality gap exceeds tol_gap",
                              solution.gap, res.g);
  return pt;
}

}  // namespace wree
