#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "wree/certificates.hpp"
#include "wree/dense.hpp"
#include "wree/oracle_suite.hpp"
#include "wree/problem.hpp"

namespace wree {

namespace {

OracleCheck make_check(const std::string& name, double max_error, double tolerance,
                       const std::string& detail) {
  OracleCheck c;
  c.name = name;
  c.max_error = max_error;
  c.tolerance = tolerance;
  c.detail = detail;
  c.passed = max_error <= tolerance;
  return c;
}

std::string describe(const char* what, double a, double b) {
  std::ostringstream os;
  os.precision(17);
  os << what << ": " << a << " vs " << b;
  return os.str();
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().minCoeff();
}

// Random strictly positive chi with sum_a C(n,a) chi_a = 1; spans both
// sigma_0-heavy (PPT) and sigma_1-heavy (NPT) corners.
TypeClassVector random_feasible_chi(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  TypeClassVector chi;
  chi.n = n;
  chi.values.resize(n + 1);
  double norm = 0.0;
  for (int a = 0; a <= n; ++a) {
    chi.values[a] = std::exp(uni(rng));
    norm += static_cast<double>(binomial(n, a)) * chi.values[a];
  }
  for (double& v : chi.values) v /= norm;
  return chi;
}

double reduced_min_residual(const TypeClassVector& chi, int d) {
  const ReducedKronecker k = reduce_kron_matrix(ppt_matrix(d), chi.n);
  const TypeClassVector y = apply(k, chi);
  return *std::min_element(y.values.begin(), y.values.end());
}

Eigen::MatrixXd random_orthogonal(int d, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = gauss(rng);
  return Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
}

OracleCheck check_projector_algebra() {
  double worst = 0.0;
  std::string detail = "pi0+pi1, pi0 pi1, idempotence, traces for d in 2..6";
  for (int d = 2; d <= 6; ++d) {
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d * d, d * d);
    const Eigen::MatrixXd swap = build_swap(d);
    const Eigen::MatrixXd pi0 = 0.5 * (id + swap);
    const Eigen::MatrixXd pi1 = 0.5 * (id - swap);
    worst = std::max(worst, ((pi0 + pi1) - id).cwiseAbs().maxCoeff());
    worst = std::max(worst, (pi0 * pi1).cwiseAbs().maxCoeff());
    worst = std::max(worst, (pi0 * pi0 - pi0).cwiseAbs().maxCoeff());
    worst = std::max(worst, (pi1 * pi1 - pi1).cwiseAbs().maxCoeff());
    worst = std::max(worst, std::abs(pi0.trace() - 0.5 * d * (d + 1)));
    worst = std::max(worst, std::abs(pi1.trace() - 0.5 * d * (d - 1)));
  }
  return make_check("projector_algebra", worst, 1e-12, detail);
}

OracleCheck check_uu_commutant() {
  std::mt19937 rng(11);
  double worst = 0.0;
  for (int d = 2; d <= 4; ++d) {
    for (double p : {0.3, 0.7, 1.0}) {
      const DenseState s = build_werner({d, p});
      for (int rep = 0; rep < 3; ++rep) {
        const Eigen::MatrixXd u = random_orthogonal(d, rng);
        const Eigen::MatrixXd uu = Eigen::kroneckerProduct(u, u).eval();
        worst = std::max(worst, (s.matrix * uu - uu * s.matrix).cwiseAbs().maxCoeff());
      }
    }
  }
  return make_check("uu_commutant", worst, 1e-10,
                    "[sigma(p), O (x) O] for random orthogonal O, d in 2..4");
}

OracleCheck check_pt_involution() {
  std::mt19937 rng(22);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  double worst = 0.0;
  for (int d : {2, 3}) {
    for (int n : {1, 2}) {
      long dim = 1;
      for (int i = 0; i < 2 * n; ++i) dim *= d;
      Eigen::MatrixXd a(dim, dim);
      for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j) a(i, j) = uni(rng);
      Eigen::MatrixXd m = 0.5 * (a + a.transpose());
      const Eigen::MatrixXd pt = partial_transpose(m, d, n);
      worst = std::max(worst, (partial_transpose(pt, d, n) - m).cwiseAbs().maxCoeff());
      worst = std::max(worst, std::abs(pt.trace() - m.trace()));
    }
  }
  return make_check("pt_involution", worst, 1e-12,
                    "PT(PT(M)) = M and tr PT(M) = tr M on random symmetric M");
}

OracleCheck check_singlet_pt() {
  const DenseState singlet = build_werner({2, 1.0});
  const Eigen::MatrixXd pt = partial_transpose(singlet.matrix, 2, 1);
  Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(pt).eigenvalues();
  std::sort(ev.data(), ev.data() + ev.size());
  double worst = std::abs(ev(0) + 0.5);
  for (int i = 1; i < 4; ++i) worst = std::max(worst, std::abs(ev(i) - 0.5));
  worst = std::max(worst, std::abs(log_negativity(singlet) - 1.0));
  return make_check("singlet_pt", worst, 1e-12,
                    "PT eigenvalues {-1/2, 1/2 x3} and log-negativity 1");
}

OracleCheck check_pt_sign_pattern() {
  int mismatches = 0;
  std::string detail = "dense PT verdict vs single_copy_ppt, d in {2,3}, p grid";
  for (int d : {2, 3}) {
    for (int i = 0; i <= 20; ++i) {
      const WernerParams params{d, i / 20.0};
      const bool dense_ok = min_eigenvalue(partial_transpose(build_werner(params)).matrix) >= -1e-12;
      if (dense_ok != single_copy_ppt(params)) ++mismatches;
    }
  }
  return make_check("pt_sign_pattern", mismatches, 0.0, detail);
}

OracleCheck check_ppt_verdict_agreement() {
  std::mt19937 rng(33);
  int mismatches = 0;
  int checked = 0;
  for (int d : {2, 3}) {
    const WernerParams params{d, 0.75};
    for (int n : {1, 2}) {
      std::vector<TypeClassVector> cases;
      // Deterministic profile cases: sigma_1-heavy (NPT), sigma_0-heavy
      // (PPT), and a mix pushed just past the feasibility boundary.
      TypeClassVector npt = kron_power_vec(0.75, 0.25, n);
      TypeClassVector ppt = kron_power_vec(0.25, 0.75, n);
      TypeClassVector edge = kron_power_vec(0.5 + 1e-3, 0.5 - 1e-3, n);
      for (TypeClassVector* c : {&npt, &ppt, &edge}) {
        double norm = 0.0;
        for (int a = 0; a <= n; ++a) norm += static_cast<double>(binomial(n, a)) * c->values[a];
        for (double& v : c->values) v /= norm;
        cases.push_back(*c);
      }
      for (int rep = 0; rep < 50; ++rep) cases.push_back(random_feasible_chi(n, rng));
      for (const TypeClassVector& chi : cases) {
        const double reduced = reduced_min_residual(chi, d);
        const DenseState eta = typeclass_to_dense(chi, params, n);
        const double dense = min_eigenvalue(partial_transpose(eta).matrix);
        ++checked;
        if ((reduced >= -1e-12) != (dense >= -1e-12)) ++mismatches;
      }
    }
  }
  std::ostringstream os;
  os << "reduced vs dense PPT verdicts on " << checked << " states";
  return make_check("ppt_verdict_agreement", mismatches, 0.0, os.str());
}

OracleCheck check_relent_agreement() {
  std::mt19937 rng(44);
  std::uniform_real_distribution<double> pdist(0.55, 0.95);
  double worst = 0.0;
  std::string detail;
  for (int d : {2, 3}) {
    for (int n : {1, 2}) {
      for (int rep = 0; rep < 50; ++rep) {
        const WernerParams params{d, pdist(rng)};
        const TypeClassVector chi = random_feasible_chi(n, rng);
        const ReducedProblem problem = build_problem(params, n);
        const double reduced = objective(problem, chi);
        const DenseState sig = tensor_power(build_werner(params), n);
        const double dense = relative_entropy_dense(sig, typeclass_to_dense(chi, params, n)) / n;
        const double err = std::abs(reduced - dense);
        if (err > worst) {
          worst = err;
          detail = describe("worst reduced vs dense (bits/copy)", reduced, dense);
        }
      }
    }
  }
  return make_check("relent_agreement", worst, 1e-8, detail);
}

// Dense application of M^{(x) n} by n axis passes; bit order is immaterial
// because popcount-indexed data is symmetric under factor permutation.
std::vector<double> dense_kron_apply(const std::array<std::array<double, 2>, 2>& m, int n,
                                     const std::vector<double>& x) {
  std::vector<double> v = x;
  for (int axis = 0; axis < n; ++axis) {
    const unsigned stride = 1u << axis;
    for (unsigned base = 0; base < v.size(); ++base) {
      if (base & stride) continue;
      const double x0 = v[base], x1 = v[base | stride];
      v[base] = m[0][0] * x0 + m[0][1] * x1;
      v[base | stride] = m[1][0] * x0 + m[1][1] * x1;
    }
  }
  return v;
}

OracleCheck check_kron_reduced_vs_dense(bool inject_fault) {
  std::mt19937 rng(55);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  double worst = 0.0;
  std::string detail = "apply(reduce_kron_matrix(M,n), chi) vs dense M^(x)n, n up to 10";
  for (int rep = 0; rep < 10; ++rep) {
    const std::array<std::array<double, 2>, 2> m{
        {{uni(rng), uni(rng)}, {uni(rng), uni(rng)}}};
    for (int n : {1, 2, 3, 5, 10}) {
      const TypeClassVector chi = random_feasible_chi(n, rng);
      TypeClassVector reduced = apply(reduce_kron_matrix(m, n), chi);
      if (inject_fault) reduced.values[0] += 2e-10 * (1.0 + std::abs(reduced.values[0]));
      std::vector<double> x(1u << n);
      for (unsigned f = 0; f < x.size(); ++f) x[f] = chi.values[std::popcount(f)];
      const std::vector<double> y = dense_kron_apply(m, n, x);
      for (unsigned g = 0; g < y.size(); ++g)
        worst = std::max(worst, std::abs(y[g] - reduced.values[std::popcount(g)]));
    }
  }
  return make_check("kron_reduced_vs_dense", worst, 1e-10, detail);
}

OracleCheck check_boundary_pt_eig() {
  double worst = 0.0;
  for (int d : {2, 3}) {
    const WernerParams params{d, 0.75};
    const TypeClassVector chi = trial_regime1(2).chi;  // uniform, PPT boundary
    const DenseState eta = typeclass_to_dense(chi, params, 2);
    worst = std::max(worst, std::abs(min_eigenvalue(partial_transpose(eta).matrix)));
  }
  return make_check("boundary_pt_eig", worst, 1e-12,
                    "uniform trial at n=2 touches the PPT boundary exactly");
}

OracleCheck check_logneg_grid() {
  double worst = -std::numeric_limits<double>::infinity();
  std::string detail;
  for (int d = 2; d <= 6; ++d) {
    for (int i = 0; i <= 100; ++i) {
      const WernerParams params{d, i / 100.0};
      const double margin = asymptotic_ree(params) - log_negativity(build_werner(params));
      if (margin > worst) {
        worst = margin;
        std::ostringstream os;
        os.precision(17);
        os << "max of asymptotic_ree - log_negativity at d=" << d << " p=" << params.p;
        detail = os.str();
      }
    }
  }
  return make_check("logneg_grid", worst, 1e-10, detail);
}

OracleCheck check_relent_self_zero() {
  std::mt19937 rng(66);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    const int dim = 9;
    Eigen::MatrixXd a(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) a(i, j) = gauss(rng);
    DenseState s;
    s.d = 3;
    s.copies = 1;
    s.matrix = a * a.transpose();
    s.matrix /= s.matrix.trace();
    worst = std::max(worst, std::abs(relative_entropy_dense(s, s)));
  }
  return make_check("relent_self_zero", worst, 1e-10, "S(sigma||sigma) = 0 on random states");
}

OracleCheck check_relent_singlet_mixed() {
  const DenseState singlet = build_werner({2, 1.0});
  DenseState mixed;
  mixed.d = 2;
  mixed.copies = 1;
  mixed.matrix = 0.25 * Eigen::MatrixXd::Identity(4, 4);
  const double v = relative_entropy_dense(singlet, mixed);
  return make_check("relent_singlet_mixed", std::abs(v - 2.0), 1e-12,
                    describe("S(singlet || I/4)", v, 2.0));
}

}  // namespace

std::vector<OracleCheck> run_oracle_suite(bool inject_fault) {
  std::vector<OracleCheck> checks;
  checks.push_back(check_projector_algebra());
  checks.push_back(check_uu_commutant());
  checks.push_back(check_pt_involution());
  checks.push_back(check_singlet_pt());
  checks.push_back(check_pt_sign_pattern());
  checks.push_back(check_ppt_verdict_agreement());
  checks.push_back(check_relent_agreement());
  checks.push_back(check_kron_reduced_vs_dense(inject_fault));
  checks.push_back(check_boundary_pt_eig());
  checks.push_back(check_logneg_grid());
  checks.push_back(check_relent_self_zero());
  checks.push_back(check_relent_singlet_mixed());
  return checks;
}

}  // namespace wree
