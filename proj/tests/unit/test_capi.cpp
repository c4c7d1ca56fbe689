#include <cmath>
#include <cstring>
#include <string>

#include "doctest.h"
#include "werner_ree.h"

TEST_CASE("version and status names") {
  CHECK(std::string(wree_version()) == "1.0.0");
  CHECK(std::string(wree_status_name(WREE_OK)) == "ok");
  CHECK(std::string(wree_status_name(WREE_ERR_DOMAIN)) == "domain");
  CHECK(std::string(wree_status_name(WREE_ERR_CERTIFICATION)) == "certification");
}

TEST_CASE("default tolerances") {
  const wree_tolerances tol = wree_default_tolerances();
  CHECK(tol.tol_eq == 1e-12);
  CHECK(tol.tol_feas == 1e-9);
  CHECK(tol.tol_gap == 1e-8);
}

TEST_CASE("scalar entry points") {
  double out = -1.0;
  CHECK(wree_binary_entropy(0.6, &out) == WREE_OK);
  CHECK(out == doctest::Approx(0.9709505944546686).epsilon(1e-15));
  CHECK(wree_binary_entropy(0.6, nullptr) == WREE_ERR_INVALID_ARGUMENT);
  CHECK(wree_binary_entropy(1.5, &out) == WREE_ERR_DOMAIN);

  CHECK(wree_threshold(3, &out) == WREE_OK);
  CHECK(out == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  CHECK(wree_threshold(1, &out) == WREE_ERR_DOMAIN);

  CHECK(wree_asymptotic_ree(3, 0.9, &out) == WREE_OK);
  CHECK(out == doctest::Approx(0.504772784677470).epsilon(1e-13));

  int branch = -1;
  CHECK(wree_asymptotic_branch(3, 0.9, &branch) == WREE_OK);
  CHECK(branch == 2);
  CHECK(wree_asymptotic_branch(3, 0.6, &branch) == WREE_OK);
  CHECK(branch == 1);

  int ppt = -1;
  CHECK(wree_single_copy_ppt(3, 0.3, &ppt) == WREE_OK);
  CHECK(ppt == 1);
  CHECK(wree_single_copy_ppt(3, 0.9, &ppt) == WREE_OK);
  CHECK(ppt == 0);
}

TEST_CASE("certificate entry points") {
  double lo = 0.0, hi = 0.0, asym = 0.0;
  CHECK(wree_dual_lower(3, 0.9, 5, &lo) == WREE_OK);
  CHECK(wree_finite_upper(3, 0.9, 5, &hi) == WREE_OK);
  CHECK(wree_asymptotic_upper(3, 0.9, &asym) == WREE_OK);
  CHECK(lo <= hi + 1e-12);
  CHECK(asym >= lo - 1e-12);
  CHECK(asym <= hi + 1e-12);
  CHECK(wree_asymptotic_upper(3, 0.7, &asym) != WREE_OK);  // below threshold

  double ln = -1.0;
  CHECK(wree_log_negativity(2, 1.0, &ln) == WREE_OK);
  CHECK(ln == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(wree_log_negativity(7, 0.9, &ln) == WREE_ERR_SIZE);
}

TEST_CASE("problem and solution lifecycle") {
  wree_problem* prob = nullptr;
  CHECK(wree_problem_create(3, 0.9, 2, &prob) == WREE_OK);
  REQUIRE(prob != nullptr);
  wree_solution* sol = nullptr;
  CHECK(wree_solve(prob, nullptr, &sol) == WREE_OK);
  REQUIRE(sol != nullptr);

  double value = 0.0, gap = 0.0, dual_g = 0.0, res = 0.0;
  int iters = 0;
  CHECK(wree_solution_value(sol, &value) == WREE_OK);
  CHECK(value == doctest::Approx(0.5187019874705201).epsilon(1e-7));
  CHECK(wree_solution_gap(sol, &gap) == WREE_OK);
  CHECK(gap <= 1e-8);
  CHECK(wree_solution_dual_g(sol, &dual_g) == WREE_OK);
  CHECK(dual_g == doctest::Approx(value - gap).epsilon(1e-12));
  CHECK(wree_solution_ppt_residual(sol, &res) == WREE_OK);
  CHECK(res >= -1e-9);
  CHECK(wree_solution_norm_residual(sol, &res) == WREE_OK);
  CHECK(std::abs(res) <= 1e-12);
  CHECK(wree_solution_iterations(sol, &iters) == WREE_OK);
  CHECK(iters > 0);

  double chi[3] = {0, 0, 0};
  CHECK(wree_solution_chi(sol, chi, 3) == WREE_OK);
  CHECK(chi[0] + 2.0 * chi[1] + chi[2] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(wree_solution_chi(sol, chi, 2) == WREE_ERR_DIMENSION);

  wree_solution_destroy(sol);
  wree_problem_destroy(prob);
}

TEST_CASE("creation errors map to status codes") {
  wree_problem* prob = nullptr;
  CHECK(wree_problem_create(3, 0.4, 2, &prob) == WREE_ERR_DOMAIN);
  CHECK(prob == nullptr);
  CHECK(wree_problem_create(3, 0.9, 31, &prob) == WREE_ERR_SIZE);
  CHECK(wree_problem_create(3, 0.9, 2, nullptr) == WREE_ERR_INVALID_ARGUMENT);
  CHECK(wree_solve(nullptr, nullptr, nullptr) == WREE_ERR_INVALID_ARGUMENT);
}

TEST_CASE("certification failure still returns the solution") {
  wree_problem* prob = nullptr;
  REQUIRE(wree_problem_create(3, 0.9, 16, &prob) == WREE_OK);
  wree_tolerances tol = wree_default_tolerances();
  tol.tol_gap = 1e-12;
  wree_solution* sol = nullptr;
  CHECK(wree_solve(prob, &tol, &sol) == WREE_ERR_CERTIFICATION);
  REQUIRE(sol != nullptr);
  double value = 0.0, gap = 0.0;
  CHECK(wree_solution_value(sol, &value) == WREE_OK);
  CHECK(std::isfinite(value));
  CHECK(wree_solution_gap(sol, &gap) == WREE_OK);
  CHECK(gap > 1e-12);
  CHECK(gap <= 1e-5);
  wree_solution_destroy(sol);
  wree_problem_destroy(prob);
}

TEST_CASE("certify below the separability point is exactly zero") {
  wree_certificate cert;
  CHECK(wree_certify(3, 0.3, 4, nullptr, &cert) == WREE_OK);
  CHECK(cert.lower == 0.0);
  CHECK(cert.upper == 0.0);
  CHECK(cert.primal == 0.0);
  CHECK(cert.asymptotic == 0.0);
  CHECK(cert.gap == 0.0);
  CHECK(cert.has_primal == 1);
  CHECK(cert.primal_feasible == 1);
  CHECK(cert.dual_feasible == 1);
  CHECK(cert.trial_feasible == 1);
}

TEST_CASE("certify brackets the solver value") {
  wree_certificate cert;
  CHECK(wree_certify(3, 0.9, 3, nullptr, &cert) == WREE_OK);
  CHECK(cert.d == 3);
  CHECK(cert.n == 3);
  CHECK(cert.has_primal == 1);
  CHECK(cert.lower == doctest::Approx(0.504772784677470).epsilon(1e-12));
  CHECK(cert.lower <= cert.primal + 1e-9);
  CHECK(cert.primal <= cert.upper + 1e-9);
  CHECK(cert.asymptotic >= cert.lower - 1e-12);
  CHECK(cert.asymptotic <= cert.upper + 1e-12);
  CHECK(cert.gap <= 1e-6);
  CHECK(cert.has_log_negativity == 1);
  CHECK(cert.log_negativity > 0.0);
  CHECK(cert.primal_feasible == 1);
  CHECK(cert.dual_feasible == 1);
  CHECK(cert.trial_feasible == 1);
  CHECK(cert.iterations > 0);
}

TEST_CASE("certify beyond the solver range still reports bounds") {
  wree_certificate cert;
  CHECK(wree_certify(3, 0.9, 40, nullptr, &cert) == WREE_OK);
  CHECK(cert.has_primal == 0);
  CHECK(cert.lower <= cert.upper + 1e-12);
  CHECK(cert.asymptotic >= cert.lower - 1e-12);
  CHECK(cert.asymptotic <= cert.upper + 1e-12);
  CHECK(cert.dual_feasible == 1);
  CHECK(cert.trial_feasible == 1);
}

TEST_CASE("oracle report round trip") {
  wree_oracle_report* rep = nullptr;
  REQUIRE(wree_oracle_run(0, &rep) == WREE_OK);
  const int count = wree_oracle_count(rep);
  CHECK(count == 12);
  for (int i = 0; i < count; ++i) {
    CHECK(wree_oracle_name(rep, i) != nullptr);
    CHECK(wree_oracle_detail(rep, i) != nullptr);
    CHECK(wree_oracle_passed(rep, i) == 1);
    CHECK(wree_oracle_error(rep, i) <= wree_oracle_tolerance(rep, i));
  }
  wree_oracle_report_destroy(rep);
}

TEST_CASE("oracle fault injection is detected") {
  wree_oracle_report* rep = nullptr;
  REQUIRE(wree_oracle_run(1, &rep) == WREE_OK);
  int failures = 0;
  std::string failed_name;
  for (int i = 0; i < wree_oracle_count(rep); ++i)
    if (wree_oracle_passed(rep, i) == 0) {
      ++failures;
      failed_name = wree_oracle_name(rep, i);
    }
  CHECK(failures == 1);
  CHECK(failed_name == "kron_reduced_vs_dense");
  wree_oracle_report_destroy(rep);
}
