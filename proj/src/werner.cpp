#include "wree/werner.hpp"

#include <cmath>

namespace wree {

const char* status_name(status s) {
  switch (s) {
    case status::ok: return "ok";
    case status::invalid_argument: return "invalid_argument";
    case status::domain: return "domain";
    case status::regime: return "regime";
    case status::size: return "size";
    case status::dimension: return "dimension";
    case status::overflow: return "overflow";
    case status::max_iterations: return "max_iterations";
    case status::numerical: return "numerical";
    case status::certification: return "certification";
  }
  return "unknown";
}

void validate(const WernerParams& params) {
  if (params.d < 2) throw domain_error("local dimension d must be >= 2");
  if (!(params.p >= 0.0 && params.p <= 1.0)) throw domain_error("weight p must lie in [0,1]");
}

double lg(double x) { return std::log2(x); }

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw domain_error("binary_entropy: p must lie in [0,1]");
  double h = 0.0;
  if (p > 0.0) h -= p * lg(p);
  if (p < 1.0) h -= (1.0 - p) * lg(1.0 - p);
  return h;
}

double threshold(int d) {
  if (d < 2) throw domain_error("threshold: d must be >= 2");
  return (d + 2.0) / (2.0 * d);
}

asymptotic_branch_kind asymptotic_branch(const WernerParams& params) {
  validate(params);
  if (params.p <= 0.5) return asymptotic_branch_kind::zero;
  if (params.p <= threshold(params.d)) return asymptotic_branch_kind::entropic;
  return asymptotic_branch_kind::linear;
}

double asymptotic_ree(const WernerParams& params) {
  switch (asymptotic_branch(params)) {
    case asymptotic_branch_kind::zero:
      return 0.0;
    case asymptotic_branch_kind::entropic:
      return 1.0 - binary_entropy(params.p);
    case asymptotic_branch_kind::linear:
      // d >= 3 here: p'(2) = 1 makes the linear branch unreachable at d = 2,
      // so lg(d-2) is never taken on a vanishing argument.
      return lg((params.d + 2.0) / params.d) +
             (1.0 - params.p) * lg((params.d - 2.0) / (params.d + 2.0));
  }
  throw numerical_error("asymptotic_ree: unreachable branch");
}

std::array<std::array<double, 2>, 2> ppt_matrix(int d) {
  if (d < 2) throw domain_error("ppt_matrix: d must be >= 2");
  return {{{-1.0, 1.0}, {1.0, (d - 1.0) / (d + 1.0)}}};
}

bool single_copy_ppt(const WernerParams& params) {
  validate(params);
  const auto t = ppt_matrix(params.d);
  const double c0 = t[0][0] * params.p + t[0][1] * (1.0 - params.p);
  const double c1 = t[1][0] * params.p + t[1][1] * (1.0 - params.p);
  return c0 >= 0.0 && c1 >= 0.0;
}

}  // namespace wree
