#pragma once

#include <array>

#include "wree/common.hpp"

namespace wree {

// Werner state sigma(p) = p*sigma_1 + (1-p)*sigma_0 on C^d (x) C^d, with
// sigma_1 (sigma_0) the normalized projector onto the antisymmetric
// (symmetric) subspace.  All entropic quantities are in bits.
struct WernerParams {
  int d = 2;
  double p = 0.0;
};

// Throws domain_error unless d >= 2 and p in [0,1].
void validate(const WernerParams& params);

// lg = log2 throughout.
double lg(double x);

// H(p) = -p lg p - (1-p) lg (1-p), with 0 lg 0 = 0.
double binary_entropy(double p);

// p'(d) = (d+2)/(2d): the abscissa where the asymptotic formula switches
// from the entropic branch to the linear branch.
double threshold(int d);

enum class asymptotic_branch_kind { zero = 0, entropic = 1, linear = 2 };

// Branch of the asymptotic formula at (d, p): "zero" for p <= 1/2,
// "entropic" for 1/2 < p <= p'(d), "linear" above.
asymptotic_branch_kind asymptotic_branch(const WernerParams& params);

// Asymptotic relative entropy of entanglement w.r.t. PPT states:
//   0                                        for p <= 1/2,
//   1 - H(p)                                 for 1/2 < p <= p'(d),
//   lg((d+2)/d) + (1-p) lg((d-2)/(d+2))      for p > p'(d)  (d >= 3).
// For d = 2 the linear branch has empty domain (p'(2) = 1).
double asymptotic_ree(const WernerParams& params);

// Single-copy PPT matrix T = [[-1, 1], [1, (d-1)/(d+1)]]: sigma(p) is PPT
// iff T (p, 1-p)^T is entrywise nonnegative.
std::array<std::array<double, 2>, 2> ppt_matrix(int d);

// True iff sigma(p) has positive partial transpose, i.e. p <= 1/2.
bool single_copy_ppt(const WernerParams& params);

}  // namespace wree
