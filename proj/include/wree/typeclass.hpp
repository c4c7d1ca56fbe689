#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "wree/common.hpp"

namespace wree {

// Permutation-symmetric vector over {0,1}^n stored by type class: entry a is
// the per-index value shared by every bit string with a ones.  Convention:
// type a carries the product (first component)^{n-a} * (second component)^a,
// so digit 1 selects the second component (the sigma_0 slot), matching the
// weights p^{n-k}(1-p)^k.
struct TypeClassVector {
  int n = 0;
  std::vector<double> values;  // size n+1
};

// C(n,k) exactly, in integer arithmetic; throws overflow_error for n > 60.
std::int64_t binomial(int n, int k);
// ln C(n,k) via lgamma; inexact but defined for any n (used in log domain).
double log_binomial(int n, int k);

// (first, second)^{(x) n} on type classes: values[a] = first^{n-a} second^a.
TypeClassVector kron_power_vec(double first, double second, int n);

// Log-domain variant: values[a] = (n-a) lg first + a lg second; requires
// strictly positive inputs, never under/overflows.
TypeClassVector log_kron_power_vec(double first, double second, int n);

// Action of M^{(x) n} on type-class vectors: the (n+1)x(n+1) matrix with
//   K[b][a] = sum_s C(b,s) C(n-b,a-s) M11^s M10^{b-s} M01^{a-s} M00^{(n-b)-(a-s)},
// s in [max(0,a+b-n), min(a,b)]; index 1 marks the second row/column.
struct ReducedKronecker {
  int n = 0;
  std::array<std::array<double, 2>, 2> base{};
  Eigen::MatrixXd k;  // (n+1) x (n+1), k(b,a)
};

ReducedKronecker reduce_kron_matrix(const std::array<std::array<double, 2>, 2>& m, int n);

// y[b] = sum_a K[b][a] chi[a]; the type-class form of M^{(x) n} x.
TypeClassVector apply(const ReducedKronecker& k, const TypeClassVector& chi);

}  // namespace wree
