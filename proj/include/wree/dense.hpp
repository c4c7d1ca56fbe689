#pragma once

#include <Eigen/Dense>

#include "wree/typeclass.hpp"
#include "wree/werner.hpp"

namespace wree {

// Density matrix on (C^d (x) C^d)^{(x) n} in the computational basis, copies
// ordered A1 B1 A2 B2 ... with the leftmost factor most significant.  Every
// state in this family is real symmetric.
struct DenseState {
  int d = 2;
  int copies = 1;
  Eigen::MatrixXd matrix;  // d^{2 copies} square
};

// Swap operator on C^d (x) C^d: S|ij> = |ji>.
Eigen::MatrixXd build_swap(int d);

// sigma(p) = p pi_1/tr(pi_1) + (1-p) pi_0/tr(pi_0), pi_{0,1} = (1 +- S)/2.
// Size guard d <= 6.
DenseState build_werner(const WernerParams& params);

// n-fold tensor power; same d^{2n} budget as typeclass_to_dense.
DenseState tensor_power(const DenseState& state, int n);

// Transpose on the B factor of every copy.  An involution, trace preserving.
Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& matrix, int d, int copies);
DenseState partial_transpose(const DenseState& state);

// S(sigma || rho) in bits via two eigendecompositions; +inf when supp(sigma)
// leaks outside supp(rho) at the 1e-12 eigenvalue cutoff.
double relative_entropy_dense(const DenseState& sigma, const DenseState& rho);

// lg of the trace norm of the partial transpose, in bits.
double log_negativity(const DenseState& state);

// eta = sum_f chi[type(f)] sigma_{f_1} (x) ... (x) sigma_{f_n}, digit 1
// selecting sigma_0 as in TypeClassVector.  Size guard d^{2n} < 4096.
DenseState typeclass_to_dense(const TypeClassVector& chi, const WernerParams& params, int n);

}  // namespace wree
