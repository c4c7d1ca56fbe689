#include <bit>
#include <cmath>
#include <limits>

#include <unsupported/Eigen/KroneckerProduct>

#include "wree/dense.hpp"

namespace wree {

namespace {

// d^{2n}, guarded against the dense budget; boundary excluded so d=2 stops
// at n=5 and d=4 at n=2.
long dense_dim(int d, int copies) {
  long dim = 1;
  for (int i = 0; i < 2 * copies; ++i) {
    dim *= d;
    if (dim >= 4096) throw size_error("dense: d^(2n) must stay below 4096");
  }
  return dim;
}

// Splits every index into its A-digit and B-digit contributions so the
// partial transpose is out(Ar + Bc, Ac + Br) = in(Ar + Bc ... ) in O(dim^2).
void split_digits(long dim, int d, int copies, std::vector<long>& a_part,
                  std::vector<long>& b_part) {
  a_part.assign(dim, 0);
  b_part.assign(dim, 0);
  for (long x = 0; x < dim; ++x) {
    long rest = x;
    long place = dim;
    for (int j = 0; j < 2 * copies; ++j) {
      place /= d;
      const long digit = rest / place;
      rest -= digit * place;
      (j % 2 == 0 ? a_part : b_part)[x] += digit * place;
    }
  }
}

}  // namespace

Eigen::MatrixXd build_swap(int d) {
  if (d < 2) throw domain_error("build_swap: d must be >= 2");
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) s(i * d + j, j * d + i) = 1.0;
  return s;
}

DenseState build_werner(const WernerParams& params) {
  validate(params);
  if (params.d > 6) throw size_error("build_werner: size guard d <= 6");
  const int d = params.d;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d * d, d * d);
  const Eigen::MatrixXd swap = build_swap(d);
  const Eigen::MatrixXd pi0 = 0.5 * (id + swap);
  const Eigen::MatrixXd pi1 = 0.5 * (id - swap);
  DenseState out;
  out.d = d;
  out.copies = 1;
  out.matrix = params.p * pi1 / (0.5 * d * (d - 1)) + (1.0 - params.p) * pi0 / (0.5 * d * (d + 1));
  return out;
}

DenseState tensor_power(const DenseState& state, int n) {
  if (n < 1) throw size_error("tensor_power: n must be >= 1");
  dense_dim(state.d, state.copies * n);
  DenseState out;
  out.d = state.d;
  out.copies = state.copies * n;
  out.matrix = state.matrix;
  for (int i = 1; i < n; ++i)
    out.matrix = Eigen::kroneckerProduct(out.matrix, state.matrix).eval();
  return out;
}

Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& matrix, int d, int copies) {
  const long dim = matrix.rows();
  long expect = 1;
  for (int i = 0; i < 2 * copies; ++i) expect *= d;
  if (matrix.cols() != dim || dim != expect)
    throw dimension_error("partial_transpose: matrix size is not d^(2n)");
  std::vector<long> a_part, b_part;
  split_digits(dim, d, copies, a_part, b_part);
  Eigen::MatrixXd out(dim, dim);
  for (long r = 0; r < dim; ++r)
    for (long c = 0; c < dim; ++c) out(a_part[r] + b_part[c], a_part[c] + b_part[r]) = matrix(r, c);
  return out;
}

DenseState partial_transpose(const DenseState& state) {
  DenseState out = state;
  out.matrix = partial_transpose(state.matrix, state.d, state.copies);
  return out;
}

double relative_entropy_dense(const DenseState& sigma, const DenseState& rho) {
  if (sigma.matrix.rows() != rho.matrix.rows())
    throw dimension_error("relative_entropy_dense: dimension mismatch");
  constexpr double cutoff = 1e-12;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_s(sigma.matrix);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_r(rho.matrix);
  double acc = 0.0;  // tr sigma lg sigma
  for (long i = 0; i < es_s.eigenvalues().size(); ++i) {
    const double ls = es_s.eigenvalues()(i);
    if (ls > cutoff) acc += ls * std::log2(ls);
  }
  // tr sigma lg rho through rho's eigenbasis; q_j = <v_j|sigma|v_j>.
  const Eigen::MatrixXd sv = sigma.matrix * es_r.eigenvectors();
  for (long j = 0; j < es_r.eigenvalues().size(); ++j) {
    const double lr = es_r.eigenvalues()(j);
    const double q = es_r.eigenvectors().col(j).dot(sv.col(j));
    if (lr > cutoff)
      acc -= q * std::log2(lr);
    else if (q > cutoff)
      return std::numeric_limits<double>::infinity();
  }
  return acc;
}

double log_negativity(const DenseState& state) {
  const Eigen::MatrixXd pt = partial_transpose(state.matrix, state.d, state.copies);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pt);
  return std::log2(es.eigenvalues().cwiseAbs().sum());
}

DenseState typeclass_to_dense(const TypeClassVector& chi, const WernerParams& params, int n) {
  validate(params);
  if (n < 1) throw size_error("typeclass_to_dense: n must be >= 1");
  if (chi.n != n || static_cast<int>(chi.values.size()) != n + 1)
    throw dimension_error("typeclass_to_dense: chi built for a different n");
  const long dim = dense_dim(params.d, n);
  const DenseState sigma1 = build_werner({params.d, 1.0});
  const DenseState sigma0 = build_werner({params.d, 0.0});
  DenseState out;
  out.d = params.d;
  out.copies = n;
  out.matrix = Eigen::MatrixXd::Zero(dim, dim);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Eigen::MatrixXd term = ((mask >> (n - 1)) & 1u) ? sigma0.matrix : sigma1.matrix;
    for (int i = n - 2; i >= 0; --i)
      term = Eigen::kroneckerProduct(term, ((mask >> i) & 1u) ? sigma0.matrix : sigma1.matrix)
                 .eval();
    out.matrix += chi.values[std::popcount(mask)] * term;
  }
  return out;
}

}  // namespace wree
