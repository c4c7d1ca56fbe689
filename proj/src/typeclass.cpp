#include "wree/typeclass.hpp"

#include <cmath>

#include "wree/werner.hpp"

namespace wree {

namespace {

// x^e for integer e >= 0 with exact sign handling (std::pow is fine for
// integral exponents but this keeps negative bases unambiguous).
double powi(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

std::int64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw domain_error("binomial: need 0 <= k <= n");
  if (n > 60) throw overflow_error("binomial: exact integer range is n <= 60");
  // Pascal addition keeps every intermediate below C(60,30) < 2^63.
  std::vector<std::int64_t> row(static_cast<std::size_t>(n) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j >= 1; --j) row[j] += row[j - 1];
  return row[k];
}

double log_binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw domain_error("log_binomial: need 0 <= k <= n");
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

TypeClassVector kron_power_vec(double first, double second, int n) {
  if (n < 1) throw domain_error("kron_power_vec: n must be >= 1");
  TypeClassVector v;
  v.n = n;
  v.values.resize(static_cast<std::size_t>(n) + 1);
  for (int a = 0; a <= n; ++a) v.values[a] = powi(first, n - a) * powi(second, a);
  return v;
}

TypeClassVector log_kron_power_vec(double first, double second, int n) {
  if (n < 1) throw domain_error("log_kron_power_vec: n must be >= 1");
  if (!(first > 0.0) || !(second > 0.0))
    throw domain_error("log_kron_power_vec: inputs must be strictly positive");
  TypeClassVector v;
  v.n = n;
  v.values.resize(static_cast<std::size_t>(n) + 1);
  const double lf = lg(first), ls = lg(second);
  for (int a = 0; a <= n; ++a) v.values[a] = (n - a) * lf + a * ls;
  return v;
}

ReducedKronecker reduce_kron_matrix(const std::array<std::array<double, 2>, 2>& m, int n) {
  if (n < 1) throw domain_error("reduce_kron_matrix: n must be >= 1");
  if (n > 60) throw overflow_error("reduce_kron_matrix: exact binomials need n <= 60");
  ReducedKronecker rk;
  rk.n = n;
  rk.base = m;
  rk.k.resize(n + 1, n + 1);
  for (int b = 0; b <= n; ++b) {
    for (int a = 0; a <= n; ++a) {
      const int s_lo = std::max(0, a + b - n);
      const int s_hi = std::min(a, b);
      double sum = 0.0;
      for (int s = s_lo; s <= s_hi; ++s) {
        sum += static_cast<double>(binomial(b, s)) * static_cast<double>(binomial(n - b, a - s)) *
               powi(m[1][1], s) * powi(m[1][0], b - s) * powi(m[0][1], a - s) *
               powi(m[0][0], (n - b) - (a - s));
      }
      rk.k(b, a) = sum;
    }
  }
  return rk;
}

TypeClassVector apply(const ReducedKronecker& k, const TypeClassVector& chi) {
  if (chi.n != k.n || static_cast<int>(chi.values.size()) != k.n + 1)
    throw dimension_error("apply: type-class vector does not match reduced matrix size");
  TypeClassVector y;
  y.n = k.n;
  y.values.assign(static_cast<std::size_t>(k.n) + 1, 0.0);
  for (int b = 0; b <= k.n; ++b) {
    double acc = 0.0;
    for (int a = 0; a <= k.n; ++a) acc += k.k(b, a) * chi.values[a];
    y.values[b] = acc;
  }
  return y;
}

}  // namespace wree
