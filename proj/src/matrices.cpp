#include "synlat/matrices.hpp"

#include <cmath>

namespace synlat {

DenseMatrix TridiagMatrix::dense() const {
  DenseMatrix m = DenseMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) m(j, j) = diag[j];
  for (int j = 0; j + 1 < n; ++j) {
    m(j + 1, j) = sub[j];
    m(j, j + 1) = sup[j];
  }
  return m;
}

TridiagMatrix TridiagMatrix::transposed() const {
  TridiagMatrix t(n);
  t.diag = diag;
  t.sub = sup;
  t.sup = sub;
  return t;
}

ComplexVector TridiagMatrix::apply(const ComplexVector& x) const {
  if (x.size() != n) throw std::invalid_argument("apply: size mismatch");
  ComplexVector y(n);
  for (int j = 0; j < n; ++j) {
    Complex acc = diag[j] * x[j];
    if (j > 0) acc += sub[j - 1] * x[j - 1];
    if (j + 1 < n) acc += sup[j] * x[j + 1];
    y[j] = acc;
  }
  return y;
}

double TridiagMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : diag) m = std::max(m, std::abs(v));
  for (const auto& v : sub) m = std::max(m, std::abs(v));
  for (const auto& v : sup) m = std::max(m, std::abs(v));
  return m;
}

TridiagMatrix build_general_moment_matrix(const GeneralDimerParams& p) {
  p.validate();
  const int N = p.order;
  TridiagMatrix L(N + 1);
  for (int j = 0; j <= N; ++j)
    L.diag[j] = Complex(0.0, (N - j) * p.omega1 + j * p.omega2);
  for (int j = 0; j + 1 <= N; ++j) {
    L.sub[j] = Complex((j + 1) * p.kappa2, 0.0);
    L.sup[j] = Complex((N - j) * p.kappa1, 0.0);
  }
  return L;
}

TridiagMatrix build_moment_matrix(const DimerParams& p) {
  p.validate();
  // Built through the general form so the parameter reduction
  // (omega1, omega2, kappa1, kappa2) = (-delta, delta, -gamma, -gamma)
  // is exact in floating point; the local damping only shifts the diagonal.
  GeneralDimerParams g;
  g.omega1 = -p.delta;
  g.omega2 = p.delta;
  g.kappa1 = -p.gamma;
  g.kappa2 = -p.gamma;
  g.order = p.order;
  TridiagMatrix m = build_general_moment_matrix(g);
  const double shift = p.order * p.big_gamma;
  for (auto& d : m.diag) d -= shift;
  return m;
}

DenseMatrix build_parity(int n) {
  if (n < 1) throw std::invalid_argument("parity: n must be >= 1");
  DenseMatrix p = DenseMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) p(j, n - 1 - j) = 1.0;
  return p;
}

DenseMatrix build_chiral(int n) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("chiral: n must be even and >= 2");
  DenseMatrix chi = DenseMatrix::Zero(n, n);
  for (int p = 0; p < n; ++p) {
    const double sign = (p % 2 == 0) ? -1.0 : 1.0;  // (-1)^(p+1)
    chi(p, n - 1 - p) = Complex(0.0, sign);
  }
  return chi;
}

bool check_pt_invariance(const TridiagMatrix& m, double tol) {
  const DenseMatrix d = m.dense();
  const DenseMatrix p = build_parity(m.n);
  const DenseMatrix lhs = p * d.conjugate() * p;
  return (lhs - d).cwiseAbs().maxCoeff() <= tol;
}

bool check_chirality(const TridiagMatrix& m, double tol) {
  const DenseMatrix d = m.dense();
  const DenseMatrix chi = build_chiral(m.n);
  const DenseMatrix lhs = chi * d * chi.adjoint();
  return (lhs + d).cwiseAbs().maxCoeff() <= tol;
}

DenseMatrix kron_sum_construct(const DenseMatrix& first_order, int order) {
  if (first_order.rows() != 2 || first_order.cols() != 2)
    throw std::invalid_argument("kron_sum_construct: first_order must be 2x2");
  if (order < 1 || order > 20)
    throw std::invalid_argument("kron_sum_construct: order out of range");

  const int N = order;
  const long dim = 1L << N;

  // Kronecker sum: sum over tensor slots of I x .. x A x .. x I.
  DenseMatrix K = DenseMatrix::Zero(dim, dim);
  for (int slot = 0; slot < N; ++slot) {
    const long stride = 1L << (N - 1 - slot);
    for (long col = 0; col < dim; ++col) {
      const int bit = (col / stride) & 1L;
      for (int row_bit = 0; row_bit < 2; ++row_bit) {
        const long row = col + (row_bit - bit) * stride;
        K(row, col) += first_order(row_bit, bit);
      }
    }
  }

  // Restrict to the symmetric subspace. Column j of the embedding E is the
  // indicator of all bit strings of popcount j; E^T E = diag(binom(N, j)).
  std::vector<int> weight(dim);
  for (long s = 0; s < dim; ++s) weight[s] = __builtin_popcountl(s);

  DenseMatrix E = DenseMatrix::Zero(dim, N + 1);
  for (long s = 0; s < dim; ++s) E(s, weight[s]) = 1.0;

  DenseMatrix R = E.transpose() * K * E;
  double binom = 1.0;
  for (int j = 0; j <= N; ++j) {
    R.row(j) /= binom;
    binom = binom * (N - j) / (j + 1);
  }
  return R;
}

}  // namespace synlat
