#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace synlat {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using SparseCMatrix = Eigen::SparseMatrix<Complex>;

// Thrown when a computation leaves its validated numeric range
// (residual blow-up, trace drift, non-finite values).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a propagated quantity exceeds the representable guard (1e120).
class OverflowError : public std::runtime_error {
 public:
  explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

// Two-mode dimer with detuning +/- delta, intermode dissipative coupling
// gamma and local damping big_gamma. `order` is the moment order N; the
// derived lattice has n = N + 1 sites. Stable iff big_gamma > gamma.
struct DimerParams {
  double delta = 0.0;
  double gamma = 1.0;
  double big_gamma = 0.0;
  int order = 1;

  int sites() const { return order + 1; }
  bool stable() const { return big_gamma > gamma; }
  void validate() const {
    if (order < 1) throw std::invalid_argument("order must be >= 1");
    if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
    if (big_gamma < 0.0) throw std::invalid_argument("big_gamma must be >= 0");
  }
};

// Dimer with independent mode frequencies omega1/omega2 and asymmetric
// couplings kappa1/kappa2 (gain-loss form, no local damping term).
struct GeneralDimerParams {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  int order = 1;

  int sites() const { return order + 1; }
  double omega() const { return 0.5 * (omega2 - omega1); }
  void validate() const {
    if (order < 1) throw std::invalid_argument("order must be >= 1");
  }
};

// Tridiagonal complex matrix in band storage.
// sub[j] is entry (j+1, j), sup[j] is entry (j, j+1), for j = 0..n-2.
struct TridiagMatrix {
  int n = 0;
  std::vector<Complex> diag;
  std::vector<Complex> sub;
  std::vector<Complex> sup;

  TridiagMatrix() = default;
  explicit TridiagMatrix(int size)
      : n(size), diag(size), sub(size > 0 ? size - 1 : 0), sup(size > 0 ? size - 1 : 0) {}

  DenseMatrix dense() const;
  TridiagMatrix transposed() const;
  ComplexVector apply(const ComplexVector& x) const;
  double max_abs() const;
};

}  // namespace synlat
