#pragma once

#include <utility>
#include <vector>

#include "synlat/dynamics.hpp"
#include "synlat/types.hpp"

namespace synlat {

// Truncated two-mode Fock-space density matrix, basis |n1, n2> with
// n1, n2 = 0..cutoff and flat index n1 * (cutoff + 1) + n2.
struct DensityMatrix {
  int cutoff = 0;
  DenseMatrix rho;

  int dim() const { return (cutoff + 1) * (cutoff + 1); }
  double trace_error() const { return std::abs(rho.trace() - Complex(1.0, 0.0)); }
  double hermiticity_error() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }
};

// Pure coherent product state |alpha1>|alpha2> with renormalized truncated
// amplitudes. Requires |alpha|^2 + 6 |alpha| + 4 <= cutoff for both modes so
// the discarded tail stays far below the comparison tolerances.
DensityMatrix coherent_density_matrix(Complex alpha1, Complex alpha2, int cutoff);

// Master-equation right-hand side and a classical RK4 stepper for the
// two-mode dimer: unitary part with detuning +/- delta, local damping
// big_gamma on each mode and the cross-mode dissipative coupling gamma.
class LindbladIntegrator {
 public:
  LindbladIntegrator(const DimerParams& p, int cutoff);

  int cutoff() const { return cutoff_; }
  int dim() const { return (cutoff_ + 1) * (cutoff_ + 1); }

  DenseMatrix rhs(const DenseMatrix& rho) const;
  void step(DenseMatrix& rho, double dt) const;

  // Population on the two highest Fock levels of either mode.
  double leakage(const DenseMatrix& rho) const;

 private:
  int cutoff_;
  double gamma_;
  double big_gamma_;
  SparseCMatrix a1_, a2_;          // annihilation operators
  SparseCMatrix drift_, drift_adj_;  // -iH - sum_jk gamma_jk a_k^dag a_j and its adjoint
  SparseCMatrix jump1_, jump2_;    // recycling terms grouped as (a1 rho) jump1 + (a2 rho) jump2
};

// Single RK4 step, convenience wrapper over LindbladIntegrator.
void lindblad_step(DensityMatrix& rho, const DimerParams& p, double dt);

// Moment vector entry j = Tr[rho a1^(N-j) a2^j].
MomentVector extract_moments(const DensityMatrix& rho, int order);

struct FockConfig {
  int cutoff = 10;
  double dt = 0.0;       // <= 0 selects 0.002 / max(delta, gamma, big_gamma)
  double t_max = 2.0;
  double threshold = 1e-5;  // pass bound on the max relative moment error
};

struct OracleReport {
  double max_rel_error = 0.0;
  std::vector<std::pair<double, double>> per_time;  // (t, relative error)
  int cutoff = 0;
  double leakage = 0.0;       // worst leakage seen during the run
  double trace_drift = 0.0;   // worst |Tr rho - 1|
  double threshold = 1e-5;
  bool pass = false;
};

// Integrates the full master equation from a coherent state and compares the
// extracted moments against the banded-matrix propagation at every step.
// The relative error is measured against the largest moment magnitude at
// each time. Aborts with NumericError if the trace drifts beyond 1e-6.
OracleReport differential_test(const DimerParams& p, Complex alpha1, Complex alpha2, int order,
                               const FockConfig& cfg);

// Same comparison against an explicitly supplied evolution matrix, used to
// show the test rejects wrong band conventions.
OracleReport differential_test_against(const TridiagMatrix& m, const DimerParams& p,
                                       Complex alpha1, Complex alpha2, int order,
                                       const FockConfig& cfg);

}  // namespace synlat
