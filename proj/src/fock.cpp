#include "synlat/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "synlat/matrices.hpp"

namespace synlat {

namespace {

// a1 |n1,n2> = sqrt(n1) |n1-1,n2> and a2 |n1,n2> = sqrt(n2) |n1,n2-1>,
// flat index n1 * (cutoff + 1) + n2. One nonzero per column.
SparseCMatrix mode_annihilation(int cutoff, bool first_mode) {
  const int d = cutoff + 1;
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(d * d);
  for (int n1 = 0; n1 < d; ++n1)
    for (int n2 = 0; n2 < d; ++n2) {
      if (first_mode && n1 > 0)
        entries.emplace_back((n1 - 1) * d + n2, n1 * d + n2, Complex(std::sqrt(double(n1)), 0.0));
      if (!first_mode && n2 > 0)
        entries.emplace_back(n1 * d + (n2 - 1), n1 * d + n2, Complex(std::sqrt(double(n2)), 0.0));
    }
  SparseCMatrix a(d * d, d * d);
  a.setFromTriplets(entries.begin(), entries.end());
  return a;
}

void require_cutoff(Complex alpha, int cutoff) {
  const double a = std::abs(alpha);
  if (a * a + 6.0 * a + 4.0 > double(cutoff))
    throw std::invalid_argument("coherent_density_matrix: cutoff too small for amplitude");
}

}  // namespace

DensityMatrix coherent_density_matrix(Complex alpha1, Complex alpha2, int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("coherent_density_matrix: cutoff must be >= 1");
  require_cutoff(alpha1, cutoff);
  require_cutoff(alpha2, cutoff);

  const int d = cutoff + 1;
  auto mode_amplitudes = [&](Complex alpha) {
    ComplexVector c(d);
    Complex term(1.0, 0.0);
    for (int n = 0; n < d; ++n) {
      c[n] = term;
      term *= alpha / std::sqrt(double(n + 1));
    }
    c /= c.norm();
    return c;
  };

  const ComplexVector c1 = mode_amplitudes(alpha1);
  const ComplexVector c2 = mode_amplitudes(alpha2);
  ComplexVector psi(d * d);
  for (int n1 = 0; n1 < d; ++n1)
    for (int n2 = 0; n2 < d; ++n2) psi[n1 * d + n2] = c1[n1] * c2[n2];

  DensityMatrix rho;
  rho.cutoff = cutoff;
  rho.rho = psi * psi.adjoint();
  return rho;
}

LindbladIntegrator::LindbladIntegrator(const DimerParams& p, int cutoff) : cutoff_(cutoff) {
  p.validate();
  if (cutoff < 1) throw std::invalid_argument("LindbladIntegrator: cutoff must be >= 1");
  gamma_ = p.gamma;
  big_gamma_ = p.big_gamma;

  a1_ = mode_annihilation(cutoff, true);
  a2_ = mode_annihilation(cutoff, false);

  const SparseCMatrix n1 = SparseCMatrix(a1_.adjoint()) * a1_;
  const SparseCMatrix n2 = SparseCMatrix(a2_.adjoint()) * a2_;
  const SparseCMatrix hop = SparseCMatrix(a2_.adjoint()) * a1_ + SparseCMatrix(a1_.adjoint()) * a2_;
  drift_ = Complex(0.0, -1.0) * p.delta * (n1 - n2).eval() - big_gamma_ * (n1 + n2).eval() -
           gamma_ * hop;
  drift_adj_ = drift_.adjoint();
  jump1_ = 2.0 * big_gamma_ * SparseCMatrix(a1_.adjoint()) + 2.0 * gamma_ * SparseCMatrix(a2_.adjoint());
  jump2_ = 2.0 * big_gamma_ * SparseCMatrix(a2_.adjoint()) + 2.0 * gamma_ * SparseCMatrix(a1_.adjoint());
}

DenseMatrix LindbladIntegrator::rhs(const DenseMatrix& rho) const {
  DenseMatrix out = drift_ * rho + rho * drift_adj_;
  if (big_gamma_ != 0.0 || gamma_ != 0.0) {
    const DenseMatrix r1 = a1_ * rho;
    const DenseMatrix r2 = a2_ * rho;
    out.noalias() += r1 * jump1_;
    out.noalias() += r2 * jump2_;
  }
  return out;
}

void LindbladIntegrator::step(DenseMatrix& rho, double dt) const {
  const DenseMatrix k1 = rhs(rho);
  const DenseMatrix k2 = rhs(rho + (0.5 * dt) * k1);
  const DenseMatrix k3 = rhs(rho + (0.5 * dt) * k2);
  const DenseMatrix k4 = rhs(rho + dt * k3);
  rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double LindbladIntegrator::leakage(const DenseMatrix& rho) const {
  const int d = cutoff_ + 1;
  double pop = 0.0;
  for (int n1 = 0; n1 < d; ++n1)
    for (int n2 = 0; n2 < d; ++n2)
      if (n1 >= cutoff_ - 1 || n2 >= cutoff_ - 1)
        pop += std::abs(rho(n1 * d + n2, n1 * d + n2));
  return pop;
}

void lindblad_step(DensityMatrix& rho, const DimerParams& p, double dt) {
  LindbladIntegrator(p, rho.cutoff).step(rho.rho, dt);
}

MomentVector extract_moments(const DensityMatrix& rho, int order) {
  if (order < 1) throw std::invalid_argument("extract_moments: order must be >= 1");
  if (order > rho.cutoff)
    throw std::invalid_argument("extract_moments: order exceeds the Fock cutoff");

  // Tr[rho a1^p a2^q] = sum over n1 >= p, n2 >= q of
  //   rho(n1 - p, n2 - q; n1, n2) sqrt(n1!/(n1-p)!) sqrt(n2!/(n2-q)!).
  const int d = rho.cutoff + 1;
  auto coef = [](int n, int p) {
    double c = 1.0;
    for (int m = n; m > n - p; --m) c *= double(m);
    return std::sqrt(c);
  };

  MomentVector m;
  m.order = order;
  m.entries.resize(order + 1);
  for (int j = 0; j <= order; ++j) {
    const int p = order - j, q = j;
    Complex sum(0.0, 0.0);
    for (int n1 = p; n1 < d; ++n1)
      for (int n2 = q; n2 < d; ++n2)
        sum += rho.rho(n1 * d + n2, (n1 - p) * d + (n2 - q)) * coef(n1, p) * coef(n2, q);
    m.entries[j] = sum;
  }
  return m;
}

namespace {

OracleReport run_comparison(const TridiagMatrix& m, const DimerParams& p, Complex alpha1,
                            Complex alpha2, int order, const FockConfig& cfg) {
  if (cfg.t_max <= 0.0) throw std::invalid_argument("differential_test: t_max must be positive");
  const double max_rate = std::max({std::abs(p.delta), p.gamma, p.big_gamma, 1e-12});
  double dt = cfg.dt;
  if (dt <= 0.0) dt = 0.002 / max_rate;
  dt = std::min(dt, 0.01 / max_rate);
  const int steps = static_cast<int>(std::ceil(cfg.t_max / dt - 1e-9));

  DensityMatrix state = coherent_density_matrix(alpha1, alpha2, cfg.cutoff);
  const LindbladIntegrator integrator(p, cfg.cutoff);

  const MomentVector a0 = coherent_moments(alpha1, alpha2, order);
  const Trajectory banded = propagate(m, a0, steps * dt, dt);

  OracleReport report;
  report.cutoff = cfg.cutoff;
  report.threshold = cfg.threshold;
  report.per_time.reserve(steps + 1);

  for (int s = 0; s <= steps; ++s) {
    if (s > 0) integrator.step(state.rho, dt);
    const double t = s * dt;

    const double drift = state.trace_error();
    report.trace_drift = std::max(report.trace_drift, drift);
    if (drift > 1e-6)
      throw NumericError("differential_test: trace drift " + std::to_string(drift));
    report.leakage = std::max(report.leakage, integrator.leakage(state.rho));

    const MomentVector oracle = extract_moments(state, order);
    const ComplexVector& predicted = banded.states[s];
    double scale = 1e-300;
    for (int j = 0; j <= order; ++j)
      scale = std::max({scale, std::abs(oracle.entries[j]), std::abs(predicted[j])});
    double err = 0.0;
    for (int j = 0; j <= order; ++j)
      err = std::max(err, std::abs(oracle.entries[j] - predicted[j]) / scale);
    report.per_time.emplace_back(t, err);
    report.max_rel_error = std::max(report.max_rel_error, err);
  }
  report.pass = report.max_rel_error < report.threshold;
  return report;
}

}  // namespace

OracleReport differential_test(const DimerParams& p, Complex alpha1, Complex alpha2, int order,
                               const FockConfig& cfg) {
  DimerParams pm = p;
  pm.order = order;
  return run_comparison(build_moment_matrix(pm), p, alpha1, alpha2, order, cfg);
}

OracleReport differential_test_against(const TridiagMatrix& m, const DimerParams& p,
                                       Complex alpha1, Complex alpha2, int order,
                                       const FockConfig& cfg) {
  if (m.n != order + 1)
    throw std::invalid_argument("differential_test_against: matrix size does not match order");
  return run_comparison(m, p, alpha1, alpha2, order, cfg);
}

}  // namespace synlat
