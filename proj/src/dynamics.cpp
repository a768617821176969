#include "synlat/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace synlat {

namespace {

constexpr double kOverflowGuard = 1e120;

void check_entries(const ComplexVector& v, double t) {
  for (int i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (!std::isfinite(a))
      throw NumericError("propagate: non-finite entry at t = " + std::to_string(t));
    if (a > kOverflowGuard)
      throw OverflowError("propagate: entry magnitude exceeded 1e120 at t = " +
                          std::to_string(t));
  }
}

}  // namespace

MomentVector coherent_moments(Complex alpha1, Complex alpha2, int order) {
  if (order < 1) throw std::invalid_argument("coherent_moments: order must be >= 1");
  MomentVector a;
  a.order = order;
  a.entries.resize(order + 1);
  for (int j = 0; j <= order; ++j) {
    Complex v(1.0, 0.0);
    for (int q = 0; q < order - j; ++q) v *= alpha1;
    for (int q = 0; q < j; ++q) v *= alpha2;
    a.entries[j] = v;
  }
  return a;
}

Trajectory propagate(const TridiagMatrix& m, const MomentVector& a0, double t_max, double dt) {
  if (a0.entries.size() != m.n)
    throw std::invalid_argument("propagate: state size does not match matrix");
  if (dt <= 0.0 || t_max < 0.0) throw std::invalid_argument("propagate: bad time grid");

  const int steps = static_cast<int>(std::floor(t_max / dt + 1e-9));
  const DenseMatrix propagator = (m.dense() * dt).exp();

  Trajectory traj;
  traj.order = m.n - 1;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);

  ComplexVector state = a0.entries;
  check_entries(state, 0.0);
  traj.times.push_back(0.0);
  traj.states.push_back(state);
  for (int s = 1; s <= steps; ++s) {
    state = propagator * state;
    const double t = s * dt;
    check_entries(state, t);
    traj.times.push_back(t);
    traj.states.push_back(state);
  }
  return traj;
}

RateFit fit_component_rates(const Trajectory& traj, double uniform_tol) {
  const size_t samples = traj.times.size();
  if (samples < 3) throw std::invalid_argument("fit_component_rates: need at least 3 samples");
  const int n = traj.order + 1;

  RateFit fit;
  fit.tolerance = uniform_tol;
  fit.rates.assign(n, Complex(0.0, 0.0));

  double tbar = 0.0;
  for (double t : traj.times) tbar += t;
  tbar /= double(samples);
  double txx = 0.0;
  for (double t : traj.times) txx += (t - tbar) * (t - tbar);

  for (int j = 0; j < n; ++j) {
    double peak = 0.0;
    for (size_t s = 0; s < samples; ++s) peak = std::max(peak, std::abs(traj.states[s][j]));
    bool excluded = peak <= 0.0;
    if (!excluded) {
      for (size_t s = 0; s < samples; ++s) {
        if (std::abs(traj.states[s][j]) < 1e-12 * peak) {
          excluded = true;
          break;
        }
      }
    }
    if (excluded) {
      fit.excluded.push_back(j);
      continue;
    }

    // log magnitude directly, phase unwrapped through stepwise ratios
    std::vector<double> logmag(samples), phase(samples);
    logmag[0] = std::log(std::abs(traj.states[0][j]));
    phase[0] = std::arg(traj.states[0][j]);
    for (size_t s = 1; s < samples; ++s) {
      logmag[s] = std::log(std::abs(traj.states[s][j]));
      phase[s] = phase[s - 1] + std::arg(traj.states[s][j] / traj.states[s - 1][j]);
    }

    double mbar = 0.0, pbar = 0.0;
    for (size_t s = 0; s < samples; ++s) {
      mbar += logmag[s];
      pbar += phase[s];
    }
    mbar /= double(samples);
    pbar /= double(samples);
    double num_m = 0.0, num_p = 0.0;
    for (size_t s = 0; s < samples; ++s) {
      num_m += (traj.times[s] - tbar) * (logmag[s] - mbar);
      num_p += (traj.times[s] - tbar) * (phase[s] - pbar);
    }
    fit.rates[j] = Complex(num_m / txx, num_p / txx);
  }

  int included = 0;
  Complex mean(0.0, 0.0);
  for (int j = 0; j < n; ++j) {
    if (std::find(fit.excluded.begin(), fit.excluded.end(), j) == fit.excluded.end()) {
      mean += fit.rates[j];
      ++included;
    }
  }
  if (included == 0) {
    fit.uniform = false;
    return fit;
  }
  mean /= double(included);
  const double scale = std::max(std::abs(mean), 1e-12);
  fit.uniform = true;
  for (int j = 0; j < n; ++j) {
    if (std::find(fit.excluded.begin(), fit.excluded.end(), j) != fit.excluded.end()) continue;
    if (std::abs(fit.rates[j] - mean) > uniform_tol * scale) fit.uniform = false;
  }
  return fit;
}

}  // namespace synlat
