#pragma once

#include <vector>

#include "synlat/types.hpp"

namespace synlat {

// Moment vector of a two-mode coherent state, entry j = alpha1^(N-j) alpha2^j.
struct MomentVector {
  int order = 0;
  ComplexVector entries;
};

MomentVector coherent_moments(Complex alpha1, Complex alpha2, int order);

struct Trajectory {
  int order = 0;
  std::vector<double> times;           // uniform grid m * dt, m = 0..steps
  std::vector<ComplexVector> states;   // one moment vector per time
};

// Linear propagation d/dt A = M A sampled on a uniform grid. The single-step
// propagator exp(M dt) is formed once by scaling-and-squaring and reapplied.
// Throws OverflowError as soon as any entry magnitude exceeds 1e120.
Trajectory propagate(const TridiagMatrix& m, const MomentVector& a0, double t_max, double dt);

struct RateFit {
  std::vector<Complex> rates;   // per-component least-squares exponent
  std::vector<int> excluded;    // components whose magnitude collapses to zero
  bool uniform = false;         // all fitted rates agree within the tolerance
  double tolerance = 0.0;
};

// Per-component fit entry_j(t) ~ exp(rate_j t + c_j): real part from the log
// magnitude, imaginary part from the unwrapped phase. Components whose
// magnitude dips below 1e-12 of their own maximum are excluded and reported.
// Requires |Im rate| dt < pi for the unwrap to stay faithful.
RateFit fit_component_rates(const Trajectory& traj, double uniform_tol = 0.01);

}  // namespace synlat
