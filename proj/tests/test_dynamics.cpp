#include <doctest.h>

#include <cmath>

#include "synlat/dynamics.hpp"
#include "synlat/matrices.hpp"
#include "synlat/spectral.hpp"

using namespace synlat;

namespace {

DimerParams dimer(double delta, double gamma, double big_gamma, int order) {
  DimerParams p;
  p.delta = delta;
  p.gamma = gamma;
  p.big_gamma = big_gamma;
  p.order = order;
  return p;
}

}  // namespace

TEST_CASE("coherent moments are monomials of the amplitudes") {
  const MomentVector m = coherent_moments(Complex(2, 0), Complex(3, 0), 2);
  REQUIRE(m.entries.size() == 3);
  CHECK(std::abs(m.entries[0] - Complex(4, 0)) < 1e-15);
  CHECK(std::abs(m.entries[1] - Complex(6, 0)) < 1e-15);
  CHECK(std::abs(m.entries[2] - Complex(9, 0)) < 1e-15);

  const MomentVector im = coherent_moments(Complex(1, 0), Complex(0, 1), 3);
  CHECK(std::abs(im.entries[3] - Complex(0, -1)) < 1e-15);

  CHECK_THROWS_AS(coherent_moments(Complex(1, 0), Complex(1, 0), 0), std::invalid_argument);
}

TEST_CASE("decoupled modes propagate with their exact exponentials") {
  // gamma = 0 leaves the matrix diagonal, so every entry is a pure exponential
  const DimerParams p = dimer(0.7, 0.0, 0.3, 4);
  const TridiagMatrix m = build_moment_matrix(p);
  const MomentVector a0 = coherent_moments(Complex(0.8, 0.1), Complex(-0.2, 0.4), 4);
  const Trajectory traj = propagate(m, a0, 1.0, 0.05);
  REQUIRE(traj.times.size() == 21);
  for (size_t s = 0; s < traj.times.size(); ++s) {
    const double t = traj.times[s];
    CHECK(t == doctest::Approx(0.05 * s).epsilon(1e-12));
    for (int j = 0; j <= 4; ++j) {
      const Complex expected = a0.entries[j] * std::exp(m.diag[j] * t);
      CHECK(std::abs(traj.states[s][j] - expected) < 1e-12);
    }
  }
}

TEST_CASE("two half steps equal one full step") {
  const DimerParams p = dimer(0.4, 1.0, 0.2, 6);
  const TridiagMatrix m = build_moment_matrix(p);
  const MomentVector a0 = coherent_moments(Complex(1, 0), Complex(-1, 0), 6);
  const Trajectory full = propagate(m, a0, 1.0, 0.1);
  const Trajectory half = propagate(m, a0, 1.0, 0.05);
  for (size_t s = 0; s < full.times.size(); ++s) {
    const ComplexVector diff = full.states[s] - half.states[2 * s];
    CHECK(diff.norm() <= 1e-12 * (1.0 + full.states[s].norm()));
  }
}

TEST_CASE("propagation is linear in the initial vector") {
  const DimerParams p = dimer(1.3, 1.0, 0.0, 5);
  const TridiagMatrix m = build_moment_matrix(p);
  const MomentVector a = coherent_moments(Complex(1, 0), Complex(0.3, -0.2), 5);
  const MomentVector b = coherent_moments(Complex(0.5, 0.5), Complex(-1, 0), 5);
  MomentVector mix;
  mix.order = 5;
  mix.entries = Complex(2, 1) * a.entries + Complex(0, -3) * b.entries;
  const Trajectory ta = propagate(m, a, 0.8, 0.1);
  const Trajectory tb = propagate(m, b, 0.8, 0.1);
  const Trajectory tmix = propagate(m, mix, 0.8, 0.1);
  for (size_t s = 0; s < tmix.times.size(); ++s) {
    const ComplexVector expected =
        Complex(2, 1) * ta.states[s] + Complex(0, -3) * tb.states[s];
    CHECK((tmix.states[s] - expected).norm() <= 1e-10 * (1.0 + expected.norm()));
  }
}

TEST_CASE("eigenvectors evolve by a scalar exponential") {
  // Contamination by the fastest mode grows like e^(Re E_0 t) relative to a
  // decaying mode, so the absolute bound is meaningful only while
  // N sqrt(gamma^2 - delta^2) t stays moderate. All modes at order 3, the
  // dominant mode at order 6.
  {
    const DimerParams p = dimer(0.5, 1.0, 0.0, 3);
    const TridiagMatrix m = build_moment_matrix(p);
    for (int k : {0, 1, 2, 3}) {
      const EigenPair mode = analytic_eigenvector(p, k);
      MomentVector a0;
      a0.order = 3;
      a0.entries = mode.vector;
      const Trajectory traj = propagate(m, a0, 5.0, 0.25);
      for (size_t s = 0; s < traj.times.size(); ++s) {
        const ComplexVector expected = std::exp(mode.energy * traj.times[s]) * mode.vector;
        CHECK((traj.states[s] - expected).norm() <= 1e-8 * (1.0 + expected.norm()));
      }
    }
  }
  {
    const DimerParams p = dimer(0.5, 1.0, 0.0, 6);
    const TridiagMatrix m = build_moment_matrix(p);
    const EigenPair mode = analytic_eigenvector(p, 0);
    MomentVector a0;
    a0.order = 6;
    a0.entries = mode.vector;
    const Trajectory traj = propagate(m, a0, 5.0, 0.25);
    for (size_t s = 0; s < traj.times.size(); ++s) {
      const ComplexVector expected = std::exp(mode.energy * traj.times[s]) * mode.vector;
      CHECK((traj.states[s] - expected).norm() <= 1e-8 * (1.0 + expected.norm()));
    }
  }
}

TEST_CASE("stable damping makes every trajectory decay") {
  const DimerParams p = dimer(0.9, 0.5, 1.2, 5);
  const TridiagMatrix m = build_moment_matrix(p);
  const MomentVector a0 = coherent_moments(Complex(1, 0), Complex(0, 1), 5);
  const Trajectory traj = propagate(m, a0, 6.0, 0.05);
  double prev = -1.0;
  for (size_t s = 0; s < traj.times.size(); ++s) {
    const double peak = traj.states[s].cwiseAbs().maxCoeff();
    if (traj.times[s] >= 2.0 / p.big_gamma && prev >= 0.0) CHECK(peak <= prev * (1.0 + 1e-12));
    if (traj.times[s] >= 2.0 / p.big_gamma) prev = peak;
  }
}

TEST_CASE("runaway growth trips the overflow guard") {
  const DimerParams p = dimer(0.0, 10.0, 0.0, 9);
  const TridiagMatrix m = build_moment_matrix(p);
  const MomentVector a0 = coherent_moments(Complex(1, 0), Complex(-1, 0), 9);
  CHECK_THROWS_AS(propagate(m, a0, 4.0, 0.05), OverflowError);
}

TEST_CASE("propagate validates its grid and initial vector") {
  const TridiagMatrix m = build_moment_matrix(dimer(0.1, 1.0, 0.0, 3));
  MomentVector bad;
  bad.order = 2;
  bad.entries = ComplexVector::Ones(3);
  CHECK_THROWS_AS(propagate(m, bad, 1.0, 0.1), std::invalid_argument);
  const MomentVector a0 = coherent_moments(Complex(1, 0), Complex(1, 0), 3);
  CHECK_THROWS_AS(propagate(m, a0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(propagate(m, a0, -1.0, 0.1), std::invalid_argument);
}

TEST_CASE("rate fit recovers a uniform growth rate on an eigenstate") {
  const double gamma = 1.0;
  const DimerParams p = dimer(0.0, gamma, 0.0, 9);
  const TridiagMatrix m = build_moment_matrix(p);

  // alpha2/alpha1 = -1 aligns the coherent moments with the fastest-growing mode
  const MomentVector grow = coherent_moments(Complex(1, 0), Complex(-1, 0), 9);
  const RateFit gf = fit_component_rates(propagate(m, grow, 1.0, 0.01), 0.01);
  CHECK(gf.uniform);
  CHECK(gf.excluded.empty());
  for (const Complex& r : gf.rates) {
    CHECK(std::abs(r.real() - 9.0 * gamma) < 0.09 * gamma);
    CHECK(std::abs(r.imag()) < 0.09 * gamma);
  }

  // alpha2/alpha1 = +1 aligns with the fastest-decaying mode
  const RateFit df =
      fit_component_rates(propagate(m, coherent_moments(Complex(1, 0), Complex(1, 0), 9), 1.0, 0.01), 0.01);
  CHECK(df.uniform);
  for (const Complex& r : df.rates) CHECK(std::abs(r.real() + 9.0 * gamma) < 0.09 * gamma);
}

TEST_CASE("rate fit finds one oscillation frequency on a boundary eigenstate") {
  // past the degeneracy the boundary mode ratio is -i(2 - sqrt(3)) for delta = 2 gamma
  const DimerParams p = dimer(2.0, 1.0, 0.0, 9);
  const TridiagMatrix m = build_moment_matrix(p);
  const Complex ratio(0.0, -(2.0 - std::sqrt(3.0)));
  const MomentVector a0 = coherent_moments(Complex(1, 0), ratio, 9);
  const RateFit fit = fit_component_rates(propagate(m, a0, 1.0, 0.01), 0.01);
  CHECK(fit.uniform);
  const double expected = -9.0 * std::sqrt(3.0);
  for (const Complex& r : fit.rates) {
    CHECK(std::abs(r.imag() - expected) < 0.01 * std::abs(expected));
    CHECK(std::abs(r.real()) < 0.05);
  }
}

TEST_CASE("rate fit reports spread rates for a non-eigenstate") {
  const DimerParams p = dimer(2.0, 1.0, 0.0, 9);
  const TridiagMatrix m = build_moment_matrix(p);
  const MomentVector a0 = coherent_moments(Complex(1, 0), Complex(1, 0), 9);
  const RateFit fit = fit_component_rates(propagate(m, a0, 1.0, 0.01), 0.01);
  CHECK_FALSE(fit.uniform);
  double lo = 1e300, hi = -1e300;
  for (size_t j = 0; j < fit.rates.size(); ++j) {
    if (std::find(fit.excluded.begin(), fit.excluded.end(), int(j)) != fit.excluded.end())
      continue;
    lo = std::min(lo, fit.rates[j].imag());
    hi = std::max(hi, fit.rates[j].imag());
  }
  CHECK((hi - lo) > 0.1 * std::max(std::abs(lo), std::abs(hi)));
}

TEST_CASE("rate fit excludes identically vanishing components") {
  const DimerParams p = dimer(0.7, 0.0, 0.1, 4);
  const TridiagMatrix m = build_moment_matrix(p);
  // alpha2 = 0 zeroes every entry with j >= 1, and gamma = 0 keeps them zero
  const MomentVector a0 = coherent_moments(Complex(1, 0), Complex(0, 0), 4);
  const RateFit fit = fit_component_rates(propagate(m, a0, 1.0, 0.02), 0.01);
  REQUIRE(fit.excluded.size() == 4);
  CHECK(fit.excluded == std::vector<int>({1, 2, 3, 4}));
  CHECK(std::abs(fit.rates[0] - m.diag[0]) < 1e-8);
}

TEST_CASE("constant trajectories fit a zero rate") {
  TridiagMatrix zero(4);
  MomentVector a0;
  a0.order = 3;
  a0.entries = ComplexVector::Ones(4);
  const RateFit fit = fit_component_rates(propagate(zero, a0, 1.0, 0.1), 0.01);
  CHECK(fit.uniform);
  for (const Complex& r : fit.rates) CHECK(std::abs(r) < 1e-12);
}
