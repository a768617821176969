#include "synlat/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace synlat {

namespace detail {

Complex principal_alpha(const DimerParams& p) {
  return std::sqrt(Complex(p.gamma * p.gamma - p.delta * p.delta, 0.0));
}

double ep_relative_distance(const DimerParams& p) {
  if (p.gamma == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(p.delta - p.gamma) / p.gamma;
}

// Divide by the largest magnitude first so the squared norm cannot overflow
// for strongly graded vectors, then fix the gauge: unit 2-norm with the
// largest-magnitude component (first on ties) real positive.
void normalize_gauge(ComplexVector& v) {
  int imax = 0;
  double best = -1.0;
  for (int i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best) {
      best = a;
      imax = i;
    }
  }
  if (best <= 0.0 || !std::isfinite(best))
    throw NumericError("normalize_gauge: vector is zero or non-finite");
  v /= best;
  v /= (v[imax] / std::abs(v[imax]));
  v /= v.norm();
}

std::vector<double> binom_row(int n) {
  std::vector<double> c(n + 1);
  c[0] = 1.0;
  for (int a = 0; a < n; ++a) c[a + 1] = c[a] * (n - a) / (a + 1);
  return c;
}

}  // namespace detail

std::vector<Complex> eigenvalues(const DimerParams& p) {
  p.validate();
  const int N = p.order;
  const Complex alpha = detail::principal_alpha(p);
  const double shift = N * p.big_gamma;
  std::vector<Complex> e(N + 1);
  for (int k = 0; k <= N; ++k) e[k] = double(N - 2 * k) * alpha - shift;
  return e;
}

EigenPair ep_eigenvector(const DimerParams& p) {
  p.validate();
  if (detail::ep_relative_distance(p) > 1e-12)
    throw std::invalid_argument("ep_eigenvector: requires delta = gamma");
  const int n = p.sites();
  EigenPair pair;
  pair.k = 0;
  pair.energy = Complex(-double(p.order) * p.big_gamma, 0.0);
  pair.degeneracy = n;
  pair.ill_conditioned = true;
  pair.vector.resize(n);
  const Complex ratio(0.0, -1.0);
  Complex c(1.0, 0.0);
  for (int j = 0; j < n; ++j) {
    pair.vector[j] = c;
    c *= ratio;
  }
  pair.vector /= std::sqrt(double(n));
  return pair;
}

EigenPair analytic_eigenvector(const DimerParams& p, int k) {
  p.validate();
  const int N = p.order;
  if (k < 0 || k > N) throw std::invalid_argument("analytic_eigenvector: k out of range");
  if (p.gamma <= 0.0)
    throw std::invalid_argument("analytic_eigenvector: gamma must be positive");

  const double ep_dist = detail::ep_relative_distance(p);
  if (ep_dist <= 1e-12) {
    EigenPair pair = ep_eigenvector(p);
    pair.k = k;
    return pair;
  }

  const Complex alpha = detail::principal_alpha(p);
  const Complex s_ratio = (alpha - Complex(0.0, p.delta)) / p.gamma;
  const Complex mt_ratio = -(alpha + Complex(0.0, p.delta)) / p.gamma;

  std::vector<Complex> spow(k + 1), tpow(N + 1);
  spow[0] = Complex(1.0, 0.0);
  for (int a = 1; a <= k; ++a) spow[a] = spow[a - 1] * s_ratio;
  tpow[0] = Complex(1.0, 0.0);
  for (int b = 1; b <= N; ++b) tpow[b] = tpow[b - 1] * mt_ratio;

  EigenPair pair;
  pair.k = k;
  pair.energy = double(N - 2 * k) * alpha - N * p.big_gamma;
  pair.ill_conditioned = ep_dist < 1e-6;
  pair.vector.resize(N + 1);
  for (int i = 0; i <= N; ++i) {
    const auto ci = detail::binom_row(i);
    const auto cni = detail::binom_row(N - i);
    const int a_lo = std::max(0, k + i - N);
    const int a_hi = std::min(i, k);
    Complex acc(0.0, 0.0);
    for (int a = a_lo; a <= a_hi; ++a) acc += ci[a] * cni[k - a] * spow[a] * tpow[i - a];
    pair.vector[i] = acc;
  }
  detail::normalize_gauge(pair.vector);
  return pair;
}

std::vector<EigenPair> all_eigenvectors(const DimerParams& p) {
  std::vector<EigenPair> modes;
  modes.reserve(p.sites());
  for (int k = 0; k <= p.order; ++k) modes.push_back(analytic_eigenvector(p, k));
  return modes;
}

std::pair<EigenPair, EigenPair> edge_modes(const DimerParams& p) {
  p.validate();
  if (p.gamma <= 0.0) throw std::invalid_argument("edge_modes: gamma must be positive");
  const int N = p.order;
  if (detail::ep_relative_distance(p) <= 1e-12) {
    EigenPair ep = ep_eigenvector(p);
    EigenPair ep2 = ep;
    ep2.k = N;
    return {ep, ep2};
  }

  const Complex alpha = detail::principal_alpha(p);
  const Complex ratio_right = -(alpha + Complex(0.0, p.delta)) / p.gamma;  // k = 0
  const Complex ratio_left = (alpha - Complex(0.0, p.delta)) / p.gamma;    // k = N

  auto geometric = [&](int k, const Complex& ratio) {
    EigenPair pair;
    pair.k = k;
    pair.energy = double(N - 2 * k) * alpha - N * p.big_gamma;
    pair.ill_conditioned = detail::ep_relative_distance(p) < 1e-6;
    pair.vector.resize(N + 1);
    Complex c(1.0, 0.0);
    for (int j = 0; j <= N; ++j) {
      pair.vector[j] = c;
      c *= ratio;
    }
    detail::normalize_gauge(pair.vector);
    return pair;
  };
  return {geometric(0, ratio_right), geometric(N, ratio_left)};
}

DenseMatrix effective_hamiltonian(const DimerParams& p) {
  p.validate();
  DenseMatrix h(2, 2);
  h(0, 0) = Complex(p.delta, -p.big_gamma);
  h(0, 1) = Complex(0.0, -p.gamma);
  h(1, 0) = Complex(0.0, -p.gamma);
  h(1, 1) = Complex(-p.delta, -p.big_gamma);
  return h;
}

Z2Result z2_invariant(const DimerParams& p) {
  p.validate();
  if (p.big_gamma != 0.0)
    throw std::invalid_argument("z2_invariant: requires big_gamma = 0");

  const int n = p.sites();
  Z2Result r;
  r.at_exceptional_point = detail::ep_relative_distance(p) <= 1e-12;
  r.applicable = (n % 2 == 0) && ((n / 2) % 2 == 1) && !r.at_exceptional_point;

  if (n % 2 == 1 || r.at_exceptional_point) return r;  // zero mode or coalescence: det = 0

  Complex det(1.0, 0.0);
  for (const Complex& e : eigenvalues(p)) det *= e;
  if (std::abs(det.imag()) > 1e-6 * std::abs(det.real()))
    throw NumericError("z2_invariant: determinant is not numerically real");
  r.nu = det.real() > 0.0 ? 1 : -1;
  return r;
}

}  // namespace synlat
