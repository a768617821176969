#include "synlat/localization.hpp"

#include <algorithm>
#include <cmath>

#include "synlat/matrices.hpp"

namespace synlat {

namespace {

std::vector<double> site_weights(const ComplexVector& v) {
  const int n = static_cast<int>(v.size());
  if (n == 0) throw std::invalid_argument("empty vector");
  double norm2 = 0.0;
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) {
    const double a = std::abs(v[i]);
    w[i] = a * a;
    norm2 += w[i];
  }
  if (norm2 <= 0.0 || !std::isfinite(norm2))
    throw std::invalid_argument("zero or non-finite vector");
  for (double& x : w) x /= norm2;
  return w;
}

}  // namespace

double ipr(const ComplexVector& v) {
  double acc = 0.0;
  for (double w : site_weights(v)) acc += w * w;
  return acc;
}

const char* mode_class_name(ModeClass c) {
  switch (c) {
    case ModeClass::extended: return "extended";
    case ModeClass::left_edge: return "left_edge";
    case ModeClass::right_edge: return "right_edge";
    case ModeClass::bulk_site: return "bulk_site";
    case ModeClass::center_delocalized: return "center_delocalized";
  }
  return "unknown";
}

LocalizationReport classify_mode(const ComplexVector& v, int k,
                                 const ClassifyThresholds& thresholds) {
  const auto w = site_weights(v);
  const int n = static_cast<int>(w.size());
  const int window = std::max(2, (n + 9) / 10);

  LocalizationReport rep;
  rep.k = k;
  for (double x : w) rep.ipr += x * x;
  for (int i = 0; i < std::min(window, n); ++i) rep.left_weight += w[i];
  for (int i = std::max(0, n - window); i < n; ++i) rep.right_weight += w[i];
  rep.peak_site = static_cast<int>(std::max_element(w.begin(), w.end()) - w.begin());

  if (rep.ipr < thresholds.c1 / n) {
    rep.mode_class = ModeClass::extended;
  } else if (rep.ipr > thresholds.c3 && rep.peak_site > 0 && rep.peak_site < n - 1) {
    rep.mode_class = ModeClass::bulk_site;
    rep.bulk_index = rep.peak_site;
  } else if (rep.right_weight > thresholds.c2 && rep.right_weight >= rep.left_weight) {
    rep.mode_class = ModeClass::right_edge;
  } else if (rep.left_weight > thresholds.c2) {
    rep.mode_class = ModeClass::left_edge;
  } else {
    rep.mode_class = ModeClass::center_delocalized;
  }
  return rep;
}

std::vector<IprRow> ipr_scan(const DimerParams& base, const std::vector<double>& delta_over_gamma,
                             const std::vector<int>& ks) {
  base.validate();
  if (base.gamma <= 0.0) throw std::invalid_argument("ipr_scan: gamma must be positive");
  for (size_t i = 1; i < delta_over_gamma.size(); ++i)
    if (delta_over_gamma[i] <= delta_over_gamma[i - 1])
      throw std::invalid_argument("ipr_scan: grid must be strictly increasing");
  std::vector<IprRow> rows;
  rows.reserve(delta_over_gamma.size() * ks.size());
  for (double ratio : delta_over_gamma) {
    DimerParams p = base;
    p.delta = ratio * base.gamma;
    const bool at_ep = std::abs(ratio - 1.0) <= 1e-12;
    for (int k : ks) {
      const EigenPair mode = at_ep ? ep_eigenvector(p) : analytic_eigenvector(p, k);
      rows.push_back({ratio, k, ipr(mode.vector)});
    }
  }
  return rows;
}

SimilarityTransforms similarity_transforms(const TridiagMatrix& m_pt, const TridiagMatrix& l) {
  if (m_pt.n != l.n) throw std::invalid_argument("similarity_transforms: size mismatch");
  const int n = m_pt.n;
  if (n < 2) throw std::invalid_argument("similarity_transforms: need n >= 2");
  for (int j = 0; j + 1 < n; ++j) {
    if (m_pt.sub[j] == Complex(0.0, 0.0) || m_pt.sup[j] == Complex(0.0, 0.0) ||
        l.sub[j] == Complex(0.0, 0.0) || l.sup[j] == Complex(0.0, 0.0))
      throw std::invalid_argument("similarity_transforms: vanishing band entry");
  }

  SimilarityTransforms out;
  out.s1.resize(n);
  out.s2.resize(n);
  out.t.resize(n);
  out.s1[0] = out.s2[0] = Complex(1.0, 0.0);
  for (int j = 1; j < n; ++j) {
    out.s1[j] = out.s1[j - 1] * std::sqrt(m_pt.sub[j - 1] / m_pt.sup[j - 1]);
    out.s2[j] = out.s2[j - 1] * std::sqrt(l.sub[j - 1] / l.sup[j - 1]);
  }
  double tmax = 0.0;
  for (int j = 0; j < n; ++j) {
    out.t[j] = out.s2[j] / out.s1[j];
    tmax = std::max(tmax, std::abs(out.t[j]));
  }
  if (tmax <= 0.0 || !std::isfinite(tmax))
    throw NumericError("similarity_transforms: degenerate squeezing transform");
  for (int j = 0; j < n; ++j) out.t[j] /= tmax;
  return out;
}

std::vector<EigenPair> general_eigenmodes(const GeneralDimerParams& p) {
  p.validate();
  if (p.kappa1 == 0.0 || p.kappa2 == 0.0)
    throw std::invalid_argument("general_eigenmodes: vanishing coupling");

  const int N = p.order;
  const double omega = p.omega();
  const double product = p.kappa1 * p.kappa2;
  const Complex g = std::sqrt(Complex(product, 0.0));
  const Complex alpha = std::sqrt(Complex(product - omega * omega, 0.0));
  const Complex drift(0.0, 0.5 * N * (p.omega1 + p.omega2));
  const bool complex_coupling = product < 0.0;

  const double surface_scale = std::max({std::abs(product), omega * omega, 1e-300});
  const bool on_surface = std::abs(product - omega * omega) <= 1e-12 * surface_scale;

  // Balanced-form first-order eigenvector ratios; both collapse to the same
  // value on the exceptional surface, which is exactly the coalescence.
  const Complex gamma_c = -g;
  const Complex s_ratio = (alpha - Complex(0.0, omega)) / gamma_c;
  const Complex mt_ratio = -(alpha + Complex(0.0, omega)) / gamma_c;
  const Complex t_step = p.kappa2 / g;

  std::vector<Complex> spow(N + 1), tpow(N + 1), squeeze(N + 1);
  spow[0] = tpow[0] = squeeze[0] = Complex(1.0, 0.0);
  for (int a = 1; a <= N; ++a) {
    spow[a] = spow[a - 1] * s_ratio;
    tpow[a] = tpow[a - 1] * mt_ratio;
    squeeze[a] = squeeze[a - 1] * t_step;
  }

  std::vector<double> binom(N + 1);
  binom[0] = 1.0;

  std::vector<EigenPair> modes;
  modes.reserve(N + 1);
  for (int k = 0; k <= N; ++k) {
    EigenPair mode;
    mode.k = k;
    mode.energy = drift + double(N - 2 * k) * alpha;
    mode.ill_conditioned = complex_coupling || on_surface;
    mode.degeneracy = on_surface ? N + 1 : 1;
    mode.vector.resize(N + 1);
    for (int i = 0; i <= N; ++i) {
      const int a_lo = std::max(0, k + i - N);
      const int a_hi = std::min(i, k);
      Complex acc(0.0, 0.0);
      // C(i, a) and C(N - i, k - a) rebuilt per site; sizes stay tiny
      for (int a = a_lo; a <= a_hi; ++a) {
        double ci = 1.0, cni = 1.0;
        for (int q = 0; q < a; ++q) ci = ci * (i - q) / (q + 1);
        for (int q = 0; q < k - a; ++q) cni = cni * (N - i - q) / (q + 1);
        acc += ci * cni * spow[a] * tpow[i - a];
      }
      mode.vector[i] = squeeze[i] * acc;
    }
    detail::normalize_gauge(mode.vector);
    modes.push_back(std::move(mode));
  }
  return modes;
}

const char* phase_name(Phase ph) {
  switch (ph) {
    case Phase::I: return "I";
    case Phase::II: return "II";
    case Phase::III: return "III";
    case Phase::IV: return "IV";
    case Phase::boundary: return "boundary";
  }
  return "unknown";
}

PhasePoint phase_classify(const GeneralDimerParams& p, double line_tol) {
  p.validate();
  const double omega = p.omega();
  if (omega == 0.0) throw std::invalid_argument("phase_classify: omega must be nonzero");
  if (p.kappa1 * p.kappa2 <= 0.0)
    throw std::invalid_argument("phase_classify: requires kappa1 kappa2 > 0");

  PhasePoint point;
  point.kappa1 = p.kappa1;
  point.kappa2 = p.kappa2;
  point.omega1 = p.omega1;
  point.omega2 = p.omega2;

  const double dw = p.omega1 - p.omega2;
  const double es_scale = std::max({dw * dw, 4.0 * std::abs(p.kappa1 * p.kappa2), 1e-300});
  point.on_exceptional_surface = std::abs(dw * dw - 4.0 * p.kappa1 * p.kappa2) <= 1e-9 * es_scale;

  const double pt_line = std::abs(p.kappa1 - p.kappa2);
  const double detach_line = std::abs(std::abs(p.kappa1 + p.kappa2) - 2.0 * std::abs(omega));
  if (pt_line <= line_tol || detach_line <= line_tol) {
    point.phase = Phase::boundary;
    return point;
  }

  const auto modes = general_eigenmodes(p);
  const int n = static_cast<int>(modes.size());
  const int half = n / 2;
  int rights = 0;
  std::vector<bool> right_side(n);
  for (int k = 0; k < n; ++k) {
    const auto w = site_weights(modes[k].vector);
    double left_mass = 0.0, right_mass = 0.0;
    for (int i = 0; i < half; ++i) left_mass += w[i];
    for (int i = n - half; i < n; ++i) right_mass += w[i];
    right_side[k] = right_mass > left_mass;
    if (right_side[k]) ++rights;
  }

  if (rights == n) {
    point.phase = Phase::I;
  } else if (rights == 0) {
    point.phase = Phase::II;
  } else if (2 * rights > n && !right_side[n - 1]) {
    point.phase = Phase::III;
  } else if (2 * (n - rights) > n && right_side[0]) {
    point.phase = Phase::IV;
  } else {
    point.phase = Phase::boundary;
  }
  return point;
}

std::vector<PhasePoint> phase_diagram_scan(double omega1, double omega2, int order,
                                           const std::vector<double>& kappa1_grid,
                                           const std::vector<double>& kappa2_grid,
                                           double line_tol) {
  std::vector<PhasePoint> points;
  points.reserve(kappa1_grid.size() * kappa2_grid.size());
  for (double k1 : kappa1_grid) {
    for (double k2 : kappa2_grid) {
      GeneralDimerParams p;
      p.omega1 = omega1;
      p.omega2 = omega2;
      p.kappa1 = k1;
      p.kappa2 = k2;
      p.order = order;
      points.push_back(phase_classify(p, line_tol));
    }
  }
  return points;
}

}  // namespace synlat
