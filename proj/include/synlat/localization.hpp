#pragma once

#include <vector>

#include "synlat/spectral.hpp"
#include "synlat/types.hpp"

namespace synlat {

// Inverse participation ratio sum|v_i|^4 / (sum|v_i|^2)^2, in [1/n, 1].
// Scale and gauge invariant; rejects the zero vector.
double ipr(const ComplexVector& v);

enum class ModeClass { extended, left_edge, right_edge, bulk_site, center_delocalized };

const char* mode_class_name(ModeClass c);

// c1: extended when ipr < c1 / n
// c2: edge when the outer-window weight exceeds c2
// c3: bulk-site when ipr > c3 with the peak strictly inside the chain
struct ClassifyThresholds {
  double c1 = 2.0;
  double c2 = 0.8;
  double c3 = 0.5;
};

struct LocalizationReport {
  int k = -1;
  double ipr = 0.0;
  double left_weight = 0.0;   // probability mass on the outer max(2, ceil(n/10)) left sites
  double right_weight = 0.0;  // same for the right window
  int peak_site = 0;
  ModeClass mode_class = ModeClass::extended;
  int bulk_index = -1;  // peak site when classified bulk_site
};

// Deterministic classification. Checks run in the order extended, bulk_site,
// edge, center_delocalized; an interior-peaked tightly localized mode is a
// bulk site even when its peak falls inside an edge window, while true skin
// modes peak at the boundary sites and classify as edges.
LocalizationReport classify_mode(const ComplexVector& v, int k = -1,
                                 const ClassifyThresholds& thresholds = {});

struct IprRow {
  double delta_over_gamma = 0.0;
  int k = 0;
  double ipr = 0.0;
};

// IPR of the analytic eigenvectors over a delta/gamma grid; grid points at
// the degeneracy (within 1e-12) use the coalesced vector. Rows ordered
// grid-major, then by k.
std::vector<IprRow> ipr_scan(const DimerParams& base, const std::vector<double>& delta_over_gamma,
                             const std::vector<int>& ks);

// Diagonal similarity transforms built from band ratios,
//   S[jj] = prod_{k<=j} sqrt(X[k][k-1] / X[k-1][k]),   S[00] = 1,
// for the balanced reference matrix (s1) and the asymmetric one (s2);
// t = s2 / s1 renormalized to max |t_jj| = 1. Rejects vanishing bands.
struct SimilarityTransforms {
  ComplexVector s1, s2, t;
};

SimilarityTransforms similarity_transforms(const TridiagMatrix& m_pt, const TridiagMatrix& l);

// Eigenmodes of the general dimer moment matrix, obtained by mapping the
// balanced-form eigenvectors through the diagonal squeezing transform
// T_jj = (kappa2 / g)^j with g = sqrt(kappa1 kappa2). Eigenvalues are
// i N (omega1 + omega2) / 2 + (N - 2k) sqrt(kappa1 kappa2 - omega^2).
// kappa1 kappa2 < 0 is served through the principal branch and flagged
// ill_conditioned; on the exceptional surface all modes coalesce.
std::vector<EigenPair> general_eigenmodes(const GeneralDimerParams& p);

enum class Phase { I, II, III, IV, boundary };

const char* phase_name(Phase ph);

struct PhasePoint {
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double omega1 = 0.0;
  double omega2 = 0.0;
  Phase phase = Phase::boundary;
  bool on_exceptional_surface = false;
};

// Localization phase of the general dimer:
//   I   every mode right-localized
//   II  every mode left-localized
//   III majority right-localized, mode k = N still left
//   IV  majority left-localized, mode k = 0 still right
// A mode's side is the comparison of its half-chain masses, which flips
// exactly on the kappa1 = kappa2 line and, for the last edge modes, on
// |kappa1 + kappa2| = 2|omega|. Points within line_tol of either curve are
// labeled boundary. Requires omega != 0 and kappa1 kappa2 > 0.
PhasePoint phase_classify(const GeneralDimerParams& p, double line_tol = 0.0);

std::vector<PhasePoint> phase_diagram_scan(double omega1, double omega2, int order,
                                           const std::vector<double>& kappa1_grid,
                                           const std::vector<double>& kappa2_grid,
                                           double line_tol);

}  // namespace synlat
