#pragma once

#include <string>
#include <vector>

#include "synlat/dynamics.hpp"
#include "synlat/fock.hpp"
#include "synlat/localization.hpp"
#include "synlat/spectral.hpp"
#include "synlat/types.hpp"

namespace synlat {
namespace io {

// All emitters build the complete file as a string: headers, 17-significant-
// digit floats, LF line endings, trailing newline. Byte-identical output for
// identical inputs.

std::string format_double(double x);

struct SpectrumRow {
  double delta_over_gamma = 0.0;
  int k = 0;
  Complex energy{0.0, 0.0};
};

// delta_over_gamma, k, re_E, im_E
std::string spectrum_csv(const std::vector<SpectrumRow>& rows);

// k, re_E, im_E (single parameter point)
std::string single_spectrum_csv(const std::vector<Complex>& energies);

// k, site, re, im, abs2
std::string eigenvector_csv(const std::vector<EigenPair>& modes);

// k, ipr, left_weight, right_weight, peak_site, mode_class
std::string mode_report_csv(const std::vector<LocalizationReport>& rows);

// delta_over_gamma, k, ipr
std::string ipr_csv(const std::vector<IprRow>& rows);

// t, j, re, im
std::string trajectory_csv(const Trajectory& traj);

// kappa1, kappa2, phase, on_EL
std::string phase_csv(const std::vector<PhasePoint>& rows);

// row, col, re, im over all dense entries
std::string matrix_csv(const TridiagMatrix& m);

// {"n": int, "diag": [[re,im],...], "sub": [...], "sup": [...]}
std::string matrix_json(const TridiagMatrix& m);

// {"rates": [[re,im],...], "excluded": [...], "uniform": bool, "tolerance": real}
std::string fit_json(const RateFit& fit);

// {"max_rel_error": real, "per_time": [[t,err],...], "cutoff": int,
//  "leakage": real, "trace_drift": real, "threshold": real, "pass": bool}
std::string oracle_json(const OracleReport& report);

// Writes the string verbatim (binary mode, no newline translation).
void write_file(const std::string& path, const std::string& content);

}  // namespace io
}  // namespace synlat
