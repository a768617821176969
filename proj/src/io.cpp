#include "synlat/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace synlat {
namespace io {

namespace {

using nlohmann::json;

json complex_pair(Complex z) { return json::array({z.real(), z.imag()}); }

json complex_list(const std::vector<Complex>& zs) {
  json arr = json::array();
  for (Complex z : zs) arr.push_back(complex_pair(z));
  return arr;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string spectrum_csv(const std::vector<SpectrumRow>& rows) {
  std::string out = "delta_over_gamma,k,re_E,im_E\n";
  for (const SpectrumRow& r : rows) {
    out += format_double(r.delta_over_gamma);
    out += ',';
    out += std::to_string(r.k);
    out += ',';
    out += format_double(r.energy.real());
    out += ',';
    out += format_double(r.energy.imag());
    out += '\n';
  }
  return out;
}

std::string single_spectrum_csv(const std::vector<Complex>& energies) {
  std::string out = "k,re_E,im_E\n";
  for (size_t k = 0; k < energies.size(); ++k) {
    out += std::to_string(k);
    out += ',';
    out += format_double(energies[k].real());
    out += ',';
    out += format_double(energies[k].imag());
    out += '\n';
  }
  return out;
}

std::string eigenvector_csv(const std::vector<EigenPair>& modes) {
  std::string out = "k,site,re,im,abs2\n";
  for (const EigenPair& mode : modes) {
    for (int site = 0; site < mode.vector.size(); ++site) {
      const Complex z = mode.vector[site];
      out += std::to_string(mode.k);
      out += ',';
      out += std::to_string(site);
      out += ',';
      out += format_double(z.real());
      out += ',';
      out += format_double(z.imag());
      out += ',';
      out += format_double(std::norm(z));
      out += '\n';
    }
  }
  return out;
}

std::string mode_report_csv(const std::vector<LocalizationReport>& rows) {
  std::string out = "k,ipr,left_weight,right_weight,peak_site,mode_class\n";
  for (const LocalizationReport& r : rows) {
    out += std::to_string(r.k);
    out += ',';
    out += format_double(r.ipr);
    out += ',';
    out += format_double(r.left_weight);
    out += ',';
    out += format_double(r.right_weight);
    out += ',';
    out += std::to_string(r.peak_site);
    out += ',';
    out += mode_class_name(r.mode_class);
    out += '\n';
  }
  return out;
}

std::string ipr_csv(const std::vector<IprRow>& rows) {
  std::string out = "delta_over_gamma,k,ipr\n";
  for (const IprRow& r : rows) {
    out += format_double(r.delta_over_gamma);
    out += ',';
    out += std::to_string(r.k);
    out += ',';
    out += format_double(r.ipr);
    out += '\n';
  }
  return out;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t,j,re,im\n";
  for (size_t s = 0; s < traj.times.size(); ++s) {
    const ComplexVector& state = traj.states[s];
    for (int j = 0; j < state.size(); ++j) {
      out += format_double(traj.times[s]);
      out += ',';
      out += std::to_string(j);
      out += ',';
      out += format_double(state[j].real());
      out += ',';
      out += format_double(state[j].imag());
      out += '\n';
    }
  }
  return out;
}

std::string phase_csv(const std::vector<PhasePoint>& rows) {
  std::string out = "kappa1,kappa2,phase,on_EL\n";
  for (const PhasePoint& r : rows) {
    out += format_double(r.kappa1);
    out += ',';
    out += format_double(r.kappa2);
    out += ',';
    out += phase_name(r.phase);
    out += ',';
    out += r.on_exceptional_surface ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string matrix_csv(const TridiagMatrix& m) {
  const DenseMatrix dense = m.dense();
  std::string out = "row,col,re,im\n";
  for (int r = 0; r < m.n; ++r) {
    for (int c = 0; c < m.n; ++c) {
      out += std::to_string(r);
      out += ',';
      out += std::to_string(c);
      out += ',';
      out += format_double(dense(r, c).real());
      out += ',';
      out += format_double(dense(r, c).imag());
      out += '\n';
    }
  }
  return out;
}

std::string matrix_json(const TridiagMatrix& m) {
  json j;
  j["n"] = m.n;
  j["diag"] = complex_list(m.diag);
  j["sub"] = complex_list(m.sub);
  j["sup"] = complex_list(m.sup);
  return dump(j);
}

std::string fit_json(const RateFit& fit) {
  json j;
  j["rates"] = complex_list(fit.rates);
  j["excluded"] = fit.excluded;
  j["uniform"] = fit.uniform;
  j["tolerance"] = fit.tolerance;
  return dump(j);
}

std::string oracle_json(const OracleReport& report) {
  json j;
  j["max_rel_error"] = report.max_rel_error;
  json per_time = json::array();
  for (const auto& [t, err] : report.per_time) per_time.push_back(json::array({t, err}));
  j["per_time"] = per_time;
  j["cutoff"] = report.cutoff;
  j["leakage"] = report.leakage;
  j["trace_drift"] = report.trace_drift;
  j["threshold"] = report.threshold;
  j["pass"] = report.pass;
  return dump(j);
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), std::streamsize(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace io
}  // namespace synlat
