// Command-line front end: deterministic CSV/JSON emitters for spectra,
// eigenmodes, IPR scans, trajectories, phase diagrams, the oracle check and
// raw matrices. Exit codes: 0 success, 2 configuration or usage error,
// 3 numeric failure, 4 overflow, 5 oracle comparison failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "synlat/dynamics.hpp"
#include "synlat/fock.hpp"
#include "synlat/io.hpp"
#include "synlat/localization.hpp"
#include "synlat/matrices.hpp"
#include "synlat/spectral.hpp"
#include "synlat/types.hpp"

namespace {

using synlat::Complex;
using synlat::DimerParams;
using synlat::GeneralDimerParams;

nlohmann::json load_config(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  nlohmann::json cfg;
  try {
    in >> cfg;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("bad config file " + path + ": " + e.what());
  }
  if (!cfg.is_object()) throw std::invalid_argument("config root must be a JSON object: " + path);
  return cfg;
}

// Command-line flags win; otherwise the config value is used when present.
template <typename T>
void merge(const CLI::App& cmd, const nlohmann::json& cfg, const std::string& flag,
           const std::string& key, T& value) {
  if (cmd.count(flag) > 0 || !cfg.contains(key)) return;
  try {
    value = cfg.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config key '" + key + "': " + e.what());
  }
}

std::vector<double> make_grid(double lo, double hi, double step) {
  if (step <= 0.0) throw std::invalid_argument("grid step must be positive");
  if (hi < lo) throw std::invalid_argument("grid max must not be below grid min");
  const int count = int(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (int i = 0; i < count; ++i) grid.push_back(lo + i * step);
  return grid;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void require_out(const std::string& out) {
  if (out.empty()) throw std::invalid_argument("--out is required");
}

struct CommonOpts {
  std::string config;
  std::string out;
  int order = 1;
  double delta = 0.0;
  double gamma = 1.0;
  double big_gamma = 0.0;
  double grid_min = 0.0;
  double grid_max = 0.0;
  double grid_step = 0.0;
  double tol = 0.0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config, "JSON config file; flags override its keys");
  cmd->add_option("--out", o.out, "output file path");
  cmd->add_option("--order", o.order, "moment order N (matrix size N+1)");
  cmd->add_option("--delta", o.delta, "detuning delta");
  cmd->add_option("--gamma", o.gamma, "dissipative coupling gamma");
  cmd->add_option("--big-gamma", o.big_gamma, "local damping Gamma");
}

void merge_common(const CLI::App& cmd, const nlohmann::json& cfg, CommonOpts& o) {
  merge(cmd, cfg, "--out", "out", o.out);
  merge(cmd, cfg, "--order", "order", o.order);
  merge(cmd, cfg, "--delta", "delta", o.delta);
  merge(cmd, cfg, "--gamma", "gamma", o.gamma);
  merge(cmd, cfg, "--big-gamma", "big_gamma", o.big_gamma);
}

void add_grid(CLI::App* cmd, CommonOpts& o, const std::string& what) {
  cmd->add_option("--grid-min", o.grid_min, what + " grid start");
  cmd->add_option("--grid-max", o.grid_max, what + " grid end (inclusive)");
  cmd->add_option("--grid-step", o.grid_step, what + " grid step");
}

void merge_grid(const CLI::App& cmd, const nlohmann::json& cfg, CommonOpts& o) {
  merge(cmd, cfg, "--grid-min", "grid_min", o.grid_min);
  merge(cmd, cfg, "--grid-max", "grid_max", o.grid_max);
  merge(cmd, cfg, "--grid-step", "grid_step", o.grid_step);
}

DimerParams dimer_params(const CommonOpts& o) {
  DimerParams p;
  p.order = o.order;
  p.delta = o.delta;
  p.gamma = o.gamma;
  p.big_gamma = o.big_gamma;
  p.validate();
  return p;
}

int run_spectrum(const CLI::App& cmd, CommonOpts& o) {
  const nlohmann::json cfg = load_config(o.config);
  merge_common(cmd, cfg, o);
  merge_grid(cmd, cfg, o);
  require_out(o.out);

  const bool sweep = cmd.count("--grid-step") > 0 || cfg.contains("grid_step");
  if (sweep) {
    const std::vector<double> ratios = make_grid(o.grid_min, o.grid_max, o.grid_step);
    std::vector<synlat::io::SpectrumRow> rows;
    rows.reserve(ratios.size() * (o.order + 1));
    for (double r : ratios) {
      DimerParams p = dimer_params(o);
      p.delta = r * p.gamma;
      const std::vector<Complex> energies = synlat::eigenvalues(p);
      for (int k = 0; k <= p.order; ++k) rows.push_back({r, k, energies[k]});
    }
    synlat::io::write_file(o.out, synlat::io::spectrum_csv(rows));
  } else {
    synlat::io::write_file(o.out, synlat::io::single_spectrum_csv(synlat::eigenvalues(dimer_params(o))));
  }
  return 0;
}

int run_modes(const CLI::App& cmd, CommonOpts& o, std::string& report) {
  const nlohmann::json cfg = load_config(o.config);
  merge_common(cmd, cfg, o);
  merge(cmd, cfg, "--report", "report", report);
  require_out(o.out);

  const std::vector<synlat::EigenPair> modes = synlat::all_eigenvectors(dimer_params(o));
  synlat::io::write_file(o.out, synlat::io::eigenvector_csv(modes));
  if (!report.empty()) {
    std::vector<synlat::LocalizationReport> rows;
    rows.reserve(modes.size());
    for (const synlat::EigenPair& mode : modes)
      rows.push_back(synlat::classify_mode(mode.vector, mode.k));
    synlat::io::write_file(report, synlat::io::mode_report_csv(rows));
  }
  return 0;
}

int run_ipr(const CLI::App& cmd, CommonOpts& o, std::vector<int>& ks) {
  const nlohmann::json cfg = load_config(o.config);
  merge_common(cmd, cfg, o);
  merge_grid(cmd, cfg, o);
  merge(cmd, cfg, "--k", "k", ks);
  require_out(o.out);

  if (ks.empty())
    for (int k = 0; k <= o.order; ++k) ks.push_back(k);
  const std::vector<double> ratios = make_grid(o.grid_min, o.grid_max, o.grid_step);
  DimerParams base = dimer_params(o);
  synlat::io::write_file(o.out, synlat::io::ipr_csv(synlat::ipr_scan(base, ratios, ks)));
  return 0;
}

struct EvolveOpts {
  double alpha1_re = 1.0, alpha1_im = 0.0;
  double alpha2_re = 1.0, alpha2_im = 0.0;
  double t_max = 1.0;
  double dt = 0.01;
  std::string fit_out;
};

int run_evolve(const CLI::App& cmd, CommonOpts& o, EvolveOpts& e) {
  const nlohmann::json cfg = load_config(o.config);
  merge_common(cmd, cfg, o);
  merge(cmd, cfg, "--alpha1-re", "alpha1_re", e.alpha1_re);
  merge(cmd, cfg, "--alpha1-im", "alpha1_im", e.alpha1_im);
  merge(cmd, cfg, "--alpha2-re", "alpha2_re", e.alpha2_re);
  merge(cmd, cfg, "--alpha2-im", "alpha2_im", e.alpha2_im);
  merge(cmd, cfg, "--t-max", "t_max", e.t_max);
  merge(cmd, cfg, "--dt", "dt", e.dt);
  merge(cmd, cfg, "--fit-out", "fit_out", e.fit_out);
  double uniform_tol = o.tol > 0.0 ? o.tol : 0.01;
  merge(cmd, cfg, "--tol", "tol", uniform_tol);
  require_out(o.out);

  const DimerParams p = dimer_params(o);
  const synlat::TridiagMatrix m = synlat::build_moment_matrix(p);
  const synlat::MomentVector a0 = synlat::coherent_moments(
      Complex(e.alpha1_re, e.alpha1_im), Complex(e.alpha2_re, e.alpha2_im), p.order);
  const synlat::Trajectory traj = synlat::propagate(m, a0, e.t_max, e.dt);
  synlat::io::write_file(o.out, synlat::io::trajectory_csv(traj));
  if (!e.fit_out.empty()) {
    const synlat::RateFit fit = synlat::fit_component_rates(traj, uniform_tol);
    synlat::io::write_file(e.fit_out, synlat::io::fit_json(fit));
  }
  return 0;
}

struct PhaseOpts {
  double omega1 = 0.0;
  double omega2 = 2.0;
  double line_tol = 0.0;
};

int run_phase(const CLI::App& cmd, CommonOpts& o, PhaseOpts& ph) {
  const nlohmann::json cfg = load_config(o.config);
  merge_common(cmd, cfg, o);
  merge_grid(cmd, cfg, o);
  merge(cmd, cfg, "--omega1", "omega1", ph.omega1);
  merge(cmd, cfg, "--omega2", "omega2", ph.omega2);
  merge(cmd, cfg, "--line-tol", "line_tol", ph.line_tol);
  require_out(o.out);

  const std::vector<double> kappas = make_grid(o.grid_min, o.grid_max, o.grid_step);
  const std::vector<synlat::PhasePoint> table =
      synlat::phase_diagram_scan(ph.omega1, ph.omega2, o.order, kappas, kappas, ph.line_tol);
  synlat::io::write_file(o.out, synlat::io::phase_csv(table));
  return 0;
}

struct VerifyOpts {
  double alpha1_re = 0.3, alpha1_im = 0.0;
  double alpha2_re = 0.0, alpha2_im = 0.2;
  int cutoff = 10;
  double t_max = 2.0;
  double dt = 0.0;
};

int run_verify(const CLI::App& cmd, CommonOpts& o, VerifyOpts& v) {
  const nlohmann::json cfg = load_config(o.config);
  merge_common(cmd, cfg, o);
  merge(cmd, cfg, "--alpha1-re", "alpha1_re", v.alpha1_re);
  merge(cmd, cfg, "--alpha1-im", "alpha1_im", v.alpha1_im);
  merge(cmd, cfg, "--alpha2-re", "alpha2_re", v.alpha2_re);
  merge(cmd, cfg, "--alpha2-im", "alpha2_im", v.alpha2_im);
  merge(cmd, cfg, "--cutoff", "cutoff", v.cutoff);
  merge(cmd, cfg, "--t-max", "t_max", v.t_max);
  merge(cmd, cfg, "--dt", "dt", v.dt);
  double threshold = o.tol > 0.0 ? o.tol : 1e-5;
  merge(cmd, cfg, "--tol", "tol", threshold);

  const DimerParams p = dimer_params(o);
  synlat::FockConfig fc;
  fc.cutoff = v.cutoff;
  fc.dt = v.dt;
  fc.t_max = v.t_max;
  fc.threshold = threshold;
  const synlat::OracleReport report = synlat::differential_test(
      p, Complex(v.alpha1_re, v.alpha1_im), Complex(v.alpha2_re, v.alpha2_im), p.order, fc);
  if (!o.out.empty()) synlat::io::write_file(o.out, synlat::io::oracle_json(report));
  std::printf("%s max_rel_error=%s threshold=%s cutoff=%d leakage=%s\n",
              report.pass ? "PASS" : "FAIL", synlat::io::format_double(report.max_rel_error).c_str(),
              synlat::io::format_double(report.threshold).c_str(), report.cutoff,
              synlat::io::format_double(report.leakage).c_str());
  return report.pass ? 0 : 5;
}

struct BuildOpts {
  double omega1 = 0.0, omega2 = 0.0, kappa1 = 0.0, kappa2 = 0.0;
};

int run_build(const CLI::App& cmd, CommonOpts& o, BuildOpts& b) {
  const nlohmann::json cfg = load_config(o.config);
  merge_common(cmd, cfg, o);
  merge(cmd, cfg, "--omega1", "omega1", b.omega1);
  merge(cmd, cfg, "--omega2", "omega2", b.omega2);
  merge(cmd, cfg, "--kappa1", "kappa1", b.kappa1);
  merge(cmd, cfg, "--kappa2", "kappa2", b.kappa2);
  require_out(o.out);

  const bool general = cmd.count("--omega1") + cmd.count("--omega2") + cmd.count("--kappa1") +
                               cmd.count("--kappa2") >
                           0 ||
                       cfg.contains("kappa1");
  synlat::TridiagMatrix m(1);
  if (general) {
    GeneralDimerParams gp;
    gp.order = o.order;
    gp.omega1 = b.omega1;
    gp.omega2 = b.omega2;
    gp.kappa1 = b.kappa1;
    gp.kappa2 = b.kappa2;
    gp.validate();
    m = synlat::build_general_moment_matrix(gp);
  } else {
    m = synlat::build_moment_matrix(dimer_params(o));
  }
  if (ends_with(o.out, ".json"))
    synlat::io::write_file(o.out, synlat::io::matrix_json(m));
  else
    synlat::io::write_file(o.out, synlat::io::matrix_csv(m));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic moment-space lattice toolkit for the dissipative bosonic dimer"};
  app.require_subcommand(1);

  CommonOpts so;
  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalue sweep or single spectrum CSV");
  add_common(spectrum, so);
  add_grid(spectrum, so, "delta/gamma");

  CommonOpts mo;
  std::string modes_report;
  CLI::App* modes = app.add_subcommand("modes", "eigenvector components CSV");
  add_common(modes, mo);
  modes->add_option("--report", modes_report, "also write a per-mode classification CSV here");

  CommonOpts io_;
  std::vector<int> ipr_ks;
  CLI::App* ipr = app.add_subcommand("ipr", "IPR scan over delta/gamma CSV");
  add_common(ipr, io_);
  add_grid(ipr, io_, "delta/gamma");
  ipr->add_option("--k", ipr_ks, "mode indices to scan (default: all)");

  CommonOpts eo;
  EvolveOpts ev;
  CLI::App* evolve = app.add_subcommand("evolve", "moment trajectory CSV and optional rate-fit JSON");
  add_common(evolve, eo);
  evolve->add_option("--alpha1-re", ev.alpha1_re, "Re alpha1 of the coherent initial state");
  evolve->add_option("--alpha1-im", ev.alpha1_im, "Im alpha1");
  evolve->add_option("--alpha2-re", ev.alpha2_re, "Re alpha2");
  evolve->add_option("--alpha2-im", ev.alpha2_im, "Im alpha2");
  evolve->add_option("--t-max", ev.t_max, "evolution time");
  evolve->add_option("--dt", ev.dt, "sampling step");
  evolve->add_option("--fit-out", ev.fit_out, "write per-component rate fit JSON here");
  evolve->add_option("--tol", eo.tol, "uniform-rate tolerance for the fit");

  CommonOpts po;
  PhaseOpts ph;
  CLI::App* phase = app.add_subcommand("phase", "localization phase diagram CSV");
  add_common(phase, po);
  add_grid(phase, po, "kappa");
  phase->add_option("--omega1", ph.omega1, "frequency of mode 1");
  phase->add_option("--omega2", ph.omega2, "frequency of mode 2");
  phase->add_option("--line-tol", ph.line_tol, "distance treated as on a boundary line");

  CommonOpts vo;
  VerifyOpts vf;
  CLI::App* verify = app.add_subcommand("verify", "full master-equation oracle comparison");
  add_common(verify, vo);
  verify->add_option("--alpha1-re", vf.alpha1_re, "Re alpha1");
  verify->add_option("--alpha1-im", vf.alpha1_im, "Im alpha1");
  verify->add_option("--alpha2-re", vf.alpha2_re, "Re alpha2");
  verify->add_option("--alpha2-im", vf.alpha2_im, "Im alpha2");
  verify->add_option("--cutoff", vf.cutoff, "Fock cutoff per mode");
  verify->add_option("--t-max", vf.t_max, "comparison time span");
  verify->add_option("--dt", vf.dt, "integrator step (<= 0 selects automatically)");
  verify->add_option("--tol", vo.tol, "pass threshold on the max relative error");

  CommonOpts bo;
  BuildOpts bu;
  CLI::App* build = app.add_subcommand("build", "emit a moment matrix as JSON or dense CSV");
  add_common(build, bo);
  build->add_option("--omega1", bu.omega1, "general dimer: frequency of mode 1");
  build->add_option("--omega2", bu.omega2, "general dimer: frequency of mode 2");
  build->add_option("--kappa1", bu.kappa1, "general dimer: coupling 1");
  build->add_option("--kappa2", bu.kappa2, "general dimer: coupling 2");

  // verify's default parameter point is the stable-regime oracle run.
  vo.delta = 0.5;
  vo.gamma = 0.4;
  vo.big_gamma = 1.0;
  vo.order = 2;

  try {
    app.parse(argc, argv);
    if (*spectrum) return run_spectrum(*spectrum, so);
    if (*modes) return run_modes(*modes, mo, modes_report);
    if (*ipr) return run_ipr(*ipr, io_, ipr_ks);
    if (*evolve) return run_evolve(*evolve, eo, ev);
    if (*phase) return run_phase(*phase, po, ph);
    if (*verify) return run_verify(*verify, vo, vf);
    if (*build) return run_build(*build, bo, bu);
    std::cerr << "no subcommand given\n";
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const synlat::OverflowError& e) {
    std::cerr << "overflow: " << e.what() << "\n";
    return 4;
  } catch (const synlat::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
