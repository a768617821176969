#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "synlat/io.hpp"
#include "synlat/localization.hpp"
#include "synlat/matrices.hpp"

using namespace synlat;

namespace {

GeneralDimerParams general(double omega1, double omega2, double kappa1, double kappa2,
                           int order) {
  GeneralDimerParams p;
  p.omega1 = omega1;
  p.omega2 = omega2;
  p.kappa1 = kappa1;
  p.kappa2 = kappa2;
  p.order = order;
  return p;
}

}  // namespace

TEST_CASE("doubles render with full precision") {
  CHECK(io::format_double(0.5) == "0.5");
  CHECK(io::format_double(2.0) == "2");
  CHECK(io::format_double(-2.25) == "-2.25");
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  // round trip
  CHECK(std::stod(io::format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("spectrum tables") {
  std::vector<io::SpectrumRow> rows;
  rows.push_back({0.5, 0, Complex(2.0, 0.0)});
  rows.push_back({0.5, 1, Complex(0.0, -0.25)});
  CHECK(io::spectrum_csv(rows) ==
        "delta_over_gamma,k,re_E,im_E\n"
        "0.5,0,2,0\n"
        "0.5,1,0,-0.25\n");

  CHECK(io::single_spectrum_csv({Complex(1.5, 0.0), Complex(0.0, 0.0)}) ==
        "k,re_E,im_E\n"
        "0,1.5,0\n"
        "1,0,0\n");
}

TEST_CASE("eigenvector and classification tables") {
  EigenPair mode;
  mode.k = 1;
  mode.vector = ComplexVector(2);
  mode.vector << Complex(0.5, -0.25), Complex(0.0, 1.0);
  CHECK(io::eigenvector_csv({mode}) ==
        "k,site,re,im,abs2\n"
        "1,0,0.5,-0.25,0.3125\n"
        "1,1,0,1,1\n");

  LocalizationReport r;
  r.k = 3;
  r.ipr = 0.25;
  r.left_weight = 0.5;
  r.right_weight = 0.125;
  r.peak_site = 4;
  r.mode_class = ModeClass::center_delocalized;
  CHECK(io::mode_report_csv({r}) ==
        "k,ipr,left_weight,right_weight,peak_site,mode_class\n"
        "3,0.25,0.5,0.125,4,center_delocalized\n");
}

TEST_CASE("ipr, trajectory and phase tables") {
  CHECK(io::ipr_csv({{0.5, 0, 0.25}, {1.5, 2, 1.0}}) ==
        "delta_over_gamma,k,ipr\n"
        "0.5,0,0.25\n"
        "1.5,2,1\n");

  Trajectory traj;
  traj.order = 1;
  traj.times = {0.0, 0.5};
  traj.states.resize(2, ComplexVector(2));
  traj.states[0] << Complex(1.0, 0.0), Complex(0.0, 0.0);
  traj.states[1] << Complex(0.25, 0.0), Complex(0.0, -0.5);
  CHECK(io::trajectory_csv(traj) ==
        "t,j,re,im\n"
        "0,0,1,0\n"
        "0,1,0,0\n"
        "0.5,0,0.25,0\n"
        "0.5,1,0,-0.5\n");

  PhasePoint pt;
  pt.kappa1 = 0.5;
  pt.kappa2 = 2.0;
  pt.phase = Phase::III;
  pt.on_exceptional_surface = false;
  PhasePoint flagged = pt;
  flagged.phase = Phase::boundary;
  flagged.on_exceptional_surface = true;
  CHECK(io::phase_csv({pt, flagged}) ==
        "kappa1,kappa2,phase,on_EL\n"
        "0.5,2,III,0\n"
        "0.5,2,boundary,1\n");
}

TEST_CASE("dense matrix table") {
  const TridiagMatrix m = build_general_moment_matrix(general(0.0, 2.0, 1.0, 1.0, 1));
  CHECK(io::matrix_csv(m) ==
        "row,col,re,im\n"
        "0,0,0,0\n"
        "0,1,1,0\n"
        "1,0,1,0\n"
        "1,1,0,2\n");
}

TEST_CASE("matrix json round trip") {
  const TridiagMatrix m = build_general_moment_matrix(general(0.5, 2.0, 1.5, 0.25, 2));
  const nlohmann::json j = nlohmann::json::parse(io::matrix_json(m));
  CHECK(j.at("n").get<int>() == 3);
  REQUIRE(j.at("diag").size() == 3);
  REQUIRE(j.at("sub").size() == 2);
  REQUIRE(j.at("sup").size() == 2);
  for (int i = 0; i < 3; ++i) {
    CHECK(j["diag"][i][0].get<double>() == m.diag[i].real());
    CHECK(j["diag"][i][1].get<double>() == m.diag[i].imag());
  }
  for (int i = 0; i < 2; ++i) {
    CHECK(j["sub"][i][0].get<double>() == m.sub[i].real());
    CHECK(j["sup"][i][0].get<double>() == m.sup[i].real());
  }
}

TEST_CASE("fit and oracle reports serialize to json") {
  RateFit fit;
  fit.rates = {Complex(9.0, 0.0), Complex(0.0, -15.5)};
  fit.excluded = {3};
  fit.uniform = true;
  fit.tolerance = 0.01;
  const nlohmann::json jf = nlohmann::json::parse(io::fit_json(fit));
  CHECK(jf.at("rates")[0][0].get<double>() == 9.0);
  CHECK(jf.at("rates")[1][1].get<double>() == -15.5);
  CHECK(jf.at("excluded")[0].get<int>() == 3);
  CHECK(jf.at("uniform").get<bool>());
  CHECK(jf.at("tolerance").get<double>() == 0.01);

  OracleReport rep;
  rep.max_rel_error = 2.5e-7;
  rep.per_time = {{0.0, 0.0}, {0.5, 2.5e-7}};
  rep.cutoff = 10;
  rep.leakage = 1e-12;
  rep.trace_drift = 3e-13;
  rep.threshold = 1e-5;
  rep.pass = true;
  const nlohmann::json jo = nlohmann::json::parse(io::oracle_json(rep));
  CHECK(jo.at("max_rel_error").get<double>() == 2.5e-7);
  CHECK(jo.at("per_time").size() == 2);
  CHECK(jo.at("per_time")[1][0].get<double>() == 0.5);
  CHECK(jo.at("cutoff").get<int>() == 10);
  CHECK(jo.at("pass").get<bool>());
}

TEST_CASE("files are written verbatim with LF endings") {
  const std::string content = "a,b\n1,2\n";
  const std::string path =
      (std::filesystem::temp_directory_path() / "synlat_io_test.csv").string();
  io::write_file(path, content);
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == content);
  CHECK(buf.str().find('\r') == std::string::npos);
  std::remove(path.c_str());

  CHECK_THROWS(io::write_file("/dev/null/out.csv", content));
}

TEST_CASE("identical inputs produce identical bytes") {
  DimerParams p;
  p.order = 8;
  p.gamma = 1.0;
  const std::vector<double> grid = {0.25, 0.75, 1.25};
  const std::string once = io::ipr_csv(ipr_scan(p, grid, {0, 4}));
  const std::string twice = io::ipr_csv(ipr_scan(p, grid, {0, 4}));
  CHECK(once == twice);
  CHECK(once.back() == '\n');
}
