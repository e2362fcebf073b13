#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bregman/io.hpp"

namespace {

const std::string kBin = BREGMAN_CLI_PATH;
const std::string kTmp = BREGMAN_TEST_TMPDIR;

int run(const std::string& args, const std::string& stdout_file = "") {
  std::string cmd = kBin + " " + args;
  if (!stdout_file.empty()) cmd += " > " + stdout_file;
  cmd += " 2> " + kTmp + "/stderr.txt";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("average subcommand reproduces the cubic example") {
  std::string out = kTmp + "/P.csv";
  int rc = run("average --kernel cubic --f1 \"indicator_point 1\" "
               "--f2 \"quad 0 0 0\" --alpha 0.5 --lambda 1 "
               "--grid \" -2 2 4001\" --out " + out);
  CHECK(rc == 0);
  bregman::SampledFunction P = bregman::load_csv(out);
  Eigen::Index i = P.grid().nearest(0.5);
  CHECK(std::abs(P.value(i) - 0.375) <= 5e-3);
}

TEST_CASE("envelope --at prints the Burg golden value") {
  std::string out = kTmp + "/env_at.txt";
  int rc = run("envelope --kernel burg_energy --f \"indicator_point 1\" "
               "--lambda 1 --grid \"0.25 4 121\" --at 2", out);
  CHECK(rc == 0);
  double v = std::stod(slurp(out));
  CHECK(std::abs(v - std::log(2.0)) <= 1e-6);
}

TEST_CASE("byte-identical outputs across repeated runs") {
  std::string a = kTmp + "/t1.csv", b = kTmp + "/t2.csv";
  std::string args = "transform --f \"abs shift 0.3\" --grid \" -3 3 501\" --out ";
  CHECK(run(args + a) == 0);
  CHECK(run(args + b) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
}

TEST_CASE("oracle rerouting leaves results in tolerance") {
  std::string a = kTmp + "/f.csv", b = kTmp + "/fo.csv";
  std::string args =
      "envelope --kernel energy --f \"abs\" --grid \" -3 3 301\" --out ";
  CHECK(run(args + a) == 0);
  CHECK(run(args + b + " --oracle") == 0);
  CHECK(slurp(a) == slurp(b));  // envelope oracle is the same scan
}

TEST_CASE("prox and threshold emit JSON") {
  std::string out = kTmp + "/prox.json";
  CHECK(run("prox --kernel energy --f \"abs\" --lambda 1 "
            "--grid \" -4 4 801\" --at 2", out) == 0);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["y"] == 2.0);
  CHECK(j["intervals"].size() == 1);
  CHECK(std::abs(j["intervals"][0][0].get<double>() - 1.0) <= 1e-9);

  CHECK(run("threshold --kernel energy --f \"quad -1 0 0\" "
            "--grid \" -10 10 2001\"", out) == 0);
  auto t = nlohmann::json::parse(slurp(out));
  CHECK(std::abs(t["lower_certified"].get<double>() - 0.5) <= 0.025);

  CHECK(run("project --kernel boltzmann_shannon --set \"interval 1 2\" "
            "--lambda 1 --grid \"0.1 4 391\" --at 3", out) == 0);
  auto p = nlohmann::json::parse(slurp(out));
  CHECK(std::abs(p["intervals"][0][0].get<double>() - 2.0) <= 1e-6);
}

TEST_CASE("sweep writes per-cell CSVs and a report") {
  std::string dir = kTmp + "/sweep_out";
  int rc = run("sweep --kernel energy --f1 \"abs shift 1\" "
               "--f2 \"abs shift -1\" --alphas \"0.5\" --lambdas \"0.1 1\" "
               "--grid \" -4 4 401\" --outdir " + dir);
  CHECK(rc == 0);
  CHECK(!slurp(dir + "/P_a0.5_l1.csv").empty());
  CHECK(!slurp(dir + "/P_a0.5_l0.1.csv").empty());
  auto reports = nlohmann::json::parse(slurp(dir + "/report.json"));
  CHECK(reports.is_array());
  CHECK(reports.size() >= 3);
  for (const auto& r : reports) CHECK(r["pass"] == true);
}

TEST_CASE("hull and right envelope smoke") {
  std::string out = kTmp + "/hull.csv";
  CHECK(run("hull --kernel energy --f \"indicator_finite -1 1\" --lambda 1 "
            "--grid \" -2 2 401\" --out " + out) == 0);
  bregman::SampledFunction hull = bregman::load_csv(out);
  CHECK(std::abs(hull.value(hull.grid().nearest(0.0)) - 0.5) <= 1e-9);
  CHECK(run("envelope --kernel burg_energy --f \"indicator_point 1\" "
            "--side right --grid \"0.25 4 121\" --at 2", out) == 0);
}

TEST_CASE("verify subcommand runs suites") {
  CHECK(run("verify --suite kernels") == 0);
  CHECK(run("verify --suite kernels --oracle") == 0);
  CHECK(run("verify --suite core --kernel energy") == 0);
  CHECK(run("verify --suite nonsense") == 1);
}

TEST_CASE("failed verification reports exit with code 2") {
  // f1 = f2 makes the average the hull at every alpha, so the strict
  // alpha-trend check ties and fails.
  std::string dir = kTmp + "/sweep_tie";
  int rc = run("sweep --kernel energy --f1 \"indicator_finite -1 1\" "
               "--f2 \"indicator_finite -1 1\" --alphas \"0.3 0.1\" "
               "--lambdas \"1\" --grid \" -3 3 301\" --outdir " + dir);
  CHECK(rc == 2);
}

TEST_CASE("usage errors exit with code 1 and a diagnostic") {
  CHECK(run("envelope --kernel energy") == 1);  // missing --f
  CHECK(!slurp(kTmp + "/stderr.txt").empty());
  CHECK(run("average --f1 abs --f2 abs --kernel unknown_kernel "
            "--grid \" -1 1 11\"") == 1);
  CHECK(run("") == 1);
}
