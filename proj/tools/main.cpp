#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bregman/bregman_core.hpp"
#include "bregman/catalog.hpp"
#include "bregman/errors.hpp"
#include "bregman/io.hpp"
#include "bregman/oracle.hpp"
#include "bregman/proximal_average.hpp"
#include "bregman/transform.hpp"
#include "bregman/verify.hpp"

namespace {

using namespace bregman;

std::uint64_t seed_from_env() {
  if (const char* s = std::getenv("BREGMAN_SEED")) return std::strtoull(s, nullptr, 10);
  return 42;
}

Grid1D parse_grid(const std::string& s) {
  std::istringstream in(s);
  double lo, hi;
  long n;
  if (!(in >> lo >> hi >> n) || n < 2 || !(lo < hi))
    throw Error("bad --grid, expected \"lo hi n\": " + s);
  return Grid1D::linspace(lo, hi, n);
}

std::vector<double> parse_list(const std::string& s) {
  std::istringstream in(s);
  std::vector<double> out;
  for (double v; in >> v;) out.push_back(v);
  if (out.empty()) throw Error("empty numeric list: " + s);
  return out;
}

// Grids for envelope-type commands follow the kernel's domain.
Grid1D grid_for(const LegendreKernel& k, const std::string& gridflag) {
  std::istringstream in(gridflag);
  double lo, hi;
  long n;
  if (!(in >> lo >> hi >> n) || n < 2 || !(lo < hi))
    throw Error("bad --grid, expected \"lo hi n\": " + gridflag);
  return kernel_grid(k, lo, hi, n);
}

void emit(const SampledFunction& f, const std::string& out_path, bool json) {
  if (out_path.empty()) {
    std::cout << (json ? to_json(f) + "\n" : to_csv(f));
  } else if (json) {
    std::ofstream os(out_path);
    os << to_json(f) << "\n";
  } else {
    save_csv(f, out_path);
  }
}

std::string sweep_cell_name(double alpha, double lambda) {
  std::ostringstream os;
  os << "P_a" << alpha << "_l" << lambda << ".csv";
  return os.str();
}

int run(int argc, char** argv) {
  CLI::App app{"Bregman envelopes, proximal maps, and proximal averages of "
               "sampled functions"};
  app.require_subcommand(1);

  std::string kernel_name = "energy", grid_flag = "-5 5 1001";
  std::string fspec, f1spec, f2spec, out_path, dual_flag, outdir = ".";
  std::string suite = "all", setspec, side = "left";
  std::string alphas_flag = "0.5", lambdas_flag = "1";
  double lambda = 1.0, alpha = 0.5, at = 0.0;
  bool use_oracle = false, json_out = false, via_conjugate = false;
  bool has_at = false;

  auto add_common = [&](CLI::App* cmd, bool needs_kernel = true) {
    if (needs_kernel)
      cmd->add_option("--kernel", kernel_name,
                      "energy|boltzmann_shannon|burg_energy|cubic");
    cmd->add_option("--grid", grid_flag, "uniform grid \"lo hi n\"");
    cmd->add_flag("--oracle", use_oracle, "route through brute-force paths");
    cmd->add_flag("--json", json_out, "JSON output instead of CSV");
  };

  CLI::App* transform = app.add_subcommand("transform", "discrete Fenchel conjugate");
  transform->add_option("--f", fspec, "function specifier")->required();
  transform->add_option("--dual-grid", dual_flag, "dual grid \"lo hi n\"");
  transform->add_option("--out", out_path, "output file");
  add_common(transform, false);

  CLI::App* envelope_cmd = app.add_subcommand("envelope", "Bregman envelope");
  envelope_cmd->add_option("--f", fspec)->required();
  envelope_cmd->add_option("--lambda", lambda);
  envelope_cmd->add_option("--side", side, "left|right");
  envelope_cmd->add_option("--at", at, "print the value at one base point");
  envelope_cmd->add_flag("--via-conjugate", via_conjugate);
  envelope_cmd->add_option("--out", out_path);
  add_common(envelope_cmd);

  CLI::App* prox_cmd = app.add_subcommand("prox", "Bregman proximal set");
  prox_cmd->add_option("--f", fspec)->required();
  prox_cmd->add_option("--lambda", lambda);
  prox_cmd->add_option("--at", at, "base point")->required();
  add_common(prox_cmd);

  CLI::App* hull_cmd = app.add_subcommand("hull", "proximal hull");
  hull_cmd->add_option("--f", fspec)->required();
  hull_cmd->add_option("--lambda", lambda);
  hull_cmd->add_option("--out", out_path);
  add_common(hull_cmd);

  CLI::App* average_cmd = app.add_subcommand("average", "Bregman proximal average");
  average_cmd->add_option("--f1", f1spec)->required();
  average_cmd->add_option("--f2", f2spec)->required();
  average_cmd->add_option("--alpha", alpha);
  average_cmd->add_option("--lambda", lambda);
  average_cmd->add_option("--dual-grid", dual_flag);
  average_cmd->add_option("--out", out_path);
  add_common(average_cmd);

  CLI::App* project_cmd = app.add_subcommand("project", "Bregman projection");
  project_cmd->add_option("--set", setspec,
                          "\"interval a b\" or \"points p1 p2 ...\"")
      ->required();
  project_cmd->add_option("--lambda", lambda);
  project_cmd->add_option("--at", at, "base point")->required();
  add_common(project_cmd);

  CLI::App* threshold_cmd = app.add_subcommand("threshold", "prox-bound threshold");
  threshold_cmd->add_option("--f", fspec)->required();
  add_common(threshold_cmd);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "(alpha, lambda) sweep");
  sweep_cmd->add_option("--f1", f1spec)->required();
  sweep_cmd->add_option("--f2", f2spec)->required();
  sweep_cmd->add_option("--alphas", alphas_flag, "e.g. \"0.3 0.5 0.7\"");
  sweep_cmd->add_option("--lambdas", lambdas_flag, "e.g. \"0.1 1 10\"");
  sweep_cmd->add_option("--outdir", outdir);
  add_common(sweep_cmd);

  CLI::App* verify_cmd = app.add_subcommand("verify", "run the verification suite");
  verify_cmd->add_option("--suite", suite, "kernels|grid|core|average|all");
  verify_cmd->add_option("--kernel", kernel_name,
                         "restrict kernel-parametrized families");
  verify_cmd->add_option("--out", out_path, "write report.json here");
  verify_cmd->add_flag("--oracle", use_oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.get_name() << ": " << e.what() << "\n";
    return 1;
  }
  has_at = envelope_cmd->count("--at") > 0;

  if (transform->parsed()) {
    Grid1D grid = parse_grid(grid_flag);
    SampledFunction f = build_function(fspec, grid);
    Grid1D dual = dual_flag.empty() ? default_dual_grid(f) : parse_grid(dual_flag);
    SampledFunction out = use_oracle ? oracle::brute_conjugate(f, dual)
                                     : legendre_transform(f, dual);
    emit(out, out_path, json_out);
    return 0;
  }

  if (envelope_cmd->parsed()) {
    LegendreKernel k = kernel(kernel_name);
    Grid1D grid = grid_for(k, grid_flag);
    SampledFunction f = build_function(fspec, grid);
    SampledFunction env =
        use_oracle ? oracle::brute_envelope(f, k, lambda, grid)
        : via_conjugate ? envelope_via_conjugate(f, k, lambda)
        : bregman::envelope(f, k, lambda,
                            side == "right" ? EnvelopeSide::kRight
                                            : EnvelopeSide::kLeft);
    if (has_at) {
      std::printf("%.12g\n", env.value(grid.nearest(at)));
      return 0;
    }
    emit(env, out_path, json_out);
    return 0;
  }

  if (prox_cmd->parsed()) {
    LegendreKernel k = kernel(kernel_name);
    Grid1D grid = grid_for(k, grid_flag);
    ProxSet set = prox(build_function(fspec, grid), k, lambda, at);
    std::cout << to_json(set) << "\n";
    return 0;
  }

  if (hull_cmd->parsed()) {
    LegendreKernel k = kernel(kernel_name);
    Grid1D grid = grid_for(k, grid_flag);
    emit(prox_hull(build_function(fspec, grid), k, lambda), out_path, json_out);
    return 0;
  }

  if (average_cmd->parsed()) {
    LegendreKernel k = kernel(kernel_name);
    Grid1D grid = grid_for(k, grid_flag);
    AverageSpec spec{build_function(f1spec, grid), build_function(f2spec, grid),
                     alpha, lambda, k, std::nullopt};
    if (!dual_flag.empty()) spec.dual_grid = parse_grid(dual_flag);
    for (const auto& w : validate(spec).warnings) std::cerr << "warning: " << w << "\n";
    SampledFunction P =
        use_oracle ? proximal_average_oracle(spec) : proximal_average(spec);
    emit(P, out_path, json_out);
    return 0;
  }

  if (project_cmd->parsed()) {
    LegendreKernel k = kernel(kernel_name);
    Grid1D grid = grid_for(k, grid_flag);
    std::istringstream in(setspec);
    std::string kind;
    in >> kind;
    std::vector<std::pair<double, double>> C;
    if (kind == "interval") {
      double a, b;
      if (!(in >> a >> b)) throw Error("interval needs two endpoints");
      C.emplace_back(a, b);
    } else if (kind == "points") {
      for (double p; in >> p;) C.emplace_back(p, p);
      if (C.empty()) throw Error("points needs at least one value");
    } else {
      throw Error("unknown set kind: " + kind);
    }
    std::cout << to_json(bregman_project(grid, C, k, lambda, at)) << "\n";
    return 0;
  }

  if (threshold_cmd->parsed()) {
    LegendreKernel k = kernel(kernel_name);
    Grid1D grid = grid_for(k, grid_flag);
    std::cout << to_json(prox_bound_threshold(build_function(fspec, grid), k))
              << "\n";
    return 0;
  }

  if (sweep_cmd->parsed()) {
    LegendreKernel k = kernel(kernel_name);
    Grid1D grid = grid_for(k, grid_flag);
    AverageSpec tmpl{build_function(f1spec, grid), build_function(f2spec, grid),
                     0.5, 1.0, k, std::nullopt};
    SweepOptions so;
    so.use_oracle = use_oracle;
    SweepResult result =
        sweep(tmpl, parse_list(alphas_flag), parse_list(lambdas_flag), so);
    std::filesystem::create_directories(outdir);
    for (const auto& cell : result.cells)
      save_csv(cell.average,
               (std::filesystem::path(outdir) /
                sweep_cell_name(cell.alpha, cell.lambda))
                   .string());
    std::ofstream rep(std::filesystem::path(outdir) / "report.json");
    rep << to_json(result.reports) << "\n";
    for (const auto& r : result.reports)
      if (!r.pass) return 2;
    return 0;
  }

  if (verify_cmd->parsed()) {
    verify::Options vo;
    vo.use_oracle = use_oracle;
    vo.rng_seed = seed_from_env();
    if (verify_cmd->count("--kernel")) vo.kernel_filter = kernel_name;
    auto criteria = verify::run_suite(suite, vo);
    std::vector<VerificationReport> all;
    bool ok = true;
    for (const auto& c : criteria) {
      std::printf("[%s] %s\n", c.pass() ? "PASS" : "FAIL", c.name.c_str());
      for (const auto& r : c.reports) {
        std::printf("    [%s] %s sup_error=%.3g tol=%.3g\n",
                    r.pass ? "pass" : "FAIL", r.identity.c_str(), r.sup_error,
                    r.tolerance);
        all.push_back(r);
      }
      ok = ok && c.pass();
    }
    if (!out_path.empty()) {
      std::ofstream os(out_path);
      os << to_json(all) << "\n";
    }
    return ok ? 0 : 2;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
