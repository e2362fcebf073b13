#include "bregman/verify.hpp"

#include <cmath>
#include <functional>
#include <random>

#include "bregman/bregman_core.hpp"
#include "bregman/catalog.hpp"
#include "bregman/errors.hpp"
#include "bregman/oracle.hpp"
#include "bregman/proximal_average.hpp"
#include "bregman/transform.hpp"

namespace bregman {
namespace verify {

namespace {

SampledFunction point_indicator(const Grid1D& grid, double p) {
  Eigen::ArrayXd v = Eigen::ArrayXd::Constant(grid.size(), kInf);
  v[grid.nearest(p)] = 0.0;
  return SampledFunction(grid, std::move(v), "ind{" + std::to_string(p) + "}");
}

SampledFunction sample(const Grid1D& grid,
                       const std::function<double(double)>& f,
                       const std::string& label) {
  return SampledFunction::from_callable(grid, f, label);
}

SampledFunction env_of(const SampledFunction& f, const LegendreKernel& k,
                       double lambda, const Options& opt) {
  return opt.use_oracle ? oracle::brute_envelope(f, k, lambda, f.grid())
                        : envelope(f, k, lambda);
}

SampledFunction average_of(const AverageSpec& spec, const Options& opt) {
  return opt.use_oracle ? proximal_average_oracle(spec)
                        : proximal_average(spec);
}

// ---- 1. Burg-kernel envelope of a point indicator, closed form ----------

Criterion burg_envelope_closed_form(const Options& opt) {
  Criterion c{"burg_envelope_closed_form", {}};
  LegendreKernel k = kernel("burg_energy");
  Grid1D grid = Grid1D::linspace(0.25, 4.0, 121);  // h=1/32; probes on nodes
  SampledFunction f = point_indicator(grid, 1.0);
  SampledFunction env = env_of(f, k, 1.0, opt);
  SupError sup;
  for (double y : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    double expected = std::log(y) + 1.0 / y + 0.5 * (1 - y) * (1 - y) - 1.0;
    sup.feed(std::abs(env.value(grid.nearest(y)) - expected), y);
  }
  c.reports.push_back(VerificationReport::make(
      "burg_point_envelope_values", sup.value, sup.witness, 1e-8,
      {{"h", grid.step()}, {"lambda", 1.0}}));
  return c;
}

// ---- 2. Cubic-kernel envelope of a point indicator -----------------------

Criterion cubic_envelope_closed_form(const Options& opt) {
  Criterion c{"cubic_envelope_closed_form", {}};
  LegendreKernel k = kernel("cubic");
  Grid1D grid = Grid1D::linspace(0.25, 4.0, 121);
  SampledFunction f = point_indicator(grid, 1.0);
  SampledFunction env = env_of(f, k, 1.0, opt);
  SupError sup;
  for (double y : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    double expected = 1.0 + 2.0 * y * y * y - 3.0 * y * y;
    sup.feed(std::abs(env.value(grid.nearest(y)) - expected), y);
  }
  c.reports.push_back(VerificationReport::make(
      "cubic_point_envelope_values", sup.value, sup.witness, 1e-8,
      {{"h", grid.step()}, {"lambda", 1.0}}));

  // The envelope must be visibly nonconvex on (0, 2).
  std::vector<double> xs, vs;
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    if (grid[i] > 0.0 && grid[i] < 2.0) {
      xs.push_back(grid[i]);
      vs.push_back(env.value(i));
    }
  SampledFunction window(
      Grid1D(Eigen::Map<Eigen::ArrayXd>(xs.data(), static_cast<Eigen::Index>(xs.size()))),
      Eigen::Map<Eigen::ArrayXd>(vs.data(), static_cast<Eigen::Index>(vs.size())),
      "env|_(0,2)");
  double wx = 0.0;
  double violation = window.convexity_violation(&wx);
  c.reports.push_back(VerificationReport::make(
      "cubic_point_envelope_nonconvexity", -violation, wx, -0.01,
      {{"h", grid.step()}}));
  return c;
}

// ---- 3. Cubic-kernel average of a point indicator and zero ---------------

Criterion cubic_average_closed_form(const Options& opt) {
  Criterion c{"cubic_average_closed_form", {}};
  LegendreKernel k = kernel("cubic");
  const double h = 1e-3;
  // Inputs sampled wide so every argmin stays interior; the comparison
  // runs on [-2, 2].
  Grid1D grid = Grid1D::linspace(-5.0, 3.5, 8501);
  AverageSpec spec{point_indicator(grid, 1.0),
                   sample(grid, [](double) { return 0.0; }, "zero"),
                   0.5,
                   1.0,
                   k,
                   std::nullopt};
  spec.dual_grid = average_dual_grid(spec, 0.5 * h);
  SampledFunction P = average_of(spec, opt);

  const double a = 1.0, alpha = 0.5;
  SupError sup;
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    double x = grid[i];
    if (x < -2.0 - 1e-12 || x > 2.0 + 1e-12) continue;
    double expected = alpha * std::abs(a) * a * a +
                      std::pow(std::abs(x - alpha * a), 3) /
                          ((1 - alpha) * (1 - alpha)) -
                      std::abs(x) * x * x;
    sup.feed(std::abs(P.value(i) - expected), x);
  }
  c.reports.push_back(VerificationReport::make(
      "cubic_average_values", sup.value, sup.witness, 5e-3,
      {{"h", h}, {"lambda", 1.0}, {"alpha", alpha}}));

  ConvexityCertificate cert = convexity_certificate(P, k, spec);
  c.reports.push_back(cert.shifted);
  double witness_err =
      cert.plain.pass ? kInf : std::abs(cert.plain.witness_x - 0.5);
  c.reports.push_back(VerificationReport::make(
      "cubic_average_nonconvexity_witness", witness_err, cert.plain.witness_x,
      0.1, {{"gap", cert.plain.sup_error}}));
  return c;
}

// ---- 4. Energy kernel: the average of x^2 and 0 collapses to a scaled
// quadratic ---------------------------------------------------------------

Criterion quadratic_average_reduction(const Options& opt) {
  Criterion c{"quadratic_average_reduction", {}};
  LegendreKernel k = kernel("energy");
  Grid1D grid = Grid1D::linspace(-7.0, 7.0, 14001);  // h=1e-3
  SampledFunction f1 = sample(grid, [](double x) { return x * x; }, "x^2");
  SampledFunction f2 = sample(grid, [](double) { return 0.0; }, "zero");
  for (double alpha : {0.25, 0.5, 0.75}) {
    AverageSpec spec{f1, f2, alpha, 1.0, k, std::nullopt};
    SampledFunction P = average_of(spec, opt);
    SupError sup;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      double x = grid[i];
      if (std::abs(x) > 3.0 + 1e-12) continue;
      sup.feed(std::abs(P.value(i) - alpha * x * x / (3.0 - 2.0 * alpha)), x);
    }
    c.reports.push_back(VerificationReport::make(
        "quadratic_average(alpha=" + std::to_string(alpha) + ")", sup.value,
        sup.witness, 1e-3, {{"h", grid.step()}, {"alpha", alpha}}));
  }
  return c;
}

// ---- combos shared by criteria 5-7 ---------------------------------------

struct Combo {
  std::string kernel_name;
  SampledFunction f1, f2;
};

std::vector<Combo> identity_combos(const Options& opt) {
  std::vector<Combo> combos;
  auto push_for = [&](const std::string& kname) {
    if (!opt.kernel_filter.empty() && opt.kernel_filter != kname) return;
    LegendreKernel k = kernel(kname);
    Grid1D grid = kname == "energy" ? Grid1D::linspace(-6.0, 6.0, 6001)
                                    : kernel_grid(k, 0.02, 6.0, 2991);
    SampledFunction abs1 =
        sample(grid, [](double x) { return std::abs(x - 1.0); }, "|x-1|");
    SampledFunction quadp1 = sample(
        grid, [](double x) { return (x + 1.0) * (x + 1.0); }, "(x+1)^2");
    SampledFunction ind01 = build_function("indicator_interval 0 1", grid);
    SampledFunction ind23 = build_function("indicator_interval 2 3", grid);
    SampledFunction vee = sample(
        grid,
        [](double x) { return std::min(std::abs(x), std::abs(x - 2.0) + 0.3); },
        "min(|x|,|x-2|+0.3)");
    SampledFunction absf = sample(grid, [](double x) { return std::abs(x); }, "|x|");
    combos.push_back({kname, abs1, quadp1});
    combos.push_back({kname, ind01, ind23});
    combos.push_back({kname, vee, absf});
  };
  push_for("energy");
  push_for("boltzmann_shannon");
  return combos;
}

Criterion envelope_identity_suite(const Options& opt) {
  Criterion c{"envelope_identity_suite", {}};
  for (const Combo& combo : identity_combos(opt)) {
    for (double alpha : {0.3, 0.7}) {
      AverageSpec spec{combo.f1, combo.f2, alpha, 1.0, kernel(combo.kernel_name),
                       std::nullopt};
      c.reports.push_back(verify_envelope_identity(spec, 1e-2, opt.use_oracle));
    }
  }
  return c;
}

std::vector<double> inner_probes(const Grid1D& grid, const LegendreKernel& k,
                                 int count) {
  std::vector<Eigen::Index> unodes;
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    if (k.in_interior(grid[i])) unodes.push_back(i);
  std::vector<double> probes;
  Eigen::Index m = static_cast<Eigen::Index>(unodes.size());
  Eigen::Index lo = m / 5, hi = m - 1 - m / 5;
  for (int t = 0; t < count; ++t)
    probes.push_back(grid[unodes[lo + (hi - lo) * t / (count - 1)]]);
  return probes;
}

Criterion prox_identity_suite(const Options& opt) {
  Criterion c{"prox_identity_suite", {}};
  for (const Combo& combo : identity_combos(opt)) {
    LegendreKernel k = kernel(combo.kernel_name);
    std::vector<double> probes = inner_probes(combo.f1.grid(), k, 21);
    double h = combo.f1.grid().step();
    for (double alpha : {0.3, 0.7}) {
      AverageSpec spec{combo.f1, combo.f2, alpha, 1.0, k, std::nullopt};
      c.reports.push_back(verify_prox_identity(spec, probes, 2.0 * h));
    }
  }
  return c;
}

Criterion duality_suite(const Options& opt) {
  Criterion c{"duality_suite", {}};
  for (const Combo& combo : identity_combos(opt)) {
    for (double alpha : {0.3, 0.7}) {
      AverageSpec spec{combo.f1, combo.f2, alpha, 1.0, kernel(combo.kernel_name),
                       std::nullopt};
      for (auto& r : verify_duality(spec, 1e-2, AnisotropicFormMode::kSkip))
        c.reports.push_back(std::move(r));
    }
  }
  // Exact dual value for the quadratic pair at s = 1.
  if (opt.kernel_filter.empty() || opt.kernel_filter == "energy") {
    Grid1D grid = Grid1D::linspace(-7.0, 7.0, 14001);
    AverageSpec spec{sample(grid, [](double x) { return x * x; }, "x^2"),
                     sample(grid, [](double) { return 0.0; }, "zero"),
                     0.5,
                     1.0,
                     kernel("energy"),
                     std::nullopt};
    spec.dual_grid = average_dual_grid(spec, 0.5 * grid.step());
    auto [lhs, rhs] = duality_conjugate_point(spec, 1.0);
    double err = std::max(std::abs(lhs - 1.0 / 3.0), std::abs(rhs - 1.0 / 3.0));
    c.reports.push_back(VerificationReport::make(
        "duality_exact_point", err, 1.0, 1e-6, {{"h", grid.step()}}));
  }
  return c;
}

// ---- 8. lambda-monotonicity and the average sandwich ---------------------

Criterion monotonicity_and_sandwich(const Options& opt) {
  Criterion c{"monotonicity_and_sandwich", {}};
  Grid1D grid = Grid1D::linspace(-6.0, 6.0, 6001);
  AverageSpec tmpl{
      sample(grid, [](double x) { return std::abs(x - 1.0); }, "|x-1|"),
      sample(grid, [](double x) { return std::abs(x + 1.0); }, "|x+1|"),
      0.5,
      1.0,
      kernel("energy"),
      std::nullopt};
  SweepOptions so;
  so.use_oracle = opt.use_oracle;
  SweepResult r = sweep(tmpl, {0.5}, {0.01, 0.1, 1.0, 10.0}, so);
  for (auto& rep : r.reports) c.reports.push_back(std::move(rep));
  return c;
}

// ---- 9. epi-limit trends --------------------------------------------------

Criterion epi_limit_trends(const Options& opt) {
  Criterion c{"epi_limit_trends", {}};
  Grid1D grid = Grid1D::linspace(-6.0, 6.0, 6001);
  AverageSpec tmpl{
      sample(grid, [](double x) { return std::abs(x - 1.0); }, "|x-1|"),
      sample(grid, [](double x) { return std::abs(x + 1.0); }, "|x+1|"),
      0.5,
      1.0,
      kernel("energy"),
      std::nullopt};
  SweepOptions so;
  so.use_oracle = opt.use_oracle;
  {
    SweepResult r = sweep(tmpl, {0.3, 0.1, 0.01, 0.001}, {1.0}, so);
    for (auto& rep : r.reports)
      if (rep.identity.rfind("alpha_to_zero_trend", 0) == 0)
        c.reports.push_back(std::move(rep));
  }
  {
    SweepResult r = sweep(tmpl, {0.5}, {1.0, 0.1, 0.01}, so);
    for (auto& rep : r.reports)
      if (rep.identity.rfind("lambda_to_zero_trend", 0) == 0)
        c.reports.push_back(std::move(rep));
  }
  return c;
}

// ---- 10. oracle equivalence on randomized piecewise functions ------------

SampledFunction random_piecewise(std::mt19937_64& rng, const Grid1D& grid) {
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };
  Eigen::Index n = grid.size();
  auto i0 = static_cast<Eigen::Index>(uniform(0, double(n) / 4));
  auto i1 = static_cast<Eigen::Index>(uniform(3.0 * double(n) / 4, double(n - 1)));
  double q = uniform(0.0, 3.0), s = uniform(-2.0, 3.0), t = uniform(-2.0, 2.0);
  double c0 = uniform(-5.0, 5.0);
  double a = uniform(grid.lo(), grid.hi()), b = uniform(grid.lo(), grid.hi());
  bool indicator_like = uniform(0.0, 1.0) < 0.2;
  Eigen::ArrayXd v = Eigen::ArrayXd::Constant(n, kInf);
  for (Eigen::Index i = i0; i <= i1; ++i) {
    double x = grid[i];
    v[i] = indicator_like
               ? c0 + t * x
               : q * (x - b) * (x - b) + s * std::abs(x - a) + t * x + c0;
  }
  return SampledFunction(grid, std::move(v), "random_pw");
}

Criterion oracle_equivalence(const Options& opt) {
  Criterion c{"oracle_equivalence", {}};
  std::mt19937_64 rng(opt.rng_seed);
  const char* kernels_cycle[3] = {"energy", "cubic", "boltzmann_shannon"};
  const double lambdas_cycle[3] = {0.5, 1.0, 2.0};
  SupError transform_sup, envelope_fast_sup, envelope_exact_sup;
  for (int t = 0; t < 20; ++t) {
    LegendreKernel k = kernel(kernels_cycle[t % 3]);
    Grid1D grid = std::isfinite(k.lo) ? kernel_grid(k, 0.1, 6.0, 1201)
                                      : Grid1D::linspace(-4.0, 4.0, 1601);
    SampledFunction f = random_piecewise(rng, grid);
    double lambda = lambdas_cycle[t % 3];

    Grid1D dual = default_dual_grid(f);
    SampledFunction fast = legendre_transform(f, dual);
    SampledFunction brute = oracle::brute_conjugate(f, dual);
    for (Eigen::Index i = 0; i < dual.size(); ++i)
      transform_sup.feed(std::abs(fast.value(i) - brute.value(i)), dual[i]);

    SampledFunction ref = envelope(f, k, lambda);
    SampledFunction br = oracle::brute_envelope(f, k, lambda, grid);
    SampledFunction viac = envelope_via_conjugate(f, k, lambda);
    double L = std::max(1.0, f.slope_bound());
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      if (is_finite(ref.value(i)) != is_finite(br.value(i))) {
        envelope_exact_sup.feed(kInf, grid[i]);
        continue;
      }
      if (!is_finite(ref.value(i))) continue;
      envelope_exact_sup.feed(std::abs(ref.value(i) - br.value(i)), grid[i]);
      envelope_fast_sup.feed(
          std::abs(viac.value(i) - br.value(i)) / (5.0 * grid.step() * L),
          grid[i]);
    }
  }
  c.reports.push_back(VerificationReport::make(
      "transform_vs_brute", transform_sup.value, transform_sup.witness, 1e-12));
  c.reports.push_back(VerificationReport::make(
      "envelope_scan_vs_brute", envelope_exact_sup.value,
      envelope_exact_sup.witness, 0.0));
  c.reports.push_back(VerificationReport::make(
      "envelope_fast_path_vs_brute(5hL units)", envelope_fast_sup.value,
      envelope_fast_sup.witness, 1.0));
  return c;
}

// ---- 11. symmetrized-distance convexity probes ----------------------------

Criterion symmetrized_probes(const Options& opt) {
  Criterion c{"symmetrized_probes", {}};
  auto want = [&](const std::string& name) {
    return opt.kernel_filter.empty() || opt.kernel_filter == name;
  };
  if (want("cubic")) {
    ConvexityReport r = symmetrized_convexity_probe(
        kernel("cubic"), {0.0, 3.0, 0.0, 3.0}, 10'000, opt.rng_seed);
    double worst = 0.0;
    for (const auto& v : r.midpoint_violations)
      worst = std::max(worst, v.magnitude);
    c.reports.push_back(VerificationReport::make(
        "cubic_symmetrized_nonconvex", r.passed() ? kInf : -worst,
        r.midpoint_violations.empty() ? 0.0 : r.midpoint_violations[0].p[0],
        -1e-6, {{"samples", double(r.samples)}}));
  }
  if (want("energy")) {
    ConvexityReport r = symmetrized_convexity_probe(
        kernel("energy"), {-5.0, 5.0, -5.0, 5.0}, 10'000, opt.rng_seed);
    c.reports.push_back(VerificationReport::make(
        "energy_symmetrized_convex", r.passed() ? 0.0 : 1.0, 0.0, 0.5,
        {{"samples", double(r.samples)}}));
  }
  if (want("boltzmann_shannon")) {
    ConvexityReport r = symmetrized_convexity_probe(
        kernel("boltzmann_shannon"), {0.1, 4.0, 0.1, 4.0}, 10'000,
        opt.rng_seed);
    c.reports.push_back(VerificationReport::make(
        "boltzmann_shannon_symmetrized_convex", r.passed() ? 0.0 : 1.0, 0.0,
        0.5, {{"samples", double(r.samples)}}));
  }
  return c;
}

// ---- 12. prox-bound threshold estimates -----------------------------------

Criterion threshold_checks(const Options&) {
  Criterion c{"threshold_checks", {}};
  LegendreKernel k = kernel("energy");
  Grid1D grid = Grid1D::linspace(-10.0, 10.0, 2001);
  {
    SampledFunction f = sample(grid, [](double x) { return -x * x; }, "-x^2");
    ThresholdEstimate est = prox_bound_threshold(f, k);
    c.reports.push_back(VerificationReport::make(
        "threshold_negative_quadratic", std::abs(est.lower_certified - 0.5),
        est.lower_certified, 0.025));
  }
  {
    SampledFunction f = sample(grid, [](double x) { return std::abs(x); }, "|x|");
    ThresholdEstimate est = prox_bound_threshold(f, k);
    c.reports.push_back(VerificationReport::make(
        "threshold_abs_infinite", is_inf(est.upper_witness) ? 0.0 : 1.0, 0.0,
        0.5));
  }
  return c;
}

// ---- 13. prox through the anisotropic decomposition -----------------------

Criterion prox_anisotropic_suite(const Options& opt) {
  Criterion c{"prox_anisotropic_suite", {}};
  for (double lambda : {0.5, 1.0, 2.0}) {
    if (opt.kernel_filter.empty() || opt.kernel_filter == "energy") {
      Grid1D grid = Grid1D::linspace(-4.0, 4.0, 1601);
      c.reports.push_back(prox_via_anisotropic_check(
          sample(grid, [](double x) { return std::abs(x); }, "|x|"),
          kernel("energy"), lambda));
      c.reports.push_back(prox_via_anisotropic_check(
          point_indicator(grid, 1.0), kernel("energy"), lambda));
    }
    if (opt.kernel_filter.empty() ||
        opt.kernel_filter == "boltzmann_shannon") {
      LegendreKernel bs = kernel("boltzmann_shannon");
      Grid1D grid = kernel_grid(bs, 0.02, 6.0, 1201);
      c.reports.push_back(prox_via_anisotropic_check(
          sample(grid, [](double x) { return 0.5 * x * x; }, "x^2/2"), bs,
          lambda));
    }
  }
  return c;
}

// ---- 14. envelope gradient identity ---------------------------------------

Criterion envelope_gradient_suite(const Options&) {
  Criterion c{"envelope_gradient_suite", {}};
  Grid1D grid = Grid1D::linspace(0.25, 4.0, 121);
  c.reports.push_back(envelope_gradient_check(point_indicator(grid, 1.0),
                                              kernel("burg_energy"), 1.0));
  c.reports.push_back(envelope_gradient_check(point_indicator(grid, 1.0),
                                              kernel("cubic"), 1.0));
  return c;
}

using CriterionFn = Criterion (*)(const Options&);

struct SuiteEntry {
  const char* suite;
  CriterionFn fn;
};

constexpr SuiteEntry kSuite[] = {
    {"core", burg_envelope_closed_form},
    {"core", cubic_envelope_closed_form},
    {"average", cubic_average_closed_form},
    {"average", quadratic_average_reduction},
    {"average", envelope_identity_suite},
    {"average", prox_identity_suite},
    {"average", duality_suite},
    {"average", monotonicity_and_sandwich},
    {"average", epi_limit_trends},
    {"grid", oracle_equivalence},
    {"kernels", symmetrized_probes},
    {"core", threshold_checks},
    {"core", prox_anisotropic_suite},
    {"core", envelope_gradient_suite},
};

}  // namespace

std::vector<std::string> suite_names() {
  return {"kernels", "grid", "core", "average", "all"};
}

std::vector<Criterion> run_suite(const std::string& suite,
                                 const Options& options) {
  bool known = false;
  for (const auto& name : suite_names()) known = known || name == suite;
  if (!known) throw Error("unknown suite: " + suite);
  std::vector<Criterion> out;
  for (const auto& entry : kSuite)
    if (suite == "all" || suite == entry.suite)
      out.push_back(entry.fn(options));
  return out;
}

}  // namespace verify
}  // namespace bregman
