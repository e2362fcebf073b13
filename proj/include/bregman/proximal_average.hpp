#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bregman/bregman_core.hpp"
#include "bregman/kernels.hpp"
#include "bregman/report.hpp"
#include "bregman/sampled_function.hpp"

namespace bregman {

// Parameters of the alpha-weighted proximal average of f1 and f2 with
// respect to a Legendre kernel. f1 and f2 share one grid; lambda must be
// certified below both prox-bound thresholds.
struct AverageSpec {
  SampledFunction f1;
  SampledFunction f2;
  double alpha = 0.5;
  double lambda = 1.0;
  LegendreKernel kernel;
  std::optional<Grid1D> dual_grid;  // default: shared slope range of f_i + phi/lambda
};

struct AverageValidation {
  ThresholdEstimate threshold1, threshold2;
  std::vector<std::string> warnings;
};

// Checks the spec invariants; throws ThresholdViolated / EmptyCommonDomain /
// NonPositiveLambda. Warns when the kernel breaks an assumption the
// construction leans on (Burg-type open domains).
AverageValidation validate(const AverageSpec& spec);

// Dual grid covering both hull slope ranges of f_i + phi/lambda with 10%
// padding. max_step bounds the dual spacing (NaN keeps the primal node
// count).
Grid1D average_dual_grid(const AverageSpec& spec, double max_step = kInf);

// [alpha (f1 + phi/lambda)^* + (1-alpha) (f2 + phi/lambda)^*]^* - phi/lambda
// on the shared grid, via two transforms and one back-transform. Outside
// its domain (detected from the dual argmax hitting the covered slope
// range) and outside dom(phi) the value is +inf. alpha in {0, 1} drops the
// zero-weight term entirely.
SampledFunction proximal_average(const AverageSpec& spec,
                                 const AverageValidation* prevalidated = nullptr);

// Same object through (1/lambda) [alpha (lambda f1 + phi)^* + ...]^* with a
// scaled dual grid; cross-checks the primary route.
SampledFunction proximal_average_scaled_route(const AverageSpec& spec);

// Oracle route: brute conjugates plus the interval-arithmetic domain
// formula alpha*conv(dom f1 cap dom phi) + (1-alpha)*conv(dom f2 cap dom phi).
SampledFunction proximal_average_oracle(const AverageSpec& spec);

// sup over U-nodes of |env(P) - alpha env(f1) - (1-alpha) env(f2)|.
VerificationReport verify_envelope_identity(const AverageSpec& spec,
                                            double tolerance,
                                            bool use_oracle = false);

// Hausdorff distance between prox(P)(y) and the Minkowski combination
// alpha conv(prox f1)(y) + (1-alpha) conv(prox f2)(y) over the probes.
VerificationReport verify_prox_identity(const AverageSpec& spec,
                                        const std::vector<double>& probes,
                                        double tolerance);

enum class AnisotropicFormMode { kAuto, kSkip, kRequire };

// (lambda P + phi)^* = alpha (lambda f1 + phi)^* + (1-alpha)(lambda f2 + phi)^*
// on the dual grid; for convex inputs additionally the anisotropic form
// P^* box ((1/lambda) epi phi^*) = alpha f1^* box (...) + (1-alpha) f2^* box (...).
std::vector<VerificationReport> verify_duality(
    const AverageSpec& spec, double tolerance,
    AnisotropicFormMode mode = AnisotropicFormMode::kAuto);

// Both sides of the conjugate identity evaluated exactly at one dual point.
std::pair<double, double> duality_conjugate_point(const AverageSpec& spec,
                                                  double s);

struct SweepCell {
  double alpha;
  double lambda;
  SampledFunction average;
};

struct SweepResult {
  std::vector<SweepCell> cells;                // (alpha, lambda) order
  std::vector<VerificationReport> reports;
};

struct SweepOptions {
  double monotonicity_slack = 1e-6;
  // Bounds the dual spacing at factor * primal h; infinite by default
  // since the knot-carrying dual grid is already exact.
  double dual_step_factor = kInf;
  bool check_infinity_trend = false;  // lambda -> infinity limit (needs
                                      // certified infinite thresholds)
  bool use_oracle = false;
};

// Computes P for every (alpha, lambda) pair and checks: pointwise
// monotonicity in lambda, the epi/arithmetic-average sandwich, the
// alpha -> 0 trend toward the hull of f2, the lambda -> 0 trend toward the
// arithmetic average, and (optionally) the lambda -> infinity trend toward
// the epi-average of convexified inputs.
SweepResult sweep(const AverageSpec& spec_template,
                  const std::vector<double>& alphas,
                  const std::vector<double>& lambdas,
                  const SweepOptions& options = {});

struct ConvexityCertificate {
  VerificationReport shifted;  // lambda P + phi convex: must always pass
  VerificationReport plain;    // P itself convex
  bool expectation_applies = false;  // S_phi probe passed, inputs convex data
  bool consistent = true;            // !applies || plain.pass
};

// (a) discrete convexity of lambda P + phi; (b) convexity of P via the gap
// to its own lower convex hull; (c) cross-reference against the kernel's
// S_phi probe when both inputs are convex data with overlapping domains.
ConvexityCertificate convexity_certificate(const SampledFunction& P,
                                           const LegendreKernel& k,
                                           const AverageSpec& spec);

}  // namespace bregman
