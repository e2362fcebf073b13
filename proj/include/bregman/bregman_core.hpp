#pragma once

#include <vector>

#include "bregman/kernels.hpp"
#include "bregman/report.hpp"
#include "bregman/sampled_function.hpp"

namespace bregman {

// Minimizer set of one Bregman proximal problem, clustered into closed
// intervals of grid nodes within tie tolerance of the minimum value.
struct ProxSet {
  double base_point = 0.0;
  double lambda = 1.0;
  double min_value = 0.0;
  std::vector<std::pair<double, double>> minimizers;  // closed intervals

  bool singleton() const {
    return minimizers.size() == 1 &&
           minimizers[0].first == minimizers[0].second;
  }
  // Interval hull [min, max] of the set.
  std::pair<double, double> hull() const {
    return {minimizers.front().first, minimizers.back().second};
  }
  double point() const { return minimizers.front().first; }
};

// Certified bracket for the prox-boundedness threshold. lower_certified
// is the largest probed lambda at which f + phi/lambda still has growing
// tails on the grid; upper_witness the smallest at which a tail decays.
struct ThresholdEstimate {
  double lower_certified = 0.0;
  double upper_witness = kInf;
  bool grid_caveat = false;
};

enum class EnvelopeSide { kLeft, kRight };

// Left: y -> min_x f(x) + D(x, y)/lambda on U-nodes of f's grid (+inf off
// U). Right swaps the arguments of D and scans x over U-nodes only.
SampledFunction envelope(const SampledFunction& f, const LegendreKernel& k,
                         double lambda,
                         EnvelopeSide side = EnvelopeSide::kLeft);

// Same values through one discrete Legendre transform:
// env = (phi^* - (lambda f + phi)^*)/lambda evaluated at grad(y).
SampledFunction envelope_via_conjugate(const SampledFunction& f,
                                       const LegendreKernel& k,
                                       double lambda);

// All grid minimizers of f(x) + D(x, y)/lambda at base point y in U.
ProxSet prox(const SampledFunction& f, const LegendreKernel& k, double lambda,
             double y);

// (f + phi/lambda)^** - phi/lambda with the inf - inf = inf convention.
SampledFunction prox_hull(const SampledFunction& f, const LegendreKernel& k,
                          double lambda);

ThresholdEstimate prox_bound_threshold(const SampledFunction& f,
                                       const LegendreKernel& k);

// inf_y f(y) + phi(x - y) over f's nodes, evaluated on out_grid.
SampledFunction anisotropic_envelope(const SampledFunction& f,
                                     const LegendreKernel& k,
                                     const Grid1D& out_grid);

// The (unique) minimizing node of y -> f(y) + phi(x - y).
double anisotropic_prox(const SampledFunction& f, const LegendreKernel& k,
                        double x);

// Nearest-point map onto C (a union of intervals, given on `grid`) in the
// Bregman sense: prox of the indicator of C. min_value*lambda is the
// Bregman distance to C.
ProxSet bregman_project(const Grid1D& grid,
                        const std::vector<std::pair<double, double>>& C,
                        const LegendreKernel& k, double lambda, double y);

// Compares prox(f, k, lambda, .) against the anisotropic decomposition
// conj_grad(grad(y) - lambda * aprox_{(1/lambda) epi phi^*}(f^*)(grad(y)/lambda))
// at the probe points (defaults to 21 inner U-nodes). f must be convex data.
VerificationReport prox_via_anisotropic_check(
    const SampledFunction& f, const LegendreKernel& k, double lambda,
    const std::vector<double>& probe_points = {});

// Central-difference derivative of the envelope against
// hess(x)(x - p)/lambda at base points where the prox is a single node.
VerificationReport envelope_gradient_check(const SampledFunction& f,
                                           const LegendreKernel& k,
                                           double lambda);

}  // namespace bregman
