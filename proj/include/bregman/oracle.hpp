#pragma once

#include "bregman/kernels.hpp"
#include "bregman/sampled_function.hpp"

namespace bregman {
// Slow, obviously-correct reference implementations. No hulls, no
// conjugate shortcuts; quadratic scans only.
namespace oracle {

// Direct max of s*x - f(x) over all finite nodes.
SampledFunction brute_conjugate(const SampledFunction& f,
                                const Grid1D& dual_grid);

// Exhaustive scan of f(x) + D_phi(x, y)/lambda over grid nodes at each
// base point.
SampledFunction brute_envelope(const SampledFunction& f,
                               const LegendreKernel& k, double lambda,
                               const Grid1D& base_points);

// Double loop over node pairs with nearest-node binning.
SampledFunction brute_infconv(const SampledFunction& f,
                              const SampledFunction& g,
                              const Grid1D& out_grid);

}  // namespace oracle
}  // namespace bregman
