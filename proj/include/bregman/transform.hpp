#pragma once

#include <utility>

#include "bregman/hull.hpp"
#include "bregman/sampled_function.hpp"

namespace bregman {

// Discrete Fenchel conjugate s -> max_i (s*x_i - f(x_i)) on dual_grid.
// Exact for the grid-restricted function; linear time via the lower
// convex hull. Results on a bounded grid are conjugates of
// f + indicator([lo, hi]); the label records the grid provenance.
SampledFunction legendre_transform(const SampledFunction& f,
                                   const Grid1D& dual_grid);

// Lower convex hull of the finite points of f and its evaluation back on
// f's grid (the discrete biconjugate).
std::pair<PLConvex, SampledFunction> lower_convex_envelope(
    const SampledFunction& f);

// x -> min over node pairs u + v ~ x of f(u) + g(v), binned to the
// nearest out_grid node. Direct O(n^2); also the oracle path.
SampledFunction inf_convolution(const SampledFunction& f,
                                const SampledFunction& g,
                                const Grid1D& out_grid);

// Conjugate shortcut (f* + g*)*; valid for convex data only.
SampledFunction inf_convolution_via_conjugate(const SampledFunction& f,
                                              const SampledFunction& g,
                                              const Grid1D& out_grid);

// Epi-multiplication: t*f(x/t) resampled on out_grid for t > 0; the
// indicator of {0} for t = 0 (out_grid must then cover 0).
SampledFunction epi_scale(const SampledFunction& f, double t,
                          const Grid1D& out_grid);

// Slope range [smin - 0.1w, smax + 0.1w] of f's hull with the same node
// count as f's grid; degenerate ranges are widened to unit half-width.
Grid1D default_dual_grid(const SampledFunction& f);
// Same, covering the hull slope ranges of both functions.
Grid1D shared_dual_grid(const SampledFunction& f, const SampledFunction& g);
// Every hull slope of f as a dual node (plus padding endpoints), which
// makes double conjugation exact at the grid nodes.
Grid1D slope_dual_grid(const SampledFunction& f);

}  // namespace bregman
