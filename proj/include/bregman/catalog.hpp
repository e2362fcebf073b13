#pragma once

#include <string>

#include "bregman/sampled_function.hpp"

namespace bregman {

// Builds a catalog function on the grid from a textual specifier:
//   abs | quad a b c | indicator_point p | indicator_interval a b |
//   indicator_finite p1 ... pk | csv path
// followed by optional modifiers `shift s` and `scale c`, giving
// c * base(x - s). Point indicators snap to the nearest grid node.
SampledFunction build_function(const std::string& spec, const Grid1D& grid);

}  // namespace bregman
