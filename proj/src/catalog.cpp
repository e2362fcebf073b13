#include "bregman/catalog.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "bregman/errors.hpp"
#include "bregman/io.hpp"

namespace bregman {

SampledFunction build_function(const std::string& spec, const Grid1D& grid) {
  std::istringstream in(spec);
  std::vector<std::string> tok;
  for (std::string t; in >> t;) tok.push_back(t);
  if (tok.empty()) throw Error("empty function specifier");

  // Modifiers trail the kind arguments.
  double shift = 0.0, scale = 1.0;
  size_t end = tok.size();
  while (end >= 2 && (tok[end - 2] == "shift" || tok[end - 2] == "scale")) {
    double val = std::stod(tok[end - 1]);
    (tok[end - 2] == "shift" ? shift : scale) = val;
    end -= 2;
  }

  auto num = [&](size_t i) {
    if (i >= end) throw Error("function specifier: missing number");
    return std::stod(tok[i]);
  };

  Eigen::ArrayXd v(grid.size());
  const std::string& kind = tok[0];
  if (kind == "abs") {
    if (end != 1) throw Error("abs takes no arguments");
    for (Eigen::Index i = 0; i < grid.size(); ++i)
      v[i] = scale * std::abs(grid[i] - shift);
  } else if (kind == "quad") {
    double a = num(1), b = num(2), c = num(3);
    if (end != 4) throw Error("quad takes 3 coefficients");
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      double x = grid[i] - shift;
      v[i] = scale * (a * x * x + b * x + c);
    }
  } else if (kind == "indicator_point") {
    if (end != 2) throw Error("indicator_point takes 1 argument");
    v.setConstant(kInf);
    v[grid.nearest(num(1) + shift)] = 0.0;
  } else if (kind == "indicator_interval") {
    if (end != 3) throw Error("indicator_interval takes 2 arguments");
    double a = num(1) + shift, b = num(2) + shift;
    double tol = 1e-12 * (1.0 + std::abs(a) + std::abs(b));
    for (Eigen::Index i = 0; i < grid.size(); ++i)
      v[i] = (grid[i] >= a - tol && grid[i] <= b + tol) ? 0.0 : kInf;
  } else if (kind == "indicator_finite") {
    if (end < 2) throw Error("indicator_finite needs at least 1 point");
    v.setConstant(kInf);
    for (size_t i = 1; i < end; ++i)
      v[grid.nearest(std::stod(tok[i]) + shift)] = 0.0;
  } else if (kind == "csv") {
    if (end != 2) throw Error("csv specifier needs a path");
    SampledFunction loaded = load_csv(tok[1]);
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      double b = loaded.interp(grid[i] - shift);
      v[i] = is_finite(b) ? scale * b : kInf;
    }
  } else {
    throw Error("unknown function kind: " + kind);
  }
  return SampledFunction(grid, std::move(v), spec);
}

}  // namespace bregman
