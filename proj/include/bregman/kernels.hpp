#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bregman/extended.hpp"
#include "bregman/grid.hpp"

namespace bregman {

// A 1-coercive Legendre function phi with closed-form calculus. The
// gradient is strictly increasing on the open interval U = int dom(phi),
// the conjugate is finite on all of R, and conj_grad inverts grad.
struct LegendreKernel {
  std::string name;
  double lo = -kInf;  // U = (lo, hi)
  double hi = kInf;
  bool closure_contains_left = false;   // lo in dom(phi)
  bool closure_contains_right = false;  // hi in dom(phi)
  // False when the kernel breaks one of the smoothness/closedness
  // assumptions the average construction relies on (Burg: open domain;
  // cubic: second derivative vanishes at 0).
  bool a5_compliant = true;

  std::function<double(double)> phi;        // extended real on R
  std::function<double(double)> grad;       // on U
  std::function<double(double)> hess;       // > 0 on U (cubic: except 0)
  std::function<double(double)> conj;       // finite on R
  std::function<double(double)> conj_grad;  // R -> U

  bool in_interior(double x) const { return x > lo && x < hi; }
  bool in_domain(double x) const {
    if (in_interior(x)) return true;
    if (x == lo && closure_contains_left) return true;
    if (x == hi && closure_contains_right) return true;
    return false;
  }
};

// Catalog: energy | boltzmann_shannon | burg_energy | cubic.
LegendreKernel kernel(const std::string& name);
std::vector<std::string> kernel_names();

// D_phi(x, y): phi(x) - phi(y) - grad(y)(x - y) for y in U, +inf otherwise.
double bregman_distance(const LegendreKernel& k, double x, double y);

// S_phi(x, y) = D(x, y) + D(y, x) = (grad(x) - grad(y))(x - y) on U x U.
double symmetrized_distance(const LegendreKernel& k, double x, double y);

// Inverts grad by bisection (for kernels without a closed-form conj_grad).
double invert_gradient(const LegendreKernel& k, double s,
                       double tol = 1e-13, int max_iter = 200);

// Uniform grid over [lo, hi] intersected with dom(phi); nodes are clamped
// away from a finite boundary where grad blows up.
Grid1D kernel_grid(const LegendreKernel& k, double lo, double hi,
                   Eigen::Index n);

struct Rect {
  double x_lo, x_hi, y_lo, y_hi;
};

struct ProbeViolation {
  std::array<double, 2> p;
  std::array<double, 2> q;
  double magnitude;
};

// Result of a sampling probe: either no violation was seen, or concrete
// witnesses beyond tolerance are listed.
struct ConvexityReport {
  enum class Verdict { kConvexOnSamples, kNonconvexWithWitness };
  Rect region{};
  long samples = 0;
  std::vector<ProbeViolation> midpoint_violations;
  Verdict verdict = Verdict::kConvexOnSamples;

  bool passed() const { return verdict == Verdict::kConvexOnSamples; }
};

// Midpoint-convexity scan of S_phi on random pairs in region (subset of
// U x U). Violations beyond 1e-9*(1+magnitude) are reported.
ConvexityReport symmetrized_convexity_probe(const LegendreKernel& k,
                                            const Rect& region, long samples,
                                            std::uint64_t rng_seed);

// Checks <u-v, Tu-Tv> >= S_phi(Tu, Tv) on random pairs u, v drawn from
// [probe_lo, probe_hi] in U. T must map into U.
ConvexityReport firm_nonexpansiveness_probe(
    const LegendreKernel& k, const std::function<double(double)>& T,
    double probe_lo, double probe_hi, long pairs, std::uint64_t rng_seed);

}  // namespace bregman
