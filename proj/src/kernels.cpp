#include "bregman/kernels.hpp"

#include <cmath>
#include <random>

#include "bregman/errors.hpp"

namespace bregman {

namespace {

LegendreKernel make_energy() {
  LegendreKernel k;
  k.name = "energy";
  k.phi = [](double x) { return 0.5 * x * x; };
  k.grad = [](double x) { return x; };
  k.hess = [](double) { return 1.0; };
  k.conj = [](double s) { return 0.5 * s * s; };
  k.conj_grad = [](double s) { return s; };
  return k;
}

LegendreKernel make_boltzmann_shannon() {
  LegendreKernel k;
  k.name = "boltzmann_shannon";
  k.lo = 0.0;
  k.closure_contains_left = true;  // phi(0) = 0
  k.phi = [](double x) {
    if (x < 0) return kInf;
    if (x == 0) return 0.0;
    return x * std::log(x) - x;
  };
  k.grad = [](double x) { return std::log(x); };
  k.hess = [](double x) { return 1.0 / x; };
  k.conj = [](double s) { return std::exp(s); };
  k.conj_grad = [](double s) { return std::exp(s); };
  return k;
}

LegendreKernel make_burg_energy() {
  LegendreKernel k;
  k.name = "burg_energy";
  k.lo = 0.0;
  k.a5_compliant = false;  // dom(phi) = (0, inf) is not closed
  k.phi = [](double x) {
    if (x <= 0) return kInf;
    return -std::log(x) + 0.5 * x * x;
  };
  k.grad = [](double x) { return -1.0 / x + x; };
  k.hess = [](double x) { return 1.0 / (x * x) + 1.0; };
  // argmax of s*x + ln(x) - x^2/2 solves x^2 - s*x - 1 = 0.
  auto maximizer = [](double s) { return 0.5 * (s + std::sqrt(s * s + 4.0)); };
  k.conj = [maximizer](double s) {
    double x = maximizer(s);
    return s * x + std::log(x) - 0.5 * x * x;
  };
  k.conj_grad = maximizer;
  return k;
}

LegendreKernel make_cubic() {
  LegendreKernel k;
  k.name = "cubic";
  k.a5_compliant = false;  // hess vanishes at 0
  k.phi = [](double x) { return std::abs(x) * x * x; };
  k.grad = [](double x) { return 3.0 * x * std::abs(x); };
  k.hess = [](double x) { return 6.0 * std::abs(x); };
  k.conj = [](double s) {
    return 2.0 * std::pow(std::abs(s), 1.5) / (3.0 * std::sqrt(3.0));
  };
  k.conj_grad = [](double s) {
    double r = std::sqrt(std::abs(s) / 3.0);
    return s < 0 ? -r : r;
  };
  return k;
}

}  // namespace

LegendreKernel kernel(const std::string& name) {
  if (name == "energy") return make_energy();
  if (name == "boltzmann_shannon") return make_boltzmann_shannon();
  if (name == "burg_energy") return make_burg_energy();
  if (name == "cubic") return make_cubic();
  throw UnknownKernel("unknown kernel: " + name);
}

std::vector<std::string> kernel_names() {
  return {"energy", "boltzmann_shannon", "burg_energy", "cubic"};
}

double bregman_distance(const LegendreKernel& k, double x, double y) {
  if (!k.in_interior(y)) return kInf;
  return k.phi(x) - k.phi(y) - k.grad(y) * (x - y);
}

double symmetrized_distance(const LegendreKernel& k, double x, double y) {
  return (k.grad(x) - k.grad(y)) * (x - y);
}

double invert_gradient(const LegendreKernel& k, double s, double tol,
                       int max_iter) {
  // Bracket the root of grad(x) = s inside U, then bisect.
  double lo, hi;
  if (std::isfinite(k.lo)) {
    lo = k.lo + 1.0;
    while (k.grad(lo) > s) lo = k.lo + (lo - k.lo) * 0.5;
  } else {
    lo = -1.0;
    while (k.grad(lo) > s) lo *= 2.0;
  }
  if (std::isfinite(k.hi)) {
    hi = k.hi - 1.0;
    while (k.grad(hi) < s) hi = k.hi - (k.hi - hi) * 0.5;
  } else {
    hi = 1.0;
    while (k.grad(hi) < s) hi *= 2.0;
  }
  for (int it = 0; it < max_iter && hi - lo > tol * (1.0 + std::abs(lo));
       ++it) {
    double mid = 0.5 * (lo + hi);
    (k.grad(mid) < s ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Grid1D kernel_grid(const LegendreKernel& k, double lo, double hi,
                   Eigen::Index n) {
  double eps = 1e-8 * (hi - lo);
  if (std::isfinite(k.lo) && lo <= k.lo) lo = k.lo + eps;
  if (std::isfinite(k.hi) && hi >= k.hi) hi = k.hi - eps;
  if (!(lo < hi)) throw RegionOutsideDomain("grid range misses U");
  return Grid1D::linspace(lo, hi, n);
}

namespace {

// Portable uniform double in [0, 1).
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

void finalize(ConvexityReport& r) {
  r.verdict = r.midpoint_violations.empty()
                  ? ConvexityReport::Verdict::kConvexOnSamples
                  : ConvexityReport::Verdict::kNonconvexWithWitness;
}

}  // namespace

ConvexityReport symmetrized_convexity_probe(const LegendreKernel& k,
                                            const Rect& region, long samples,
                                            std::uint64_t rng_seed) {
  if (!(region.x_lo > k.lo && region.x_hi < k.hi && region.y_lo > k.lo &&
        region.y_hi < k.hi))
    throw RegionOutsideDomain("probe region must lie inside U x U");

  ConvexityReport report;
  report.region = region;
  report.samples = samples;
  std::mt19937_64 rng(rng_seed);
  for (long i = 0; i < samples; ++i) {
    std::array<double, 2> p{uniform(rng, region.x_lo, region.x_hi),
                            uniform(rng, region.y_lo, region.y_hi)};
    std::array<double, 2> q{uniform(rng, region.x_lo, region.x_hi),
                            uniform(rng, region.y_lo, region.y_hi)};
    double sp = symmetrized_distance(k, p[0], p[1]);
    double sq = symmetrized_distance(k, q[0], q[1]);
    double sm =
        symmetrized_distance(k, 0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1]));
    double violation = sm - 0.5 * (sp + sq);
    double magnitude = std::max({std::abs(sp), std::abs(sq), std::abs(sm)});
    if (violation > 1e-9 * (1.0 + magnitude))
      report.midpoint_violations.push_back({p, q, violation});
  }
  finalize(report);
  return report;
}

ConvexityReport firm_nonexpansiveness_probe(
    const LegendreKernel& k, const std::function<double(double)>& T,
    double probe_lo, double probe_hi, long pairs, std::uint64_t rng_seed) {
  if (!(probe_lo > k.lo && probe_hi < k.hi))
    throw RegionOutsideDomain("probe interval must lie inside U");

  ConvexityReport report;
  report.region = {probe_lo, probe_hi, probe_lo, probe_hi};
  report.samples = pairs;
  std::mt19937_64 rng(rng_seed);
  for (long i = 0; i < pairs; ++i) {
    double u = uniform(rng, probe_lo, probe_hi);
    double v = uniform(rng, probe_lo, probe_hi);
    double tu = T(u), tv = T(v);
    if (!std::isfinite(tu) || !std::isfinite(tv) || !k.in_interior(tu) ||
        !k.in_interior(tv))
      throw MappingUndefined("T must map probes into U");
    double lhs = (u - v) * (tu - tv);
    double rhs = symmetrized_distance(k, tu, tv);
    double magnitude = std::max(std::abs(lhs), std::abs(rhs));
    if (rhs - lhs > 1e-9 * (1.0 + magnitude))
      report.midpoint_violations.push_back({{u, v}, {tu, tv}, rhs - lhs});
  }
  finalize(report);
  return report;
}

}  // namespace bregman
