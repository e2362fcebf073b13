#include "bregman/bregman_core.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "bregman/errors.hpp"
#include "bregman/hull.hpp"
#include "bregman/transform.hpp"

namespace bregman {

namespace {

void require_common_domain(const SampledFunction& f, const LegendreKernel& k) {
  for (Eigen::Index i = 0; i < f.size(); ++i)
    if (is_finite(f.value(i)) && is_finite(k.phi(f.x(i)))) return;
  throw EmptyCommonDomain("dom f and dom phi share no grid node: " + f.label());
}

double tie_tolerance(double min_value) {
  return 1e-10 * (1.0 + std::abs(min_value));
}

}  // namespace

SampledFunction envelope(const SampledFunction& f, const LegendreKernel& k,
                         double lambda, EnvelopeSide side) {
  if (!(lambda > 0)) throw NonPositiveLambda("envelope");
  require_common_domain(f, k);

  const Eigen::ArrayXd& xs = f.grid().nodes();
  const Eigen::ArrayXd& fv = f.values();
  const Eigen::Index n = f.size();
  Eigen::ArrayXd phix(n);
  for (Eigen::Index i = 0; i < n; ++i) phix[i] = k.phi(xs[i]);

  Eigen::ArrayXd out(n);
  if (side == EnvelopeSide::kLeft) {
    for (Eigen::Index j = 0; j < n; ++j) {
      double y = xs[j];
      if (!k.in_interior(y)) {
        out[j] = kInf;
        continue;
      }
      double phiy = k.phi(y), gy = k.grad(y);
      double best = kInf;
      for (Eigen::Index i = 0; i < n; ++i) {
        double v = fv[i] + (phix[i] - phiy - gy * (xs[i] - y)) / lambda;
        if (v < best) best = v;
      }
      out[j] = best;
    }
  } else {
    Eigen::ArrayXd gradx(n);
    for (Eigen::Index i = 0; i < n; ++i)
      gradx[i] = k.in_interior(xs[i]) ? k.grad(xs[i]) : 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      double y = xs[j];
      double phiy = k.phi(y);
      double best = kInf;
      if (is_finite(phiy)) {
        for (Eigen::Index i = 0; i < n; ++i) {
          if (!k.in_interior(xs[i])) continue;
          double v = fv[i] + (phiy - phix[i] - gradx[i] * (y - xs[i])) / lambda;
          if (v < best) best = v;
        }
      }
      out[j] = best;
    }
  }
  return SampledFunction(f.grid(), std::move(out),
                         (side == EnvelopeSide::kLeft ? "env(" : "renv(") +
                             f.label() + ")");
}

SampledFunction envelope_via_conjugate(const SampledFunction& f,
                                       const LegendreKernel& k,
                                       double lambda) {
  if (!(lambda > 0)) throw NonPositiveLambda("envelope_via_conjugate");
  require_common_domain(f, k);

  // env = (phi^* - (lambda f + phi)^*)/lambda at s = grad(y); the conjugate
  // is evaluated exactly from the hull, so no dual grid enters.
  SampledFunction g = add_pointwise(f, k.phi, 1.0 / lambda);
  Eigen::ArrayXd gl(g.size());
  for (Eigen::Index i = 0; i < g.size(); ++i)
    gl[i] = is_inf(g.value(i)) ? kInf : lambda * g.value(i);
  PLConvex hull = PLConvex::of(SampledFunction(f.grid(), std::move(gl), "lf+phi"));

  const Eigen::ArrayXd& xs = f.grid().nodes();
  Eigen::ArrayXd out(f.size());
  // grad is increasing, so walking nodes in order keeps slopes sorted.
  std::vector<double> slopes;
  std::vector<Eigen::Index> idx;
  for (Eigen::Index j = 0; j < f.size(); ++j) {
    if (k.in_interior(xs[j])) {
      slopes.push_back(k.grad(xs[j]));
      idx.push_back(j);
    } else {
      out[j] = kInf;
    }
  }
  Eigen::Map<Eigen::ArrayXd> s(slopes.data(),
                               static_cast<Eigen::Index>(slopes.size()));
  Eigen::ArrayXd conj = hull.conjugate_on(s);
  for (size_t t = 0; t < idx.size(); ++t)
    out[idx[t]] = (k.conj(slopes[t]) - conj[static_cast<Eigen::Index>(t)]) / lambda;
  return SampledFunction(f.grid(), std::move(out), "env*(" + f.label() + ")");
}

ProxSet prox(const SampledFunction& f, const LegendreKernel& k, double lambda,
             double y) {
  if (!(lambda > 0)) throw NonPositiveLambda("prox");
  if (!k.in_interior(y)) throw BasePointOutsideU("prox base point not in U");
  require_common_domain(f, k);

  const Eigen::ArrayXd& xs = f.grid().nodes();
  const Eigen::ArrayXd& fv = f.values();
  const Eigen::Index n = f.size();
  double phiy = k.phi(y), gy = k.grad(y);
  Eigen::ArrayXd obj(n);
  double best = kInf;
  for (Eigen::Index i = 0; i < n; ++i) {
    double phix = k.phi(xs[i]);
    obj[i] = fv[i] + (phix - phiy - gy * (xs[i] - y)) / lambda;
    if (obj[i] < best) best = obj[i];
  }

  ProxSet set;
  set.base_point = y;
  set.lambda = lambda;
  set.min_value = best;
  double tol = tie_tolerance(best);
  Eigen::Index run_start = -1;
  for (Eigen::Index i = 0; i <= n; ++i) {
    bool in = i < n && obj[i] <= best + tol;
    if (in && run_start < 0) run_start = i;
    if (!in && run_start >= 0) {
      set.minimizers.emplace_back(xs[run_start], xs[i - 1]);
      run_start = -1;
    }
  }
  return set;
}

SampledFunction prox_hull(const SampledFunction& f, const LegendreKernel& k,
                          double lambda) {
  if (!(lambda > 0)) throw NonPositiveLambda("prox_hull");
  SampledFunction g = add_pointwise(f, k.phi, 1.0 / lambda);
  SampledFunction biconj = lower_convex_envelope(g).second;
  Eigen::ArrayXd out(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i)
    out[i] = ext_sub(biconj.value(i), k.phi(f.x(i)) / lambda);
  return SampledFunction(f.grid(), std::move(out), "hull(" + f.label() + ")");
}

namespace {

// Growing-tails certificate for f + phi/lambda on the grid. A side is
// tested only when the kernel domain is unbounded there; a grid end that
// abuts a finite domain boundary is not a tail toward infinity. Vacuous
// tails (fewer than two finite values) pass but flag the caveat.
bool tails_grow(const SampledFunction& f, const LegendreKernel& k,
                double lambda, bool& vacuous) {
  const Eigen::Index n = f.size();
  const Eigen::Index m = std::max<Eigen::Index>(2, (n + 19) / 20);
  auto g = [&](Eigen::Index i) {
    double a = f.value(i), b = k.phi(f.x(i));
    return (is_inf(a) || is_inf(b)) ? kInf : a + b / lambda;
  };
  vacuous = false;
  if (!std::isfinite(k.hi)) {
    Eigen::Index finite_right = 0;
    for (Eigen::Index i = n - m; i + 1 < n; ++i) {
      double a = g(i), b = g(i + 1);
      if (is_finite(a) && is_finite(b) && b < a) return false;
      if (is_finite(b)) ++finite_right;
    }
    vacuous = vacuous || finite_right < 2;
  }
  if (!std::isfinite(k.lo)) {
    Eigen::Index finite_left = 0;
    for (Eigen::Index i = m - 1; i > 0; --i) {
      double a = g(i), b = g(i - 1);
      if (is_finite(a) && is_finite(b) && b < a) return false;
      if (is_finite(b)) ++finite_left;
    }
    vacuous = vacuous || finite_left < 2;
  }
  return true;
}

}  // namespace

ThresholdEstimate prox_bound_threshold(const SampledFunction& f,
                                       const LegendreKernel& k) {
  require_common_domain(f, k);
  constexpr double kLambdaMax = 1e6, kLambdaMin = 1e-9;
  ThresholdEstimate est;
  bool vacuous = false;
  if (tails_grow(f, k, kLambdaMax, vacuous)) {
    est.lower_certified = kInf;
    est.upper_witness = kInf;
    est.grid_caveat = vacuous;
    return est;
  }
  if (!tails_grow(f, k, kLambdaMin, vacuous)) {
    est.lower_certified = 0.0;
    est.upper_witness = kLambdaMin;
    est.grid_caveat = true;
    return est;
  }
  double lo = kLambdaMin, hi = kLambdaMax;
  for (int it = 0; it < 80; ++it) {
    double mid = std::sqrt(lo * hi);  // geometric: the range spans 15 decades
    (tails_grow(f, k, mid, vacuous) ? lo : hi) = mid;
  }
  est.lower_certified = lo;
  est.upper_witness = hi;
  est.grid_caveat = vacuous;
  return est;
}

SampledFunction anisotropic_envelope(const SampledFunction& f,
                                     const LegendreKernel& k,
                                     const Grid1D& out_grid) {
  Eigen::ArrayXd out(out_grid.size());
  for (Eigen::Index i = 0; i < out_grid.size(); ++i) {
    double x = out_grid[i];
    double best = kInf;
    for (Eigen::Index j = 0; j < f.size(); ++j) {
      if (!is_finite(f.value(j))) continue;
      double v = f.value(j) + k.phi(x - f.x(j));
      if (v < best) best = v;
    }
    out[i] = best;
  }
  return SampledFunction(out_grid, std::move(out), "aenv(" + f.label() + ")");
}

double anisotropic_prox(const SampledFunction& f, const LegendreKernel& k,
                        double x) {
  double best = kInf, arg = 0.0;
  for (Eigen::Index j = 0; j < f.size(); ++j) {
    if (!is_finite(f.value(j))) continue;
    double v = f.value(j) + k.phi(x - f.x(j));
    if (v < best) {
      best = v;
      arg = f.x(j);
    }
  }
  if (!is_finite(best))
    throw PointOutsideSumDomain("anisotropic_prox: x not in dom f + dom phi");
  return arg;
}

ProxSet bregman_project(const Grid1D& grid,
                        const std::vector<std::pair<double, double>>& C,
                        const LegendreKernel& k, double lambda, double y) {
  Eigen::ArrayXd v = Eigen::ArrayXd::Constant(grid.size(), kInf);
  bool any = false;
  for (const auto& [a, b] : C) {
    if (a == b) {
      v[grid.nearest(a)] = 0.0;
      any = true;
      continue;
    }
    double tol = 1e-12 * (1.0 + std::abs(a) + std::abs(b));
    for (Eigen::Index i = 0; i < grid.size(); ++i)
      if (grid[i] >= a - tol && grid[i] <= b + tol) {
        v[i] = 0.0;
        any = true;
      }
  }
  if (!any) throw EmptySet("bregman_project: C misses the grid");
  return prox(SampledFunction(grid, std::move(v), "ind_C"), k, lambda, y);
}

VerificationReport prox_via_anisotropic_check(
    const SampledFunction& f, const LegendreKernel& k, double lambda,
    const std::vector<double>& probe_points) {
  if (!(lambda > 0)) throw NonPositiveLambda("prox_via_anisotropic_check");
  if (!f.is_convex_data(1e-9 * (1.0 + f.slope_bound())))
    throw NonconvexInput("prox_via_anisotropic_check needs convex data");
  require_common_domain(f, k);

  // U-nodes available as probe bases.
  std::vector<double> probes = probe_points;
  std::vector<Eigen::Index> unodes;
  for (Eigen::Index i = 0; i < f.size(); ++i)
    if (k.in_interior(f.x(i))) unodes.push_back(i);
  if (probes.empty()) {
    Eigen::Index m = static_cast<Eigen::Index>(unodes.size());
    Eigen::Index lo = m / 5, hi = m - 1 - m / 5;
    for (int t = 0; t < 21; ++t)
      probes.push_back(f.x(unodes[lo + (hi - lo) * t / 20]));
  }

  // Dual grid wide enough to hold every aprox argmin
  // s* = (grad(y) - grad(prox(y)))/lambda, and fine enough that the dual
  // quantization stays below the grid-step tolerance.
  double gmax = 0.0;
  for (Eigen::Index i : unodes) gmax = std::max(gmax, std::abs(k.grad(f.x(i))));
  for (double y : probes) gmax = std::max(gmax, std::abs(k.grad(y)));
  double span = 1.2 * (2.0 * gmax / lambda + 1.0);
  double h = f.grid().step();
  Eigen::Index m = std::max<Eigen::Index>(
      2 * f.size(), static_cast<Eigen::Index>(std::ceil(2 * span / (h / 8))) + 1);
  m = std::min<Eigen::Index>(m, 2'000'000);
  Grid1D dual = Grid1D::linspace(-span, span, m);
  SampledFunction fstar = legendre_transform(f, dual);

  // psi = (1/lambda) epi-scaled phi^*: psi(t) = phi^*(lambda t)/lambda.
  auto psi = [&](double t) { return k.conj(lambda * t) / lambda; };

  SupError sup;
  for (double y : probes) {
    ProxSet left = prox(f, k, lambda, y);
    double z = k.grad(y) / lambda;
    double best = kInf, sbest = 0.0;
    for (Eigen::Index j = 0; j < dual.size(); ++j) {
      double v = fstar.value(j) + psi(z - dual[j]);
      if (v < best) {
        best = v;
        sbest = dual[j];
      }
    }
    double right = k.conj_grad(k.grad(y) - lambda * sbest);
    auto [a, b] = left.hull();
    double dist = right < a ? a - right : (right > b ? right - b : 0.0);
    sup.feed(dist, y);
  }
  return VerificationReport::make(
      "prox_anisotropic_decomposition(" + f.label() + "," + k.name + ")",
      sup.value, sup.witness, 2.0 * h, {{"h", h}, {"lambda", lambda}});
}

VerificationReport envelope_gradient_check(const SampledFunction& f,
                                           const LegendreKernel& k,
                                           double lambda) {
  SampledFunction env = envelope(f, k, lambda);
  const Eigen::ArrayXd& xs = f.grid().nodes();
  const Eigen::Index n = f.size();
  // Cap the probe count; prox costs O(n) per base point.
  Eigen::Index stride = std::max<Eigen::Index>(1, n / 201);
  SupError sup;
  long skipped = 0;
  for (Eigen::Index j = 1; j + 1 < n; j += stride) {
    double y = xs[j];
    if (!k.in_interior(y) || !k.in_interior(xs[j - 1]) ||
        !k.in_interior(xs[j + 1]))
      continue;
    if (!is_finite(env.value(j - 1)) || !is_finite(env.value(j + 1))) continue;
    ProxSet ps = prox(f, k, lambda, y);
    if (!ps.singleton()) {
      ++skipped;
      continue;
    }
    double fd = (env.value(j + 1) - env.value(j - 1)) / (xs[j + 1] - xs[j - 1]);
    double formula = k.hess(y) * (y - ps.point()) / lambda;
    sup.feed(std::abs(fd - formula), y);
  }
  double h = f.grid().step();
  return VerificationReport::make(
      "envelope_gradient_formula(" + f.label() + "," + k.name + ")", sup.value,
      sup.witness, 10.0 * h,
      {{"h", h}, {"lambda", lambda}, {"skipped", double(skipped)}});
}

}  // namespace bregman
