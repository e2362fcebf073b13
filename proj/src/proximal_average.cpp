#include "bregman/proximal_average.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bregman/errors.hpp"
#include "bregman/hull.hpp"
#include "bregman/oracle.hpp"
#include "bregman/transform.hpp"

namespace bregman {

namespace {

std::string cell_tag(const AverageSpec& spec) {
  std::ostringstream os;
  os << "a=" << spec.alpha << ",l=" << spec.lambda;
  return os.str();
}

// f_i + phi/lambda, the data both conjugate routes start from.
SampledFunction shifted(const SampledFunction& f, const LegendreKernel& k,
                        double lambda) {
  return add_pointwise(f, k.phi, 1.0 / lambda, f.label() + "+phi/l");
}

void slope_range_of(const SampledFunction& g, double& smin, double& smax) {
  PLConvex hull = PLConvex::of(g);
  if (hull.has_segments()) {
    smin = hull.slope_min();
    smax = hull.slope_max();
  } else {
    smin = smax = 0.0;
  }
}

// First/last node where both f and phi are finite.
void finite_range(const SampledFunction& f, const LegendreKernel& k,
                  double& xmin, double& xmax) {
  xmin = kInf;
  xmax = -kInf;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    if (!is_finite(f.value(i)) || !is_finite(k.phi(f.x(i)))) continue;
    xmin = std::min(xmin, f.x(i));
    xmax = std::max(xmax, f.x(i));
  }
}

Eigen::ArrayXd weighted_conjugate_sum(const Eigen::ArrayXd& c1,
                                      const Eigen::ArrayXd& c2, double alpha) {
  if (alpha == 1.0) return c1;
  if (alpha == 0.0) return c2;
  return alpha * c1 + (1.0 - alpha) * c2;
}

// alpha f1(x) + (1-alpha) f2(x), zero-weight terms dropped.
double arithmetic_combination(double v1, double v2, double alpha) {
  double acc = 0.0;
  if (alpha > 0.0) {
    if (is_inf(v1)) return kInf;
    acc += alpha * v1;
  }
  if (alpha < 1.0) {
    if (is_inf(v2)) return kInf;
    acc += (1.0 - alpha) * v2;
  }
  return acc;
}

}  // namespace

AverageValidation validate(const AverageSpec& spec) {
  if (!(spec.lambda > 0)) throw NonPositiveLambda("average needs lambda > 0");
  if (!(spec.alpha >= 0.0 && spec.alpha <= 1.0))
    throw Error("alpha must lie in [0, 1]");
  if (!(spec.f1.grid() == spec.f2.grid()))
    throw BadGrid("f1 and f2 must share one grid");

  AverageValidation v;
  v.threshold1 = prox_bound_threshold(spec.f1, spec.kernel);
  v.threshold2 = prox_bound_threshold(spec.f2, spec.kernel);
  if (!(spec.lambda < v.threshold1.lower_certified) ||
      !(spec.lambda < v.threshold2.lower_certified)) {
    std::ostringstream os;
    os << "lambda=" << spec.lambda << " not below certified thresholds ("
       << v.threshold1.lower_certified << ", " << v.threshold2.lower_certified
       << ")";
    throw ThresholdViolated(os.str());
  }
  if (!spec.kernel.a5_compliant)
    v.warnings.push_back("kernel " + spec.kernel.name +
                         " breaks a smoothness/closedness assumption of the "
                         "average construction; results may lose guarantees");
  return v;
}

Grid1D average_dual_grid(const AverageSpec& spec, double max_step) {
  SampledFunction g1 = shifted(spec.f1, spec.kernel, spec.lambda);
  SampledFunction g2 = shifted(spec.f2, spec.kernel, spec.lambda);
  double a0, a1, b0, b1;
  slope_range_of(g1, a0, a1);
  slope_range_of(g2, b0, b1);
  double smin = std::min(a0, b0), smax = std::max(a1, b1);
  double w = smax - smin;
  if (!(w > 1e-9 * (1.0 + std::abs(smin) + std::abs(smax)))) {
    double half = std::max(1.0, 0.1 * (1.0 + std::abs(smin)));
    smin -= half;
    smax += half;
  } else {
    smin -= 0.1 * w;
    smax += 0.1 * w;
  }
  Eigen::Index n = spec.f1.grid().size();
  if (is_finite(max_step) && max_step > 0) {
    auto needed =
        static_cast<Eigen::Index>(std::ceil((smax - smin) / max_step)) + 1;
    n = std::max(n, needed);
  }
  n = std::min<Eigen::Index>(n, 4'000'000);

  // The weighted conjugate sum is piecewise linear with knots at the hull
  // slopes of the summands; carrying those knots as dual nodes makes the
  // back-transform exact instead of first-order accurate.
  std::vector<double> nodes(n);
  for (Eigen::Index i = 0; i < n; ++i)
    nodes[i] = smin + (smax - smin) * double(i) / double(n - 1);
  auto push_slopes = [&](const SampledFunction& g) {
    PLConvex hull = PLConvex::of(g);
    for (Eigen::Index i = 0; i + 1 < hull.size(); ++i)
      nodes.push_back((hull.vs()[i + 1] - hull.vs()[i]) /
                      (hull.xs()[i + 1] - hull.xs()[i]));
  };
  push_slopes(g1);
  push_slopes(g2);
  std::sort(nodes.begin(), nodes.end());
  std::vector<double> dedup;
  dedup.reserve(nodes.size());
  for (double v : nodes)
    if (dedup.empty() || v > dedup.back() + 1e-14 * (1.0 + std::abs(v)))
      dedup.push_back(v);
  return Grid1D(Eigen::Map<Eigen::ArrayXd>(
      dedup.data(), static_cast<Eigen::Index>(dedup.size())));
}

SampledFunction proximal_average(const AverageSpec& spec,
                                 const AverageValidation* prevalidated) {
  if (!prevalidated) validate(spec);
  const LegendreKernel& k = spec.kernel;
  const Grid1D& grid = spec.f1.grid();
  Grid1D dual = spec.dual_grid ? *spec.dual_grid : average_dual_grid(spec);

  SampledFunction g1 = shifted(spec.f1, k, spec.lambda);
  SampledFunction g2 = shifted(spec.f2, k, spec.lambda);
  Eigen::ArrayXd c1 = PLConvex::of(g1).conjugate_on(dual.nodes());
  Eigen::ArrayXd c2 = PLConvex::of(g2).conjugate_on(dual.nodes());
  Eigen::ArrayXd w = weighted_conjugate_sum(c1, c2, spec.alpha);

  PLConvex whull = PLConvex::of(SampledFunction(dual, std::move(w), "wsum"));
  std::vector<bool> interior;
  Eigen::ArrayXd back =
      whull.conjugate_on(grid.nodes(), &interior, 0.5 * grid.step());

  Eigen::ArrayXd out(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    out[i] = interior[i] ? ext_sub(back[i], k.phi(grid[i]) / spec.lambda)
                         : kInf;
  return SampledFunction(grid, std::move(out),
                         "average(" + spec.f1.label() + "," + spec.f2.label() +
                             ";" + cell_tag(spec) + ")");
}

SampledFunction proximal_average_scaled_route(const AverageSpec& spec) {
  validate(spec);
  const LegendreKernel& k = spec.kernel;
  const Grid1D& grid = spec.f1.grid();
  Grid1D dual = spec.dual_grid ? *spec.dual_grid : average_dual_grid(spec);
  Grid1D scaled_dual(dual.nodes() * spec.lambda);

  auto scaled = [&](const SampledFunction& f) {
    Eigen::ArrayXd v(f.size());
    for (Eigen::Index i = 0; i < f.size(); ++i) {
      double a = f.value(i), b = k.phi(f.x(i));
      v[i] = (is_inf(a) || is_inf(b)) ? kInf : spec.lambda * a + b;
    }
    return SampledFunction(f.grid(), std::move(v), "l*" + f.label() + "+phi");
  };
  Eigen::ArrayXd c1 = PLConvex::of(scaled(spec.f1)).conjugate_on(scaled_dual.nodes());
  Eigen::ArrayXd c2 = PLConvex::of(scaled(spec.f2)).conjugate_on(scaled_dual.nodes());
  Eigen::ArrayXd w = weighted_conjugate_sum(c1, c2, spec.alpha);

  PLConvex whull =
      PLConvex::of(SampledFunction(scaled_dual, std::move(w), "wsum_scaled"));
  std::vector<bool> interior;
  Eigen::ArrayXd back =
      whull.conjugate_on(grid.nodes(), &interior, 0.5 * grid.step());

  Eigen::ArrayXd out(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    out[i] = interior[i] ? ext_sub(back[i] / spec.lambda,
                                   k.phi(grid[i]) / spec.lambda)
                         : kInf;
  return SampledFunction(grid, std::move(out),
                         "average_scaled(" + cell_tag(spec) + ")");
}

SampledFunction proximal_average_oracle(const AverageSpec& spec) {
  validate(spec);
  const LegendreKernel& k = spec.kernel;
  const Grid1D& grid = spec.f1.grid();
  Grid1D dual = spec.dual_grid ? *spec.dual_grid : average_dual_grid(spec);

  SampledFunction c1 = oracle::brute_conjugate(shifted(spec.f1, k, spec.lambda), dual);
  SampledFunction c2 = oracle::brute_conjugate(shifted(spec.f2, k, spec.lambda), dual);
  Eigen::ArrayXd w = weighted_conjugate_sum(c1.values(), c2.values(), spec.alpha);

  double a1, b1, a2, b2;
  finite_range(spec.f1, k, a1, b1);
  finite_range(spec.f2, k, a2, b2);
  double lo = spec.alpha * a1 + (1.0 - spec.alpha) * a2;
  double hi = spec.alpha * b1 + (1.0 - spec.alpha) * b2;
  double half_cell = 0.5 * grid.step();

  Eigen::ArrayXd out(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    double x = grid[i];
    if (x < lo - half_cell || x > hi + half_cell) {
      out[i] = kInf;
      continue;
    }
    double best = -kInf;
    for (Eigen::Index j = 0; j < dual.size(); ++j)
      best = std::max(best, x * dual[j] - w[j]);
    out[i] = ext_sub(best, k.phi(x) / spec.lambda);
  }
  return SampledFunction(grid, std::move(out),
                         "average_oracle(" + cell_tag(spec) + ")");
}

VerificationReport verify_envelope_identity(const AverageSpec& spec,
                                            double tolerance,
                                            bool use_oracle) {
  const LegendreKernel& k = spec.kernel;
  SampledFunction P =
      use_oracle ? proximal_average_oracle(spec) : proximal_average(spec);
  auto env = [&](const SampledFunction& f) {
    return use_oracle ? oracle::brute_envelope(f, k, spec.lambda, f.grid())
                      : envelope(f, k, spec.lambda);
  };
  SampledFunction envP = env(P);
  SampledFunction env1 = env(spec.f1);
  SampledFunction env2 = env(spec.f2);

  SupError sup;
  for (Eigen::Index i = 0; i < P.size(); ++i) {
    if (!k.in_interior(P.x(i))) continue;
    double combo =
        arithmetic_combination(env1.value(i), env2.value(i), spec.alpha);
    if (!is_finite(combo) || !is_finite(envP.value(i))) continue;
    sup.feed(std::abs(envP.value(i) - combo), P.x(i));
  }
  return VerificationReport::make(
      "envelope_identity(" + spec.f1.label() + "," + spec.f2.label() + "," +
          k.name + ";" + cell_tag(spec) + ")",
      sup.value, sup.witness, tolerance,
      {{"h", spec.f1.grid().step()},
       {"lambda", spec.lambda},
       {"alpha", spec.alpha}});
}

VerificationReport verify_prox_identity(const AverageSpec& spec,
                                        const std::vector<double>& probes,
                                        double tolerance) {
  const LegendreKernel& k = spec.kernel;
  SampledFunction P = proximal_average(spec);
  SupError sup;
  for (double y : probes) {
    auto [pa, pb] = prox(P, k, spec.lambda, y).hull();
    auto [a1, b1] = prox(spec.f1, k, spec.lambda, y).hull();
    auto [a2, b2] = prox(spec.f2, k, spec.lambda, y).hull();
    double ca = spec.alpha * a1 + (1.0 - spec.alpha) * a2;
    double cb = spec.alpha * b1 + (1.0 - spec.alpha) * b2;
    double hausdorff = std::max(std::abs(pa - ca), std::abs(pb - cb));
    sup.feed(hausdorff, y);
  }
  return VerificationReport::make(
      "prox_identity(" + spec.f1.label() + "," + spec.f2.label() + "," +
          k.name + ";" + cell_tag(spec) + ")",
      sup.value, sup.witness, tolerance,
      {{"h", spec.f1.grid().step()},
       {"lambda", spec.lambda},
       {"alpha", spec.alpha}});
}

std::vector<VerificationReport> verify_duality(const AverageSpec& spec,
                                               double tolerance,
                                               AnisotropicFormMode mode) {
  const LegendreKernel& k = spec.kernel;
  const double lambda = spec.lambda;
  SampledFunction P = proximal_average(spec);
  Grid1D dual = spec.dual_grid ? *spec.dual_grid : average_dual_grid(spec);

  auto scale_shift = [&](const SampledFunction& f) {
    Eigen::ArrayXd v(f.size());
    for (Eigen::Index i = 0; i < f.size(); ++i) {
      double a = f.value(i), b = k.phi(f.x(i));
      v[i] = (is_inf(a) || is_inf(b)) ? kInf : lambda * a + b;
    }
    return SampledFunction(f.grid(), std::move(v), "l" + f.label() + "+phi");
  };

  std::vector<VerificationReport> reports;
  {
    SampledFunction lhs = legendre_transform(scale_shift(P), dual);
    Eigen::ArrayXd r1 =
        PLConvex::of(scale_shift(spec.f1)).conjugate_on(dual.nodes());
    Eigen::ArrayXd r2 =
        PLConvex::of(scale_shift(spec.f2)).conjugate_on(dual.nodes());
    Eigen::ArrayXd rhs = weighted_conjugate_sum(r1, r2, spec.alpha);
    SupError sup;
    for (Eigen::Index i = 0; i < dual.size(); ++i)
      sup.feed(std::abs(lhs.value(i) - rhs[i]), dual[i]);
    reports.push_back(VerificationReport::make(
        "duality_conjugate_identity(" + spec.f1.label() + "," +
            spec.f2.label() + "," + k.name + ";" + cell_tag(spec) + ")",
        sup.value, sup.witness, tolerance,
        {{"h", spec.f1.grid().step()},
         {"lambda", lambda},
         {"alpha", spec.alpha}}));
  }

  if (mode == AnisotropicFormMode::kSkip) return reports;
  double tol1 = 1e-9 * (1.0 + spec.f1.slope_bound());
  double tol2 = 1e-9 * (1.0 + spec.f2.slope_bound());
  bool convex = spec.f1.is_convex_data(tol1) && spec.f2.is_convex_data(tol2);
  if (!convex) {
    if (mode == AnisotropicFormMode::kRequire)
      throw NonconvexInputForAnisotropicForm(
          "anisotropic duality form needs convex inputs");
    return reports;
  }

  // P^* box psi = alpha f1^* box psi + (1-alpha) f2^* box psi with
  // psi = (1/lambda) epi-scaled phi^*, all on the dual grid.
  auto psi = [&](double t) { return k.conj(lambda * t) / lambda; };
  auto aniso = [&](const SampledFunction& fstar) {
    Eigen::ArrayXd out(dual.size());
    for (Eigen::Index i = 0; i < dual.size(); ++i) {
      double best = kInf;
      for (Eigen::Index j = 0; j < dual.size(); ++j) {
        double v = fstar.value(j) + psi(dual[i] - dual[j]);
        if (v < best) best = v;
      }
      out[i] = best;
    }
    return out;
  };
  Eigen::ArrayXd lhs = aniso(legendre_transform(P, dual));
  Eigen::ArrayXd e1 = aniso(legendre_transform(spec.f1, dual));
  Eigen::ArrayXd e2 = aniso(legendre_transform(spec.f2, dual));
  Eigen::ArrayXd combo = weighted_conjugate_sum(e1, e2, spec.alpha);
  SupError sup;
  for (Eigen::Index i = 0; i < dual.size(); ++i)
    sup.feed(std::abs(lhs[i] - combo[i]), dual[i]);
  reports.push_back(VerificationReport::make(
      "duality_anisotropic_identity(" + spec.f1.label() + "," +
          spec.f2.label() + "," + k.name + ";" + cell_tag(spec) + ")",
      sup.value, sup.witness, tolerance,
      {{"h", spec.f1.grid().step()},
       {"lambda", lambda},
       {"alpha", spec.alpha}}));
  return reports;
}

std::pair<double, double> duality_conjugate_point(const AverageSpec& spec,
                                                  double s) {
  const LegendreKernel& k = spec.kernel;
  SampledFunction P = proximal_average(spec);
  auto scale_shift = [&](const SampledFunction& f) {
    Eigen::ArrayXd v(f.size());
    for (Eigen::Index i = 0; i < f.size(); ++i) {
      double a = f.value(i), b = k.phi(f.x(i));
      v[i] = (is_inf(a) || is_inf(b)) ? kInf : spec.lambda * a + b;
    }
    return SampledFunction(f.grid(), std::move(v), "ss");
  };
  double lhs = PLConvex::of(scale_shift(P)).conjugate_at(s);
  double r1 = PLConvex::of(scale_shift(spec.f1)).conjugate_at(s);
  double r2 = PLConvex::of(scale_shift(spec.f2)).conjugate_at(s);
  double rhs = spec.alpha == 1.0   ? r1
               : spec.alpha == 0.0 ? r2
                                   : spec.alpha * r1 + (1.0 - spec.alpha) * r2;
  return {lhs, rhs};
}

namespace {

// Epi-average of the convexified, dom(phi)-restricted inputs.
SampledFunction epi_average(const AverageSpec& spec, bool use_oracle) {
  const LegendreKernel& k = spec.kernel;
  auto restrict_conv = [&](const SampledFunction& f) {
    Eigen::ArrayXd v(f.size());
    for (Eigen::Index i = 0; i < f.size(); ++i)
      v[i] = is_finite(k.phi(f.x(i))) ? f.value(i) : kInf;
    SampledFunction masked(f.grid(), std::move(v), f.label() + "|domphi");
    return lower_convex_envelope(masked).second;
  };
  SampledFunction c1 = restrict_conv(spec.f1);
  SampledFunction c2 = restrict_conv(spec.f2);
  if (spec.alpha == 0.0) return c2;
  if (spec.alpha == 1.0) return c1;
  const Grid1D& grid = spec.f1.grid();
  SampledFunction e1 = epi_scale(c1, spec.alpha, grid);
  SampledFunction e2 = epi_scale(c2, 1.0 - spec.alpha, grid);
  return use_oracle ? oracle::brute_infconv(e1, e2, grid)
                    : inf_convolution(e1, e2, grid);
}

double sup_abs_diff_common(const SampledFunction& a, const SampledFunction& b,
                           const LegendreKernel* interior_of = nullptr) {
  double sup = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (interior_of && !interior_of->in_interior(a.x(i))) continue;
    if (!is_finite(a.value(i)) || !is_finite(b.value(i))) continue;
    sup = std::max(sup, std::abs(a.value(i) - b.value(i)));
  }
  return sup;
}

}  // namespace

SweepResult sweep(const AverageSpec& spec_template,
                  const std::vector<double>& alphas,
                  const std::vector<double>& lambdas,
                  const SweepOptions& options) {
  SweepResult result;
  const LegendreKernel& k = spec_template.kernel;
  const double h = spec_template.f1.grid().step();

  // One validation per pair; thresholds do not depend on (alpha, lambda).
  AverageValidation base;
  base.threshold1 = prox_bound_threshold(spec_template.f1, k);
  base.threshold2 = prox_bound_threshold(spec_template.f2, k);
  double certified = std::min(base.threshold1.lower_certified,
                              base.threshold2.lower_certified);
  for (double l : lambdas)
    if (!(l > 0) || !(l < certified))
      throw ThresholdViolated("sweep lambda outside certified range");

  auto make_spec = [&](double a, double l) {
    AverageSpec s = spec_template;
    s.alpha = a;
    s.lambda = l;
    s.dual_grid = average_dual_grid(s, options.dual_step_factor * h);
    return s;
  };

  for (double a : alphas)
    for (double l : lambdas) {
      AverageSpec s = make_spec(a, l);
      result.cells.push_back(
          {a, l, options.use_oracle ? proximal_average_oracle(s)
                                    : proximal_average(s, &base)});
    }

  auto cell = [&](double a, double l) -> const SampledFunction& {
    for (const auto& c : result.cells)
      if (c.alpha == a && c.lambda == l) return c.average;
    throw Error("sweep cell lookup");
  };

  // (a) pointwise nonincrease in lambda at fixed alpha.
  std::vector<double> lam_sorted = lambdas;
  std::sort(lam_sorted.begin(), lam_sorted.end());
  for (double a : alphas) {
    SupError sup;
    for (size_t t = 0; t + 1 < lam_sorted.size(); ++t) {
      const SampledFunction& p_small = cell(a, lam_sorted[t]);
      const SampledFunction& p_big = cell(a, lam_sorted[t + 1]);
      for (Eigen::Index i = 0; i < p_small.size(); ++i) {
        if (!is_finite(p_small.value(i)) || !is_finite(p_big.value(i)))
          continue;
        sup.feed(p_big.value(i) - p_small.value(i), p_small.x(i));
      }
    }
    result.reports.push_back(VerificationReport::make(
        "lambda_monotonicity(a=" + std::to_string(a) + ")", sup.value,
        sup.witness, options.monotonicity_slack, {{"alpha", a}, {"h", h}}));
  }

  // (b) epi-average <= P <= arithmetic average, slack 5hL.
  for (const auto& c : result.cells) {
    AverageSpec s = spec_template;
    s.alpha = c.alpha;
    s.lambda = c.lambda;
    SampledFunction lower = epi_average(s, options.use_oracle);
    double L = std::max({spec_template.f1.slope_bound(),
                         spec_template.f2.slope_bound(),
                         c.average.slope_bound()});
    SupError sup;
    for (Eigen::Index i = 0; i < c.average.size(); ++i) {
      double x = c.average.x(i);
      if (!is_finite(k.phi(x))) continue;
      double up = arithmetic_combination(spec_template.f1.value(i),
                                         spec_template.f2.value(i), c.alpha);
      double pv = c.average.value(i);
      if (is_finite(up) && is_finite(pv)) sup.feed(pv - up, x);
      double lo = lower.value(i);
      if (is_finite(lo) && is_finite(pv)) sup.feed(lo - pv, x);
    }
    result.reports.push_back(VerificationReport::make(
        "sandwich(a=" + std::to_string(c.alpha) +
            ",l=" + std::to_string(c.lambda) + ")",
        sup.value, sup.witness, 5.0 * h * L,
        {{"alpha", c.alpha}, {"lambda", c.lambda}, {"h", h}, {"L", L}}));
  }

  // (c) alpha -> 0: distance to the hull of f2 shrinks (per lambda).
  if (alphas.size() >= 2) {
    std::vector<double> al_sorted = alphas;
    std::sort(al_sorted.begin(), al_sorted.end(), std::greater<>());
    for (double l : lambdas) {
      SampledFunction hull2 = prox_hull(spec_template.f2, k, l);
      double worst = -kInf, worst_at = 0.0, prev = kInf;
      for (double a : al_sorted) {
        double d = sup_abs_diff_common(cell(a, l), hull2);
        if (is_finite(prev) && d - prev > worst) {
          worst = d - prev;
          worst_at = a;
        }
        prev = d;
      }
      result.reports.push_back(VerificationReport::make(
          "alpha_to_zero_trend(l=" + std::to_string(l) + ")", worst, worst_at,
          -1e-12, {{"lambda", l}, {"h", h}}));
    }
  }

  // (d) lambda -> 0: distance to the arithmetic average shrinks (per alpha).
  if (lambdas.size() >= 2) {
    std::vector<double> lam_desc = lambdas;
    std::sort(lam_desc.begin(), lam_desc.end(), std::greater<>());
    for (double a : alphas) {
      Eigen::ArrayXd avg(spec_template.f1.size());
      for (Eigen::Index i = 0; i < avg.size(); ++i)
        avg[i] = arithmetic_combination(spec_template.f1.value(i),
                                        spec_template.f2.value(i), a);
      SampledFunction arith(spec_template.f1.grid(), std::move(avg), "arith");
      double worst = -kInf, worst_at = 0.0, prev = kInf;
      for (double l : lam_desc) {
        double d = sup_abs_diff_common(cell(a, l), arith, &k);
        if (is_finite(prev) && d - prev > worst) {
          worst = d - prev;
          worst_at = l;
        }
        prev = d;
      }
      result.reports.push_back(VerificationReport::make(
          "lambda_to_zero_trend(a=" + std::to_string(a) + ")", worst, worst_at,
          -1e-12, {{"alpha", a}, {"h", h}}));
    }
  }

  // (e) lambda -> infinity toward the epi-average of convexified inputs;
  // only meaningful when both thresholds are certified infinite.
  if (options.check_infinity_trend && lambdas.size() >= 2 &&
      is_inf(base.threshold1.lower_certified) &&
      is_inf(base.threshold2.lower_certified)) {
    for (double a : alphas) {
      AverageSpec s = spec_template;
      s.alpha = a;
      SampledFunction target = epi_average(s, options.use_oracle);
      double worst = -kInf, worst_at = 0.0, prev = kInf;
      for (double l : lam_sorted) {
        double d = sup_abs_diff_common(cell(a, l), target);
        if (is_finite(prev) && d - prev > worst) {
          worst = d - prev;
          worst_at = l;
        }
        prev = d;
      }
      result.reports.push_back(VerificationReport::make(
          "lambda_to_infinity_trend(a=" + std::to_string(a) + ")", worst,
          worst_at, -1e-12, {{"alpha", a}, {"h", h}}));
    }
  }
  return result;
}

ConvexityCertificate convexity_certificate(const SampledFunction& P,
                                           const LegendreKernel& k,
                                           const AverageSpec& spec) {
  ConvexityCertificate cert;
  const double lambda = spec.lambda;

  // (a) lambda P + phi must be convex data.
  Eigen::ArrayXd sv(P.size());
  double scale_a = 0.0;
  for (Eigen::Index i = 0; i < P.size(); ++i) {
    double a = P.value(i), b = k.phi(P.x(i));
    sv[i] = (is_inf(a) || is_inf(b)) ? kInf : lambda * a + b;
    if (is_finite(sv[i])) scale_a = std::max(scale_a, std::abs(sv[i]));
  }
  SampledFunction shifted_data(P.grid(), std::move(sv), "lP+phi");
  double wa = 0.0;
  double va = shifted_data.convexity_violation(&wa);
  cert.shifted = VerificationReport::make(
      "average_shifted_convexity(" + cell_tag(spec) + ")", va, wa,
      1e-7 * (1.0 + scale_a), {{"lambda", lambda}, {"alpha", spec.alpha}});

  // (b) P itself: gap to its own lower convex hull, which unlike raw
  // second differences survives the piecewise-linear quantization of the
  // back-transform. The average of node-restricted inputs genuinely dips
  // below convexity at scale h^2 * hess / lambda (flat conjugate-hull
  // segments against the smooth kernel), so that term joins the tolerance.
  SampledFunction conv = lower_convex_envelope(P).second;
  double scale_b = 0.0, hess_max = 0.0;
  for (Eigen::Index i = 0; i < P.size(); ++i) {
    if (!is_finite(P.value(i))) continue;
    scale_b = std::max(scale_b, std::abs(P.value(i)));
    if (k.in_interior(P.x(i)))
      hess_max = std::max(hess_max, k.hess(P.x(i)));
  }
  SupError gap;
  for (Eigen::Index i = 0; i < P.size(); ++i) {
    if (!is_finite(P.value(i)) || !is_finite(conv.value(i))) continue;
    gap.feed(P.value(i) - conv.value(i), P.x(i));
  }
  double h = P.grid().step();
  double quantization = 2.0 * h * h * hess_max / lambda;
  cert.plain = VerificationReport::make(
      "average_convexity(" + cell_tag(spec) + ")", gap.value, gap.witness,
      1e-7 * (1.0 + scale_b) + quantization,
      {{"lambda", lambda}, {"alpha", spec.alpha}});

  // (c) cross-reference the kernel's S_phi probe on the inputs' domain box.
  double a1, b1, a2, b2;
  finite_range(spec.f1, k, a1, b1);
  finite_range(spec.f2, k, a2, b2);
  double lo = std::max(a1, a2), hi = std::min(b1, b2);
  double t1 = 1e-9 * (1.0 + spec.f1.slope_bound());
  double t2 = 1e-9 * (1.0 + spec.f2.slope_bound());
  bool inputs_convex =
      spec.f1.is_convex_data(t1) && spec.f2.is_convex_data(t2);
  if (inputs_convex && lo < hi) {
    double glo = std::max(lo, k.lo + 1e-6 * (hi - lo));
    double ghi = std::min(hi, k.hi - 1e-6 * (hi - lo));
    ConvexityReport probe = symmetrized_convexity_probe(
        k, {glo, ghi, glo, ghi}, 10'000, 42);
    cert.expectation_applies = probe.passed();
  }
  cert.consistent = !cert.expectation_applies || cert.plain.pass;
  return cert;
}

}  // namespace bregman
