#include "bregman/hull.hpp"

#include <vector>

#include "bregman/errors.hpp"

namespace bregman {

PLConvex::PLConvex(Eigen::ArrayXd xs, Eigen::ArrayXd vs)
    : xs_(std::move(xs)), vs_(std::move(vs)) {
  if (xs_.size() == 0 || xs_.size() != vs_.size())
    throw ImproperFunction("hull needs at least one finite point");
}

PLConvex PLConvex::of(const SampledFunction& f) {
  std::vector<double> hx, hv;
  hx.reserve(f.size());
  hv.reserve(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    double x = f.x(i), v = f.value(i);
    if (!is_finite(v)) continue;
    // Pop while the last vertex is above (or on) the chord; equality drops
    // collinear middles so slopes end up strictly increasing.
    while (hx.size() >= 2) {
      double x0 = hx[hx.size() - 2], v0 = hv[hv.size() - 2];
      double x1 = hx.back(), v1 = hv.back();
      if ((v1 - v0) * (x - x1) >= (v - v1) * (x1 - x0)) {
        hx.pop_back();
        hv.pop_back();
      } else {
        break;
      }
    }
    hx.push_back(x);
    hv.push_back(v);
  }
  if (hx.empty()) throw ImproperFunction("hull of improper function");
  return PLConvex(
      Eigen::Map<Eigen::ArrayXd>(hx.data(), static_cast<Eigen::Index>(hx.size())),
      Eigen::Map<Eigen::ArrayXd>(hv.data(), static_cast<Eigen::Index>(hv.size())));
}

double PLConvex::operator()(double x) const {
  if (x < xs_[0] || x > xs_[xs_.size() - 1]) return kInf;
  Eigen::Index lo = 0, hi = xs_.size() - 1;
  while (hi - lo > 1) {
    Eigen::Index mid = (lo + hi) / 2;
    (xs_[mid] <= x ? lo : hi) = mid;
  }
  if (x == xs_[lo]) return vs_[lo];
  double t = (x - xs_[lo]) / (xs_[hi] - xs_[lo]);
  return vs_[lo] + t * (vs_[hi] - vs_[lo]);
}

double PLConvex::slope_min() const {
  if (!has_segments()) return 0.0;
  return (vs_[1] - vs_[0]) / (xs_[1] - xs_[0]);
}

double PLConvex::slope_max() const {
  Eigen::Index n = xs_.size();
  if (n < 2) return 0.0;
  return (vs_[n - 1] - vs_[n - 2]) / (xs_[n - 1] - xs_[n - 2]);
}

double PLConvex::conjugate_at(double s) const {
  // Walk right while the next vertex improves s*x - v.
  Eigen::Index j = 0;
  while (j + 1 < xs_.size() &&
         s * xs_[j + 1] - vs_[j + 1] >= s * xs_[j] - vs_[j])
    ++j;
  return s * xs_[j] - vs_[j];
}

Eigen::ArrayXd PLConvex::conjugate_on(const Eigen::ArrayXd& s,
                                      std::vector<bool>* interior,
                                      double slack) const {
  Eigen::ArrayXd out(s.size());
  if (interior) interior->assign(s.size(), true);
  const bool pl = has_segments();
  const double smin = slope_min(), smax = slope_max();
  Eigen::Index j = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    while (j + 1 < xs_.size() &&
           s[i] * xs_[j + 1] - vs_[j + 1] >= s[i] * xs_[j] - vs_[j])
      ++j;
    out[i] = s[i] * xs_[j] - vs_[j];
    if (interior && pl)
      (*interior)[i] = s[i] >= smin - slack && s[i] <= smax + slack;
  }
  return out;
}

}  // namespace bregman
