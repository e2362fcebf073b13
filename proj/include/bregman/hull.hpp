#pragma once

#include <Eigen/Core>
#include <vector>

#include "bregman/sampled_function.hpp"

namespace bregman {

// Lower convex hull of finite sample points: vertices sorted by x with
// strictly increasing slopes between them. Vertices are a subset of the
// source grid; slope ties keep the leftmost vertex.
class PLConvex {
 public:
  PLConvex(Eigen::ArrayXd xs, Eigen::ArrayXd vs);

  // Monotone chain over the finite points of f.
  static PLConvex of(const SampledFunction& f);

  const Eigen::ArrayXd& xs() const { return xs_; }
  const Eigen::ArrayXd& vs() const { return vs_; }
  Eigen::Index size() const { return xs_.size(); }

  // +inf outside [xs.front(), xs.back()], linear interpolation inside.
  double operator()(double x) const;

  double slope_min() const;  // slope of the first segment (or 0 for a point)
  double slope_max() const;
  bool has_segments() const { return xs_.size() > 1; }

  // Conjugate max_j (s*x_j - v_j) evaluated at one point.
  double conjugate_at(double s) const;

  // Conjugate on a nondecreasing list of slopes in O(n + m). When
  // `interior` is non-null, interior[i] is set to false where s lies
  // outside the hull's slope range by more than `slack` (the value there
  // reflects truncation, not the true supremum). A single-vertex hull is
  // a point mass, whose conjugate is exact for every s.
  Eigen::ArrayXd conjugate_on(const Eigen::ArrayXd& s,
                              std::vector<bool>* interior = nullptr,
                              double slack = 0.0) const;

 private:
  Eigen::ArrayXd xs_, vs_;
};

}  // namespace bregman
