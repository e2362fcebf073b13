#include "bregman/grid.hpp"

#include <algorithm>
#include <cmath>

namespace bregman {

Grid1D::Grid1D(Eigen::ArrayXd nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw BadGrid("grid needs at least 2 nodes");
  for (Eigen::Index i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i])) throw BadGrid("grid nodes must be finite");
    if (i > 0 && !(nodes_[i] > nodes_[i - 1]))
      throw BadGrid("grid nodes must be strictly increasing");
  }
}

Grid1D Grid1D::linspace(double lo, double hi, Eigen::Index n) {
  return Grid1D(Eigen::ArrayXd::LinSpaced(n, lo, hi));
}

Eigen::Index Grid1D::nearest(double x) const {
  const double* begin = nodes_.data();
  const double* end = begin + nodes_.size();
  const double* it = std::lower_bound(begin, end, x);
  if (it == begin) return 0;
  if (it == end) return nodes_.size() - 1;
  Eigen::Index i = it - begin;
  return (x - nodes_[i - 1] <= nodes_[i] - x) ? i - 1 : i;
}

Eigen::Index Grid1D::floor_index(double x) const {
  const double* begin = nodes_.data();
  const double* end = begin + nodes_.size();
  const double* it = std::upper_bound(begin, end, x);
  return (it - begin) - 1;
}

}  // namespace bregman
