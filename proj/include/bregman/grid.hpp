#pragma once

#include <Eigen/Core>

#include "bregman/errors.hpp"

namespace bregman {

// Finite strictly increasing grid of evaluation points.
class Grid1D {
 public:
  explicit Grid1D(Eigen::ArrayXd nodes);

  static Grid1D linspace(double lo, double hi, Eigen::Index n);

  const Eigen::ArrayXd& nodes() const { return nodes_; }
  Eigen::Index size() const { return nodes_.size(); }
  double operator[](Eigen::Index i) const { return nodes_[i]; }
  double lo() const { return nodes_[0]; }
  double hi() const { return nodes_[nodes_.size() - 1]; }

  // Nominal spacing; the first interval for non-uniform grids.
  double step() const { return nodes_[1] - nodes_[0]; }

  // Index of the node closest to x.
  Eigen::Index nearest(double x) const;
  // Largest index i with nodes[i] <= x, or -1 when x < nodes[0].
  Eigen::Index floor_index(double x) const;

  bool contains(double x) const { return x >= lo() && x <= hi(); }

  friend bool operator==(const Grid1D& a, const Grid1D& b) {
    return a.nodes_.size() == b.nodes_.size() && (a.nodes_ == b.nodes_).all();
  }

 private:
  Eigen::ArrayXd nodes_;
};

}  // namespace bregman
