#pragma once

#include <Eigen/Dense>

#include "wgf/rng.hpp"

namespace wgf {

// Bounded convex constraint set: a closed ball, an axis-aligned box, or a
// 1-d interval. Supplies the Euclidean projection and the enclosing radius
// R0 (smallest origin-centered ball containing the set).
class ConvexDomain {
 public:
  enum class Kind { Ball, Box, Interval };

  static ConvexDomain Ball(Eigen::VectorXd center, double radius);
  static ConvexDomain Box(Eigen::VectorXd center, Eigen::VectorXd half_widths);
  static ConvexDomain Interval(double lo, double hi);

  Kind kind() const { return kind_; }
  int dim() const { return static_cast<int>(center_.size()); }
  const Eigen::VectorXd& center() const { return center_; }
  double radius() const { return radius_; }
  const Eigen::VectorXd& half_widths() const { return half_widths_; }

  // Smallest R with the domain contained in the origin-centered ball B(0; R).
  double enclosing_radius() const { return enclosing_radius_; }

  // Euclidean-nearest point of the domain; identity on interior points.
  Eigen::VectorXd project(const Eigen::VectorXd& x) const;
  double project1d(double x) const;

  bool contains(const Eigen::VectorXd& x, double tol = 1e-12) const;

  Eigen::VectorXd sample_uniform(Rng& rng) const;

 private:
  ConvexDomain() = default;

  Kind kind_ = Kind::Ball;
  Eigen::VectorXd center_;
  double radius_ = 0.0;            // Ball only
  Eigen::VectorXd half_widths_;    // Box / Interval
  double enclosing_radius_ = 0.0;
};

inline Eigen::VectorXd project(const ConvexDomain& domain, const Eigen::VectorXd& x) {
  return domain.project(x);
}

}  // namespace wgf
