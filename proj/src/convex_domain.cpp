#include "wgf/convex_domain.hpp"

#include <cmath>
#include <stdexcept>

namespace wgf {

ConvexDomain ConvexDomain::Ball(Eigen::VectorXd center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("ConvexDomain::Ball: radius must be positive");
  ConvexDomain d;
  d.kind_ = Kind::Ball;
  d.center_ = std::move(center);
  d.radius_ = radius;
  d.enclosing_radius_ = d.center_.norm() + radius;
  return d;
}

ConvexDomain ConvexDomain::Box(Eigen::VectorXd center, Eigen::VectorXd half_widths) {
  if (center.size() != half_widths.size())
    throw std::invalid_argument("ConvexDomain::Box: dimension mismatch");
  if ((half_widths.array() <= 0.0).any())
    throw std::invalid_argument("ConvexDomain::Box: half widths must be positive");
  ConvexDomain d;
  d.kind_ = Kind::Box;
  d.center_ = std::move(center);
  d.half_widths_ = std::move(half_widths);
  // farthest corner from the origin
  const Eigen::ArrayXd lo = (d.center_ - d.half_widths_).array().abs();
  const Eigen::ArrayXd hi = (d.center_ + d.half_widths_).array().abs();
  d.enclosing_radius_ = std::sqrt(lo.max(hi).square().sum());
  return d;
}

ConvexDomain ConvexDomain::Interval(double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("ConvexDomain::Interval: need lo < hi");
  ConvexDomain d;
  d.kind_ = Kind::Interval;
  d.center_ = Eigen::VectorXd::Constant(1, 0.5 * (lo + hi));
  d.half_widths_ = Eigen::VectorXd::Constant(1, 0.5 * (hi - lo));
  d.enclosing_radius_ = std::max(std::abs(lo), std::abs(hi));
  return d;
}

Eigen::VectorXd ConvexDomain::project(const Eigen::VectorXd& x) const {
  if (x.size() != center_.size())
    throw std::invalid_argument("ConvexDomain::project: dimension mismatch");
  if (kind_ == Kind::Ball) {
    const Eigen::VectorXd offset = x - center_;
    const double dist = offset.norm();
    if (dist <= radius_) return x;
    return center_ + (radius_ / dist) * offset;
  }
  const Eigen::ArrayXd lo = (center_ - half_widths_).array();
  const Eigen::ArrayXd hi = (center_ + half_widths_).array();
  return x.array().max(lo).min(hi).matrix();
}

double ConvexDomain::project1d(double x) const {
  if (dim() != 1) throw std::invalid_argument("ConvexDomain::project1d: domain is not 1-d");
  Eigen::VectorXd v(1);
  v(0) = x;
  return project(v)(0);
}

bool ConvexDomain::contains(const Eigen::VectorXd& x, double tol) const {
  if (x.size() != center_.size()) return false;
  if (kind_ == Kind::Ball) return (x - center_).norm() <= radius_ + tol;
  return ((x - center_).array().abs() <= half_widths_.array() + tol).all();
}

Eigen::VectorXd ConvexDomain::sample_uniform(Rng& rng) const {
  const int d = dim();
  Eigen::VectorXd x(d);
  if (kind_ == Kind::Ball) {
    // isotropic direction, radius with density r^{d-1}
    for (int i = 0; i < d; ++i) x(i) = rng.normal();
    const double norm = x.norm();
    const double r = radius_ * std::pow(rng.uniform(), 1.0 / d);
    if (norm > 0.0) x *= r / norm;
    return center_ + x;
  }
  for (int i = 0; i < d; ++i)
    x(i) = center_(i) + half_widths_(i) * (2.0 * rng.uniform() - 1.0);
  return x;
}

}  // namespace wgf
