#include "wgf/grid_density.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wgf {

namespace {
double trapezoid(const Eigen::VectorXd& v, double dx) {
  const auto n = v.size();
  return dx * (v.sum() - 0.5 * (v(0) + v(n - 1)));
}
}  // namespace

GridDensity1D::GridDensity1D(double lo, double hi, Eigen::VectorXd values, bool normalize)
    : lo_(lo), hi_(hi), values_(std::move(values)) {
  if (!(lo < hi)) throw std::invalid_argument("GridDensity1D: need lo < hi");
  if (values_.size() < 2) throw std::invalid_argument("GridDensity1D: need at least 2 nodes");
  if ((values_.array() < 0.0).any())
    throw std::invalid_argument("GridDensity1D: negative density value");
  dx_ = (hi_ - lo_) / static_cast<double>(values_.size() - 1);
  if (normalize) {
    const double m = trapezoid(values_, dx_);
    if (!(m > 0.0)) throw std::invalid_argument("GridDensity1D: zero mass");
    values_ /= m;
  }
}

GridDensity1D GridDensity1D::FromFunction(double lo, double hi, int nodes,
                                          const std::function<double(double)>& f) {
  if (nodes < 2) throw std::invalid_argument("FromFunction: need at least 2 nodes");
  Eigen::VectorXd v(nodes);
  const double dx = (hi - lo) / static_cast<double>(nodes - 1);
  for (int i = 0; i < nodes; ++i) v(i) = std::max(0.0, f(lo + dx * i));
  return GridDensity1D(lo, hi, std::move(v));
}

double GridDensity1D::mass() const { return trapezoid(values_, dx_); }

double GridDensity1D::value_at(double x) const {
  if (x < lo_ || x > hi_) return 0.0;
  const double t = (x - lo_) / dx_;
  const int i = std::min(static_cast<int>(t), size() - 2);
  const double frac = t - i;
  return values_(i) * (1.0 - frac) + values_(i + 1) * frac;
}

double GridDensity1D::dlog_at_node(int i) const {
  const int n = size();
  if (i < 0 || i >= n) throw std::out_of_range("dlog_at_node");
  const auto lg = [&](int j) -> double {
    return values_(j) > 0.0 ? std::log(values_(j)) : -std::numeric_limits<double>::infinity();
  };
  const double here = lg(i);
  if (!std::isfinite(here)) return std::numeric_limits<double>::quiet_NaN();
  const bool left_ok = i > 0 && std::isfinite(lg(i - 1));
  const bool right_ok = i < n - 1 && std::isfinite(lg(i + 1));
  if (left_ok && right_ok) return (lg(i + 1) - lg(i - 1)) / (2.0 * dx_);
  if (right_ok) return (lg(i + 1) - here) / dx_;
  if (left_ok) return (here - lg(i - 1)) / dx_;
  return std::numeric_limits<double>::quiet_NaN();
}

Eigen::VectorXd GridDensity1D::cdf_at_nodes() const {
  Eigen::VectorXd cdf(size());
  cdf(0) = 0.0;
  for (int i = 1; i < size(); ++i)
    cdf(i) = cdf(i - 1) + 0.5 * dx_ * (values_(i - 1) + values_(i));
  return cdf;
}

}  // namespace wgf
