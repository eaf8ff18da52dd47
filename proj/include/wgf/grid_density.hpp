#pragma once

#include <Eigen/Dense>
#include <functional>

namespace wgf {

// Nonnegative density values on a uniform grid over [lo, hi], normalized so
// the trapezoid integral is 1.
class GridDensity1D {
 public:
  GridDensity1D(double lo, double hi, Eigen::VectorXd values, bool normalize = true);

  static GridDensity1D FromFunction(double lo, double hi, int nodes,
                                    const std::function<double(double)>& f);

  int size() const { return static_cast<int>(values_.size()); }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double dx() const { return dx_; }
  double node(int i) const { return lo_ + dx_ * i; }
  const Eigen::VectorXd& values() const { return values_; }

  // trapezoid integral of the stored values
  double mass() const;

  // linear interpolation; zero outside [lo, hi]
  double value_at(double x) const;

  // d/dx log(density) by central differences on the log values, one-sided at
  // the edges of the support; NaN where the density vanishes
  double dlog_at_node(int i) const;

  // CDF values at the nodes under the trapezoid rule (monotone, cdf(0)=0)
  Eigen::VectorXd cdf_at_nodes() const;

  GridDensity1D renormalized() const { return GridDensity1D(lo_, hi_, values_, true); }

 private:
  double lo_, hi_, dx_;
  Eigen::VectorXd values_;
};

}  // namespace wgf
