#pragma once

#include <Eigen/Dense>
#include <functional>

namespace wgf {

// Potential U of the target density e^{-U}, with its gradient and the
// constants used by the regularity estimates: a Lipschitz constant c1 for
// grad U on the working domain, and bounds c0 >= |U(x0)|, c2 >= |grad U(x0)|
// at a reference point x0.
struct TargetPotential {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  Eigen::VectorXd reference_point;
  // exact minimum of U over the working domain; factories set it assuming the
  // potential's minimizer lies inside the domain
  double min_on_domain = 0.0;

  double operator()(const Eigen::VectorXd& x) const { return value(x); }
  double value1(double x) const { return value(Eigen::VectorXd::Constant(1, x)); }
  double grad1(double x) const { return gradient(Eigen::VectorXd::Constant(1, x))(0); }

  // U(x) = |x - center|^2 / 2 + offset; in d = 1 the default offset
  // ln sqrt(2*pi) normalizes e^{-U} to the unit-variance Gaussian.
  static TargetPotential Quadratic(int dim);
  static TargetPotential Quadratic(Eigen::VectorXd center, double offset);

  // U(x) = x^2/2 + x^4/4 + c, with c fixed by quadrature so that e^{-U} has
  // unit mass on the line.
  static TargetPotential Quartic1D();
};

}  // namespace wgf
