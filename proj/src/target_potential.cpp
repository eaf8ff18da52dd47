#include "wgf/target_potential.hpp"

#include <cmath>

#include "wgf/quadrature.hpp"

namespace wgf {

TargetPotential TargetPotential::Quadratic(int dim) {
  const double offset = dim == 1 ? 0.5 * std::log(2.0 * M_PI) : 0.0;
  return Quadratic(Eigen::VectorXd::Zero(dim), offset);
}

TargetPotential TargetPotential::Quadratic(Eigen::VectorXd center, double offset) {
  TargetPotential u;
  const Eigen::VectorXd c = std::move(center);
  u.value = [c, offset](const Eigen::VectorXd& x) { return 0.5 * (x - c).squaredNorm() + offset; };
  u.gradient = [c](const Eigen::VectorXd& x) { return (x - c).eval(); };
  u.c0 = std::abs(offset);
  u.c1 = 1.0;
  u.c2 = 0.0;
  u.reference_point = c;
  u.min_on_domain = offset;
  return u;
}

TargetPotential TargetPotential::Quartic1D() {
  const double z = integrate(
      [](double x) { return std::exp(-0.5 * x * x - 0.25 * x * x * x * x); }, -12.0, 12.0);
  const double c = std::log(z);
  TargetPotential u;
  u.value = [c](const Eigen::VectorXd& x) {
    const double t = x(0);
    return 0.5 * t * t + 0.25 * t * t * t * t + c;
  };
  u.gradient = [](const Eigen::VectorXd& x) {
    const double t = x(0);
    return Eigen::VectorXd::Constant(1, t + t * t * t).eval();
  };
  u.c0 = std::abs(c);
  u.c1 = 0.0;  // grad is Lipschitz only on bounded sets; set per-domain by callers
  u.c2 = 0.0;
  u.reference_point = Eigen::VectorXd::Zero(1);
  u.min_on_domain = c;
  return u;
}

}  // namespace wgf
