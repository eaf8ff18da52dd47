#include "wgf/counterexamples.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wgf {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Example1Geometry Example1Geometry::For(double h) {
  if (!(h > 0.0)) throw std::invalid_argument("Example1Geometry: h must be positive");
  Example1Geometry g;
  g.h = h;
  g.critical_x = 1.0 / std::sqrt(3.0 * h);
  g.r = (2.0 / 3.0) * g.critical_x;
  return g;
}

PiecewiseMap1D fe_map_example1(double h) {
  const Example1Geometry geo = Example1Geometry::For(h);
  const auto fwd = [h](double x) { return x - h * x * x * x; };
  const auto deriv = [h](double x) { return 1.0 - 3.0 * h * x * x; };
  const double xc = geo.critical_x;
  const double r = geo.r;

  // outer branches are unbounded; bracket the preimage by doubling outward
  const auto invert_left = [fwd, deriv, xc](double y) {
    double step = 1.0;
    double lo = -xc - step;
    while (fwd(lo) < y) {
      step *= 2.0;
      lo = -xc - step;
    }
    return invert_monotone(fwd, deriv, y, lo, -xc);
  };
  const auto invert_right = [fwd, deriv, xc](double y) {
    double step = 1.0;
    double hi = xc + step;
    while (fwd(hi) > y) {
      step *= 2.0;
      hi = xc + step;
    }
    return invert_monotone(fwd, deriv, y, xc, hi);
  };
  const auto invert_mid = [fwd, deriv, xc](double y) {
    return invert_monotone(fwd, deriv, y, -xc, xc);
  };

  std::vector<MapBranch> branches(3);
  branches[0] = {-kInf, -xc, -r, kInf, fwd, invert_left, deriv};
  branches[1] = {-xc, xc, -r, r, fwd, invert_mid, deriv};
  branches[2] = {xc, kInf, -kInf, r, fwd, invert_right, deriv};
  return PiecewiseMap1D(std::move(branches));
}

JumpProbe example1_jump_probe(double h, std::vector<double> deltas) {
  const Example1Geometry geo = Example1Geometry::For(h);
  const PiecewiseMap1D map = fe_map_example1(h);
  const PiecewiseDensity1D rho0 = PiecewiseDensity1D::StandardGaussian();
  const auto density0 = [&rho0](double x) { return rho0(x); };
  JumpProbe probe;
  probe.deltas = std::move(deltas);
  for (double delta : probe.deltas) {
    if (!(delta > 0.0 && delta < geo.r))
      throw std::invalid_argument("example1_jump_probe: need 0 < delta < r");
    probe.left.push_back(pushforward_multibranch(density0, map, geo.r - delta).value);
    probe.right.push_back(pushforward_multibranch(density0, map, geo.r + delta).value);
  }
  return probe;
}

double Example2Coefficients::d0() {
  return std::sqrt(2.0 * M_PI) * std::erf(1.0 / std::sqrt(2.0)) + 2.0 * std::exp(-0.5);
}

Example2Coefficients example2_recursion(const std::vector<double>& h_sequence) {
  for (double h : h_sequence)
    if (!(h > 0.0 && h < 1.0))
      throw std::invalid_argument("example2_recursion: step size out of admissible range (0,1)");
  const double log_d0 = std::log(Example2Coefficients::d0());
  Example2Coefficients out;
  out.h = h_sequence;
  out.a = {1.0};
  out.b = {0.5 - log_d0};
  out.c = {1.0};
  out.log_tail_scale = {-0.5 - log_d0};
  for (double h : h_sequence) {
    const double a = out.a.back();
    const double b = out.b.back();
    const double c = out.c.back();
    out.a.push_back(a / (1.0 - h));
    out.b.push_back(b + a * a * h / (1.0 - h) - std::log1p(-h));
    out.c.push_back((1.0 - h) * c + a * h);
    out.log_tail_scale.push_back(out.log_tail_scale.back() - std::log1p(-h));
  }
  return out;
}

Example2Coefficients example2_recursion(double h, int n) {
  return example2_recursion(std::vector<double>(static_cast<std::size_t>(n), h));
}

PiecewiseDensity1D example2_density(const Example2Coefficients& coeffs, int n) {
  if (n < 0 || n > coeffs.steps())
    throw std::invalid_argument("example2_density: index outside computed trajectory");
  DensityPiece core;
  core.lo = 0.0;
  core.hi = 1.0;
  core.coeffs = Eigen::Vector3d(std::log(Example2Coefficients::d0()), 0.0, 0.5);

  // tail exp(-a_n x + b_n) held in shifted form exp(s_n - a_n (x - c_n))
  DensityPiece tail;
  tail.lo = coeffs.c[n];
  tail.hi = kInf;
  tail.shift = coeffs.c[n];
  tail.coeffs = Eigen::Vector2d(-coeffs.log_tail_scale[n], coeffs.a[n]);

  return PiecewiseDensity1D({core, tail}, PiecewiseDensity1D::Symmetry::Even);
}

double example2_kl_floor(const PiecewiseDensity1D& density) {
  const auto diff = [&density](double x) {
    return density(x) - std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
  };
  const double integral = integrate_split(diff, -1.0, 1.0, {0.0});
  return 2.0 * integral * integral;
}

PiecewiseMap1D example2_step_map(const Example2Coefficients& coeffs, int n) {
  if (n < 0 || n >= static_cast<int>(coeffs.h.size()))
    throw std::invalid_argument("example2_step_map: no step size recorded for this index");
  const double h = coeffs.h[n];
  const double a = coeffs.a[n];
  const double c = coeffs.c[n];
  const double c_next = coeffs.c[n + 1];
  const double slope = 1.0 - h;

  const auto id = [](double x) { return x; };
  const auto one = [](double) { return 1.0; };
  const auto fwd_r = [slope, a, h](double x) { return slope * x + a * h; };
  const auto inv_r = [slope, a, h](double y) { return (y - a * h) / slope; };
  const auto fwd_l = [slope, a, h](double x) { return slope * x - a * h; };
  const auto inv_l = [slope, a, h](double y) { return (y + a * h) / slope; };
  const auto dslope = [slope](double) { return slope; };

  std::vector<MapBranch> branches(3);
  branches[0] = {-kInf, -c, -kInf, -c_next, fwd_l, inv_l, dslope};
  branches[1] = {-1.0, 1.0, -1.0, 1.0, id, id, one};
  branches[2] = {c, kInf, c_next, kInf, fwd_r, inv_r, dslope};
  return PiecewiseMap1D(std::move(branches));
}

}  // namespace wgf
