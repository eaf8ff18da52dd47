#include "wgf/kl_functional.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "wgf/quadrature.hpp"

namespace wgf {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double horner(const Eigen::VectorXd& c, double u) {
  double v = 0.0;
  for (Eigen::Index i = c.size() - 1; i >= 0; --i) v = v * u + c(i);
  return v;
}
}  // namespace

double kl_value(const GridDensity1D& rho, const TargetPotential& target) {
  if (std::abs(rho.mass() - 1.0) > 1e-6)
    throw std::invalid_argument("kl_value: density not normalized");
  Eigen::VectorXd integrand(rho.size());
  for (int i = 0; i < rho.size(); ++i) {
    const double p = rho.values()(i);
    if (p <= 0.0) {
      integrand(i) = 0.0;
    } else {
      const double u = target.value1(rho.node(i));
      if (u > 690.0 && p > 1e-12) return kInf;  // target underflows under rho's mass
      integrand(i) = p * (std::log(p) + u);
    }
  }
  return rho.dx() * (integrand.sum() - 0.5 * (integrand(0) + integrand(integrand.size() - 1)));
}

double kl_value(const PiecewiseDensity1D& rho, const TargetPotential& target) {
  double total = 0.0;
  for (const auto& piece : rho.pieces()) {
    // work in u = x - shift; ln rho = -p(u) evaluated directly so that huge
    // shifts cost no precision
    const double u_lo = piece.lo - piece.shift;
    const double u_hi = std::isinf(piece.hi) ? piece.upper_truncation_u() : piece.hi - piece.shift;
    const auto one_side = [&](double sign) {
      return integrate(
          [&](double u) {
            const double expo = horner(piece.coeffs, u);
            const double x = sign * (piece.shift + u);
            return std::exp(-expo) * (-expo + target.value1(x));
          },
          u_lo, u_hi);
    };
    total += one_side(1.0);
    if (rho.symmetry() == PiecewiseDensity1D::Symmetry::Even) total += one_side(-1.0);
  }
  return total;
}

std::optional<double> kl_first_variation(const PiecewiseDensity1D& rho,
                                         const TargetPotential& target, double x) {
  const auto lg = rho.log_density(x);
  if (!lg) return std::nullopt;
  return 1.0 + target.value1(x) + *lg;
}

std::optional<double> kl_first_variation(const GridDensity1D& rho, const TargetPotential& target,
                                         double x) {
  const double p = rho.value_at(x);
  if (p <= 0.0) return std::nullopt;
  return 1.0 + target.value1(x) + std::log(p);
}

WGradient kl_w_gradient(const PiecewiseDensity1D& rho, const TargetPotential& target, double x) {
  const double du = target.grad1(x);
  if (const auto d = rho.dlog_density(x)) return {du + *d, true};
  const auto oneside = rho.dlog_density_oneside(x);
  return {du + oneside.value_or(0.0), false};
}

WGradient kl_w_gradient(const GridDensity1D& rho, const TargetPotential& target, double x) {
  const double du = target.grad1(x);
  if (x < rho.lo() || x > rho.hi()) return {du, false};
  const double t = (x - rho.lo()) / rho.dx();
  const int i = std::min(static_cast<int>(t), rho.size() - 2);
  const double d_left = rho.dlog_at_node(i);
  const double d_right = rho.dlog_at_node(i + 1);
  const bool l_ok = std::isfinite(d_left);
  const bool r_ok = std::isfinite(d_right);
  if (l_ok && r_ok) {
    const double frac = t - i;
    return {du + d_left * (1.0 - frac) + d_right * frac, true};
  }
  if (l_ok) return {du + d_left, false};
  if (r_ok) return {du + d_right, false};
  return {du, false};
}

KlState fe_step_particles(const KlState& state, double h, FeStepLog* log) {
  if (!(h > 0.0)) throw std::invalid_argument("fe_step_particles: h must be positive");
  if (state.particles.dim() != 1)
    throw std::invalid_argument("fe_step_particles: analytic densities are 1-d");
  KlState next = state;
  FeStepLog local;
  for (int i = 0; i < state.particles.size(); ++i) {
    const double x = state.particles.points(i, 0);
    const WGradient g = kl_w_gradient(state.density, state.target, x);
    if (!g.w_differentiable) ++local.nondiff_warnings;
    local.max_particle_speed = std::max(local.max_particle_speed, std::abs(g.value));
    next.particles.points(i, 0) = x - h * g.value;
  }
  next.step = state.step + 1;
  if (log) *log = local;
  return next;
}

void write_run_log_csv(std::ostream& out, const std::vector<KlRunLogRow>& rows) {
  out << "n,kl_value,num_nondiff_warnings,max_particle_speed\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%d,%.17g\n", r.n, r.kl_value, r.nondiff_warnings,
                  r.max_particle_speed);
    out << buf;
  }
}

}  // namespace wgf
