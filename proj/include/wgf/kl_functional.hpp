#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "wgf/grid_density.hpp"
#include "wgf/particle_ensemble.hpp"
#include "wgf/piecewise_density.hpp"
#include "wgf/target_potential.hpp"

namespace wgf {

// KL(rho | e^{-U}) = integral of rho (ln rho + U), with 0 ln 0 = 0 and +inf
// when rho carries mass where the target underflows.
double kl_value(const GridDensity1D& rho, const TargetPotential& target);
// per-piece adaptive quadrature in shifted coordinates, so receding
// exponential tails are integrated exactly where they live
double kl_value(const PiecewiseDensity1D& rho, const TargetPotential& target);

// First variation 1 + U(x) + ln rho(x); nullopt outside the support.
std::optional<double> kl_first_variation(const PiecewiseDensity1D& rho,
                                         const TargetPotential& target, double x);
std::optional<double> kl_first_variation(const GridDensity1D& rho, const TargetPotential& target,
                                         double x);

// Formal Wasserstein gradient U'(x) + d/dx ln rho(x). Where the density is
// not differentiable the value continues one-sidedly and the flag drops:
// the functional is not W-differentiable there, but the expression stays
// computable and forward Euler proceeds regardless.
struct WGradient {
  double value = 0.0;
  bool w_differentiable = true;
};
WGradient kl_w_gradient(const PiecewiseDensity1D& rho, const TargetPotential& target, double x);
WGradient kl_w_gradient(const GridDensity1D& rho, const TargetPotential& target, double x);

// One forward-Euler state: particles plus the analytic density used to
// evaluate the transport field at the particle sites.
struct KlState {
  ParticleEnsemble particles;  // N x 1
  PiecewiseDensity1D density;
  TargetPotential target;
  int step = 0;
};

struct FeStepLog {
  int nondiff_warnings = 0;
  double max_particle_speed = 0.0;
};

// x <- x - h (U'(x) + d/dx ln rho_n(x)) for every particle. The returned
// state carries the same density evaluator; callers advance it separately
// when the iterate's closed form is known to change.
KlState fe_step_particles(const KlState& state, double h, FeStepLog* log = nullptr);

struct KlRunLogRow {
  int n;
  double kl_value;
  int nondiff_warnings;
  double max_particle_speed;
};
void write_run_log_csv(std::ostream& out, const std::vector<KlRunLogRow>& rows);

}  // namespace wgf
