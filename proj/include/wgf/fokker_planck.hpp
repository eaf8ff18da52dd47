#pragma once

#include <vector>

#include "wgf/grid_density.hpp"
#include "wgf/target_potential.hpp"

namespace wgf {

// Reference solver for d_t rho = d_x(rho U') + d_xx rho on [lo, hi] with
// no-flux walls. Implicit Euler in time; the face flux is exponentially
// fitted, e^{-U_face} d_x(rho e^{U}), so the grid restriction of e^{-U} is a
// fixed point of the scheme exactly and mass is conserved to solver roundoff.
struct FpConfig {
  double lo;
  double hi;
  int nodes;     // >= 200
  double tau;    // implicit time step (unconditionally stable; pick for accuracy)
  double t_end;
  TargetPotential target;
  int snapshot_stride = 0;  // 0: keep only first and last
};

struct FpTrajectory {
  std::vector<double> times;
  std::vector<GridDensity1D> snapshots;  // raw (unrenormalized) solver output

  const GridDensity1D& final_density() const { return snapshots.back(); }
};

FpTrajectory fp_solve(const FpConfig& cfg, const GridDensity1D& rho0);

struct FeVsFpRow {
  double h;
  int n_steps;
  double w2_gap;
  double kl_fe;
  double kl_fp;
};

// Forward-Euler iterates of the closed-form counterexample versus the PDE
// solution at t_end: the FE densities converge to a limit bounded away from
// the target, so the W2 gap does not vanish with h.
std::vector<FeVsFpRow> fe_vs_fp_gap(const std::vector<double>& h_list, double t_end);

// Control variant with a Gaussian start: forward Euler maps Gaussians to
// Gaussians through an exact scale recursion, and the gap shrinks with h.
std::vector<FeVsFpRow> fe_vs_fp_gap_gaussian(const std::vector<double>& h_list, double t_end,
                                             double sigma0);

void write_snapshot_csv(std::ostream& out, const FpTrajectory& traj);

}  // namespace wgf
