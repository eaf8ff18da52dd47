#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "wgf/grid_density.hpp"
#include "wgf/particle_ensemble.hpp"

namespace wgf {

// Pairing between two equal-size ensembles and its mean squared cost.
struct Coupling {
  std::vector<int> permutation;  // point i of the first ensemble pairs with permutation[i]
  double mean_sq_cost = 0.0;
};

// Exact 1-d Wasserstein-2 distance through the quantile functions: sorted
// points for ensembles, linear CDF inversion for grid densities.
double w2_1d(const ParticleEnsemble& a, const ParticleEnsemble& b);
double w2_1d(const GridDensity1D& a, const GridDensity1D& b);
double w2_1d(const ParticleEnsemble& a, const GridDensity1D& b);
double w2_1d(const GridDensity1D& a, const ParticleEnsemble& b);

// Exact empirical W2 in any dimension by optimal assignment (O(N^3)).
std::pair<double, Coupling> w2_matching(const ParticleEnsemble& a, const ParticleEnsemble& b);

// Exact 1-d Wasserstein-1 distance: integral of |CDF_a - CDF_b|.
double w1_1d(const ParticleEnsemble& a, const ParticleEnsemble& b);
double w1_1d(const GridDensity1D& a, const GridDensity1D& b);

// Total variation and KL divergence for densities on a common grid.
double tv_grid(const GridDensity1D& a, const GridDensity1D& b);
double kl_grid(const GridDensity1D& a, const GridDensity1D& b);

}  // namespace wgf
