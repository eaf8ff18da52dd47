#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "wgf/convex_domain.hpp"
#include "wgf/grid_density.hpp"
#include "wgf/particle_ensemble.hpp"
#include "wgf/target_potential.hpp"

namespace wgf {

// Smoothed KL against e^{-U}: the density inside the logarithm is replaced by
// its convolution with the unnormalized Gaussian kernel exp(-|x|^2 / (2 eps)),
// which keeps the functional finite and smooth on every ensemble supported in
// the domain.
struct RegKlConfig {
  double epsilon;
  ConvexDomain domain;
  TargetPotential target;
};

double kernel(const RegKlConfig& cfg, const Eigen::VectorXd& x);
Eigen::VectorXd kernel_grad(const RegKlConfig& cfg, const Eigen::VectorXd& x);
Eigen::MatrixXd kernel_hessian(const RegKlConfig& cfg, const Eigen::VectorXd& x);
// largest eigenvalue of the kernel Hessian (the quantity bounded by
// 2 / (eps e^{3/2}); the spectral norm itself reaches 1/eps at the origin)
double kernel_hessian_max_eigenvalue(const RegKlConfig& cfg, const Eigen::VectorXd& x);

// ln( (1/N) sum_j kernel(y - x_j) ), evaluated in log-sum-exp form so small
// bandwidths cannot underflow. log_s holds one entry per particle.
double log_mean_kernel(const RegKlConfig& cfg, const ParticleEnsemble& ens,
                       const Eigen::VectorXd& y);
Eigen::VectorXd log_mean_kernel_at_particles(const RegKlConfig& cfg, const ParticleEnsemble& ens);

// (1/N) sum_i [ U(x_i) + ln((1/N) sum_j kernel(x_i - x_j)) ]
double reg_kl_value(const RegKlConfig& cfg, const ParticleEnsemble& ens);
// weighted-atom variant, needed to differentiate along mixture lines
double reg_kl_value(const RegKlConfig& cfg, const Eigen::MatrixXd& points,
                    const Eigen::VectorXd& weights);
// density variant (d = 1), for cross-checks against the particle evaluation
double reg_kl_value(const RegKlConfig& cfg, const GridDensity1D& rho);

double reg_kl_first_variation(const RegKlConfig& cfg, const ParticleEnsemble& ens,
                              const Eigen::VectorXd& x);

// U'(x) + sum_z grad-kernel ratio + convolution-gradient ratio; this single
// expression is simultaneously the Wasserstein gradient and the lifted
// derivative of the functional.
Eigen::VectorXd reg_kl_gradient(const RegKlConfig& cfg, const ParticleEnsemble& ens,
                                const Eigen::VectorXd& x);
Eigen::VectorXd reg_kl_gradient(const RegKlConfig& cfg, const ParticleEnsemble& ens,
                                const Eigen::VectorXd& x, const Eigen::VectorXd& log_s);

// C1 + (3/eps) exp(8 R0^2 / eps): transport-Lipschitz constant of the gradient
double lipschitz_bound(const RegKlConfig& cfg);

// max over sampled ensemble pairs of (rms gradient difference) / (rms point
// difference) under the index coupling; never exceeds lipschitz_bound
double empirical_lipschitz(const RegKlConfig& cfg, int trials, std::uint64_t seed);

// derivative of t -> F[ensemble moved along velocities] at t = 0
double lifted_directional_derivative(const RegKlConfig& cfg, const ParticleEnsemble& ens,
                                     const Eigen::MatrixXd& velocities);

// min_C U - 2 R0^2 / eps, a provable lower bound for the functional
double reg_kl_lower_bound(const RegKlConfig& cfg);

}  // namespace wgf
