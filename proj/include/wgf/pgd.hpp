#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wgf/particle_ensemble.hpp"
#include "wgf/regularized_kl.hpp"

namespace wgf {

enum class StepPolicy { Theoretical, Empirical, Fixed };

struct SolverConfig {
  StepPolicy policy = StepPolicy::Theoretical;
  double fixed_h = 0.0;  // used when policy == Fixed
  int max_iters = 500;
  double step_rms_tol = 0.0;  // 0 disables the early stop
  std::uint64_t seed = 1;
  std::optional<double> strong_convexity_m;  // enables the geometric-decay check
  bool convex_rate_diagnostic = false;
  int empirical_trials = 200;
};

// Per-run record of the descent inequalities. step_rms is the index-coupling
// RMS displacement between consecutive iterates, which upper-bounds their W2
// distance, so the <= checks stay sound.
struct RateCertificate {
  std::vector<double> f_values;     // F at iterates 0..n
  std::vector<double> step_rms;     // one per transition
  std::vector<double> w2_to_final;  // exact 1-d W2 to the last iterate (d = 1 only)
  double f_lower_bound = 0.0;
  double h = 0.0;
  bool decay_ok = false;  // F nonincreasing within 1e-12 slack
  bool rate_ok = false;   // min-step bound holds for every prefix
  // proxy-optimum diagnostics (final iterate standing in for the minimizer)
  std::optional<bool> strongly_convex_ok;
  std::optional<bool> convex_rate_ok;
};

double step_size(const RegKlConfig& cfg, const SolverConfig& solver);

// x_i <- project(x_i - h * gradient(x_i)), all gradients from the frozen
// current ensemble.
ParticleEnsemble pgd_step(const RegKlConfig& cfg, const ParticleEnsemble& ens, double h);

struct PgdResult {
  ParticleEnsemble final_ensemble;
  RateCertificate certificate;
};

PgdResult run_pgd(const RegKlConfig& cfg, const SolverConfig& solver,
                  const ParticleEnsemble& init);

}  // namespace wgf
