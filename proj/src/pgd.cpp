#include "wgf/pgd.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "wgf/metrics.hpp"

namespace wgf {

double step_size(const RegKlConfig& cfg, const SolverConfig& solver) {
  switch (solver.policy) {
    case StepPolicy::Theoretical:
      return 1.0 / lipschitz_bound(cfg);
    case StepPolicy::Empirical:
      return 1.0 / empirical_lipschitz(cfg, solver.empirical_trials, solver.seed ^ 0x9e3779b9u);
    case StepPolicy::Fixed:
      if (!(solver.fixed_h > 0.0)) throw std::invalid_argument("step_size: fixed h must be > 0");
      return solver.fixed_h;
  }
  throw std::logic_error("step_size: unknown policy");
}

ParticleEnsemble pgd_step(const RegKlConfig& cfg, const ParticleEnsemble& ens, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("pgd_step: h must be positive");
  const Eigen::VectorXd log_s = log_mean_kernel_at_particles(cfg, ens);
  ParticleEnsemble next = ens;
  for (int i = 0; i < ens.size(); ++i) {
    const Eigen::VectorXd moved =
        ens.point(i) - h * reg_kl_gradient(cfg, ens, ens.point(i), log_s);
    next.points.row(i) = cfg.domain.project(moved).transpose();
  }
  return next;
}

PgdResult run_pgd(const RegKlConfig& cfg, const SolverConfig& solver,
                  const ParticleEnsemble& init) {
  if (!init.all_inside(cfg.domain, 1e-9))
    throw std::invalid_argument("run_pgd: initial ensemble leaves the domain");
  const double h = step_size(cfg, solver);

  RateCertificate cert;
  cert.h = h;
  cert.f_lower_bound = reg_kl_lower_bound(cfg);

  ParticleEnsemble current = init;
  std::vector<ParticleEnsemble> iterates;  // kept for the 1-d W2 diagnostics
  const bool track_iterates = init.dim() == 1;
  if (track_iterates) iterates.push_back(current);
  cert.f_values.push_back(reg_kl_value(cfg, current));

  for (int n = 0; n < solver.max_iters; ++n) {
    ParticleEnsemble next = pgd_step(cfg, current, h);
    const double rms =
        std::sqrt((next.points - current.points).squaredNorm() / current.size());
    cert.step_rms.push_back(rms);
    const double f = reg_kl_value(cfg, next);
    if (!std::isfinite(f)) throw std::runtime_error("run_pgd: non-finite objective");
    cert.f_values.push_back(f);
    current = std::move(next);
    if (track_iterates) iterates.push_back(current);
    if (solver.step_rms_tol > 0.0 && rms < solver.step_rms_tol) break;
  }

  // descent inequality at every transition
  cert.decay_ok = true;
  for (std::size_t k = 0; k + 1 < cert.f_values.size(); ++k)
    if (cert.f_values[k + 1] > cert.f_values[k] + 1e-12) cert.decay_ok = false;

  // min-step certificate for every prefix; any lower bound for F only
  // enlarges the right-hand side
  cert.rate_ok = true;
  double min_step = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n <= cert.step_rms.size(); ++n) {
    min_step = std::min(min_step, cert.step_rms[n - 1]);
    const double bound =
        std::sqrt(2.0 * (cert.f_values[0] - cert.f_lower_bound) / (h * static_cast<double>(n)));
    if (min_step > bound * (1.0 + 1e-12)) cert.rate_ok = false;
  }

  if (track_iterates) {
    cert.w2_to_final.reserve(iterates.size());
    for (const auto& it : iterates) cert.w2_to_final.push_back(w2_1d(it, current));
    if (solver.strong_convexity_m) {
      const double m = *solver.strong_convexity_m;
      bool ok = true;
      const double w0_sq = cert.w2_to_final.front() * cert.w2_to_final.front();
      for (std::size_t n = 0; n < cert.w2_to_final.size(); ++n) {
        const double lhs = cert.w2_to_final[n] * cert.w2_to_final[n];
        const double rhs = std::pow(1.0 - m * h, static_cast<double>(n)) * w0_sq;
        if (lhs > 1.1 * rhs + 1e-15) ok = false;
      }
      cert.strongly_convex_ok = ok;
    }
    if (solver.convex_rate_diagnostic) {
      bool ok = true;
      const double f_best = cert.f_values.back();
      const double w0_sq = cert.w2_to_final.front() * cert.w2_to_final.front();
      for (std::size_t n = 1; n < cert.f_values.size(); ++n) {
        const double rhs = w0_sq / (2.0 * static_cast<double>(n) * h);
        if (cert.f_values[n] - f_best > 1.1 * rhs + 1e-15) ok = false;
      }
      cert.convex_rate_ok = ok;
    }
  }

  return {std::move(current), std::move(cert)};
}

}  // namespace wgf
