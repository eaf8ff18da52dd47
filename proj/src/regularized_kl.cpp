#include "wgf/regularized_kl.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wgf {

namespace {

double log_kernel(double epsilon, double sq_norm) { return -0.5 * sq_norm / epsilon; }

void require_valid(const RegKlConfig& cfg) {
  if (!(cfg.epsilon > 0.0))
    throw std::invalid_argument("RegKlConfig: bandwidth epsilon must be positive");
}

// ln sum_j w_j exp(e_j), stable. Weights may carry negative parts (signed
// mixture perturbations) as long as the total stays positive.
double log_sum_exp(const Eigen::VectorXd& exponents, const Eigen::VectorXd& weights) {
  double m = -std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < exponents.size(); ++j)
    if (weights(j) != 0.0) m = std::max(m, exponents(j));
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (Eigen::Index j = 0; j < exponents.size(); ++j)
    if (weights(j) != 0.0) s += weights(j) * std::exp(exponents(j) - m);
  if (!(s > 0.0))
    throw std::invalid_argument("log_sum_exp: smoothed value not positive under these weights");
  return m + std::log(s);
}

}  // namespace

double kernel(const RegKlConfig& cfg, const Eigen::VectorXd& x) {
  return std::exp(log_kernel(cfg.epsilon, x.squaredNorm()));
}

Eigen::VectorXd kernel_grad(const RegKlConfig& cfg, const Eigen::VectorXd& x) {
  return (-kernel(cfg, x) / cfg.epsilon) * x;
}

Eigen::MatrixXd kernel_hessian(const RegKlConfig& cfg, const Eigen::VectorXd& x) {
  const double eps = cfg.epsilon;
  const int d = static_cast<int>(x.size());
  return (kernel(cfg, x) / (eps * eps)) *
         (x * x.transpose() - eps * Eigen::MatrixXd::Identity(d, d));
}

double kernel_hessian_max_eigenvalue(const RegKlConfig& cfg, const Eigen::VectorXd& x) {
  // eigenvalues are (|x|^2 - eps)/eps^2 * phi along x and -phi/eps across
  const double eps = cfg.epsilon;
  const double phi = kernel(cfg, x);
  const double radial = (x.squaredNorm() - eps) / (eps * eps) * phi;
  const double transverse = x.size() > 1 ? -phi / eps : radial;
  return std::max(radial, transverse);
}

double log_mean_kernel(const RegKlConfig& cfg, const ParticleEnsemble& ens,
                       const Eigen::VectorXd& y) {
  const int n = ens.size();
  Eigen::VectorXd exponents(n);
  for (int j = 0; j < n; ++j)
    exponents(j) = log_kernel(cfg.epsilon, (y.transpose() - ens.points.row(j)).squaredNorm());
  return log_sum_exp(exponents, Eigen::VectorXd::Ones(n)) - std::log(static_cast<double>(n));
}

Eigen::VectorXd log_mean_kernel_at_particles(const RegKlConfig& cfg,
                                             const ParticleEnsemble& ens) {
  const int n = ens.size();
  Eigen::VectorXd log_s(n);
  for (int i = 0; i < n; ++i) log_s(i) = log_mean_kernel(cfg, ens, ens.point(i));
  return log_s;
}

double reg_kl_value(const RegKlConfig& cfg, const ParticleEnsemble& ens) {
  require_valid(cfg);
  const int n = ens.size();
  const Eigen::VectorXd log_s = log_mean_kernel_at_particles(cfg, ens);
  double total = 0.0;
  for (int i = 0; i < n; ++i) total += cfg.target(ens.point(i)) + log_s(i);
  return total / n;
}

double reg_kl_value(const RegKlConfig& cfg, const Eigen::MatrixXd& points,
                    const Eigen::VectorXd& weights) {
  require_valid(cfg);
  if (points.rows() != weights.size())
    throw std::invalid_argument("reg_kl_value: weights/points mismatch");
  const int n = static_cast<int>(points.rows());
  double total = 0.0;
  Eigen::VectorXd exponents(n);
  for (int i = 0; i < n; ++i) {
    if (weights(i) == 0.0) continue;
    for (int j = 0; j < n; ++j)
      exponents(j) = log_kernel(cfg.epsilon, (points.row(i) - points.row(j)).squaredNorm());
    total += weights(i) * (cfg.target(points.row(i).transpose()) + log_sum_exp(exponents, weights));
  }
  return total;
}

double reg_kl_value(const RegKlConfig& cfg, const GridDensity1D& rho) {
  require_valid(cfg);
  const int m = rho.size();
  Eigen::VectorXd w(m);
  w.setConstant(rho.dx());
  w(0) *= 0.5;
  w(m - 1) *= 0.5;
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    if (rho.values()(i) <= 0.0) continue;
    double conv = 0.0;
    for (int j = 0; j < m; ++j) {
      const double diff = rho.node(i) - rho.node(j);
      conv += w(j) * rho.values()(j) * std::exp(log_kernel(cfg.epsilon, diff * diff));
    }
    total += w(i) * rho.values()(i) *
             (cfg.target.value1(rho.node(i)) + std::log(conv));
  }
  return total;
}

double reg_kl_first_variation(const RegKlConfig& cfg, const ParticleEnsemble& ens,
                              const Eigen::VectorXd& x) {
  require_valid(cfg);
  const int n = ens.size();
  const Eigen::VectorXd log_s = log_mean_kernel_at_particles(cfg, ens);
  double interaction = 0.0;
  for (int j = 0; j < n; ++j) {
    const double lk = log_kernel(cfg.epsilon, (x.transpose() - ens.points.row(j)).squaredNorm());
    interaction += std::exp(lk - log_s(j));
  }
  return cfg.target(x) + interaction / n + log_mean_kernel(cfg, ens, x);
}

Eigen::VectorXd reg_kl_gradient(const RegKlConfig& cfg, const ParticleEnsemble& ens,
                                const Eigen::VectorXd& x, const Eigen::VectorXd& log_s) {
  const int n = ens.size();
  const double eps = cfg.epsilon;
  Eigen::VectorXd interaction = Eigen::VectorXd::Zero(x.size());
  Eigen::VectorXd conv_grad_num = Eigen::VectorXd::Zero(x.size());
  double conv_num = 0.0;
  double max_lk = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd lk(n);
  for (int j = 0; j < n; ++j) {
    const Eigen::VectorXd diff = x - ens.point(j);
    lk(j) = log_kernel(eps, diff.squaredNorm());
    max_lk = std::max(max_lk, lk(j));
    interaction += std::exp(lk(j) - log_s(j)) * (-diff / eps);
  }
  for (int j = 0; j < n; ++j) {
    const Eigen::VectorXd diff = x - ens.point(j);
    const double scaled = std::exp(lk(j) - max_lk);
    conv_num += scaled;
    conv_grad_num += scaled * (-diff / eps);
  }
  return cfg.target.gradient(x) + interaction / n + conv_grad_num / conv_num;
}

Eigen::VectorXd reg_kl_gradient(const RegKlConfig& cfg, const ParticleEnsemble& ens,
                                const Eigen::VectorXd& x) {
  return reg_kl_gradient(cfg, ens, x, log_mean_kernel_at_particles(cfg, ens));
}

double lipschitz_bound(const RegKlConfig& cfg) {
  require_valid(cfg);
  const double r0 = cfg.domain.enclosing_radius();
  return cfg.target.c1 + (3.0 / cfg.epsilon) * std::exp(8.0 * r0 * r0 / cfg.epsilon);
}

double empirical_lipschitz(const RegKlConfig& cfg, int trials, std::uint64_t seed) {
  require_valid(cfg);
  if (trials < 100) throw std::invalid_argument("empirical_lipschitz: need at least 100 trials");
  Rng rng(seed);
  const int n = 8;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const ParticleEnsemble a = ParticleEnsemble::UniformIn(cfg.domain, n, rng);
    ParticleEnsemble b = a;
    // alternate independent resamples with perturbations of two scales
    const int mode = t % 3;
    if (mode == 0) {
      b = ParticleEnsemble::UniformIn(cfg.domain, n, rng);
    } else {
      const double scale = (mode == 1 ? 0.1 : 1e-3) * cfg.domain.enclosing_radius();
      for (int i = 0; i < n; ++i) {
        Eigen::VectorXd p = b.point(i);
        for (int k = 0; k < p.size(); ++k) p(k) += scale * rng.normal();
        b.points.row(i) = cfg.domain.project(p).transpose();
      }
    }
    const Eigen::VectorXd log_sa = log_mean_kernel_at_particles(cfg, a);
    const Eigen::VectorXd log_sb = log_mean_kernel_at_particles(cfg, b);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
      num += (reg_kl_gradient(cfg, a, a.point(i), log_sa) -
              reg_kl_gradient(cfg, b, b.point(i), log_sb))
                 .squaredNorm();
      den += (a.point(i) - b.point(i)).squaredNorm();
    }
    if (den == 0.0) continue;  // degenerate pair
    worst = std::max(worst, std::sqrt(num / den));
  }
  return worst;
}

double lifted_directional_derivative(const RegKlConfig& cfg, const ParticleEnsemble& ens,
                                     const Eigen::MatrixXd& velocities) {
  if (velocities.rows() != ens.size() || velocities.cols() != ens.dim())
    throw std::invalid_argument("lifted_directional_derivative: velocity shape mismatch");
  const Eigen::VectorXd log_s = log_mean_kernel_at_particles(cfg, ens);
  double total = 0.0;
  for (int i = 0; i < ens.size(); ++i)
    total += reg_kl_gradient(cfg, ens, ens.point(i), log_s).dot(velocities.row(i).transpose());
  return total / ens.size();
}

double reg_kl_lower_bound(const RegKlConfig& cfg) {
  const double r0 = cfg.domain.enclosing_radius();
  return cfg.target.min_on_domain - 2.0 * r0 * r0 / cfg.epsilon;
}

}  // namespace wgf
