#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wgf/regularized_kl.hpp"

using namespace wgf;

namespace {

RegKlConfig config_1d(double epsilon) {
  return {epsilon, ConvexDomain::Interval(-1.0, 1.0), TargetPotential::Quadratic(1)};
}

RegKlConfig config_nd(double epsilon, int d) {
  return {epsilon, ConvexDomain::Ball(Eigen::VectorXd::Zero(d), 1.0),
          TargetPotential::Quadratic(d)};
}

ParticleEnsemble ensemble_in(const ConvexDomain& domain, int n, Rng& rng) {
  return ParticleEnsemble::UniformIn(domain, n, rng);
}

}  // namespace

TEST_CASE("nonpositive bandwidths are rejected") {
  RegKlConfig cfg = config_1d(0.5);
  cfg.epsilon = 0.0;
  Eigen::MatrixXd pts = Eigen::MatrixXd::Zero(2, 1);
  const ParticleEnsemble ens(std::move(pts));
  CHECK_THROWS_AS(reg_kl_value(cfg, ens), std::invalid_argument);
  CHECK_THROWS_AS(lipschitz_bound(cfg), std::invalid_argument);
}

TEST_CASE("kernel peaks at zero with vanishing gradient") {
  const RegKlConfig cfg = config_nd(0.7, 2);
  CHECK(kernel(cfg, Eigen::Vector2d::Zero()) == 1.0);
  CHECK(kernel_grad(cfg, Eigen::Vector2d::Zero()).norm() == 0.0);
}

TEST_CASE("kernel bounds inside a ball of radius R") {
  const double eps = 1.0;
  const RegKlConfig cfg = config_nd(eps, 2);
  Rng rng(3);
  const double big_r = 2.5;
  for (int t = 0; t < 10000; ++t) {
    Eigen::Vector2d x(rng.uniform(-big_r, big_r), rng.uniform(-big_r, big_r));
    if (x.norm() > big_r) continue;
    const double phi = kernel(cfg, x);
    CHECK(phi <= 1.0);
    CHECK(phi >= std::exp(-big_r * big_r / (2.0 * eps)) - 1e-15);
    CHECK(kernel_grad(cfg, x).norm() <= 1.0 / std::sqrt(eps * M_E) + 1e-12);
    CHECK(kernel_hessian_max_eigenvalue(cfg, x) <=
          2.0 / (eps * std::exp(1.5)) + 1e-12);
    // the full Hessian agrees with its closed-form eigenvalues
    const Eigen::MatrixXd hess = kernel_hessian(cfg, x);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess);
    CHECK(es.eigenvalues().maxCoeff() ==
          doctest::Approx(kernel_hessian_max_eigenvalue(cfg, x)).epsilon(1e-10));
  }
}

TEST_CASE("one-atom value reduces to the potential") {
  const RegKlConfig cfg = config_1d(0.5);
  Eigen::MatrixXd pts(1, 1);
  pts(0, 0) = 0.37;
  const ParticleEnsemble ens(std::move(pts));
  CHECK(reg_kl_value(cfg, ens) ==
        doctest::Approx(cfg.target.value1(0.37)).epsilon(1e-15));
}

TEST_CASE("two-atom value matches the hand expansion") {
  RegKlConfig cfg = config_1d(0.8);
  cfg.target = TargetPotential::Quadratic(Eigen::VectorXd::Zero(1), 0.0);
  cfg.target.value = [](const Eigen::VectorXd&) { return 0.0; };
  cfg.target.gradient = [](const Eigen::VectorXd& x) { return (0.0 * x).eval(); };
  const double d = 0.9;
  Eigen::MatrixXd pts(2, 1);
  pts(0, 0) = -0.5 * d;
  pts(1, 0) = 0.5 * d;
  const ParticleEnsemble ens(std::move(pts));
  const double expected = std::log(0.5 * (1.0 + std::exp(-d * d / (2.0 * cfg.epsilon))));
  CHECK(reg_kl_value(cfg, ens) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("value is finite and lower-bounded on random ensembles") {
  Rng rng(5);
  const RegKlConfig cfg = config_nd(0.5, 2);
  const double lb = reg_kl_lower_bound(cfg);
  for (int t = 0; t < 1000; ++t) {
    const ParticleEnsemble ens = ensemble_in(cfg.domain, 1 + t % 24, rng);
    const double f = reg_kl_value(cfg, ens);
    CHECK(std::isfinite(f));
    CHECK(f >= lb - 1e-12);
  }
  // coincident atoms are fine too
  Eigen::MatrixXd pts = Eigen::MatrixXd::Zero(6, 2);
  CHECK(std::isfinite(reg_kl_value(cfg, ParticleEnsemble(std::move(pts)))));
}

TEST_CASE("one-atom first variation at the atom is one plus the potential") {
  RegKlConfig cfg = config_1d(0.6);
  cfg.target.value = [](const Eigen::VectorXd&) { return 0.0; };
  Eigen::MatrixXd pts(1, 1);
  pts(0, 0) = 0.2;
  const ParticleEnsemble ens(std::move(pts));
  CHECK(reg_kl_first_variation(cfg, ens, Eigen::VectorXd::Constant(1, 0.2)) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("first variation matches the mixture derivative") {
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    const int d = 1 + t % 2;
    const RegKlConfig cfg = config_nd(0.4 + 0.2 * (t % 4), d);
    const int n = 4 + t % 6;
    const int m = 3 + t % 5;
    const ParticleEnsemble rho = ensemble_in(cfg.domain, n, rng);
    const ParticleEnsemble nu = ensemble_in(cfg.domain, m, rng);

    // central difference of t -> F[(1-t) rho + t nu]
    Eigen::MatrixXd pts(n + m, d);
    pts.topRows(n) = rho.points;
    pts.bottomRows(m) = nu.points;
    const auto mixture_value = [&](double w) {
      Eigen::VectorXd weights(n + m);
      weights.head(n).setConstant((1.0 - w) / n);
      weights.tail(m).setConstant(w / m);
      return reg_kl_value(cfg, pts, weights);
    };
    const double dt = 1e-4;
    const double fd = (mixture_value(dt) - mixture_value(-dt)) / (2.0 * dt);

    double pairing = 0.0;
    for (int j = 0; j < m; ++j) pairing += reg_kl_first_variation(cfg, rho, nu.point(j)) / m;
    for (int i = 0; i < n; ++i) pairing -= reg_kl_first_variation(cfg, rho, rho.point(i)) / n;
    CHECK(fd == doctest::Approx(pairing).epsilon(1e-5));
  }
}

TEST_CASE("first variation is Lipschitz in position with the stacked constant") {
  Rng rng(9);
  const RegKlConfig cfg = config_nd(1.0, 2);
  const double r0 = cfg.domain.enclosing_radius();
  const double eps = cfg.epsilon;
  // per-term position-Lipschitz constants of the three summands
  const double l2 = (cfg.target.c0 + cfg.target.c1 * r0 * r0 / 2.0) +
                    std::exp(2.0 * r0 * r0 / eps) / std::sqrt(eps * M_E) +
                    std::exp(4.0 * r0 * r0 / eps);
  const ParticleEnsemble ens = ensemble_in(cfg.domain, 24, rng);
  for (int t = 0; t < 300; ++t) {
    const Eigen::VectorXd x = cfg.domain.sample_uniform(rng);
    const Eigen::VectorXd y = cfg.domain.sample_uniform(rng);
    const double diff =
        std::abs(reg_kl_first_variation(cfg, ens, x) - reg_kl_first_variation(cfg, ens, y));
    CHECK(diff <= l2 * (x - y).norm() + 1e-12);
  }
}

TEST_CASE("gradient is the spatial derivative of the first variation") {
  Rng rng(11);
  int checked = 0;
  for (int t = 0; t < 50; ++t) {
    const int d = 1 + t % 2;
    const RegKlConfig cfg = config_nd(0.35 + 0.15 * (t % 5), d);
    const int n = 2 + t % 49;
    const ParticleEnsemble ens = ensemble_in(cfg.domain, n, rng);
    Eigen::VectorXd x = cfg.domain.sample_uniform(rng) * 0.9;
    const Eigen::VectorXd g = reg_kl_gradient(cfg, ens, x);
    Eigen::VectorXd fd(d);
    const double step = 1e-5 * cfg.domain.enclosing_radius();
    for (int k = 0; k < d; ++k) {
      Eigen::VectorXd hi = x, lo = x;
      hi(k) += step;
      lo(k) -= step;
      fd(k) = (reg_kl_first_variation(cfg, ens, hi) - reg_kl_first_variation(cfg, ens, lo)) /
              (2.0 * step);
    }
    CHECK((g - fd).norm() <= 1e-6 * std::max(1.0, g.norm()));
    ++checked;
  }
  CHECK(checked == 50);
}

TEST_CASE("one-atom gradient at the atom is the potential gradient") {
  const RegKlConfig cfg = config_nd(0.5, 2);
  Eigen::MatrixXd pts(1, 2);
  pts << 0.3, -0.4;
  const ParticleEnsemble ens(std::move(pts));
  const Eigen::VectorXd g = reg_kl_gradient(cfg, ens, ens.point(0));
  const Eigen::VectorXd expected = cfg.target.gradient(ens.point(0));
  CHECK((g - expected).norm() == 0.0);  // both kernel terms vanish at zero offset
}

TEST_CASE("index-coupled gradient differences satisfy the transport bound") {
  Rng rng(13);
  const RegKlConfig cfg = config_nd(0.9, 2);
  const double bound = lipschitz_bound(cfg);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 12;
    const ParticleEnsemble a = ensemble_in(cfg.domain, n, rng);
    ParticleEnsemble b = a;
    const double scale = t % 2 ? 0.05 : 0.7;
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd p = b.point(i);
      for (int k = 0; k < p.size(); ++k) p(k) += scale * rng.normal();
      b.points.row(i) = cfg.domain.project(p).transpose();
    }
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
      num += (reg_kl_gradient(cfg, a, a.point(i)) - reg_kl_gradient(cfg, b, b.point(i)))
                 .squaredNorm();
      den += (a.point(i) - b.point(i)).squaredNorm();
    }
    if (den == 0.0) continue;
    CHECK(std::sqrt(num) <= bound * std::sqrt(den) * (1.0 + 1e-9));
  }
}

TEST_CASE("closed-form Lipschitz constant") {
  RegKlConfig cfg{1.0, ConvexDomain::Ball(Eigen::VectorXd::Zero(1), 1.0),
                  TargetPotential::Quadratic(1)};
  CHECK(cfg.domain.enclosing_radius() == 1.0);
  CHECK(lipschitz_bound(cfg) == doctest::Approx(1.0 + 3.0 * std::exp(8.0)).epsilon(1e-12));
  CHECK(lipschitz_bound(cfg) == doctest::Approx(8943.87).epsilon(1e-5));

  // flat-kernel limit with no potential curvature
  cfg.target.c1 = 0.0;
  cfg.epsilon = 1e9;
  CHECK(lipschitz_bound(cfg) <= 1e-8);

  // monotone decreasing in the bandwidth
  cfg.target.c1 = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (double eps = 0.5; eps <= 10.0; eps += 0.25) {
    cfg.epsilon = eps;
    const double b = lipschitz_bound(cfg);
    CHECK(b < prev);
    prev = b;
  }
}

TEST_CASE("empirical Lipschitz estimate stays below the theoretical constant") {
  const RegKlConfig cfg = config_nd(0.8, 2);
  const double emp = empirical_lipschitz(cfg, 150, 17);
  CHECK(emp > 0.0);
  CHECK(emp <= lipschitz_bound(cfg) * (1.0 + 1e-9));
  CHECK_THROWS_AS(empirical_lipschitz(cfg, 50, 17), std::invalid_argument);
}

TEST_CASE("single-particle gradient ratios respect the kernel-only constant") {
  // with a flat potential the gradient difference comes from the kernel terms
  RegKlConfig cfg = config_1d(0.7);
  cfg.target.value = [](const Eigen::VectorXd&) { return 0.0; };
  cfg.target.gradient = [](const Eigen::VectorXd& x) { return (0.0 * x).eval(); };
  cfg.target.c1 = 0.0;
  const double r0 = cfg.domain.enclosing_radius();
  const double kernel_only = (3.0 / cfg.epsilon) * std::exp(8.0 * r0 * r0 / cfg.epsilon);
  Rng rng(41);
  for (int t = 0; t < 100; ++t) {
    Eigen::MatrixXd pa(1, 1), pb(1, 1);
    pa(0, 0) = rng.uniform(-1.0, 1.0);
    pb(0, 0) = rng.uniform(-1.0, 1.0);
    if (pa(0, 0) == pb(0, 0)) continue;
    const ParticleEnsemble a(pa), b(pb);
    const double num =
        (reg_kl_gradient(cfg, a, a.point(0)) - reg_kl_gradient(cfg, b, b.point(0))).norm();
    CHECK(num <= kernel_only * std::abs(pa(0, 0) - pb(0, 0)) * (1.0 + 1e-9));
  }
}

TEST_CASE("directional derivative matches finite differences of the value") {
  Rng rng(19);
  for (int t = 0; t < 25; ++t) {
    const int d = 1 + t % 2;
    const RegKlConfig cfg = config_nd(0.5 + 0.1 * (t % 4), d);
    const int n = 3 + t % 9;
    const ParticleEnsemble ens = ensemble_in(cfg.domain, n, rng);
    Eigen::MatrixXd vel(n, d);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < d; ++k) vel(i, k) = rng.normal();

    const double dd = lifted_directional_derivative(cfg, ens, vel);
    const double dt = 1e-6;
    const auto value_at = [&](double w) {
      ParticleEnsemble moved = ens;
      moved.points += w * vel;
      return reg_kl_value(cfg, moved);
    };
    const double fd = (value_at(dt) - value_at(-dt)) / (2.0 * dt);
    CHECK(dd == doctest::Approx(fd).epsilon(1e-5));
  }
  // zero velocities produce zero
  const RegKlConfig cfg = config_nd(0.5, 1);
  const ParticleEnsemble ens = ensemble_in(cfg.domain, 5, rng);
  CHECK(lifted_directional_derivative(cfg, ens, Eigen::MatrixXd::Zero(5, 1)) == 0.0);
}

TEST_CASE("one-atom directional derivative reduces to the potential slope") {
  const RegKlConfig cfg = config_nd(0.5, 2);
  Eigen::MatrixXd pts(1, 2);
  pts << 0.1, 0.6;
  const ParticleEnsemble ens(std::move(pts));
  Eigen::MatrixXd vel = Eigen::MatrixXd::Zero(1, 2);
  vel(0, 0) = 1.0;
  CHECK(lifted_directional_derivative(cfg, ens, vel) ==
        doctest::Approx(cfg.target.gradient(ens.point(0))(0)).epsilon(1e-14));
}

TEST_CASE("value and gradients are invariant under particle relabeling") {
  Rng rng(23);
  const RegKlConfig cfg = config_nd(0.7, 2);
  const ParticleEnsemble ens = ensemble_in(cfg.domain, 12, rng);
  ParticleEnsemble shuffled = ens;
  std::vector<int> order(12);
  std::iota(order.begin(), order.end(), 0);
  for (int i = 11; i > 0; --i) std::swap(order[i], order[rng.next_u64() % (i + 1)]);
  for (int i = 0; i < 12; ++i) shuffled.points.row(i) = ens.points.row(order[i]);

  CHECK(reg_kl_value(cfg, shuffled) == doctest::Approx(reg_kl_value(cfg, ens)).epsilon(1e-14));
  const Eigen::VectorXd probe = Eigen::Vector2d(0.2, -0.1);
  CHECK((reg_kl_gradient(cfg, shuffled, probe) - reg_kl_gradient(cfg, ens, probe)).norm() <=
        1e-13);
}

TEST_CASE("grid evaluation agrees with its atomic quadrature form") {
  const RegKlConfig cfg = config_1d(0.5);
  const GridDensity1D rho = GridDensity1D::FromFunction(
      -1.0, 1.0, 201, [](double x) { return 1.2 - 0.5 * x * x; });
  const int m = rho.size();
  Eigen::MatrixXd pts(m, 1);
  Eigen::VectorXd weights(m);
  for (int i = 0; i < m; ++i) {
    pts(i, 0) = rho.node(i);
    weights(i) = rho.values()(i) * rho.dx() * (i == 0 || i == m - 1 ? 0.5 : 1.0);
  }
  CHECK(reg_kl_value(cfg, rho) ==
        doctest::Approx(reg_kl_value(cfg, pts, weights)).epsilon(1e-12));
}
