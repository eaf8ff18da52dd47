#include <doctest.h>

#include <cmath>

#include "wgf/counterexamples.hpp"
#include "wgf/kl_functional.hpp"
#include "wgf/metrics.hpp"
#include "wgf/quadrature.hpp"
#include "wgf/rng.hpp"

using namespace wgf;

namespace {

// the trivial-update construction: a e^{-U} on (-1,1), b e^{-U} outside,
// a and b fixed so the total mass is one, against the same Gaussian target
PiecewiseDensity1D piecewise_rescaled_gaussian() {
  const double log_norm = 0.5 * std::log(2.0 * M_PI);
  const double core_mass = std::erf(1.0 / std::sqrt(2.0));  // of the unit Gaussian on (-1,1)
  const double a = 0.5 / core_mass;
  const double b = 0.5 / (1.0 - core_mass);
  DensityPiece core{0.0, 1.0, 0.0,
                    Eigen::Vector3d(log_norm - std::log(a), 0.0, 0.5)};
  DensityPiece tail{1.0, 14.0, 0.0,
                    Eigen::Vector3d(log_norm - std::log(b), 0.0, 0.5)};
  return PiecewiseDensity1D({core, tail}, PiecewiseDensity1D::Symmetry::Even, false);
}

GridDensity1D random_grid_density(Rng& rng, double lo, double hi, int nodes) {
  Eigen::VectorXd v(nodes);
  // random smooth-ish positive profile: mixture of a few bumps
  const int bumps = 3;
  Eigen::VectorXd centers(bumps), widths(bumps), heights(bumps);
  for (int b = 0; b < bumps; ++b) {
    centers(b) = rng.uniform(lo + 1.0, hi - 1.0);
    widths(b) = rng.uniform(0.3, 1.5);
    heights(b) = rng.uniform(0.2, 1.0);
  }
  const double dx = (hi - lo) / (nodes - 1);
  for (int i = 0; i < nodes; ++i) {
    const double x = lo + i * dx;
    double s = 1e-4;
    for (int b = 0; b < bumps; ++b)
      s += heights(b) * std::exp(-0.5 * std::pow((x - centers(b)) / widths(b), 2.0));
    v(i) = s;
  }
  return GridDensity1D(lo, hi, std::move(v));
}

}  // namespace

TEST_CASE("KL of a density against itself vanishes") {
  const TargetPotential target = TargetPotential::Quadratic(1);
  const GridDensity1D self = GridDensity1D::FromFunction(
      -10.0, 10.0, 2001, [&target](double x) { return std::exp(-target.value1(x)); });
  CHECK(std::abs(kl_value(self, target)) <= 1e-8);
}

TEST_CASE("KL requires a normalized input") {
  const TargetPotential target = TargetPotential::Quadratic(1);
  Eigen::VectorXd v = Eigen::VectorXd::Ones(500);
  const GridDensity1D bad(-1.0, 1.0, v, /*normalize=*/false);  // mass = 2
  CHECK_THROWS_AS(kl_value(bad, target), std::invalid_argument);
}

TEST_CASE("KL is infinite when mass sits where the target underflows") {
  const TargetPotential target = TargetPotential::Quadratic(1);
  // all mass beyond |x| = 38, where exp(-U) underflows to zero
  const GridDensity1D far = GridDensity1D::FromFunction(
      38.0, 40.0, 201, [](double) { return 1.0; });
  CHECK(std::isinf(kl_value(far, target)));
}

TEST_CASE("KL of the initial counterexample iterate sits above the floor") {
  const TargetPotential target = TargetPotential::Quadratic(1);
  const PiecewiseDensity1D rho0 = example2_density(example2_recursion(0.3, 0), 0);
  const double span = rho0.support_radius() + 0.5;
  const GridDensity1D grid =
      GridDensity1D::FromFunction(-span, span, 40001, [&rho0](double x) { return rho0(x); });
  CHECK(kl_value(grid, target) >= 0.019);
  CHECK(kl_value(rho0, target) >= 0.019);
}

TEST_CASE("first variation is identically one at the target") {
  const TargetPotential target = TargetPotential::Quadratic(1);
  const PiecewiseDensity1D gauss = PiecewiseDensity1D::StandardGaussian();
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const double x = rng.uniform(-3.0, 3.0);
    const auto fv = kl_first_variation(gauss, target, x);
    REQUIRE(fv.has_value());
    CHECK(*fv == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(!kl_first_variation(gauss, target, 13.0).has_value());  // outside support
}

TEST_CASE("first variation of the Gaussian under the quartic target") {
  const TargetPotential quartic = TargetPotential::Quartic1D();
  const PiecewiseDensity1D gauss = PiecewiseDensity1D::StandardGaussian();
  // at x = 0: 1 + C0 + ln rho(0) = 1 + C0 - ln sqrt(2 pi), C0 from quadrature
  const double expected = 1.0 + quartic.value1(0.0) - 0.5 * std::log(2.0 * M_PI);
  CHECK(kl_first_variation(gauss, quartic, 0.0).value() ==
        doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("first variation shifts by the log of a constant rescaling") {
  const TargetPotential target = TargetPotential::Quadratic(1);
  const double c = 1.7;
  DensityPiece unit{-12.0, 12.0, 0.0, Eigen::Vector3d(0.5 * std::log(2.0 * M_PI), 0.0, 0.5)};
  DensityPiece scaled = unit;
  scaled.coeffs(0) -= std::log(c);  // density multiplied by c
  const PiecewiseDensity1D rho({unit}, PiecewiseDensity1D::Symmetry::None, false);
  const PiecewiseDensity1D rho_scaled({scaled}, PiecewiseDensity1D::Symmetry::None, false);
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const double x = rng.uniform(-4.0, 4.0);
    const double diff =
        kl_first_variation(rho_scaled, target, x).value() - kl_first_variation(rho, target, x).value();
    CHECK(diff == doctest::Approx(std::log(c)).epsilon(1e-13));
  }
}

TEST_CASE("transport field of the quartic flow is exactly x^3") {
  const TargetPotential quartic = TargetPotential::Quartic1D();
  const PiecewiseDensity1D gauss = PiecewiseDensity1D::StandardGaussian();
  Rng rng(7);
  for (int t = 0; t < 100; ++t) {
    const double x = rng.uniform(-3.0, 3.0);
    const WGradient g = kl_w_gradient(gauss, quartic, x);
    CHECK(g.w_differentiable);
    // (x + x^3) - x leaves one rounding of the intermediate sum
    CHECK(g.value == doctest::Approx(x * x * x).epsilon(1e-14));
  }
}

TEST_CASE("transport field vanishes on the core of the second counterexample") {
  const TargetPotential target = TargetPotential::Quadratic(1);
  const PiecewiseDensity1D rho0 = example2_density(example2_recursion(0.5, 0), 0);
  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    const double x = rng.uniform(-0.999, 0.999);
    const WGradient g = kl_w_gradient(rho0, target, x);
    CHECK(g.value == 0.0);
  }
  // stationary at the optimum as well
  const PiecewiseDensity1D gauss = PiecewiseDensity1D::StandardGaussian();
  CHECK(kl_w_gradient(gauss, target, 0.7).value == 0.0);
}

TEST_CASE("grid transport field approximates the analytic one") {
  const TargetPotential quartic = TargetPotential::Quartic1D();
  const GridDensity1D gauss_grid = GridDensity1D::FromFunction(
      -8.0, 8.0, 4001, [](double x) { return std::exp(-0.5 * x * x); });
  for (double x : {-1.5, -0.25, 0.5, 2.0}) {
    const WGradient g = kl_w_gradient(gauss_grid, quartic, x);
    CHECK(g.w_differentiable);
    CHECK(g.value == doctest::Approx(x * x * x).epsilon(5e-4));
  }
  // outside the support: flagged, target drift only
  CHECK(!kl_w_gradient(gauss_grid, quartic, 9.0).w_differentiable);
}

TEST_CASE("forward Euler leaves the trivial-update density fixed") {
  const TargetPotential target = TargetPotential::Quadratic(1);
  const PiecewiseDensity1D rho = piecewise_rescaled_gaussian();
  CHECK(density_mass(rho) == doctest::Approx(1.0).epsilon(1e-9));

  Rng rng(11);
  Eigen::MatrixXd pts(400, 1);
  for (int i = 0; i < pts.rows(); ++i) {
    double x = rng.uniform(-6.0, 6.0);
    while (std::abs(std::abs(x) - 1.0) < 1e-9) x = rng.uniform(-6.0, 6.0);
    pts(i, 0) = x;
  }
  KlState state{ParticleEnsemble(pts), rho, target, 0};
  for (int n = 0; n < 5; ++n) {
    FeStepLog log;
    state = fe_step_particles(state, 0.25, &log);
    CHECK(log.nondiff_warnings == 0);
    CHECK(log.max_particle_speed == 0.0);
  }
  CHECK(state.step == 5);
  CHECK((state.particles.points - pts).norm() == 0.0);  // exact zero velocity
}

TEST_CASE("forward Euler leaves target samples fixed") {
  const TargetPotential target = TargetPotential::Quadratic(1);
  const PiecewiseDensity1D gauss = PiecewiseDensity1D::StandardGaussian();
  Rng rng(13);
  Eigen::MatrixXd pts(100, 1);
  for (int i = 0; i < pts.rows(); ++i) pts(i, 0) = rng.normal();
  const KlState state{ParticleEnsemble(pts), gauss, target, 0};
  const KlState next = fe_step_particles(state, 0.1);
  CHECK((next.particles.points - pts).norm() == 0.0);
}

TEST_CASE("forward Euler moves a quartic-flow particle to 26/27") {
  const TargetPotential quartic = TargetPotential::Quartic1D();
  const PiecewiseDensity1D gauss = PiecewiseDensity1D::StandardGaussian();
  Eigen::MatrixXd pts(1, 1);
  pts(0, 0) = 1.0;
  const KlState state{ParticleEnsemble(pts), gauss, quartic, 0};
  const KlState next = fe_step_particles(state, 1.0 / 27.0);
  CHECK(next.particles.points(0, 0) == doctest::Approx(26.0 / 27.0).epsilon(1e-15));
}

TEST_CASE("KL is nonnegative and vanishes only at equality") {
  Rng rng(17);
  for (int t = 0; t < 30; ++t) {
    const GridDensity1D a = random_grid_density(rng, -6.0, 6.0, 601);
    const GridDensity1D b = random_grid_density(rng, -6.0, 6.0, 601);
    CHECK(kl_grid(a, b) >= -1e-12);
  }
  const GridDensity1D a = random_grid_density(rng, -6.0, 6.0, 601);
  CHECK(std::abs(kl_grid(a, a)) <= 1e-8);
}

TEST_CASE("Pinsker inequality holds on random grid pairs") {
  Rng rng(19);
  for (int t = 0; t < 100; ++t) {
    const GridDensity1D a = random_grid_density(rng, -6.0, 6.0, 401);
    const GridDensity1D b = random_grid_density(rng, -6.0, 6.0, 401);
    const double tv = tv_grid(a, b);
    CHECK(kl_grid(a, b) >= 2.0 * tv * tv - 1e-12);
  }
}

TEST_CASE("stepped particle cloud follows the analytic pushforward") {
  const double h = 1.0 / 27.0;
  const TargetPotential quartic = TargetPotential::Quartic1D();
  const PiecewiseDensity1D gauss = PiecewiseDensity1D::StandardGaussian();

  const int n = 1'000'000;
  Rng rng(101);
  Eigen::MatrixXd pts(n, 1);
  for (int i = 0; i < n; ++i) pts(i, 0) = rng.normal();
  const KlState state{ParticleEnsemble(pts), gauss, quartic, 0};
  const KlState next = fe_step_particles(state, h);

  const PiecewiseMap1D map = fe_map_example1(h);
  const auto dens = [&gauss](double x) { return gauss(x); };

  // bin edges at multiples of 1/4 put the folds +-2 exactly on edges, never
  // inside a bin
  const double lo = -3.5, hi = 3.5, width = 0.25;
  const int bins = static_cast<int>((hi - lo) / width + 0.5);
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(bins);
  for (int i = 0; i < n; ++i) {
    const double y = next.particles.points(i, 0);
    if (y < lo || y >= hi) continue;
    counts(static_cast<int>((y - lo) / width)) += 1.0;
  }
  for (int b = 0; b < bins; ++b) {
    const double p = integrate(
        [&](double y) {
          const PushforwardValue v = pushforward_multibranch(dens, map, y);
          return v.singular ? 0.0 : v.value;
        },
        lo + b * width, lo + (b + 1) * width, {1e-10, 1e-10});
    const double sigma = std::sqrt(n * p * (1.0 - p));
    CHECK(std::abs(counts(b) - n * p) <= 3.0 * sigma + 1e-9);
  }
}

TEST_CASE("run log serializes in column order") {
  std::stringstream ss;
  write_run_log_csv(ss, {{0, 0.5, 0, 1.25}, {1, 0.25, 2, 0.5}});
  CHECK(ss.str() ==
        "n,kl_value,num_nondiff_warnings,max_particle_speed\n0,0.5,0,1.25\n1,0.25,2,0.5\n");
}
