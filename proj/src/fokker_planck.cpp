#include "wgf/fokker_planck.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "wgf/counterexamples.hpp"
#include "wgf/kl_functional.hpp"
#include "wgf/metrics.hpp"

namespace wgf {

namespace {

// Thomas solve of the tridiagonal system (diag, upper, lower) x = rhs
Eigen::VectorXd tridiag_solve(const Eigen::VectorXd& lower, const Eigen::VectorXd& diag,
                              const Eigen::VectorXd& upper, Eigen::VectorXd rhs) {
  const int n = static_cast<int>(diag.size());
  Eigen::VectorXd scratch(n);
  double pivot = diag(0);
  rhs(0) /= pivot;
  for (int i = 1; i < n; ++i) {
    scratch(i) = upper(i - 1) / pivot;
    pivot = diag(i) - lower(i - 1) * scratch(i);
    rhs(i) = (rhs(i) - lower(i - 1) * rhs(i - 1)) / pivot;
  }
  for (int i = n - 2; i >= 0; --i) rhs(i) -= scratch(i + 1) * rhs(i + 1);
  return rhs;
}

}  // namespace

FpTrajectory fp_solve(const FpConfig& cfg, const GridDensity1D& rho0) {
  if (cfg.nodes < 200) throw std::invalid_argument("fp_solve: need at least 200 nodes");
  if (!(cfg.tau > 0.0) || !(cfg.t_end >= 0.0)) throw std::invalid_argument("fp_solve: bad times");
  if (rho0.size() != cfg.nodes || rho0.lo() != cfg.lo || rho0.hi() != cfg.hi)
    throw std::invalid_argument("fp_solve: initial density grid mismatch");
  if (std::abs(rho0.mass() - 1.0) > 1e-6)
    throw std::invalid_argument("fp_solve: initial density not normalized");

  const int m = cfg.nodes;
  const double dx = rho0.dx();
  // face factor beta_i = exp((U_{i+1} - U_i) / 2) for faces i+1/2
  Eigen::VectorXd beta(m - 1);
  for (int i = 0; i < m - 1; ++i) {
    const double du = cfg.target.value1(rho0.node(i + 1)) - cfg.target.value1(rho0.node(i));
    beta(i) = std::exp(0.5 * du);
  }
  // implicit matrix I - tau A, with A the flux-difference operator
  const double lam = cfg.tau / (dx * dx);
  Eigen::VectorXd diag(m), upper(m - 1), lower(m - 1);
  for (int i = 0; i < m; ++i) {
    double out = 0.0;
    if (i < m - 1) out += 1.0 / beta(i);   // loss through the right face
    if (i > 0) out += beta(i - 1);         // loss through the left face
    diag(i) = 1.0 + lam * out;
  }
  for (int i = 0; i < m - 1; ++i) {
    upper(i) = -lam * beta(i);       // gain at i from rho_{i+1}
    lower(i) = -lam / beta(i);       // gain at i+1 from rho_i
  }

  const int steps = static_cast<int>(std::ceil(cfg.t_end / cfg.tau - 1e-12));
  FpTrajectory traj;
  Eigen::VectorXd v = rho0.values();
  traj.times.push_back(0.0);
  traj.snapshots.emplace_back(cfg.lo, cfg.hi, v, /*normalize=*/false);
  for (int s = 1; s <= steps; ++s) {
    v = tridiag_solve(lower, diag, upper, v);
    if ((v.array() < -1e-12).any())
      throw std::runtime_error("fp_solve: negative density, scheme misconfigured");
    const bool keep = (cfg.snapshot_stride > 0 && s % cfg.snapshot_stride == 0) || s == steps;
    if (keep) {
      traj.times.push_back(s * cfg.tau);
      traj.snapshots.emplace_back(cfg.lo, cfg.hi, v, /*normalize=*/false);
    }
  }
  return traj;
}

namespace {

GridDensity1D rasterize(const PiecewiseDensity1D& dens, double lo, double hi, int nodes) {
  return GridDensity1D::FromFunction(lo, hi, nodes, [&](double x) { return dens(x); });
}

FeVsFpRow make_row(double h, int n, const GridDensity1D& fe, double kl_fe,
                   const GridDensity1D& fp, const TargetPotential& target) {
  FeVsFpRow row;
  row.h = h;
  row.n_steps = n;
  const GridDensity1D fp_norm = fp.renormalized();
  row.w2_gap = w2_1d(fe, fp_norm);
  row.kl_fe = kl_fe;
  row.kl_fp = kl_value(fp_norm, target);
  return row;
}

}  // namespace

std::vector<FeVsFpRow> fe_vs_fp_gap(const std::vector<double>& h_list, double t_end) {
  const TargetPotential target = TargetPotential::Quadratic(1);

  // common grid wide enough for every forward-Euler support
  double radius = 10.0;
  std::vector<std::pair<int, Example2Coefficients>> runs;
  for (double h : h_list) {
    const int n = static_cast<int>(std::ceil(t_end / h - 1e-12));
    runs.emplace_back(n, example2_recursion(h, n));
    radius = std::max(radius, example2_density(runs.back().second, n).support_radius() + 1.0);
  }
  const int nodes = 8001;

  const PiecewiseDensity1D rho0 = example2_density(runs.front().second, 0);
  FpConfig fp_cfg{-radius, radius, nodes, 5e-4, t_end, target};
  const FpTrajectory traj = fp_solve(fp_cfg, rasterize(rho0, -radius, radius, nodes));
  const GridDensity1D& fp_final = traj.final_density();

  std::vector<FeVsFpRow> rows;
  for (std::size_t k = 0; k < h_list.size(); ++k) {
    const auto& [n, coeffs] = runs[k];
    const PiecewiseDensity1D fe_dens = example2_density(coeffs, n);
    const GridDensity1D fe_grid = rasterize(fe_dens, -radius, radius, nodes);
    rows.push_back(make_row(h_list[k], n, fe_grid, kl_value(fe_dens, target), fp_final, target));
  }
  return rows;
}

std::vector<FeVsFpRow> fe_vs_fp_gap_gaussian(const std::vector<double>& h_list, double t_end,
                                             double sigma0) {
  if (!(sigma0 > 0.0)) throw std::invalid_argument("fe_vs_fp_gap_gaussian: sigma0 must be > 0");
  const TargetPotential target = TargetPotential::Quadratic(1);
  const double radius = 10.0;
  const int nodes = 8001;

  const auto gaussian = [](double sigma) {
    DensityPiece p;
    p.lo = -12.0 * sigma;
    p.hi = 12.0 * sigma;
    p.coeffs = Eigen::Vector3d(std::log(sigma * std::sqrt(2.0 * M_PI)), 0.0,
                               0.5 / (sigma * sigma));
    return PiecewiseDensity1D({p}, PiecewiseDensity1D::Symmetry::None);
  };

  FpConfig fp_cfg{-radius, radius, nodes, 5e-4, t_end, target};
  const FpTrajectory traj = fp_solve(fp_cfg, rasterize(gaussian(sigma0), -radius, radius, nodes));
  const GridDensity1D& fp_final = traj.final_density();

  std::vector<FeVsFpRow> rows;
  for (double h : h_list) {
    const int n = static_cast<int>(std::ceil(t_end / h - 1e-12));
    // a Gaussian iterate stays Gaussian: the transport map is linear, so one
    // step rescales the standard deviation by 1 - h (1 - 1/sigma^2)
    double sigma = sigma0;
    for (int s = 0; s < n; ++s) sigma -= h * (sigma - 1.0 / sigma);
    const PiecewiseDensity1D fe_dens = gaussian(sigma);
    const GridDensity1D fe_grid = rasterize(fe_dens, -radius, radius, nodes);
    rows.push_back(make_row(h, n, fe_grid, kl_value(fe_dens, target), fp_final, target));
  }
  return rows;
}

void write_snapshot_csv(std::ostream& out, const FpTrajectory& traj) {
  out << "t,node,value\n";
  char buf[96];
  for (std::size_t s = 0; s < traj.snapshots.size(); ++s) {
    const GridDensity1D& g = traj.snapshots[s];
    for (int i = 0; i < g.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", traj.times[s], g.node(i),
                    g.values()(i));
      out << buf;
    }
  }
}

}  // namespace wgf
