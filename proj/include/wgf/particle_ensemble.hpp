#pragma once

#include <Eigen/Dense>
#include <iosfwd>

#include "wgf/convex_domain.hpp"
#include "wgf/rng.hpp"

namespace wgf {

// N equally weighted points in R^d, one per row. The empirical stand-in for a
// probability measure; all operations treat the weights as 1/N.
struct ParticleEnsemble {
  Eigen::MatrixXd points;  // N x d

  ParticleEnsemble() = default;
  explicit ParticleEnsemble(Eigen::MatrixXd pts) : points(std::move(pts)) {}

  int size() const { return static_cast<int>(points.rows()); }
  int dim() const { return static_cast<int>(points.cols()); }

  Eigen::VectorXd point(int i) const { return points.row(i).transpose(); }

  // sorted copy of the single coordinate; only meaningful for d = 1
  Eigen::VectorXd sorted_1d() const;

  bool all_inside(const ConvexDomain& domain, double tol = 1e-12) const;

  static ParticleEnsemble UniformIn(const ConvexDomain& domain, int n, Rng& rng);

  void write_csv(std::ostream& out) const;
  static ParticleEnsemble read_csv(std::istream& in);
};

}  // namespace wgf
