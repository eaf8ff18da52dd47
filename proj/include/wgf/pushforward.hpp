#pragma once

#include <functional>
#include <vector>

#include "wgf/quadrature.hpp"

namespace wgf {

// One strictly monotone restriction of a 1-d map: domain interval, its image,
// and evaluators for the map, its inverse and its derivative.
struct MapBranch {
  double x_lo, x_hi;  // domain of the restriction
  double y_lo, y_hi;  // image, stored with y_lo < y_hi
  std::function<double(double)> forward;
  std::function<double(double)> inverse;
  std::function<double(double)> derivative;
};

// A map that is injective only piecewise; pushing a density forward requires
// summing over every branch whose image contains the evaluation point.
class PiecewiseMap1D {
 public:
  explicit PiecewiseMap1D(std::vector<MapBranch> branches);

  const std::vector<MapBranch>& branches() const { return branches_; }

  // finite image endpoints = the critical values where a Jacobian can blow up
  std::vector<double> critical_values() const;

 private:
  std::vector<MapBranch> branches_;
};

struct PushforwardValue {
  double value = 0.0;
  int branch_count = 0;
  bool singular = false;  // y sits on the critical set; value not meaningful
};

// Density of (map push-forward of density0) at y: sum over contributing
// branches of density0(T_i^{-1}(y)) |dT_i^{-1}/dy|.
PushforwardValue pushforward_multibranch(const std::function<double(double)>& density0,
                                         const PiecewiseMap1D& map, double y);

// Integral of the pushed-forward density over [y_lo, y_hi]; the quadrature is
// split at critical values so that integrable Jacobian singularities are never
// hit by a node.
double pushforward_mass(const std::function<double(double)>& density0, const PiecewiseMap1D& map,
                        double y_lo, double y_hi, const QuadratureOptions& opts = {});

// Safeguarded Newton for strictly monotone f on [lo, hi] with f(x) = y
// somewhere inside; falls back to bisection whenever Newton leaves the
// bracket. Tolerance is relative, 1e-14.
double invert_monotone(const std::function<double(double)>& f,
                       const std::function<double(double)>& df, double y, double lo, double hi);

}  // namespace wgf
