#pragma once

#include <functional>
#include <vector>

namespace wgf {

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_depth = 60;
};

// Adaptive Gauss-Kronrod (G7, K15) on a finite interval.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureOptions& opts = {});

// Same, but the interval is first split at the given interior points, so the
// integrand may be non-smooth (or integrably singular) there; Kronrod nodes
// never touch subinterval endpoints.
double integrate_split(const std::function<double(double)>& f, double lo, double hi,
                       std::vector<double> split_points, const QuadratureOptions& opts = {});

}  // namespace wgf
