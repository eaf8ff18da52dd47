#include "wgf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wgf {
namespace {

// QUADPACK QK15 abscissae and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelResult {
  double kronrod;
  double error;
};

PanelResult gk15(const std::function<double(double)>& f, double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double gauss = 0.0;
  double kronrod = 0.0;
  for (int j = 0; j < 8; ++j) {
    const double offset = half * kXgk[j];
    const double fsum = (j == 7) ? f(mid) : f(mid - offset) + f(mid + offset);
    kronrod += kWgk[j] * fsum;
    if (j % 2 == 1) gauss += kWg[j / 2] * fsum;  // odd indices are the G7 nodes
  }
  kronrod *= half;
  gauss *= half;
  return {kronrod, std::abs(kronrod - gauss)};
}

double adapt(const std::function<double(double)>& f, double lo, double hi,
             const QuadratureOptions& opts, int depth, double whole_scale) {
  const PanelResult panel = gk15(f, lo, hi);
  const double tol = std::max(opts.abs_tol, opts.rel_tol * std::max(std::abs(panel.kronrod), whole_scale));
  if (panel.error <= tol || depth >= opts.max_depth || hi - lo < 1e-300) {
    return panel.kronrod;
  }
  const double mid = 0.5 * (lo + hi);
  return adapt(f, lo, mid, opts, depth + 1, whole_scale) +
         adapt(f, mid, hi, opts, depth + 1, whole_scale);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureOptions& opts) {
  if (!(lo <= hi)) throw std::invalid_argument("integrate: lo > hi");
  if (lo == hi) return 0.0;
  const PanelResult first = gk15(f, lo, hi);
  return adapt(f, lo, hi, opts, 0, std::abs(first.kronrod));
}

double integrate_split(const std::function<double(double)>& f, double lo, double hi,
                       std::vector<double> split_points, const QuadratureOptions& opts) {
  split_points.push_back(lo);
  split_points.push_back(hi);
  std::sort(split_points.begin(), split_points.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < split_points.size(); ++i) {
    const double a = std::max(lo, split_points[i]);
    const double b = std::min(hi, split_points[i + 1]);
    if (b > a) total += integrate(f, a, b, opts);
  }
  return total;
}

}  // namespace wgf
