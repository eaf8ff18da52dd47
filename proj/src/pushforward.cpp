#include "wgf/pushforward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wgf {

PiecewiseMap1D::PiecewiseMap1D(std::vector<MapBranch> branches) : branches_(std::move(branches)) {
  if (branches_.empty()) throw std::invalid_argument("PiecewiseMap1D: no branches");
  std::sort(branches_.begin(), branches_.end(),
            [](const MapBranch& a, const MapBranch& b) { return a.x_lo < b.x_lo; });
  for (const auto& br : branches_) {
    if (!(br.x_lo < br.x_hi)) throw std::invalid_argument("PiecewiseMap1D: empty branch domain");
    if (!(br.y_lo < br.y_hi)) throw std::invalid_argument("PiecewiseMap1D: empty branch image");
  }
  for (std::size_t i = 0; i + 1 < branches_.size(); ++i)
    if (branches_[i].x_hi > branches_[i + 1].x_lo)
      throw std::invalid_argument("PiecewiseMap1D: overlapping branch domains");
  // monotonicity spot check: derivative keeps one sign strictly inside
  for (const auto& br : branches_) {
    const double lo = std::isinf(br.x_lo) ? br.x_hi - 8.0 : br.x_lo;
    const double hi = std::isinf(br.x_hi) ? br.x_lo + 8.0 : br.x_hi;
    int sign = 0;
    for (int k = 1; k < 16; ++k) {
      const double x = lo + (hi - lo) * k / 16.0;
      const double d = br.derivative(x);
      if (d == 0.0) continue;
      const int s = d > 0.0 ? 1 : -1;
      if (sign == 0) sign = s;
      if (s != sign)
        throw std::invalid_argument("PiecewiseMap1D: branch not monotone on its domain");
    }
  }
}

std::vector<double> PiecewiseMap1D::critical_values() const {
  std::vector<double> vals;
  for (const auto& br : branches_) {
    if (std::isfinite(br.y_lo)) vals.push_back(br.y_lo);
    if (std::isfinite(br.y_hi)) vals.push_back(br.y_hi);
  }
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

PushforwardValue pushforward_multibranch(const std::function<double(double)>& density0,
                                         const PiecewiseMap1D& map, double y) {
  // Within a few ulps of a fold value the preimage collapses onto the
  // critical point and the Jacobian cancels below rounding noise, so the
  // density there is not computable in double precision; a relative guard
  // band around each critical value is signalled as singular. The band is
  // ~1e-14 wide and the density is integrable across it, so any integral is
  // perturbed far below the mass tolerances.
  constexpr double kGuard = 64.0 * std::numeric_limits<double>::epsilon();
  PushforwardValue out;
  for (const auto& br : map.branches()) {
    for (double crit : {br.y_lo, br.y_hi}) {
      if (std::isfinite(crit) && std::abs(y - crit) <= kGuard * std::max(1.0, std::abs(crit))) {
        out.singular = true;
        return out;
      }
    }
    if (y < br.y_lo || y > br.y_hi) continue;
    const double x = br.inverse(y);
    const double jac = br.derivative(x);
    if (std::abs(jac) < 1e-300) {
      out.singular = true;
      return out;
    }
    out.value += density0(x) / std::abs(jac);
    ++out.branch_count;
  }
  return out;
}

double pushforward_mass(const std::function<double(double)>& density0, const PiecewiseMap1D& map,
                        double y_lo, double y_hi, const QuadratureOptions& opts) {
  const auto f = [&](double y) {
    const PushforwardValue v = pushforward_multibranch(density0, map, y);
    return v.singular ? 0.0 : v.value;
  };
  return integrate_split(f, y_lo, y_hi, map.critical_values(), opts);
}

double invert_monotone(const std::function<double(double)>& f,
                       const std::function<double(double)>& df, double y, double lo, double hi) {
  double f_lo = f(lo) - y;
  double f_hi = f(hi) - y;
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (f_lo * f_hi > 0.0) throw std::invalid_argument("invert_monotone: root not bracketed");
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double fx = f(x) - y;
    if (fx == 0.0) return x;
    if ((fx > 0.0) == (f_lo > 0.0)) {
      lo = x;
      f_lo = fx;
    } else {
      hi = x;
      f_hi = fx;
    }
    const double d = df(x);
    double next = d != 0.0 ? x - fx / d : lo;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // safeguard: bisect
    if (std::abs(next - x) <= 1e-14 * (1.0 + std::abs(next))) return next;
    x = next;
  }
  return x;
}

}  // namespace wgf
