#include "wgf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wgf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Piecewise-linear function given by knots (t_i, v_i) with t non-decreasing;
// jumps are encoded by repeated t. Constant-extended outside [t_front, t_back].
struct Polyline {
  std::vector<double> t, v;

  double eval_mid(double a, double b) const {
    // value at the midpoint of (a, b); (a, b) never straddles a knot
    const double m = 0.5 * (a + b);
    auto it = std::upper_bound(t.begin(), t.end(), m);
    if (it == t.begin()) return v.front();
    if (it == t.end()) return v.back();
    const std::size_t j = static_cast<std::size_t>(it - t.begin());
    const double t0 = t[j - 1], t1 = t[j];
    if (t1 == t0) return v[j];
    const double w = (m - t0) / (t1 - t0);
    return v[j - 1] * (1.0 - w) + v[j] * w;
  }

  double eval_at(double x, bool from_left) const {
    auto range = std::equal_range(t.begin(), t.end(), x);
    if (range.first != range.second) {
      // exact knot (possibly a jump): take the one-sided value
      const std::size_t j = static_cast<std::size_t>(
          (from_left ? range.first : range.second - 1) - t.begin());
      return v[j];
    }
    return eval_mid(x, x);
  }
};

std::vector<double> merged_knots(const Polyline& a, const Polyline& b) {
  std::vector<double> k;
  k.reserve(a.t.size() + b.t.size());
  k.insert(k.end(), a.t.begin(), a.t.end());
  k.insert(k.end(), b.t.begin(), b.t.end());
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return k;
}

// integral of (a - b)^2 over [lo, hi]; both linear on each merged segment
double integral_sq_diff(const Polyline& a, const Polyline& b, double lo, double hi) {
  std::vector<double> k = merged_knots(a, b);
  k.insert(k.begin(), lo);
  k.push_back(hi);
  std::sort(k.begin(), k.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < k.size(); ++i) {
    const double t0 = std::max(lo, k[i]);
    const double t1 = std::min(hi, k[i + 1]);
    if (!(t1 > t0)) continue;
    const double d0 = a.eval_at(t0, false) - b.eval_at(t0, false);
    const double d1 = a.eval_at(t1, true) - b.eval_at(t1, true);
    total += (t1 - t0) * (d0 * d0 + d0 * d1 + d1 * d1) / 3.0;
  }
  return total;
}

// integral of |a - b| over [lo, hi]
double integral_abs_diff(const Polyline& a, const Polyline& b, double lo, double hi) {
  std::vector<double> k = merged_knots(a, b);
  k.insert(k.begin(), lo);
  k.push_back(hi);
  std::sort(k.begin(), k.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < k.size(); ++i) {
    const double t0 = std::max(lo, k[i]);
    const double t1 = std::min(hi, k[i + 1]);
    if (!(t1 > t0)) continue;
    const double d0 = a.eval_at(t0, false) - b.eval_at(t0, false);
    const double d1 = a.eval_at(t1, true) - b.eval_at(t1, true);
    const double len = t1 - t0;
    if (d0 * d1 >= 0.0) {
      total += 0.5 * std::abs(d0 + d1) * len;
    } else {
      total += 0.5 * len * (d0 * d0 + d1 * d1) / (std::abs(d0) + std::abs(d1));
    }
  }
  return total;
}

Polyline quantile_polyline(const ParticleEnsemble& e) {
  if (e.dim() != 1) throw std::invalid_argument("1-d metric on a multi-d ensemble");
  const Eigen::VectorXd xs = e.sorted_1d();
  const int n = static_cast<int>(xs.size());
  Polyline p;
  p.t.reserve(2 * n);
  p.v.reserve(2 * n);
  for (int i = 0; i < n; ++i) {
    p.t.push_back(static_cast<double>(i) / n);
    p.v.push_back(xs(i));
    p.t.push_back(static_cast<double>(i + 1) / n);
    p.v.push_back(xs(i));
  }
  return p;
}

Polyline quantile_polyline(const GridDensity1D& g) {
  const Eigen::VectorXd cdf = g.cdf_at_nodes();
  const double total = cdf(cdf.size() - 1);
  if (!(total > 0.0)) throw std::invalid_argument("quantile of a zero-mass density");
  Polyline p;
  p.t.reserve(g.size());
  p.v.reserve(g.size());
  for (int i = 0; i < g.size(); ++i) {
    p.t.push_back(cdf(i) / total);
    p.v.push_back(g.node(i));
  }
  return p;
}

Polyline cdf_polyline(const ParticleEnsemble& e) {
  if (e.dim() != 1) throw std::invalid_argument("1-d metric on a multi-d ensemble");
  const Eigen::VectorXd xs = e.sorted_1d();
  const int n = static_cast<int>(xs.size());
  Polyline p;
  for (int i = 0; i < n; ++i) {
    p.t.push_back(xs(i));
    p.v.push_back(static_cast<double>(i) / n);
    p.t.push_back(xs(i));
    p.v.push_back(static_cast<double>(i + 1) / n);
  }
  return p;
}

Polyline cdf_polyline(const GridDensity1D& g) {
  const Eigen::VectorXd cdf = g.cdf_at_nodes();
  const double total = cdf(cdf.size() - 1);
  Polyline p;
  for (int i = 0; i < g.size(); ++i) {
    p.t.push_back(g.node(i));
    p.v.push_back(cdf(i) / total);
  }
  return p;
}

double w2_from_quantiles(const Polyline& qa, const Polyline& qb) {
  return std::sqrt(std::max(0.0, integral_sq_diff(qa, qb, 0.0, 1.0)));
}

double w1_from_cdfs(const Polyline& fa, const Polyline& fb) {
  const double lo = std::min(fa.t.front(), fb.t.front());
  const double hi = std::max(fa.t.back(), fb.t.back());
  return integral_abs_diff(fa, fb, lo, hi);
}

void check_common_grid(const GridDensity1D& a, const GridDensity1D& b) {
  if (a.size() != b.size() || a.lo() != b.lo() || a.hi() != b.hi())
    throw std::invalid_argument("densities live on different grids");
  if (std::abs(a.mass() - 1.0) > 1e-6 || std::abs(b.mass() - 1.0) > 1e-6)
    throw std::invalid_argument("unnormalized grid density");
}

// O(n^3) shortest-augmenting-path assignment with dual potentials
std::vector<int> solve_assignment(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n);
  for (int j = 1; j <= n; ++j) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

}  // namespace

double w2_1d(const ParticleEnsemble& a, const ParticleEnsemble& b) {
  return w2_from_quantiles(quantile_polyline(a), quantile_polyline(b));
}
double w2_1d(const GridDensity1D& a, const GridDensity1D& b) {
  return w2_from_quantiles(quantile_polyline(a), quantile_polyline(b));
}
double w2_1d(const ParticleEnsemble& a, const GridDensity1D& b) {
  return w2_from_quantiles(quantile_polyline(a), quantile_polyline(b));
}
double w2_1d(const GridDensity1D& a, const ParticleEnsemble& b) {
  return w2_from_quantiles(quantile_polyline(a), quantile_polyline(b));
}

std::pair<double, Coupling> w2_matching(const ParticleEnsemble& a, const ParticleEnsemble& b) {
  if (a.size() != b.size()) throw std::invalid_argument("w2_matching: ensembles differ in size");
  if (a.dim() != b.dim()) throw std::invalid_argument("w2_matching: ensembles differ in dimension");
  const int n = a.size();
  Eigen::MatrixXd cost(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cost(i, j) = (a.points.row(i) - b.points.row(j)).squaredNorm();
  Coupling coupling;
  coupling.permutation = solve_assignment(cost);
  double total = 0.0;
  for (int i = 0; i < n; ++i) total += cost(i, coupling.permutation[i]);
  coupling.mean_sq_cost = total / n;
  return {std::sqrt(coupling.mean_sq_cost), coupling};
}

double w1_1d(const ParticleEnsemble& a, const ParticleEnsemble& b) {
  return w1_from_cdfs(cdf_polyline(a), cdf_polyline(b));
}
double w1_1d(const GridDensity1D& a, const GridDensity1D& b) {
  return w1_from_cdfs(cdf_polyline(a), cdf_polyline(b));
}

double tv_grid(const GridDensity1D& a, const GridDensity1D& b) {
  check_common_grid(a, b);
  const Eigen::VectorXd diff = (a.values() - b.values()).cwiseAbs();
  return 0.5 * a.dx() * (diff.sum() - 0.5 * (diff(0) + diff(diff.size() - 1)));
}

double kl_grid(const GridDensity1D& a, const GridDensity1D& b) {
  check_common_grid(a, b);
  Eigen::VectorXd integrand(a.size());
  for (int i = 0; i < a.size(); ++i) {
    const double p = a.values()(i);
    const double q = b.values()(i);
    if (p <= 0.0) {
      integrand(i) = 0.0;  // 0 log 0 = 0
    } else if (q < 1e-300) {
      return kInf;  // mass where the target vanishes
    } else {
      integrand(i) = p * std::log(p / q);
    }
  }
  return a.dx() * (integrand.sum() - 0.5 * (integrand(0) + integrand(integrand.size() - 1)));
}

}  // namespace wgf
