#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wgf/quadrature.hpp"

namespace wgf {

// One branch of a piecewise-analytic density: exp(-p(x - shift)) on [lo, hi),
// with p a polynomial (ascending coefficients). hi may be +infinity. The
// shift keeps the polynomial well conditioned when the branch lives far from
// the origin.
struct DensityPiece {
  double lo;
  double hi;
  double shift = 0.0;
  Eigen::VectorXd coeffs;

  double exponent(double x) const;        // p(x - shift)
  double exponent_derivative(double x) const;

  // largest shifted coordinate worth integrating: beyond it the exponent
  // exceeds tail_exponent (density < e^{-46} ~ 1e-20 by default). Exact for
  // linear tails, doubling search otherwise.
  double upper_truncation_u(double tail_exponent = 46.0) const;
};

// Density equal to exp(-p_i) on piece i and zero off all pieces. With the
// Even symmetry flag the pieces describe x >= 0 and the density mirrors.
class PiecewiseDensity1D {
 public:
  enum class Symmetry { None, Even };

  PiecewiseDensity1D(std::vector<DensityPiece> pieces, Symmetry symmetry,
                     bool validate_mass = true);

  double operator()(double x) const;
  std::optional<double> log_density(double x) const;
  // d/dx log(density); nullopt off the support and at piece endpoints
  std::optional<double> dlog_density(double x) const;
  // same, but piece endpoints take the one-sided (interior) value; still
  // nullopt off the support
  std::optional<double> dlog_density_oneside(double x) const;

  // total mass by per-piece adaptive quadrature (unbounded pieces truncated
  // where the density falls below 1e-20)
  double mass() const;

  // integral of density(x) * g(x) over the support
  double integrate_against(const std::function<double(double)>& g,
                           const QuadratureOptions& opts = {}) const;

  const std::vector<DensityPiece>& pieces() const { return pieces_; }
  Symmetry symmetry() const { return symmetry_; }

  // finite piece endpoints (mirrored for even densities), sorted
  std::vector<double> breakpoints() const;
  // largest |x| carrying density above 1e-20 (tail truncation point)
  double support_radius() const;

  std::string to_json() const;
  static PiecewiseDensity1D from_json(const std::string& text);

  static PiecewiseDensity1D StandardGaussian(double truncation = 12.0);

 private:
  const DensityPiece* find_piece(double u) const;  // u >= 0 side for Even

  std::vector<DensityPiece> pieces_;
  Symmetry symmetry_;
};

double density_mass(const PiecewiseDensity1D& d);
double density_mass(const class GridDensity1D& d);

}  // namespace wgf
