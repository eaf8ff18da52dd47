#include "wgf/piecewise_density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "wgf/grid_density.hpp"

namespace wgf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double horner(const Eigen::VectorXd& c, double u) {
  double v = 0.0;
  for (Eigen::Index i = c.size() - 1; i >= 0; --i) v = v * u + c(i);
  return v;
}

double horner_derivative(const Eigen::VectorXd& c, double u) {
  double v = 0.0;
  for (Eigen::Index i = c.size() - 1; i >= 1; --i) v = v * u + c(i) * static_cast<double>(i);
  return v;
}

}  // namespace

double DensityPiece::exponent(double x) const { return horner(coeffs, x - shift); }
double DensityPiece::exponent_derivative(double x) const {
  return horner_derivative(coeffs, x - shift);
}

double DensityPiece::upper_truncation_u(double tail_exponent) const {
  const double u_lo = lo - shift;
  if (coeffs.size() == 2 && coeffs(1) > 0.0) {
    return std::max(u_lo, (tail_exponent - coeffs(0)) / coeffs(1));
  }
  double step = 1.0;
  for (int iter = 0; iter < 300; ++iter) {
    if (horner(coeffs, u_lo + step) > tail_exponent) return u_lo + step;
    step *= 2.0;
  }
  throw std::invalid_argument("PiecewiseDensity1D: unbounded piece with non-decaying density");
}

PiecewiseDensity1D::PiecewiseDensity1D(std::vector<DensityPiece> pieces, Symmetry symmetry,
                                       bool validate_mass)
    : pieces_(std::move(pieces)), symmetry_(symmetry) {
  if (pieces_.empty()) throw std::invalid_argument("PiecewiseDensity1D: no pieces");
  std::sort(pieces_.begin(), pieces_.end(),
            [](const DensityPiece& a, const DensityPiece& b) { return a.lo < b.lo; });
  for (const auto& p : pieces_) {
    if (!(p.lo < p.hi)) throw std::invalid_argument("PiecewiseDensity1D: empty piece");
    if (p.coeffs.size() == 0) throw std::invalid_argument("PiecewiseDensity1D: empty polynomial");
    if (symmetry_ == Symmetry::Even && p.lo < 0.0)
      throw std::invalid_argument("PiecewiseDensity1D: even density pieces must live on x >= 0");
  }
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i)
    if (pieces_[i].hi > pieces_[i + 1].lo)
      throw std::invalid_argument("PiecewiseDensity1D: overlapping pieces");
  if (validate_mass) {
    const double m = mass();
    if (std::abs(m - 1.0) > 1e-9)
      throw std::invalid_argument("PiecewiseDensity1D: mass deviates from 1 by " +
                                  std::to_string(m - 1.0));
  }
}

const DensityPiece* PiecewiseDensity1D::find_piece(double u) const {
  for (const auto& p : pieces_)
    if (u >= p.lo && u < p.hi) return &p;
  return nullptr;
}

double PiecewiseDensity1D::operator()(double x) const {
  const double u = symmetry_ == Symmetry::Even ? std::abs(x) : x;
  const DensityPiece* p = find_piece(u);
  return p ? std::exp(-p->exponent(u)) : 0.0;
}

std::optional<double> PiecewiseDensity1D::log_density(double x) const {
  const double u = symmetry_ == Symmetry::Even ? std::abs(x) : x;
  const DensityPiece* p = find_piece(u);
  if (!p) return std::nullopt;
  return -p->exponent(u);
}

std::optional<double> PiecewiseDensity1D::dlog_density(double x) const {
  const double u = symmetry_ == Symmetry::Even ? std::abs(x) : x;
  const DensityPiece* p = find_piece(u);
  if (!p) return std::nullopt;
  if (u == p->lo && !(symmetry_ == Symmetry::Even && p->lo == 0.0)) return std::nullopt;
  const double inner = -p->exponent_derivative(u);
  if (symmetry_ == Symmetry::Even) {
    if (x == 0.0) {
      // mirrored density is differentiable at 0 only with a flat exponent
      if (inner != 0.0) return std::nullopt;
      return 0.0;
    }
    return x > 0.0 ? inner : -inner;
  }
  return inner;
}

std::optional<double> PiecewiseDensity1D::dlog_density_oneside(double x) const {
  const double u = symmetry_ == Symmetry::Even ? std::abs(x) : x;
  const DensityPiece* p = find_piece(u);
  if (!p) return std::nullopt;
  const double inner = -p->exponent_derivative(u);
  if (symmetry_ == Symmetry::Even) return x >= 0.0 ? inner : -inner;
  return inner;
}

double PiecewiseDensity1D::mass() const {
  return integrate_against([](double) { return 1.0; });
}

double PiecewiseDensity1D::integrate_against(const std::function<double(double)>& g,
                                             const QuadratureOptions& opts) const {
  double total = 0.0;
  for (const auto& p : pieces_) {
    const double u_lo = p.lo - p.shift;
    const double u_hi = std::isinf(p.hi) ? p.upper_truncation_u() : p.hi - p.shift;
    if (!(u_hi > u_lo)) continue;
    const double shift = p.shift;
    const auto& coeffs = p.coeffs;
    total += integrate(
        [&](double u) { return std::exp(-horner(coeffs, u)) * g(shift + u); }, u_lo, u_hi, opts);
    if (symmetry_ == Symmetry::Even) {
      total += integrate(
          [&](double u) { return std::exp(-horner(coeffs, u)) * g(-(shift + u)); }, u_lo, u_hi,
          opts);
    }
  }
  return total;
}

std::vector<double> PiecewiseDensity1D::breakpoints() const {
  std::vector<double> pts;
  for (const auto& p : pieces_) {
    for (double e : {p.lo, p.hi}) {
      if (!std::isfinite(e)) continue;
      pts.push_back(e);
      if (symmetry_ == Symmetry::Even) pts.push_back(-e);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double PiecewiseDensity1D::support_radius() const {
  double r = 0.0;
  for (const auto& p : pieces_) {
    const double u_hi = std::isinf(p.hi) ? p.upper_truncation_u() : p.hi - p.shift;
    r = std::max(r, std::abs(p.shift + u_hi));
    r = std::max(r, std::abs(p.lo));
  }
  return r;
}

std::string PiecewiseDensity1D::to_json() const {
  nlohmann::json j;
  j["symmetry"] = symmetry_ == Symmetry::Even ? "even" : "none";
  j["pieces"] = nlohmann::json::array();
  for (const auto& p : pieces_) {
    nlohmann::json jp;
    jp["lo"] = p.lo;
    if (std::isinf(p.hi))
      jp["hi"] = "inf";
    else
      jp["hi"] = p.hi;
    if (p.shift != 0.0) jp["shift"] = p.shift;
    jp["coeffs"] = std::vector<double>(p.coeffs.data(), p.coeffs.data() + p.coeffs.size());
    j["pieces"].push_back(std::move(jp));
  }
  return j.dump();
}

PiecewiseDensity1D PiecewiseDensity1D::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  std::vector<DensityPiece> pieces;
  for (const auto& jp : j.at("pieces")) {
    DensityPiece p;
    p.lo = jp.at("lo").get<double>();
    p.hi = jp.at("hi").is_string() ? kInf : jp.at("hi").get<double>();
    p.shift = jp.value("shift", 0.0);
    const auto c = jp.at("coeffs").get<std::vector<double>>();
    p.coeffs = Eigen::Map<const Eigen::VectorXd>(c.data(), c.size());
    pieces.push_back(std::move(p));
  }
  const Symmetry sym =
      j.at("symmetry").get<std::string>() == "even" ? Symmetry::Even : Symmetry::None;
  return PiecewiseDensity1D(std::move(pieces), sym, /*validate_mass=*/false);
}

PiecewiseDensity1D PiecewiseDensity1D::StandardGaussian(double truncation) {
  DensityPiece p;
  p.lo = -truncation;
  p.hi = truncation;
  p.coeffs = Eigen::Vector3d(0.5 * std::log(2.0 * M_PI), 0.0, 0.5);
  return PiecewiseDensity1D({p}, Symmetry::None);
}

double density_mass(const PiecewiseDensity1D& d) { return d.mass(); }
double density_mass(const GridDensity1D& d) { return d.mass(); }

}  // namespace wgf
