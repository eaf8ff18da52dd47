#pragma once

#include <vector>

#include "wgf/piecewise_density.hpp"
#include "wgf/pushforward.hpp"

namespace wgf {

// Geometry of the one-step map T(x) = x - h x^3 (quartic target, Gaussian
// start): T' vanishes at +-critical_x and the image folds back at +-r, the
// local extrema of T.
struct Example1Geometry {
  double h;
  double critical_x;  // 1 / sqrt(3 h); branch split points
  double r;           // (2/3) sqrt(1 / (3 h)) = T(critical_x)

  static Example1Geometry For(double h);
};

// T(x) = x - h x^3 decomposed into its three monotone branches, with inverses
// by safeguarded Newton from analytic brackets.
PiecewiseMap1D fe_map_example1(double h);

// Density samples of the one-step pushforward on both sides of the fold point
// r: left[i] = rho1(r - deltas[i]), right[i] = rho1(r + deltas[i]). The left
// sequence blows up as delta -> 0 while the right one stays bounded.
struct JumpProbe {
  std::vector<double> deltas;
  std::vector<double> left;
  std::vector<double> right;
};
JumpProbe example1_jump_probe(double h, std::vector<double> deltas);

// Closed-form coefficients of the second counterexample's iterates
//   rho_n = (1/D0) exp(-x^2/2) on [0,1), 0 on [1,c_n),
//           exp(-a_n x + b_n) on [c_n,inf), mirrored to x < 0.
// log_tail_scale stores s_n = b_n - a_n c_n, which stays well conditioned
// when a_n c_n overflows the 53-bit mantissa (b_n and a_n c_n cancel).
struct Example2Coefficients {
  std::vector<double> h;  // step sizes h_0 .. h_{n-1}
  std::vector<double> a, b, c;
  std::vector<double> log_tail_scale;

  int steps() const { return static_cast<int>(a.size()) - 1; }

  // normalization D0 = sqrt(2 pi) Erf(1/sqrt(2)) + 2 e^{-1/2}
  static double d0();
};

Example2Coefficients example2_recursion(const std::vector<double>& h_sequence);
Example2Coefficients example2_recursion(double h, int n);

PiecewiseDensity1D example2_density(const Example2Coefficients& coeffs, int n);

// Pinsker lower bound 2 (int_{-1}^{1} (rho - rho*) dx)^2 with rho* the
// standard Gaussian; identical for every iterate because the Gaussian core
// never changes, and strictly above 0.019.
double example2_kl_floor(const PiecewiseDensity1D& density);

// The n-th step map: identity on (-1,1), affine on the tails.
PiecewiseMap1D example2_step_map(const Example2Coefficients& coeffs, int n);

}  // namespace wgf
