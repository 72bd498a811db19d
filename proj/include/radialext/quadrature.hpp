#pragma once

#include <functional>
#include <string>
#include <vector>

#include "radialext/halfline_integrals.hpp"
#include "radialext/radial_function.hpp"

namespace radialext {

/// Geometric half-line grid with composite-Simpson weights in log r.
/// Integrands here mix 1/r-scale structure near the origin with
/// exponential decay, which the log spacing resolves with one rule.
struct RadialGrid {
  std::vector<double> nodes;    // strictly increasing, in (0, r_max]
  std::vector<double> weights;  // positive, sum ~ r_max - r_min
  double r_min = 1e-6;
  double r_max = 60.0;
  std::string scheme = "geometric-simpson";

  static RadialGrid geometric(int n = 4096, double r_min = 1e-6,
                              double r_max = 60.0);

  /// Quadrature of sampled values with the grid rule; the error estimate
  /// compares against the half-resolution rule.
  struct Sum {
    double value;
    double error;
  };
  Sum integrate_samples(const std::vector<double>& samples) const;
};

/// Quadrature result with an absolute-error estimate.
struct WeightedProductValue {
  Complex value{0.0, 0.0};
  double error = 0.0;
};

/// Half-line integral of a closed-form function: Laurent-series head on
/// (0, r_min], grid quadrature, closed-form exponential tail beyond r_max.
/// Terms whose oscillation cannot be resolved on the grid (phase
/// |Im rate| * r_max above the Filon threshold) switch the whole integral
/// to the exact term-wise path.
WeightedProductValue integrate_halfline(const RadialFunction& f,
                                        const RadialGrid& grid);

/// (u, v) = int conj(u) v dr.
WeightedProductValue inner_plain(const RadialFunction& u,
                                 const RadialFunction& v,
                                 const RadialGrid& grid);

/// <u, v>_l = int (conj(u') v' + l(l+1) conj(u) v / r^2) dr; l = 1 is the
/// weighted product used throughout.
WeightedProductValue inner_angle(const RadialFunction& u,
                                 const RadialFunction& v,
                                 const RadialGrid& grid, int l = 1);

/// Exact closed-form value of <u, v>_l (no grid).
Complex inner_angle_exact(const RadialFunction& u, const RadialFunction& v,
                          int l = 1);

/// Quadrature of a pointwise-evaluable integrand over the grid range plus
/// user-supplied head/tail constants (no symbolic structure available).
WeightedProductValue integrate_callable(const std::function<double(double)>& f,
                                        const RadialGrid& grid);

/// Filon-Simpson quadrature of F(x) e^{i w x} over a uniform grid of
/// samples F_j = F(x0 + j h), j = 0..n (n even). w may be complex; the
/// rule is exact for quadratic F times the exponential.
Complex filon_simpson(const std::vector<Complex>& samples, double x0, double h,
                      Complex w);

/// Filon-Simpson core on pre-weighted samples W_j = F_j e^{i w x_j} with
/// theta = w h. Lets sweeps reuse phase factors across integrands.
Complex filon_simpson_weighted(const std::vector<Complex>& weighted, double h,
                               Complex theta);

}  // namespace radialext
