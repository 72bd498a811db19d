#pragma once

#include <complex>

#include "radialext/radial_function.hpp"

namespace radialext {

/// Exponential integral E1(w) = int_1^inf exp(-w t)/t dt for complex w
/// with |arg w| < pi (series for small |w|, modified Lentz continued
/// fraction otherwise).
Complex expint_e1(Complex w);

/// E_n(w) = int_1^inf exp(-w t)/t^n dt via upward recurrence from E1.
Complex expint_en(int n, Complex w);

/// Exact integral of a closed-form term list over a segment [a, b],
/// 0 <= a < b <= inf (b = +infinity allowed via std::numeric_limits
/// infinity). Requirements checked symbolically:
///   - b = inf needs every term to decay (Re rate < 0, or rate == 0 with
///     power <= -2);
///   - a = 0 needs the grouped Laurent coefficients A_k, k <= -1, to
///     cancel; surviving negative powers raise Fault::NonIntegrable.
/// Conditionally convergent 1/r groups (the grouped-exponential pattern)
/// are evaluated through their exact finite parts, never term by term.
Complex segment_integral(const RadialFunction& f, double a, double b);

/// segment_integral over (0, inf).
Complex exact_halfline_integral(const RadialFunction& f);

/// Closed-form tail  int_R^inf f dr  (per-term; requires decay).
Complex tail_integral(const RadialFunction& f, double r_from);

/// Throws Fault::NonIntegrable unless f is integrable over (0, inf):
/// decay at infinity and cancellation of all Laurent orders <= -1.
void require_integrable(const RadialFunction& f);

}  // namespace radialext
