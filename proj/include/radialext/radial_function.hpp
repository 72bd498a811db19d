#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "radialext/error.hpp"

namespace radialext {

using Complex = std::complex<double>;

/// One closed-form term on the half line.
///
/// With d_applied == false the term is  coeff * r^power * exp(rate*r).
/// With d_applied == true it is  coeff * r^power * D exp(rate*r), where
/// D = d/dr - 1/r, i.e. D exp(s r) = (s - 1/r) exp(s r). Keeping D-applied
/// exponentials symbolic preserves the exact cancellation of their 1/r
/// parts in Taylor data and in conditionally convergent integrals.
struct Term {
  Complex coeff{0.0, 0.0};
  int power = 0;
  Complex rate{0.0, 0.0};
  bool d_applied = false;
};

/// A pure (expanded) term  coeff * r^power * exp(rate*r).
struct PureTerm {
  Complex coeff{0.0, 0.0};
  int power = 0;
  Complex rate{0.0, 0.0};
};

/// Exact Taylor data of a function regular at the origin.
struct TaylorData {
  Complex value;        // f(0)
  Complex first;        // f'(0)
  Complex second;       // f''(0)
};

/// Closed-form function algebra over the basis  r^p exp(s r)  (p integer,
/// s complex) plus symbolic D-applied exponentials and r^-1 pole terms.
/// The basis is closed under D, D*, T = DD*, conjugation and products,
/// which is everything the operators in this library need.
class RadialFunction {
 public:
  RadialFunction() = default;
  explicit RadialFunction(std::vector<Term> terms);

  // --- factories -----------------------------------------------------
  static RadialFunction zero();
  /// c * r^p * exp(s r)
  static RadialFunction monomial_exp(Complex c, int power, Complex rate);
  /// c * r^p
  static RadialFunction power(Complex c, int p);
  /// c * exp(s r)
  static RadialFunction exponential(Complex c, Complex rate);
  /// c * D exp(s r)
  static RadialFunction d_exponential(Complex c, Complex rate);
  /// c / r
  static RadialFunction pole(Complex c);

  // --- algebra ---------------------------------------------------------
  RadialFunction operator+(const RadialFunction& o) const;
  RadialFunction operator-(const RadialFunction& o) const;
  RadialFunction operator-() const;
  RadialFunction operator*(Complex c) const;
  RadialFunction& operator+=(const RadialFunction& o);

  RadialFunction conjugate() const;
  RadialFunction derivative() const;
  /// Multiply powers by r^shift (power shift by an integer).
  RadialFunction power_shift(int shift) const;
  /// Pointwise product (no conjugation).
  RadialFunction multiply(const RadialFunction& o) const;

  // --- structure -------------------------------------------------------
  const std::vector<Term>& terms() const { return terms_; }
  /// Expanded view: d_applied terms split into pure terms, exact duplicates
  /// merged, negligible coefficients dropped.
  const std::vector<PureTerm>& expanded() const;

  bool empty() const { return terms_.empty(); }
  /// Smallest power appearing in the expanded view (0 for the empty sum).
  int min_power() const;
  /// max over terms of Re(rate); -inf for the empty sum.
  double max_rate_real() const;
  /// max over terms of |Im(rate)|.
  double max_rate_imag() const;
  /// true when every term decays at infinity (Re rate < 0, or rate == 0
  /// with power <= -1).
  bool decays_at_infinity() const;

  /// Exact Laurent coefficient A_k of the expansion sum_k A_k r^k at r -> 0.
  Complex laurent_coefficient(int k) const;
  /// Magnitude scale of A_k contributions (for cancellation tests).
  double laurent_scale(int k) const;
  /// true when all Laurent coefficients A_k, k <= upto, vanish within the
  /// internal cancellation tolerance.
  bool laurent_vanishes_through(int upto) const;

  /// f(0), f'(0), f''(0); throws Fault::PoleAtOrigin when negative-order
  /// Laurent coefficients survive.
  TaylorData taylor_at_zero() const;

  // --- evaluation --------------------------------------------------------
  /// Evaluate at r > 0. Near the origin a Laurent-series path is used so
  /// that grouped 1/r cancellations do not lose precision.
  Complex eval(double r) const;
  /// Largest |Im f(r)| over a set of radii.
  double max_imag_on(const std::vector<double>& radii) const;

  /// Scale of coefficients (sum of |coeff| over expanded terms).
  double coefficient_scale() const;

 private:
  std::vector<Term> terms_;
  mutable std::vector<PureTerm> expanded_;
  mutable bool expanded_valid_ = false;

  void invalidate() { expanded_valid_ = false; }
};

inline RadialFunction operator*(Complex c, const RadialFunction& f) { return f * c; }

/// D = d/dr - 1/r. Pure exponentials stay symbolic as D-applied terms.
RadialFunction apply_d(const RadialFunction& f);
/// D* = -d/dr - 1/r.
RadialFunction apply_d_star(const RadialFunction& f);
/// T = -d^2/dr^2 + 2/r^2, computed as D(D* f).
RadialFunction apply_t(const RadialFunction& f);

/// Conjugated product  conj(u) * v.
RadialFunction conjugate_product(const RadialFunction& u, const RadialFunction& v);

/// Exact derivatives at the origin, [f(0), f'(0), ..., f^(order)(0)],
/// order <= 2. Throws Fault::PoleAtOrigin when pole terms survive.
std::vector<Complex> taylor_at_zero(const RadialFunction& f, int order);

/// Membership test for the weighted-product space: finite norm
/// int(|u'|^2 + 2|u|^2/r^2) dr and u(0) = 0.
struct SpaceMembership {
  bool ok = false;
  std::string reason;  // empty when ok
};
SpaceMembership in_weighted_space(const RadialFunction& u);

}  // namespace radialext
