#pragma once

#include <optional>

#include "radialext/quadrature.hpp"
#include "radialext/radial_function.hpp"

namespace radialext {

/// Self-adjoint extension parameter for the second-order family. A finite
/// kappa selects the boundary condition 3 u''(0) = 4 kappa u'(0); the
/// distinct infinite value means the u'(0) = 0 condition.
class KappaExtension {
 public:
  static KappaExtension finite(double kappa) { return KappaExtension(kappa, false); }
  static KappaExtension infinite() { return KappaExtension(0.0, true); }

  bool is_infinite() const { return infinite_; }
  double kappa() const {
    if (infinite_) throw Error(Fault::BadConfig, "extension parameter is infinite");
    return kappa_;
  }

  /// Residual of the boundary condition on Taylor data (0 on the domain).
  Complex boundary_residual(const TaylorData& t) const {
    if (infinite_) return t.first;
    return 3.0 * t.second - 4.0 * kappa_ * t.first;
  }

 private:
  KappaExtension(double k, bool inf) : kappa_(k), infinite_(inf) {}
  double kappa_;
  bool infinite_;
};

struct Membership {
  bool ok = false;
  std::string reason;  // empty when ok
};

/// u in W_0: u and Tu in the weighted space, u'(0) = 0, u''(0) = 0.
Membership in_domain_w0(const RadialFunction& u);

/// u in W_kappa: u and T_kappa u in the weighted space plus the boundary
/// condition of the extension.
Membership in_domain_w_kappa(const RadialFunction& u, const KappaExtension& ext);

/// T_kappa u = T u - (2/r) u'(0). The closed form is the same for every
/// member of the family; the extension parameter only selects the domain.
RadialFunction apply_t_kappa(const RadialFunction& u, const KappaExtension& ext);

/// <c_pm, (T +- i rho^2) v> for v in W_0, with the deficiency vectors
/// c_pm = D exp(e^{-+ 3 pi i/4} rho r) + 1/r. Vanishes on the domain.
Complex deficiency_pairing_t(int sign, double rho, const RadialFunction& v,
                             const RadialGrid& grid);

/// Deficiency vector c_+ (sign=+1) or c_- (sign=-1) itself.
RadialFunction deficiency_vector_t(int sign, double rho);

/// Reflection coefficient beta(z) = (z - i kappa)/(z + i kappa).
Complex reflection_beta(Complex z, const KappaExtension& ext);

/// Homogeneous solutions behind the resolvent: h = D e^{-izr} + beta D e^{izr}
/// (boundary side), g = D e^{izr} (decaying side), Wronskian W = -2iz^3.
struct ResolventTParts {
  RadialFunction h;
  RadialFunction g;
  Complex beta;
  Complex wronskian;
};
ResolventTParts resolvent_t_parts(Complex z, const KappaExtension& ext);

/// Resolvent kernel R(r, s; z) of T_kappa, 0 < arg z < pi. Near the pole
/// z0 = -i kappa the evaluation stays exact because the kernel is affine
/// in beta(z) and only beta carries the pole.
Complex resolvent_t(double r, double s, Complex z, const KappaExtension& ext);

/// Kernel of the residue at z0 = -i kappa: lim 2 z0 (z0 - z) R(r, s; z).
Complex resolvent_t_residue(double r, double s, const KappaExtension& ext);

/// (R(z) v)(r) = int R(r, s; z) v(s) ds through closed-form segment
/// integrals; v must vanish at the origin (min power >= 0 products).
std::function<Complex(double)> apply_resolvent_t(const RadialFunction& v,
                                                 Complex z,
                                                 const KappaExtension& ext);

struct DiscreteMode {
  double eigenvalue;
  RadialFunction profile;
};

/// Normalized bound state q = sqrt(-2/kappa^3) (D e^{kappa r} + 1/r) with
/// eigenvalue -kappa^2; exists only for kappa < 0.
DiscreteMode discrete_mode_t(const KappaExtension& ext);

struct ContinuousMode {
  double lambda;
  double phase;  // zeta with beta(lambda) = exp(2 i zeta)
  RadialFunction profile;
};

/// Real continuous-spectrum eigenfunction p_lambda. The phase branch is
/// zeta = arg(lambda - i kappa) in (-pi/2, pi/2), continuous in lambda.
ContinuousMode continuous_mode_t(double lambda, const KappaExtension& ext);

/// Oscillatory decomposition of p_lambda used by the reconstruction sweep:
/// p(r) = amp_plus D e^{i lambda r} + amp_minus D e^{-i lambda r} + amp_pole/r.
struct ModePieces {
  Complex amp_plus{0.0, 0.0};
  Complex amp_minus{0.0, 0.0};
  Complex amp_evanescent{0.0, 0.0};  // multiplies D e^{-lambda r} (inverse family)
  Complex amp_pole{0.0, 0.0};
};
ModePieces continuous_mode_t_pieces(double lambda, const KappaExtension& ext);

struct TransformResult {
  std::vector<double> lambdas;
  std::vector<double> coefficients;      // g(lambda) = <p_lambda, u>
  std::optional<double> bound_coefficient;  // c = <q, u> when kappa < 0
};

/// Spectral transform: g(lambda) over the sample set plus the bound-state
/// coefficient. Throws Fault::DomainViolation outside W_kappa.
TransformResult forward_transform_t(const RadialFunction& u,
                                    const KappaExtension& ext,
                                    const std::vector<double>& lambdas,
                                    const RadialGrid& grid);

struct SampledFunction {
  std::vector<double> values;       // on grid nodes
  std::vector<double> derivatives;  // d/dr on grid nodes
};

/// Inverse transform int g(lambda) p_lambda(r) dlambda + c q(r) evaluated
/// on the grid. The lambda samples must be uniform from 0 with an even
/// panel count; oscillatory pieces integrate with the Filon rule.
SampledFunction reconstruct_t(const TransformResult& coeffs,
                              const KappaExtension& ext, const RadialGrid& grid);

/// Uniform lambda sample set {0, h, ..., lambda_max} with `count` panels.
std::vector<double> uniform_lambdas(double lambda_max, int count);

/// Relative L2-on-grid distance between samples and a closed form.
double relative_l2_error(const SampledFunction& s, const RadialFunction& ref,
                         const RadialGrid& grid);

/// <a, b> for two sampled functions via the grid rule.
double sampled_inner_angle(const SampledFunction& a, const SampledFunction& b,
                           const RadialGrid& grid);

}  // namespace radialext
