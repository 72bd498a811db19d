#include "radialext/op_t_kappa.hpp"

#include <cmath>
#include <memory>

namespace radialext {

namespace {

constexpr Complex kI{0.0, 1.0};
const double kSqrt2Pi = std::sqrt(2.0 * M_PI);

void require_sector_t(Complex z) {
  double a = std::arg(z);
  if (!(a > 0.0 && a < M_PI)) {
    throw Error(Fault::OutOfSector, "resolvent argument needs 0 < arg z < pi");
  }
}

}  // namespace

Membership in_domain_w0(const RadialFunction& u) {
  SpaceMembership m = in_weighted_space(u);
  if (!m.ok) return {false, "u not in the weighted space: " + m.reason};
  TaylorData t;
  try {
    t = u.taylor_at_zero();
  } catch (const Error&) {
    return {false, "pole at the origin"};
  }
  double scale = 1.0 + u.coefficient_scale();
  if (std::abs(t.first) > 1e-12 * scale) return {false, "u'(0) != 0"};
  if (std::abs(t.second) > 1e-12 * scale) return {false, "u''(0) != 0"};
  SpaceMembership mt = in_weighted_space(apply_t(u));
  if (!mt.ok) return {false, "Tu not in the weighted space: " + mt.reason};
  return {true, ""};
}

Membership in_domain_w_kappa(const RadialFunction& u, const KappaExtension& ext) {
  SpaceMembership m = in_weighted_space(u);
  if (!m.ok) return {false, "u not in the weighted space: " + m.reason};
  TaylorData t;
  try {
    t = u.taylor_at_zero();
  } catch (const Error&) {
    return {false, "pole at the origin"};
  }
  double scale = 1.0 + u.coefficient_scale();
  if (std::abs(ext.boundary_residual(t)) > 1e-12 * scale) {
    return {false, "boundary condition 3u''(0) = 4 kappa u'(0) fails"};
  }
  SpaceMembership mt = in_weighted_space(apply_t_kappa(u, ext));
  if (!mt.ok) return {false, "T_kappa u not in the weighted space: " + mt.reason};
  return {true, ""};
}

RadialFunction apply_t_kappa(const RadialFunction& u, const KappaExtension&) {
  TaylorData t = u.taylor_at_zero();  // propagates PoleAtOrigin
  return apply_t(u) - RadialFunction::pole(2.0 * t.first);
}

RadialFunction deficiency_vector_t(int sign, double rho) {
  if (rho <= 0.0) throw Error(Fault::BadConfig, "rho must be positive");
  // The sign label matches the pairing shift +- i rho^2 that the vector
  // annihilates; conjugation inside the product flips the exponent phase,
  // so c_+ carries e^{+3 pi i/4} (checked against high-precision quadrature).
  Complex rate = std::polar(rho, (sign > 0 ? 1.0 : -1.0) * 3.0 * M_PI / 4.0);
  return RadialFunction::d_exponential(1.0, rate) + RadialFunction::pole(1.0);
}

Complex deficiency_pairing_t(int sign, double rho, const RadialFunction& v,
                             const RadialGrid& grid) {
  Membership m = in_domain_w0(v);
  if (!m.ok) {
    throw Error(Fault::DomainViolation, "probe not in W_0: " + m.reason);
  }
  RadialFunction c = deficiency_vector_t(sign, rho);
  Complex shift = (sign > 0 ? kI : -kI) * rho * rho;
  RadialFunction w = apply_t(v) + v * shift;
  return inner_angle(c, w, grid).value;
}

Complex reflection_beta(Complex z, const KappaExtension& ext) {
  if (ext.is_infinite()) return Complex{-1.0, 0.0};
  const double kappa = ext.kappa();
  Complex denom = z + kI * kappa;
  if (std::abs(denom) < 1e-10) {
    throw Error(Fault::PoleHit, "z coincides with the resolvent pole -i kappa");
  }
  return (z - kI * kappa) / denom;
}

ResolventTParts resolvent_t_parts(Complex z, const KappaExtension& ext) {
  require_sector_t(z);
  Complex beta = reflection_beta(z, ext);
  ResolventTParts parts;
  parts.beta = beta;
  parts.g = RadialFunction::d_exponential(1.0, kI * z);
  parts.h = RadialFunction::d_exponential(1.0, -kI * z) +
            RadialFunction::d_exponential(beta, kI * z);
  parts.wronskian = -2.0 * kI * z * z * z;
  return parts;
}

Complex resolvent_t(double r, double s, Complex z, const KappaExtension& ext) {
  if (!(r > 0.0) || !(s > 0.0)) {
    throw Error(Fault::OriginEvaluation, "kernel arguments must be positive");
  }
  ResolventTParts p = resolvent_t_parts(z, ext);
  // boundary side carries the grouped 1/r cancellation
  RadialFunction boundary = p.h + RadialFunction::pole(1.0 + p.beta);
  double lo = std::min(r, s), hi = std::max(r, s);
  Complex value = boundary.eval(lo) * p.g.eval(hi);
  if (r > s) {
    // the pole term always attaches to the r variable
    value += (1.0 + p.beta) * (p.g.eval(s) / r - p.g.eval(r) / s);
  }
  return value / p.wronskian;
}

Complex resolvent_t_residue(double r, double s, const KappaExtension& ext) {
  const double kappa = ext.kappa();
  if (kappa >= 0.0) {
    throw Error(Fault::NoBoundState, "residue exists only for kappa < 0");
  }
  // 2 z0 * lim (z0 - z) R = (2/kappa)(D e^{kappa r} + 1/r) D e^{kappa s}
  RadialFunction br = RadialFunction::d_exponential(1.0, kappa) +
                      RadialFunction::pole(1.0);
  RadialFunction g = RadialFunction::d_exponential(1.0, kappa);
  return (2.0 / kappa) * br.eval(r) * g.eval(s);
}

std::function<Complex(double)> apply_resolvent_t(const RadialFunction& v,
                                                 Complex z,
                                                 const KappaExtension& ext) {
  ResolventTParts p = resolvent_t_parts(z, ext);
  // (Rv)(r) = [h(r) int_r^inf g v + g(r) int_0^r h v + (1+beta)/r int_0^inf g v] / W
  auto gv = std::make_shared<RadialFunction>(p.g.multiply(v));
  auto hv = std::make_shared<RadialFunction>(p.h.multiply(v));
  auto h = std::make_shared<RadialFunction>(p.h);
  auto g = std::make_shared<RadialFunction>(p.g);
  const Complex full_gv = exact_halfline_integral(*gv);
  const Complex one_beta = 1.0 + p.beta;
  const Complex w = p.wronskian;
  return [=](double r) -> Complex {
    Complex tail_gv = tail_integral(*gv, r);
    Complex head_hv = segment_integral(*hv, 0.0, r);
    return (h->eval(r) * tail_gv + g->eval(r) * head_hv +
            one_beta / r * full_gv) /
           w;
  };
}

DiscreteMode discrete_mode_t(const KappaExtension& ext) {
  if (ext.is_infinite()) {
    throw Error(Fault::NoBoundState, "no bound state for the infinite extension");
  }
  const double kappa = ext.kappa();
  if (kappa >= 0.0) {
    throw Error(Fault::NoBoundState, "bound state requires kappa < 0");
  }
  const double norm = std::sqrt(-2.0 / (kappa * kappa * kappa));
  RadialFunction q = RadialFunction::d_exponential(norm, kappa) +
                     RadialFunction::pole(norm);
  return {-kappa * kappa, q};
}

ModePieces continuous_mode_t_pieces(double lambda, const KappaExtension& ext) {
  if (!(lambda > 0.0)) throw Error(Fault::BadConfig, "lambda must be positive");
  double zeta;
  if (ext.is_infinite()) {
    zeta = -M_PI / 2.0;
  } else {
    zeta = std::atan2(-ext.kappa(), lambda);
  }
  const double pref = 1.0 / (kSqrt2Pi * lambda * lambda);
  ModePieces p;
  p.amp_plus = pref * std::polar(1.0, zeta);
  p.amp_minus = pref * std::polar(1.0, -zeta);
  // pole amplitude equals the sum so the 1/r parts cancel identically
  p.amp_pole = p.amp_plus + p.amp_minus;
  return p;
}

ContinuousMode continuous_mode_t(double lambda, const KappaExtension& ext) {
  ModePieces p = continuous_mode_t_pieces(lambda, ext);
  double zeta = ext.is_infinite() ? -M_PI / 2.0 : std::atan2(-ext.kappa(), lambda);
  RadialFunction profile =
      RadialFunction::d_exponential(p.amp_plus, kI * lambda) +
      RadialFunction::d_exponential(p.amp_minus, -kI * lambda) +
      RadialFunction::pole(p.amp_pole);
  return {lambda, zeta, profile};
}

TransformResult forward_transform_t(const RadialFunction& u,
                                    const KappaExtension& ext,
                                    const std::vector<double>& lambdas,
                                    const RadialGrid& grid) {
  Membership m = in_domain_w_kappa(u, ext);
  if (!m.ok) {
    throw Error(Fault::DomainViolation, "u not in W_kappa: " + m.reason);
  }
  TransformResult out;
  out.lambdas = lambdas;
  out.coefficients.reserve(lambdas.size());
  for (double lam : lambdas) {
    if (lam <= 0.0) {
      out.coefficients.push_back(0.0);
      continue;
    }
    ContinuousMode mode = continuous_mode_t(lam, ext);
    out.coefficients.push_back(inner_angle(mode.profile, u, grid).value.real());
  }
  if (!ext.is_infinite() && ext.kappa() < 0.0) {
    DiscreteMode q = discrete_mode_t(ext);
    out.bound_coefficient = inner_angle(q.profile, u, grid).value.real();
  }
  return out;
}

std::vector<double> uniform_lambdas(double lambda_max, int count) {
  if (count < 2 || count % 2 != 0) {
    throw Error(Fault::BadConfig, "lambda panel count must be even and >= 2");
  }
  std::vector<double> l(count + 1);
  for (int j = 0; j <= count; ++j) l[j] = lambda_max * j / count;
  return l;
}

namespace {

RadialFunction profile_from_pieces(const ModePieces& pc, double lam) {
  constexpr Complex iu{0.0, 1.0};
  RadialFunction p = RadialFunction::d_exponential(pc.amp_plus, iu * lam) +
                     RadialFunction::d_exponential(pc.amp_minus, -iu * lam);
  if (pc.amp_evanescent != Complex{0.0, 0.0}) {
    p += RadialFunction::d_exponential(pc.amp_evanescent, Complex{-lam, 0.0});
  }
  if (pc.amp_pole != Complex{0.0, 0.0}) {
    p += RadialFunction::pole(pc.amp_pole);
  }
  return p;
}

// Shared reconstruction sweep over uniform lambda samples. The pieces
// carry amplitudes for D e^{i lambda r}, D e^{-i lambda r} and (inverse
// family) D e^{-lambda r}; each integrates with a Filon rule in lambda at
// every output radius. The individual pieces behave like 1/lambda near
// zero (only their sum is smooth), so the first panels up to lambda ~ 0.5
// integrate as the combined profile on a refined sub-grid instead, with
// the sampled coefficients interpolated by cubic Hermite.
SampledFunction reconstruct_uniform(
    const TransformResult& coeffs, const RadialGrid& grid,
    const std::function<ModePieces(double)>& pieces_of,
    const RadialFunction* bound_profile) {
  const auto& lambdas = coeffs.lambdas;
  const int n = static_cast<int>(lambdas.size()) - 1;
  if (n < 2 || n % 2 != 0) {
    throw Error(Fault::BadConfig, "reconstruction needs an even panel count");
  }
  const double h = lambdas[1] - lambdas[0];
  for (int j = 0; j + 1 < static_cast<int>(lambdas.size()); ++j) {
    if (std::abs(lambdas[j + 1] - lambdas[j] - h) > 1e-9 * h) {
      throw Error(Fault::BadConfig, "reconstruction needs uniform lambdas");
    }
  }

  std::vector<ModePieces> pieces(lambdas.size());
  for (size_t j = 0; j < lambdas.size(); ++j) {
    pieces[j] = lambdas[j] > 0.0 ? pieces_of(lambdas[j]) : ModePieces{};
  }

  const size_t nr = grid.nodes.size();
  SampledFunction out;
  out.values.assign(nr, 0.0);
  out.derivatives.assign(nr, 0.0);

  // --- head region [0, lambda_head] on a refined sub-grid ---------------
  int head = static_cast<int>(std::ceil(0.5 / h));
  head += head % 2;
  head = std::min(head, n);
  const int refine = 8;
  const int nsub = head * refine;
  const double hsub = h / refine;
  if (head > 0) {
    const auto& g = coeffs.coefficients;
    auto slope = [&](int j) -> double {
      if (j == 0) return (-3.0 * g[0] + 4.0 * g[1] - g[2]) / (2.0 * h);
      if (j == n) return (3.0 * g[n] - 4.0 * g[n - 1] + g[n - 2]) / (2.0 * h);
      return (g[j + 1] - g[j - 1]) / (2.0 * h);
    };
    std::vector<double> gsub(nsub + 1);
    std::vector<RadialFunction> prof(nsub + 1), dprof(nsub + 1);
    for (int k = 0; k <= nsub; ++k) {
      const double lam = k * hsub;
      const int j = std::min(k / refine, head - 1);
      const double t = (lam - lambdas[j]) / h;
      const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
      const double h10 = t * (1 - t) * (1 - t);
      const double h01 = t * t * (3 - 2 * t);
      const double h11 = t * t * (t - 1);
      gsub[k] = h00 * g[j] + h * h10 * slope(j) + h01 * g[j + 1] +
                h * h11 * slope(j + 1);
      if (lam > 0.0) {
        prof[k] = profile_from_pieces(pieces_of(lam), lam);
        dprof[k] = prof[k].derivative();
      }
    }
    // composite Simpson weights on the sub-grid
    for (size_t ir = 0; ir < nr; ++ir) {
      const double r = grid.nodes[ir];
      double v = 0.0, dv = 0.0;
      for (int k = 0; k <= nsub; ++k) {
        if (k == 0) continue;  // integrand vanishes at lambda = 0
        double w = (k == nsub) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        w *= hsub / 3.0;
        v += w * gsub[k] * prof[k].eval(r).real();
        dv += w * gsub[k] * dprof[k].eval(r).real();
      }
      out.values[ir] = v;
      out.derivatives[ir] = dv;
    }
  }

  // --- Filon region [lambda_head, lambda_max] ---------------------------
  const size_t nl = lambdas.size() - head;
  const double x0 = lambdas[head];
  if (nl >= 3) {
    std::vector<Complex> fp(nl), fm(nl), fe(nl), f0(nl);
    std::vector<Complex> dp(nl), dm(nl), de(nl);
    for (size_t ir = 0; ir < nr; ++ir) {
      const double r = grid.nodes[ir];
      const double inv_r = 1.0 / r;
      // phase factors by recurrence: e^{i lam r}, e^{-lam r}
      const Complex q_osc = std::exp(Complex{0.0, r * h});
      const double q_ev = std::exp(-r * h);
      Complex ph_osc = std::exp(Complex{0.0, r * x0});
      double ph_ev = std::exp(-r * x0);
      for (size_t j = 0; j < nl; ++j) {
        const double lam = lambdas[head + j];
        const double g = coeffs.coefficients[head + j];
        const ModePieces& pc = pieces[head + j];
        // D e^{mu lam r} = (mu lam - 1/r) e^{mu lam r}; the exponential is
        // the Filon kernel, the smooth prefactor stays with the samples.
        const Complex mup{0.0, lam}, mum{0.0, -lam}, mue{-lam, 0.0};
        const Complex ph_conj = std::conj(ph_osc);
        fp[j] = g * pc.amp_plus * (mup - inv_r) * ph_osc;
        fm[j] = g * pc.amp_minus * (mum - inv_r) * ph_conj;
        fe[j] = g * pc.amp_evanescent * (mue - inv_r) * ph_ev;
        f0[j] = g * pc.amp_pole * inv_r;
        dp[j] = g * pc.amp_plus * (mup * mup - mup * inv_r + inv_r * inv_r) * ph_osc;
        dm[j] = g * pc.amp_minus * (mum * mum - mum * inv_r + inv_r * inv_r) * ph_conj;
        de[j] = g * pc.amp_evanescent * (mue * mue - mue * inv_r + inv_r * inv_r) * ph_ev;
        ph_osc *= q_osc;
        ph_ev *= q_ev;
      }
      const Complex th_p{0.0, r * h};  // theta for the decaying kernel
      Complex v = filon_simpson_weighted(fp, h, Complex{r * h, 0.0}) +
                  filon_simpson_weighted(fm, h, Complex{-r * h, 0.0}) +
                  filon_simpson_weighted(fe, h, th_p) +
                  filon_simpson_weighted(f0, h, Complex{0.0, 0.0});
      Complex dv = filon_simpson_weighted(dp, h, Complex{r * h, 0.0}) +
                   filon_simpson_weighted(dm, h, Complex{-r * h, 0.0}) +
                   filon_simpson_weighted(de, h, th_p);
      // pole-part derivative: d/dr (amp_pole/r) = -amp_pole/r^2
      for (size_t j = 0; j < nl; ++j) f0[j] *= -inv_r;
      dv += filon_simpson_weighted(f0, h, Complex{0.0, 0.0});
      out.values[ir] += v.real();
      out.derivatives[ir] += dv.real();
    }
  }

  if (coeffs.bound_coefficient && bound_profile) {
    const double c = *coeffs.bound_coefficient;
    RadialFunction dq = bound_profile->derivative();
    for (size_t ir = 0; ir < nr; ++ir) {
      out.values[ir] += c * bound_profile->eval(grid.nodes[ir]).real();
      out.derivatives[ir] += c * dq.eval(grid.nodes[ir]).real();
    }
  }
  return out;
}

}  // namespace

SampledFunction reconstruct_t(const TransformResult& coeffs,
                              const KappaExtension& ext, const RadialGrid& grid) {
  std::optional<DiscreteMode> bound;
  if (coeffs.bound_coefficient) bound = discrete_mode_t(ext);
  return reconstruct_uniform(
      coeffs, grid,
      [&ext](double lam) { return continuous_mode_t_pieces(lam, ext); },
      bound ? &bound->profile : nullptr);
}

double relative_l2_error(const SampledFunction& s, const RadialFunction& ref,
                         const RadialGrid& grid) {
  const size_t n = grid.nodes.size();
  std::vector<double> diff2(n), ref2(n);
  for (size_t i = 0; i < n; ++i) {
    double rv = ref.eval(grid.nodes[i]).real();
    double d = s.values[i] - rv;
    diff2[i] = d * d;
    ref2[i] = rv * rv;
  }
  double num = grid.integrate_samples(diff2).value;
  double den = grid.integrate_samples(ref2).value;
  return std::sqrt(std::max(num, 0.0) / std::max(den, 1e-300));
}

double sampled_inner_angle(const SampledFunction& a, const SampledFunction& b,
                           const RadialGrid& grid) {
  const size_t n = grid.nodes.size();
  std::vector<double> integrand(n);
  for (size_t i = 0; i < n; ++i) {
    double r = grid.nodes[i];
    integrand[i] = a.derivatives[i] * b.derivatives[i] +
                   2.0 * a.values[i] * b.values[i] / (r * r);
  }
  return grid.integrate_samples(integrand).value;
}

}  // namespace radialext
