#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "radialext/op_t_kappa.hpp"

using namespace radialext;
using doctest::Approx;

namespace {
const RadialGrid& grid() {
  static RadialGrid g = RadialGrid::geometric();
  return g;
}
RadialFunction r_exp(double c, int p, Complex s) {
  return RadialFunction::monomial_exp(c, p, s);
}
}  // namespace

TEST_CASE("initial-domain membership") {
  CHECK(in_domain_w0(r_exp(1.0, 3, -1.0)).ok);
  Membership m1 = in_domain_w0(r_exp(1.0, 1, -1.0));
  CHECK_FALSE(m1.ok);  // u'(0) = 1
  Membership m2 = in_domain_w0(r_exp(1.0, 2, -1.0));
  CHECK_FALSE(m2.ok);  // u''(0) = 2
}

TEST_CASE("extension-domain membership") {
  RadialFunction u = r_exp(1.0, 1, -1.0);
  CHECK(in_domain_w_kappa(u, KappaExtension::finite(-1.5)).ok);
  CHECK_FALSE(in_domain_w_kappa(u, KappaExtension::finite(0.0)).ok);
  // W_0 sits inside every W_kappa
  for (double k : {-2.0, 0.0, 3.0}) {
    CHECK(in_domain_w_kappa(r_exp(1.0, 3, -1.0), KappaExtension::finite(k)).ok);
  }
  CHECK(in_domain_w_kappa(r_exp(1.0, 3, -1.0), KappaExtension::infinite()).ok);
}

TEST_CASE("extended operator action") {
  auto ext = KappaExtension::finite(-1.0);
  // u'(0)=0 kills the non-local term
  RadialFunction v = r_exp(1.0, 3, -1.0);
  RadialFunction diff = apply_t_kappa(v, ext) - apply_t(v);
  CHECK(diff.expanded().empty());
  // u = r e^{-r}: T_k u = (2 - r + 2/r) e^{-r} - 2/r
  RadialFunction u = r_exp(1.0, 1, -1.0);
  RadialFunction tu = apply_t_kappa(u, ext);
  for (double r : {0.3, 1.0, 2.5}) {
    double expect = (2.0 - r + 2.0 / r) * std::exp(-r) - 2.0 / r;
    CHECK(tu.eval(r).real() == Approx(expect).epsilon(1e-12));
  }
  CHECK_THROWS_AS((void)apply_t_kappa(RadialFunction::pole(1.0), ext), Error);
}

TEST_CASE("bound state is an exact eigenfunction") {
  for (double kappa : {-0.5, -1.0, -2.0}) {
    auto ext = KappaExtension::finite(kappa);
    DiscreteMode q = discrete_mode_t(ext);
    CHECK(q.eigenvalue == Approx(-kappa * kappa));
    // residual of (T_k + kappa^2) q in closed form
    RadialFunction res = apply_t_kappa(q.profile, ext) + q.profile * (kappa * kappa);
    double worst = 0.0;
    for (double r : {0.01, 0.1, 0.5, 1.0, 3.0, 10.0, 40.0}) {
      worst = std::max(worst, std::abs(res.eval(r)));
    }
    CHECK(worst < 1e-10);
    // boundary condition on exact Taylor data
    TaylorData t = q.profile.taylor_at_zero();
    CHECK(std::abs(3.0 * t.second - 4.0 * kappa * t.first) <
          1e-14 * std::abs(4.0 * kappa * t.first));
    // normalization in the weighted product
    CHECK(inner_angle(q.profile, q.profile, grid()).value.real() ==
          Approx(1.0).epsilon(1e-8));
  }
  CHECK_THROWS_AS((void)discrete_mode_t(KappaExtension::finite(1.0)), Error);
}

TEST_CASE("bound-state Taylor data for kappa = -1") {
  DiscreteMode q = discrete_mode_t(KappaExtension::finite(-1.0));
  TaylorData t = q.profile.taylor_at_zero();
  CHECK(t.first.real() == Approx(std::sqrt(2.0) / 2.0));
  CHECK(t.second.real() == Approx(-2.0 * std::sqrt(2.0) / 3.0));
}

TEST_CASE("deficiency pairing vanishes on the initial domain") {
  RadialFunction v1 = r_exp(1.0, 3, -1.0);
  CHECK(std::abs(deficiency_pairing_t(+1, 1.0, v1, grid())) < 1e-8);
  RadialFunction v2 = r_exp(1.0, 3, -2.0);
  CHECK(std::abs(deficiency_pairing_t(-1, 2.0, v2, grid())) < 1e-8);
  CHECK_THROWS_AS(
      (void)deficiency_pairing_t(+1, 1.0, r_exp(1.0, 1, -1.0), grid()), Error);
}

TEST_CASE("reflection coefficient") {
  auto ext0 = KappaExtension::finite(0.0);
  CHECK(reflection_beta(Complex{0.3, 0.8}, ext0) == Complex{1.0, 0.0});
  auto ext = KappaExtension::finite(1.7);
  CHECK(std::abs(reflection_beta(Complex{0.0, 1.7}, ext)) < 1e-15);  // z = i kappa
  for (double lam : {0.2, 1.0, 7.5}) {
    CHECK(std::abs(reflection_beta(Complex{lam, 0.0}, ext)) == Approx(1.0));
  }
  CHECK_THROWS_AS((void)reflection_beta(Complex{0.0, -1.7}, ext), Error);
}

TEST_CASE("resolvent Wronskian and boundary expansion") {
  auto ext = KappaExtension::finite(0.7);
  ResolventTParts p = resolvent_t_parts(Complex{1.0, 1e-9}, ext);
  CHECK(p.wronskian.real() == Approx(0.0));
  CHECK(p.wronskian.imag() == Approx(-2.0).epsilon(1e-8));
  // numerical Wronskian h' g - h g' is r-independent and equals -2iz^3
  Complex z{0.8, 0.6};
  ResolventTParts q = resolvent_t_parts(z, ext);
  RadialFunction dh = q.h.derivative(), dg = q.g.derivative();
  for (double r : {0.5, 2.0}) {
    Complex w = dh.eval(r) * q.g.eval(r) - q.h.eval(r) * dg.eval(r);
    CHECK(std::abs(w - q.wronskian) < 1e-12);
  }
  // small-r expansion obeys the extension boundary condition via beta:
  // 3 u''(0) = 4 kappa u'(0) for u = h + (1+beta)/r
  RadialFunction bdry = q.h + RadialFunction::pole(1.0 + q.beta);
  TaylorData t = bdry.taylor_at_zero();
  CHECK(std::abs(3.0 * t.second - 4.0 * 0.7 * t.first) < 1e-12);
  CHECK_THROWS_AS((void)resolvent_t(1.0, 1.0, Complex{1.0, -0.2}, ext), Error);
}

TEST_CASE("resolvent complex symmetry across conjugate arguments") {
  // <u, R(z) v> = <R(-conj z) u, v>, realized as (T a, R b) with the
  // kernel action in closed form and one quadrature sweep
  auto ext = KappaExtension::finite(-0.8);
  Complex z{0.4, 0.9};
  RadialFunction u = r_exp(1.0, 1, -1.0);
  RadialFunction v = r_exp(1.0, 2, -1.5);
  auto pairing = [&](Complex zz, const RadialFunction& a,
                     const RadialFunction& b) {
    RadialFunction ta = apply_t(a);
    auto rb = apply_resolvent_t(b, zz, ext);
    Complex acc{0.0, 0.0};
    for (size_t i = 0; i < grid().nodes.size(); ++i) {
      double s = grid().nodes[i];
      acc += grid().weights[i] * std::conj(ta.eval(s)) * rb(s);
    }
    // head: the integrand tends to a finite constant at the origin
    acc += grid().r_min * std::conj(ta.eval(grid().r_min)) * rb(grid().r_min);
    return acc;
  };
  Complex lhs = pairing(z, u, v);
  Complex rhs = std::conj(pairing(-std::conj(z), v, u));
  CHECK(std::abs(lhs - rhs) < 1e-8 * (1.0 + std::abs(lhs)));
  // kernel action consistent with pointwise kernel values; the direct
  // quadrature splits at the diagonal kink
  auto rv = apply_resolvent_t(v, z, ext);
  for (double r : {0.7, 2.3}) {
    Complex direct{0.0, 0.0};
    for (const RadialGrid& part :
         {RadialGrid::geometric(1024, 1e-7, r),
          RadialGrid::geometric(1024, r, 60.0)}) {
      for (size_t j = 0; j < part.nodes.size(); ++j) {
        direct += part.weights[j] * resolvent_t(r, part.nodes[j], z, ext) *
                  v.eval(part.nodes[j]).real();
      }
    }
    CHECK(std::abs(direct - rv(r)) < 1e-8 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("resolvent defect equation, smeared") {
  auto ext = KappaExtension::finite(-1.5);
  Complex z = std::polar(1.0, M_PI / 3.0);
  RadialFunction phi = r_exp(1.0, 3, -1.0);
  ResolventTParts p = resolvent_t_parts(z, ext);
  RadialFunction pole = RadialFunction::pole(1.0 + p.beta);
  for (double s : {0.5, 1.0, 2.0}) {
    RadialFunction left = (p.h + pole) * p.g.eval(s);
    RadialFunction right = p.g * p.h.eval(s) + pole * p.g.eval(s);
    // non-local term uses dR/dr at the origin, from the left piece
    Complex dr0 = left.laurent_coefficient(1);
    auto defect = [&](const RadialFunction& piece) {
      return apply_t(piece) - piece * (z * z) - RadialFunction::pole(2.0 * dr0);
    };
    RadialFunction wl = defect(left), wr = defect(right);
    Complex a = segment_integral(phi.multiply(wl), 0.0, s) +
                segment_integral(phi.multiply(wr), s,
                                 std::numeric_limits<double>::infinity());
    // the kink at r = s carries the delta: -[R'] phi(s) with [R'] = -1
    RadialFunction dl = left.derivative(), drr = right.derivative();
    Complex jump = (drr.eval(s) - dl.eval(s)) / p.wronskian;
    Complex total = a / p.wronskian - jump * phi.eval(s);
    Complex expect = phi.eval(s);
    CHECK(std::abs(total - expect) < 1e-6 * std::abs(expect));
    CHECK(std::abs(jump + 1.0) < 1e-12);
  }
}

TEST_CASE("residue factorization at the resolvent pole") {
  auto ext = KappaExtension::finite(-1.2);
  DiscreteMode q = discrete_mode_t(ext);
  RadialFunction tq = apply_t(q.profile);
  Complex z0{0.0, 1.2};  // -i kappa
  for (double r : {0.4, 1.3}) {
    for (double s : {0.7, 2.1}) {
      // Richardson limit of 2 z0 (z0 - z) R(r,s;z) along a ray
      Complex d1{1e-3, 1e-3};
      auto f = [&](Complex dz) {
        return 2.0 * z0 * (-dz) * resolvent_t(r, s, z0 + dz, ext);
      };
      Complex f1 = f(d1), f2 = f(d1 * 0.5), f4 = f(d1 * 0.25);
      Complex lim = (8.0 * f4 - 6.0 * f2 + f1) / 3.0;
      Complex exact = q.profile.eval(r) * tq.eval(s);
      CHECK(std::abs(lim - exact) < 1e-8 * (1.0 + std::abs(exact)));
      CHECK(std::abs(resolvent_t_residue(r, s, ext) - exact) <
            1e-12 * (1.0 + std::abs(exact)));
    }
  }
}

TEST_CASE("continuous modes are real eigenfunctions") {
  for (double kappa : {1.0, -1.0}) {
    auto ext = KappaExtension::finite(kappa);
    for (double lam : {0.5, 1.0, 2.0}) {
      ContinuousMode m = continuous_mode_t(lam, ext);
      CHECK(m.profile.max_imag_on(grid().nodes) < 1e-12);
      // (T_k - lam^2) p = 0 in closed form
      RadialFunction res =
          apply_t_kappa(m.profile, ext) - m.profile * (lam * lam);
      double worst = 0.0;
      for (double r : grid().nodes) {
        worst = std::max(worst, std::abs(res.eval(r)));
      }
      CHECK(worst < 1e-10);
    }
  }
  // kappa = 0: zeta = 0 and the profile is (De^{ilr} + De^{-ilr} + 2/r)/norm
  ContinuousMode m0 = continuous_mode_t(1.0, KappaExtension::finite(0.0));
  CHECK(m0.phase == Approx(0.0));
  double pref = 1.0 / std::sqrt(2.0 * M_PI);
  double expect = pref * (-2.0 * std::sin(1.0) - 2.0 * std::cos(1.0) + 2.0);
  CHECK(m0.profile.eval(1.0).real() == Approx(expect).epsilon(1e-12));
}

TEST_CASE("transform of the bound state is purely discrete") {
  auto ext = KappaExtension::finite(-1.0);
  DiscreteMode q = discrete_mode_t(ext);
  TransformResult tr =
      forward_transform_t(q.profile, ext, {0.5, 1.0, 2.0}, grid());
  REQUIRE(tr.bound_coefficient.has_value());
  CHECK(*tr.bound_coefficient == Approx(1.0).epsilon(1e-8));
  for (double g : tr.coefficients) CHECK(std::abs(g) < 1e-6);
}

TEST_CASE("transform coefficients agree with direct quadrature") {
  auto ext = KappaExtension::finite(-1.5);
  RadialFunction u = r_exp(1.0, 1, -1.0);
  TransformResult tr = forward_transform_t(u, ext, {1.0}, grid());
  ContinuousMode m = continuous_mode_t(1.0, ext);
  // independent oracle: adaptive quadrature of p' u' + 2 p u / r^2
  RadialFunction dp = m.profile.derivative();
  auto fn = [&](double r) {
    oracles::Complex du = (1.0 - r) * std::exp(-r);
    oracles::Complex uu = r * std::exp(-r);
    return oracles::Complex(dp.eval(r)) * du +
           2.0 * oracles::Complex(m.profile.eval(r)) * uu / (r * r);
  };
  oracles::Complex ref = oracles::integrate_halfline(fn, 1e-7, 200.0, 1e-12);
  CHECK(tr.coefficients[0] == Approx(ref.real()).epsilon(1e-8));
  CHECK_THROWS_AS(
      (void)forward_transform_t(u, KappaExtension::finite(0.0), {1.0}, grid()),
      Error);
}

TEST_CASE("round trip and Parseval") {
  auto ext = KappaExtension::finite(-1.5);
  RadialFunction u = r_exp(1.0, 1, -1.0);
  TransformResult tr =
      forward_transform_t(u, ext, uniform_lambdas(40.0, 2000), grid());
  SampledFunction rec = reconstruct_t(tr, ext, grid());
  CHECK(relative_l2_error(rec, u, grid()) < 1e-3);

  // Parseval: <u,u> = int g^2 + c^2
  double norm2 = inner_angle(u, u, grid()).value.real();
  std::vector<Complex> g2(tr.coefficients.size());
  for (size_t j = 0; j < g2.size(); ++j) {
    g2[j] = Complex{tr.coefficients[j] * tr.coefficients[j], 0.0};
  }
  double h = tr.lambdas[1] - tr.lambdas[0];
  double sum = filon_simpson(g2, 0.0, h, Complex{0.0, 0.0}).real();
  if (tr.bound_coefficient) {
    sum += (*tr.bound_coefficient) * (*tr.bound_coefficient);
  }
  CHECK(std::abs(sum - norm2) / norm2 < 1e-3);
}

TEST_CASE("pure discrete coefficients reconstruct the bound state") {
  auto ext = KappaExtension::finite(-1.0);
  DiscreteMode q = discrete_mode_t(ext);
  TransformResult tr;
  tr.lambdas = uniform_lambdas(10.0, 100);
  tr.coefficients.assign(tr.lambdas.size(), 0.0);
  tr.bound_coefficient = 1.0;
  SampledFunction rec = reconstruct_t(tr, ext, grid());
  CHECK(relative_l2_error(rec, q.profile, grid()) < 1e-12);
}

TEST_CASE("smeared orthogonality of reconstructed packets") {
  auto ext = KappaExtension::finite(0.8);
  auto packet = [](double mu) {
    return [mu](double lam) {
      double x = (lam - mu) / 0.35;
      return std::exp(-0.5 * x * x);
    };
  };
  std::vector<double> lambdas = uniform_lambdas(6.0, 600);
  TransformResult a, b;
  a.lambdas = b.lambdas = lambdas;
  for (double lam : lambdas) {
    a.coefficients.push_back(lam > 0 ? packet(1.2)(lam) : 0.0);
    b.coefficients.push_back(lam > 0 ? packet(2.0)(lam) : 0.0);
  }
  SampledFunction fa = reconstruct_t(a, ext, grid());
  SampledFunction fb = reconstruct_t(b, ext, grid());
  double lhs = sampled_inner_angle(fa, fb, grid());
  // int g h dlambda by Simpson
  std::vector<Complex> gh(lambdas.size());
  for (size_t j = 0; j < lambdas.size(); ++j) {
    gh[j] = Complex{a.coefficients[j] * b.coefficients[j], 0.0};
  }
  double rhs =
      filon_simpson(gh, 0.0, lambdas[1] - lambdas[0], Complex{0.0, 0.0}).real();
  CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-3);
}
