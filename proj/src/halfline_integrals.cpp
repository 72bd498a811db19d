#include "radialext/halfline_integrals.hpp"

#include <cmath>
#include <limits>

namespace radialext {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209;
constexpr double kInf = std::numeric_limits<double>::infinity();

double harmonic(int n) {
  double h = 0.0;
  for (int k = 1; k <= n; ++k) h += 1.0 / k;
  return h;
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

bool term_decays(const PureTerm& t) {
  // Absolutely integrable at infinity: decaying exponential, or inverse
  // square and better (covers oscillatory rates with power <= -2).
  return t.rate.real() < 0.0 || t.power <= -2;
}

Complex expint_e1_series(Complex w) {
  Complex sum{0.0, 0.0};
  Complex term{1.0, 0.0};
  for (int k = 1; k <= 64; ++k) {
    term *= -w / static_cast<double>(k);
    Complex add = -term / static_cast<double>(k);
    sum += add;
    if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
  }
  return -kEulerGamma - std::log(w) + sum;
}

Complex expint_e1_contfrac(Complex w) {
  // Modified Lentz for E1(w) = e^{-w} * 1/(w+1- 1/(w+3- 4/(w+5- ...))).
  const double tiny = 1e-290;
  Complex b = w + 1.0;
  Complex c = 1.0 / tiny;
  Complex d = 1.0 / b;
  Complex h = d;
  for (int i = 1; i <= 400; ++i) {
    Complex a = -static_cast<double>(i) * static_cast<double>(i);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    Complex delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-w);
}

// Antiderivative F(p, x) of x^p e^{s x} for p >= 0, s != 0,
// with F(p, +inf) = 0 when Re s < 0.
Complex antiderivative_posp(int p, Complex s, double x) {
  const Complex esx = std::exp(s * x);
  Complex fk = esx / s;  // F(0)
  double xpow = 1.0;
  for (int k = 1; k <= p; ++k) {
    xpow *= x;
    fk = xpow * esx / s - (static_cast<double>(k) / s) * fk;
  }
  return fk;
}

// F(p, 0) = (-1)^p p! / s^{p+1}
Complex antiderivative_posp_at_zero(int p, Complex s) {
  Complex f = 1.0 / s;
  for (int k = 1; k <= p; ++k) f *= -static_cast<double>(k) / s;
  return f;
}

// int_x^inf r^{-n} e^{s r} dr = x^{1-n} E_n(-s x),  n >= 1.
Complex upper_negp(int n, Complex s, double x) {
  return std::pow(x, 1 - n) * expint_en(n, -s * x);
}

// Finite part of int_0^inf r^{-n} e^{s r} dr (divergent orders dropped;
// they cancel across a convergent group).
Complex halfline_fp_negp(int n, Complex s) {
  return std::pow(s, n - 1) / factorial(n - 1) *
         (harmonic(n - 1) - kEulerGamma - std::log(-s));
}

// Finite part of int_0^b r^{-n} e^{s r} dr through the entire series in
// s*b; valid for any s but loses digits once |s b| grows.
Complex head_fp_series(int n, Complex s, double b) {
  Complex sum = std::pow(s, n - 1) / factorial(n - 1) * std::log(b);
  Complex sk{1.0, 0.0};
  double kfac = 1.0;
  double bpow = std::pow(b, 1 - n);
  for (int k = 0; k <= 80; ++k) {
    if (k > 0) {
      sk *= s;
      kfac *= k;
      bpow *= b;
    }
    if (k != n - 1) {
      Complex add = sk * bpow / (kfac * static_cast<double>(k - n + 1));
      sum += add;
      if (k > std::abs(s) * b && std::abs(add) < 1e-18 * (1.0 + std::abs(sum)))
        break;
    }
  }
  return sum;
}

// Series for int_a^b r^p e^{sr} dr when |s|(b) is small enough that the
// antiderivative recurrence would cancel badly.
Complex segment_series(int p, Complex s, double a, double b) {
  Complex sum{0.0, 0.0};
  Complex sk{1.0, 0.0};
  double kfac = 1.0;
  for (int k = 0; k <= 60; ++k) {
    if (k > 0) {
      sk *= s;
      kfac *= k;
    }
    int q = p + k;
    Complex add;
    if (q == -1) {
      add = sk / kfac * std::log(b / a);
    } else {
      add = sk / kfac * (std::pow(b, q + 1) - std::pow(a, q + 1)) /
            static_cast<double>(q + 1);
    }
    sum += add;
    if (k > 4 && std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
  }
  return sum;
}

Complex term_segment(const PureTerm& t, double a, double b) {
  const bool to_inf = std::isinf(b);
  const Complex s = t.rate;
  const int p = t.power;

  if (s == Complex{0.0, 0.0}) {
    if (to_inf) {
      // decay check upstream guarantees p <= -2 here
      if (a == 0.0) return Complex{0.0, 0.0};  // finite part only
      return -std::pow(a, p + 1) / static_cast<double>(p + 1);
    }
    if (a == 0.0) {
      // finite part: power divergences at the origin dropped
      if (p == -1) return Complex{std::log(b), 0.0};
      return std::pow(b, p + 1) / static_cast<double>(p + 1);
    }
    if (p == -1) return Complex{std::log(b / a), 0.0};
    return (std::pow(b, p + 1) - std::pow(a, p + 1)) /
           static_cast<double>(p + 1);
  }

  if (p >= 0) {
    if (to_inf) {
      return a == 0.0 ? -antiderivative_posp_at_zero(p, s)
                      : -antiderivative_posp(p, s, a);
    }
    if (std::abs(s) * b < 0.5) return segment_series(p, s, a, b);
    Complex low = a == 0.0 ? antiderivative_posp_at_zero(p, s)
                           : antiderivative_posp(p, s, a);
    return antiderivative_posp(p, s, b) - low;
  }

  // p < 0
  const int n = -p;
  if (a == 0.0) {
    if (s.real() > 0.0) {
      if (std::abs(s) * b > 4.0 || to_inf) {
        throw Error(Fault::Internal,
                    "head integral of a growing exponential with a negative "
                    "power is outside the supported range");
      }
      return head_fp_series(n, s, b);
    }
    Complex fp = halfline_fp_negp(n, s);
    if (to_inf) return fp;
    return fp - upper_negp(n, s, b);
  }
  if (to_inf) {
    if (s.real() > 0.0) {
      throw Error(Fault::Internal, "tail of a growing exponential");
    }
    return upper_negp(n, s, a);
  }
  if (std::abs(s) * b < 0.5) return segment_series(p, s, a, b);
  if (s.real() > 0.0) {
    // raise the power by parts until the antiderivative applies:
    // int r^{-n} e^{sr} = [r^{1-n} e^{sr}/(1-n)] - s/(1-n) int r^{1-n} e^{sr}
    Complex boundary = (std::pow(b, 1 - n) * std::exp(s * b) -
                        std::pow(a, 1 - n) * std::exp(s * a)) /
                       static_cast<double>(1 - n);
    return boundary - (s / static_cast<double>(1 - n)) *
                          term_segment(PureTerm{{1.0, 0.0}, p + 1, s}, a, b);
  }
  return upper_negp(n, s, a) - upper_negp(n, s, b);
}

void check_origin_group(const RadialFunction& f) {
  if (!f.laurent_vanishes_through(-1)) {
    throw Error(Fault::NonIntegrable,
                "singular terms at the origin do not cancel");
  }
}

void check_decay(const RadialFunction& f) {
  for (const PureTerm& t : f.expanded()) {
    if (!term_decays(t)) {
      throw Error(Fault::NonIntegrable,
                  "term does not decay at infinity (Re rate >= 0)");
    }
  }
}

}  // namespace

Complex expint_e1(Complex w) {
  if (w == Complex{0.0, 0.0}) {
    throw Error(Fault::Internal, "E1 is singular at w = 0");
  }
  if (std::abs(w) <= 4.0) return expint_e1_series(w);
  return expint_e1_contfrac(w);
}

Complex expint_en(int n, Complex w) {
  if (n < 1) throw Error(Fault::Internal, "E_n requires n >= 1");
  Complex e = expint_e1(w);
  Complex ew = std::exp(-w);
  for (int k = 1; k < n; ++k) {
    e = (ew - w * e) / static_cast<double>(k);
  }
  return e;
}

Complex segment_integral(const RadialFunction& f, double a, double b) {
  if (a < 0.0 || !(b > a)) {
    throw Error(Fault::Internal, "segment bounds must satisfy 0 <= a < b");
  }
  if (std::isinf(b)) check_decay(f);
  if (a == 0.0) check_origin_group(f);
  Complex total{0.0, 0.0};
  for (const PureTerm& t : f.expanded()) {
    total += t.coeff * term_segment(PureTerm{{1.0, 0.0}, t.power, t.rate}, a, b);
  }
  return total;
}

Complex exact_halfline_integral(const RadialFunction& f) {
  return segment_integral(f, 0.0, kInf);
}

Complex tail_integral(const RadialFunction& f, double r_from) {
  return segment_integral(f, r_from, kInf);
}

void require_integrable(const RadialFunction& f) {
  check_decay(f);
  check_origin_group(f);
}

}  // namespace radialext
