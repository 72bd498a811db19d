#include "radialext/radial_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace radialext {

namespace {

constexpr double kDropTol = 1e-300;
// Relative tolerance used to decide that a group of coefficients cancels.
constexpr double kCancelTol = 1e-9;

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

RadialFunction::RadialFunction(std::vector<Term> terms) : terms_(std::move(terms)) {}

RadialFunction RadialFunction::zero() { return RadialFunction{}; }

RadialFunction RadialFunction::monomial_exp(Complex c, int power, Complex rate) {
  return RadialFunction({Term{c, power, rate, false}});
}

RadialFunction RadialFunction::power(Complex c, int p) {
  return monomial_exp(c, p, Complex{0.0, 0.0});
}

RadialFunction RadialFunction::exponential(Complex c, Complex rate) {
  return monomial_exp(c, 0, rate);
}

RadialFunction RadialFunction::d_exponential(Complex c, Complex rate) {
  return RadialFunction({Term{c, 0, rate, true}});
}

RadialFunction RadialFunction::pole(Complex c) { return power(c, -1); }

RadialFunction RadialFunction::operator+(const RadialFunction& o) const {
  std::vector<Term> t = terms_;
  t.insert(t.end(), o.terms_.begin(), o.terms_.end());
  return RadialFunction(std::move(t));
}

RadialFunction RadialFunction::operator-(const RadialFunction& o) const {
  return *this + (-o);
}

RadialFunction RadialFunction::operator-() const {
  std::vector<Term> t = terms_;
  for (auto& term : t) term.coeff = -term.coeff;
  return RadialFunction(std::move(t));
}

RadialFunction RadialFunction::operator*(Complex c) const {
  std::vector<Term> t = terms_;
  for (auto& term : t) term.coeff *= c;
  return RadialFunction(std::move(t));
}

RadialFunction& RadialFunction::operator+=(const RadialFunction& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  invalidate();
  return *this;
}

RadialFunction RadialFunction::conjugate() const {
  std::vector<Term> t = terms_;
  for (auto& term : t) {
    term.coeff = std::conj(term.coeff);
    term.rate = std::conj(term.rate);
  }
  return RadialFunction(std::move(t));
}

const std::vector<PureTerm>& RadialFunction::expanded() const {
  if (expanded_valid_) return expanded_;
  std::vector<PureTerm> pure;
  pure.reserve(terms_.size() * 2);
  for (const Term& t : terms_) {
    if (t.d_applied) {
      // r^p D e^{sr} = s r^p e^{sr} - r^{p-1} e^{sr}
      pure.push_back(PureTerm{t.coeff * t.rate, t.power, t.rate});
      pure.push_back(PureTerm{-t.coeff, t.power - 1, t.rate});
    } else {
      pure.push_back(PureTerm{t.coeff, t.power, t.rate});
    }
  }
  std::sort(pure.begin(), pure.end(), [](const PureTerm& a, const PureTerm& b) {
    if (a.power != b.power) return a.power < b.power;
    if (a.rate.real() != b.rate.real()) return a.rate.real() < b.rate.real();
    return a.rate.imag() < b.rate.imag();
  });
  std::vector<PureTerm> merged;
  for (const PureTerm& t : pure) {
    if (!merged.empty() && merged.back().power == t.power &&
        merged.back().rate == t.rate) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(t);
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const PureTerm& t) {
                                return std::abs(t.coeff) < kDropTol;
                              }),
               merged.end());
  expanded_ = std::move(merged);
  expanded_valid_ = true;
  return expanded_;
}

RadialFunction RadialFunction::derivative() const {
  std::vector<Term> out;
  for (const PureTerm& t : expanded()) {
    // (c r^p e^{sr})' = c s r^p e^{sr} + c p r^{p-1} e^{sr}
    if (t.rate != Complex{0.0, 0.0}) {
      out.push_back(Term{t.coeff * t.rate, t.power, t.rate, false});
    }
    if (t.power != 0) {
      out.push_back(Term{t.coeff * static_cast<double>(t.power), t.power - 1,
                         t.rate, false});
    }
  }
  return RadialFunction(std::move(out));
}

RadialFunction RadialFunction::power_shift(int shift) const {
  std::vector<Term> t = terms_;
  for (auto& term : t) term.power += shift;
  return RadialFunction(std::move(t));
}

RadialFunction RadialFunction::multiply(const RadialFunction& o) const {
  std::vector<Term> out;
  out.reserve(expanded().size() * o.expanded().size());
  for (const PureTerm& a : expanded()) {
    for (const PureTerm& b : o.expanded()) {
      out.push_back(Term{a.coeff * b.coeff, a.power + b.power, a.rate + b.rate,
                         false});
    }
  }
  return RadialFunction(std::move(out));
}

int RadialFunction::min_power() const {
  int mp = 0;
  for (const PureTerm& t : expanded()) mp = std::min(mp, t.power);
  return mp;
}

double RadialFunction::max_rate_real() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const PureTerm& t : expanded()) m = std::max(m, t.rate.real());
  return m;
}

double RadialFunction::max_rate_imag() const {
  double m = 0.0;
  for (const PureTerm& t : expanded()) m = std::max(m, std::abs(t.rate.imag()));
  return m;
}

bool RadialFunction::decays_at_infinity() const {
  for (const PureTerm& t : expanded()) {
    if (t.rate == Complex{0.0, 0.0}) {
      if (t.power >= 0) return false;
    } else if (t.rate.real() >= 0.0) {
      return false;
    }
  }
  return true;
}

Complex RadialFunction::laurent_coefficient(int k) const {
  Complex a{0.0, 0.0};
  for (const PureTerm& t : expanded()) {
    int j = k - t.power;
    if (j < 0) continue;
    a += t.coeff * std::pow(t.rate, j) / factorial(j);
  }
  return a;
}

double RadialFunction::laurent_scale(int k) const {
  double s = 0.0;
  for (const PureTerm& t : expanded()) {
    int j = k - t.power;
    if (j < 0) continue;
    s += std::abs(t.coeff) * std::pow(std::abs(t.rate), j) / factorial(j);
  }
  return s;
}

bool RadialFunction::laurent_vanishes_through(int upto) const {
  for (int k = min_power(); k <= upto; ++k) {
    double scale = laurent_scale(k);
    if (scale == 0.0) continue;
    if (std::abs(laurent_coefficient(k)) > kCancelTol * scale) return false;
  }
  return true;
}

TaylorData RadialFunction::taylor_at_zero() const {
  if (!laurent_vanishes_through(-1)) {
    throw Error(Fault::PoleAtOrigin,
                "function has a surviving pole at the origin");
  }
  return TaylorData{laurent_coefficient(0), laurent_coefficient(1),
                    2.0 * laurent_coefficient(2)};
}

Complex RadialFunction::eval(double r) const {
  if (!(r > 0.0)) {
    throw Error(Fault::OriginEvaluation, "evaluation requires r > 0");
  }
  const auto& pure = expanded();
  double max_abs_rate = 0.0;
  int mp = 0;
  for (const PureTerm& t : pure) {
    max_abs_rate = std::max(max_abs_rate, std::abs(t.rate));
    mp = std::min(mp, t.power);
  }
  // Laurent-series path near the origin: cancellations between negative
  // powers happen in the coefficients rather than between large values.
  // Negative orders that cancel to rounding noise are genuine zeros and
  // must not be divided by r^|k|.
  if (mp < 0 && max_abs_rate * r < 0.7) {
    Complex sum{0.0, 0.0};
    const int kmax = mp + 40;
    double rk = std::pow(r, mp);
    for (int k = mp; k <= kmax; ++k) {
      Complex a = laurent_coefficient(k);
      if (k < 0 && std::abs(a) <= kCancelTol * laurent_scale(k)) {
        a = Complex{0.0, 0.0};
      }
      sum += a * rk;
      rk *= r;
    }
    return sum;
  }
  Complex sum{0.0, 0.0};
  for (const PureTerm& t : pure) {
    sum += t.coeff * std::pow(r, t.power) * std::exp(t.rate * r);
  }
  return sum;
}

double RadialFunction::max_imag_on(const std::vector<double>& radii) const {
  double m = 0.0;
  for (double r : radii) m = std::max(m, std::abs(eval(r).imag()));
  return m;
}

double RadialFunction::coefficient_scale() const {
  double s = 0.0;
  for (const PureTerm& t : expanded()) s += std::abs(t.coeff);
  return s;
}

RadialFunction apply_d(const RadialFunction& f) {
  std::vector<Term> out;
  for (const Term& t : f.terms()) {
    if (!t.d_applied && t.power == 0 && t.rate != Complex{0.0, 0.0}) {
      out.push_back(Term{t.coeff, 0, t.rate, true});
      continue;
    }
    // D(c r^p e^{sr}) = c s r^p e^{sr} + c (p-1) r^{p-1} e^{sr}, expanded
    // over the pure view of this single term.
    RadialFunction single({t});
    for (const PureTerm& p : single.expanded()) {
      if (p.rate != Complex{0.0, 0.0}) {
        out.push_back(Term{p.coeff * p.rate, p.power, p.rate, false});
      }
      if (p.power != 1) {
        out.push_back(Term{p.coeff * static_cast<double>(p.power - 1),
                           p.power - 1, p.rate, false});
      }
    }
  }
  return RadialFunction(std::move(out));
}

RadialFunction apply_d_star(const RadialFunction& f) {
  std::vector<Term> out;
  for (const PureTerm& p : f.expanded()) {
    // D*(c r^p e^{sr}) = -c s r^p e^{sr} - c (p+1) r^{p-1} e^{sr}
    if (p.rate != Complex{0.0, 0.0}) {
      out.push_back(Term{-p.coeff * p.rate, p.power, p.rate, false});
    }
    if (p.power != -1) {
      out.push_back(Term{-p.coeff * static_cast<double>(p.power + 1),
                         p.power - 1, p.rate, false});
    }
  }
  return RadialFunction(std::move(out));
}

RadialFunction apply_t(const RadialFunction& f) { return apply_d(apply_d_star(f)); }

RadialFunction conjugate_product(const RadialFunction& u, const RadialFunction& v) {
  return u.conjugate().multiply(v);
}

std::vector<Complex> taylor_at_zero(const RadialFunction& f, int order) {
  if (order < 0 || order > 2) {
    throw Error(Fault::BadConfig, "Taylor data is exact up to order 2");
  }
  TaylorData d = f.taylor_at_zero();
  std::vector<Complex> out{d.value};
  if (order >= 1) out.push_back(d.first);
  if (order >= 2) out.push_back(d.second);
  return out;
}

SpaceMembership in_weighted_space(const RadialFunction& u) {
  for (const PureTerm& t : u.expanded()) {
    if (t.rate == Complex{0.0, 0.0}) {
      if (t.power >= 0) return {false, "polynomial growth at infinity"};
    } else if (t.rate.real() >= 0.0) {
      return {false, "non-decaying exponential at infinity"};
    }
  }
  if (!u.laurent_vanishes_through(0)) {
    return {false, "does not vanish at the origin"};
  }
  return {true, ""};
}

}  // namespace radialext
