#include "radialext/quadrature.hpp"

#include <cmath>
#include <limits>

namespace radialext {

namespace {

// Largest total phase |Im rate| * r_max the grid rule resolves to ~1e-9;
// beyond it oscillatory term lists integrate in closed form instead.
constexpr double kOscillatoryPhaseLimit = 40.0;

// Composite Simpson weights on a uniform grid of m+1 points, spacing h.
// An odd panel count is finished with a 3/8 block on the last three panels.
std::vector<double> simpson_weights(int points, double h) {
  const int panels = points - 1;
  std::vector<double> w(points, 0.0);
  int simpson_panels = panels;
  bool tail38 = false;
  if (panels % 2 != 0) {
    simpson_panels = panels - 3;
    tail38 = true;
  }
  for (int j = 0; j < simpson_panels; j += 2) {
    w[j] += h / 3.0;
    w[j + 1] += 4.0 * h / 3.0;
    w[j + 2] += h / 3.0;
  }
  if (tail38) {
    const int j = simpson_panels;
    w[j] += 3.0 * h / 8.0;
    w[j + 1] += 9.0 * h / 8.0;
    w[j + 2] += 9.0 * h / 8.0;
    w[j + 3] += 3.0 * h / 8.0;
  }
  return w;
}

}  // namespace

RadialGrid RadialGrid::geometric(int n, double r_min, double r_max) {
  if (n < 16 || !(r_min > 0.0) || !(r_max > r_min)) {
    throw Error(Fault::BadConfig, "grid requires n >= 16 and 0 < r_min < r_max");
  }
  RadialGrid g;
  g.r_min = r_min;
  g.r_max = r_max;
  g.nodes.resize(n);
  const double t0 = std::log(r_min);
  const double h = (std::log(r_max) - t0) / (n - 1);
  for (int i = 0; i < n; ++i) g.nodes[i] = std::exp(t0 + i * h);
  g.nodes.back() = r_max;
  std::vector<double> wt = simpson_weights(n, h);
  g.weights.resize(n);
  for (int i = 0; i < n; ++i) g.weights[i] = wt[i] * g.nodes[i];
  return g;
}

RadialGrid::Sum RadialGrid::integrate_samples(const std::vector<double>& s) const {
  const int n = static_cast<int>(nodes.size());
  if (static_cast<int>(s.size()) != n) {
    throw Error(Fault::Internal, "sample count does not match grid");
  }
  double fine = 0.0;
  double absw = 0.0;
  for (int i = 0; i < n; ++i) {
    fine += weights[i] * s[i];
    absw += std::abs(weights[i] * s[i]);
  }
  // Half-resolution rule on every second node for the error estimate.
  const double h2 = 2.0 * (std::log(r_max) - std::log(r_min)) / (n - 1);
  const int m = (n + 1) / 2;
  std::vector<double> wc = simpson_weights(m, h2);
  double coarse = 0.0;
  for (int i = 0; i < m; ++i) {
    coarse += wc[i] * nodes[2 * i] * s[2 * i];
  }
  // conservative: the full fine/coarse gap rather than its Richardson share
  double err = std::abs(fine - coarse) +
               4.0 * std::numeric_limits<double>::epsilon() * absw;
  return {fine, err};
}

WeightedProductValue integrate_halfline(const RadialFunction& f,
                                        const RadialGrid& grid) {
  require_integrable(f);

  // Unresolvable oscillation: switch the whole integral to the exact
  // term-wise closed form (the Filon limit of infinitely many panels).
  if (f.max_rate_imag() * grid.r_max > kOscillatoryPhaseLimit) {
    Complex v = exact_halfline_integral(f);
    double err = 1e-13 * (std::abs(v) + f.coefficient_scale());
    return {v, err};
  }

  // Head (0, r_min]: integrated Laurent series. Negative orders cancel
  // (checked above), so the expansion starts at k = 0.
  Complex head{0.0, 0.0};
  double rk = grid.r_min;
  double head_err = 0.0;
  for (int k = 0; k <= 12; ++k) {
    Complex add = f.laurent_coefficient(k) * (rk / (k + 1));
    head += add;
    if (k == 12) head_err = std::abs(add);
    rk *= grid.r_min;
  }

  const int n = static_cast<int>(grid.nodes.size());
  std::vector<double> re(n), im(n);
  for (int i = 0; i < n; ++i) {
    Complex fv = f.eval(grid.nodes[i]);
    re[i] = fv.real();
    im[i] = fv.imag();
  }
  RadialGrid::Sum sre = grid.integrate_samples(re);
  RadialGrid::Sum sim = grid.integrate_samples(im);

  Complex tail = tail_integral(f, grid.r_max);

  Complex value = head + Complex{sre.value, sim.value} + tail;
  double err = std::hypot(sre.error, sim.error) + head_err +
               1e-14 * std::abs(tail) + 1e-15 * std::abs(head);
  return {value, err};
}

WeightedProductValue inner_plain(const RadialFunction& u,
                                 const RadialFunction& v,
                                 const RadialGrid& grid) {
  return integrate_halfline(conjugate_product(u, v), grid);
}

namespace {

RadialFunction angle_integrand(const RadialFunction& u, const RadialFunction& v,
                               int l) {
  RadialFunction du = u.derivative();
  RadialFunction dv = v.derivative();
  RadialFunction grad = conjugate_product(du, dv);
  RadialFunction centrifugal =
      conjugate_product(u, v).power_shift(-2) * Complex{double(l * (l + 1)), 0.0};
  return grad + centrifugal;
}

}  // namespace

WeightedProductValue inner_angle(const RadialFunction& u,
                                 const RadialFunction& v,
                                 const RadialGrid& grid, int l) {
  if (!u.laurent_vanishes_through(0) || !v.laurent_vanishes_through(0)) {
    throw Error(Fault::SingularAtOrigin,
                "weighted product requires functions vanishing at the origin");
  }
  return integrate_halfline(angle_integrand(u, v, l), grid);
}

Complex inner_angle_exact(const RadialFunction& u, const RadialFunction& v,
                          int l) {
  if (!u.laurent_vanishes_through(0) || !v.laurent_vanishes_through(0)) {
    throw Error(Fault::SingularAtOrigin,
                "weighted product requires functions vanishing at the origin");
  }
  return exact_halfline_integral(angle_integrand(u, v, l));
}

WeightedProductValue integrate_callable(const std::function<double(double)>& f,
                                        const RadialGrid& grid) {
  const int n = static_cast<int>(grid.nodes.size());
  std::vector<double> s(n);
  for (int i = 0; i < n; ++i) s[i] = f(grid.nodes[i]);
  RadialGrid::Sum sum = grid.integrate_samples(s);
  // Covers [r_min, r_max]; a rectangle head accounts for (0, r_min).
  double head = grid.r_min * s[0];
  return {Complex{sum.value + head, 0.0}, sum.error + std::abs(head)};
}

Complex filon_simpson_weighted(const std::vector<Complex>& weighted, double h,
                               Complex theta) {
  const int n = static_cast<int>(weighted.size()) - 1;
  if (n < 2 || n % 2 != 0) {
    throw Error(Fault::Internal, "Filon rule needs an even panel count");
  }
  Complex alpha, beta, gamma;
  if (std::abs(theta) < 0.15) {
    Complex t2 = theta * theta;
    alpha = theta * t2 * (2.0 / 45.0 + t2 * (-2.0 / 315.0 + t2 * (2.0 / 4725.0)));
    beta = 2.0 / 3.0 + t2 * (2.0 / 15.0 + t2 * (-4.0 / 105.0 + t2 * (2.0 / 567.0)));
    gamma = 4.0 / 3.0 + t2 * (-2.0 / 15.0 + t2 * (1.0 / 210.0 + t2 * (-1.0 / 11340.0)));
  } else {
    Complex s = std::sin(theta), c = std::cos(theta);
    Complex t3 = theta * theta * theta;
    alpha = (theta * theta + theta * s * c - 2.0 * s * s) / t3;
    beta = 2.0 * (theta * (1.0 + c * c) - 2.0 * s * c) / t3;
    gamma = 4.0 * (s - theta * c) / t3;
  }
  const Complex i{0.0, 1.0};
  Complex even{0.0, 0.0}, odd{0.0, 0.0};
  for (int j = 0; j <= n; ++j) {
    if (j % 2 == 0) {
      even += weighted[j];
    } else {
      odd += weighted[j];
    }
  }
  const Complex first = weighted.front();
  const Complex last = weighted.back();
  return h * (i * alpha * (first - last) + beta * (even - 0.5 * (first + last)) +
              gamma * odd);
}

Complex filon_simpson(const std::vector<Complex>& samples, double x0, double h,
                      Complex w) {
  const Complex i{0.0, 1.0};
  std::vector<Complex> weighted(samples.size());
  for (size_t j = 0; j < samples.size(); ++j) {
    weighted[j] = samples[j] * std::exp(i * w * (x0 + static_cast<double>(j) * h));
  }
  return filon_simpson_weighted(weighted, h, w * h);
}

}  // namespace radialext
