#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "zipfmix/errors.hpp"

namespace zipfmix {

struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_refinements = 60;
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
};

// Accumulates piecewise results: values and error estimates add, convergence ands.
inline QuadResult combine(const QuadResult& a, const QuadResult& b) {
  return {a.value + b.value, a.error_estimate + b.error_estimate,
          a.converged && b.converged};
}

namespace detail {

// Gauss-Kronrod 7-15 nodes on [-1,1]; column 0 abscissa, 1 Gauss weight, 2 Kronrod weight.
inline constexpr double kGk15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.000000000000000, 0.204432940075298},
    {0.586087235467691, 0.000000000000000, 0.169004726639267},
    {0.864864423359769, 0.000000000000000, 0.104790010322250},
    {0.991455371120813, 0.000000000000000, 0.022935322010529},
};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

}  // namespace detail

// Adaptive Gauss-Kronrod on a finite interval; worst-error-first bisection,
// capped at cfg.max_refinements splits. Non-convergence is reported through
// the flag, never silently. This is the one real engine; the other entry
// points only change variables before calling it.
template <class F>
QuadResult integrate_finite(F&& f, double lower, double upper,
                            QuadratureConfig cfg = {}) {
  if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0) || cfg.max_refinements < 1)
    throw DomainError("integrate: invalid QuadratureConfig");
  if (lower == upper) return {0.0, 0.0, true};

  auto panel = [&f](double a, double b) {
    detail::Panel p{a, b, 0.0, 0.0};
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mid);
    double g7 = detail::kGk15[0][1] * f0;
    double k15 = detail::kGk15[0][2] * f0;
    bool finite = std::isfinite(f0);
    for (int i = 1; i < 8; ++i) {
      const double dx = half * detail::kGk15[i][0];
      const double fi = f(mid + dx) + f(mid - dx);
      finite = finite && std::isfinite(fi);
      g7 += detail::kGk15[i][1] * fi;
      k15 += detail::kGk15[i][2] * fi;
    }
    p.value = k15 * half;
    p.error = finite ? std::abs((k15 - g7) * half)
                     : std::numeric_limits<double>::infinity();
    return p;
  };

  std::priority_queue<detail::Panel> queue;
  queue.push(panel(lower, upper));
  double total_value = queue.top().value;
  double total_error = queue.top().error;

  auto tolerance = [&cfg](double v) {
    return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(v));
  };

  int splits = 0;
  while (total_error > tolerance(total_value) && splits < cfg.max_refinements) {
    const detail::Panel worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    // A panel that cannot be split any further straddles a bad point; stop
    // and let the convergence flag tell the truth.
    if (mid <= worst.a || mid >= worst.b) break;
    queue.pop();
    total_value -= worst.value;
    total_error -= worst.error;
    const detail::Panel left = panel(worst.a, mid);
    const detail::Panel right = panel(mid, worst.b);
    total_value += left.value + right.value;
    total_error += left.error + right.error;
    queue.push(left);
    queue.push(right);
    ++splits;
  }

  QuadResult out;
  out.value = total_value;
  out.error_estimate = total_error;
  out.converged = std::isfinite(total_value) && total_error <= tolerance(total_value);
  return out;
}

// \int_lower^inf f, with the substitution t = lower + scale*u/(1-u), u in (0,1).
// `scale` should match the decay length of f so the mass is not crammed
// against u = 1.
template <class F>
QuadResult integrate_semi_infinite(F&& f, double lower, double scale,
                                   QuadratureConfig cfg = {}) {
  if (!(scale > 0.0)) throw DomainError("integrate_semi_infinite: scale must be > 0");
  auto g = [&f, lower, scale](double u) {
    const double om = 1.0 - u;
    const double t = lower + scale * u / om;
    return f(t) * scale / (om * om);
  };
  return integrate_finite(g, 0.0, 1.0, cfg);
}

// General entry point; upper may be +inf.
template <class F>
QuadResult integrate(F&& f, double lower, double upper, QuadratureConfig cfg = {}) {
  if (std::isinf(upper))
    return integrate_semi_infinite(std::forward<F>(f), lower, 1.0, cfg);
  return integrate_finite(std::forward<F>(f), lower, upper, cfg);
}

// \int_0^c s^{p-1} g(s) ds for p > 0, where g is smooth up to the origin.
// The substitution w = s^p / p turns the integrable endpoint kink into a
// plain integral: \int_0^{c^p/p} g((p w)^{1/p}) dw.
template <class F>
QuadResult integrate_power_endpoint(F&& g, double p, double c,
                                    QuadratureConfig cfg = {}) {
  if (!(p > 0.0)) throw DomainError("integrate_power_endpoint: p must be > 0");
  if (!(c > 0.0)) return {0.0, 0.0, true};
  const double w_max = std::pow(c, p) / p;
  auto h = [&g, p](double w) { return g(std::pow(p * w, 1.0 / p)); };
  return integrate_finite(h, 0.0, w_max, cfg);
}

}  // namespace zipfmix
