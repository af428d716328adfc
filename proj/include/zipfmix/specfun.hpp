#pragma once

#include <cmath>
#include <cstdint>

#include "zipfmix/errors.hpp"
#include "zipfmix/quadrature.hpp"

namespace zipfmix {

namespace detail {

// B_{2k} / (2k)! for k = 1..15, enough for the Euler-Maclaurin tail below.
inline constexpr double kBern2kOver2kFact[15] = {
    8.3333333333333333333e-02,   // B2/2!
    -1.3888888888888888889e-03,  // B4/4!
    3.3068783068783068783e-05,
    -8.2671957671957671958e-07,
    2.0876756987868098979e-08,
    -5.2841901386874931848e-10,
    1.3382536530684678833e-11,
    -3.3896802963225828668e-13,
    8.5860620562778445641e-15,
    -2.1748686985580618730e-16,
    5.5090028283602295152e-18,
    -1.3954464685812523341e-19,
    3.5347070396294674716e-21,
    -8.9535174270375468504e-23,
    2.2679524523376830603e-24,
};

struct ZetaTriple {
  double z = 0.0;   // zeta(a)
  double d1 = 0.0;  // zeta'(a)
  double d2 = 0.0;  // zeta''(a)
};

// Euler-Maclaurin evaluation of zeta(a) for a > 1, differentiated term by
// term in a for the first two derivatives:
//   zeta(a) = sum_{n<N} n^-a + N^{1-a}/(a-1) + N^-a/2
//           + sum_k B_{2k}/(2k)! (a)_{2k-1} N^{-a-2k+1}.
// With N = 24 the correction series converges to machine precision for every
// a in (1, ~40); above that the direct series alone is already exact.
inline ZetaTriple zeta_em(double a) {
  ZetaTriple out;
  if (a >= 40.0) {
    out.z = 1.0;
    for (int n = 2; n <= 8; ++n) {
      const double t = std::pow(n, -a);
      const double ln = std::log(static_cast<double>(n));
      out.z += t;
      out.d1 -= ln * t;
      out.d2 += ln * ln * t;
      if (t < 1e-20) break;
    }
    return out;
  }

  constexpr int N = 24;
  for (int n = 1; n < N; ++n) {
    const double t = std::pow(n, -a);
    const double ln = std::log(static_cast<double>(n));
    out.z += t;
    out.d1 -= ln * t;
    out.d2 += ln * ln * t;
  }

  const double lnN = std::log(static_cast<double>(N));
  const double Nma = std::pow(N, -a);

  // N^{1-a}/(a-1): log-derivative u = ln N + 1/(a-1).
  {
    const double T = Nma * N / (a - 1.0);
    const double u = lnN + 1.0 / (a - 1.0);
    out.z += T;
    out.d1 -= T * u;
    out.d2 += T * (u * u + 1.0 / ((a - 1.0) * (a - 1.0)));
  }

  // N^{-a}/2.
  {
    const double M = 0.5 * Nma;
    out.z += M;
    out.d1 -= lnN * M;
    out.d2 += lnN * lnN * M;
  }

  // Bernoulli corrections. Term k carries the Pochhammer product
  // (a)(a+1)...(a+2k-2); A and A' are the log-derivative and its derivative.
  double poch = a;          // (a)_{1}
  double digamma_sum = 1.0 / a;
  double trigamma_sum = 1.0 / (a * a);
  const double N2 = static_cast<double>(N) * N;
  double Npow = Nma / N;    // N^{-a-2k+1} at k=1
  for (int k = 1; k <= 15; ++k) {
    const double T = kBern2kOver2kFact[k - 1] * poch * Npow;
    const double A = digamma_sum - lnN;
    out.z += T;
    out.d1 += T * A;
    out.d2 += T * (A * A - trigamma_sum);
    if (std::abs(T) < 1e-18 * std::abs(out.z)) break;
    // Advance (a)_{2k-1} -> (a)_{2k+1} and the harmonic sums.
    const double j1 = a + 2.0 * k - 1.0;
    const double j2 = a + 2.0 * k;
    poch *= j1 * j2;
    digamma_sum += 1.0 / j1 + 1.0 / j2;
    trigamma_sum += 1.0 / (j1 * j1) + 1.0 / (j2 * j2);
    Npow /= N2;
  }
  return out;
}

}  // namespace detail

// Riemann zeta on (1, +inf); the parameter space of the distributions below.
inline double riemann_zeta(double alpha) {
  if (!(alpha > 1.0))
    throw DomainError("riemann_zeta: requires alpha > 1, got " + std::to_string(alpha));
  return detail::zeta_em(alpha).z;
}

// d^order/dalpha^order zeta(alpha), order 1 or 2.
inline double zeta_derivative(double alpha, int order) {
  if (!(alpha > 1.0))
    throw DomainError("zeta_derivative: requires alpha > 1, got " + std::to_string(alpha));
  if (order != 1 && order != 2)
    throw DomainError("zeta_derivative: order must be 1 or 2");
  const auto t = detail::zeta_em(alpha);
  return order == 1 ? t.d1 : t.d2;
}

inline double gamma_fn(double alpha) {
  if (!(alpha > 0.0))
    throw DomainError("gamma_fn: requires alpha > 0, got " + std::to_string(alpha));
  return std::tgamma(alpha);
}

inline double log_gamma(double alpha) {
  if (!(alpha > 0.0))
    throw DomainError("log_gamma: requires alpha > 0, got " + std::to_string(alpha));
  return std::lgamma(alpha);
}

namespace detail {

// Power series Li_a(z) = sum z^k / k^a for |z| < 1. Negative z is summed in
// consecutive-term pairs with Kahan compensation so the alternating
// cancellation never amplifies.
inline double polylog_series(double alpha, double z) {
  if (z == 0.0) return 0.0;
  double sum = 0.0, comp = 0.0;
  auto add = [&sum, &comp](double term) {
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };
  if (z > 0.0) {
    double zk = z;
    for (std::uint64_t k = 1; k < 2000000; ++k) {
      const double term = zk * std::pow(static_cast<double>(k), -alpha);
      add(term);
      if (term < 1e-18 * std::abs(sum) && k > 4) break;
      zk *= z;
    }
  } else {
    double zk = z;  // z^(2j-1)
    for (std::uint64_t j = 1; j < 1000000; ++j) {
      const std::uint64_t k = 2 * j - 1;
      const double odd = zk * std::pow(static_cast<double>(k), -alpha);
      const double even = zk * z * std::pow(static_cast<double>(k + 1), -alpha);
      add(odd + even);
      if (std::abs(odd) < 1e-18 * std::abs(sum) && j > 4) break;
      zk *= z * z;
    }
  }
  return sum;
}

}  // namespace detail

// Bose-Einstein integral form of the polylogarithm,
//   Li_a(z) = 1/Gamma(a) \int_0^inf t^{a-1} / (e^t/z - 1) dt,
// valid for every real z < 1 (and z = 1 when a > 1). Written as
// z/Gamma(a) \int t^{a-1}/(e^t - z) dt so the denominator never vanishes.
// The [0,1] piece removes the t^{a-1} kink by substitution; the tail decays
// like e^-t after the knee at t ~ log|z|.
inline double polylog_integral(double alpha, double z,
                               QuadratureConfig cfg = {1e-300, 1e-11, 400}) {
  if (!(alpha > 0.0))
    throw DomainError("polylog_integral: requires alpha > 0");
  if (z > 1.0 || (z == 1.0 && alpha <= 1.0))
    throw DomainError("polylog_integral: requires z < 1 (or z = 1 with alpha > 1)");
  if (z == 0.0) return 0.0;
  if (z == 1.0) return riemann_zeta(alpha);

  auto head = integrate_power_endpoint(
      [z](double t) { return 1.0 / (std::exp(t) - z); }, alpha, 1.0, cfg);
  const double scale = std::max(1.0, std::log1p(std::abs(z))) + alpha;
  auto tail = integrate_semi_infinite(
      [alpha, z](double t) {
        return std::exp((alpha - 1.0) * std::log(t)) / (std::exp(t) - z);
      },
      1.0, scale, cfg);
  const auto whole = combine(head, tail);
  if (!whole.converged)
    throw std::runtime_error("polylog_integral: quadrature did not converge");
  return z * whole.value / gamma_fn(alpha);
}

// Li_a(z) for real z <= 1: series well inside the unit disc, the integral
// form near the boundary and beyond it, zeta at z = 1. The 0.98 cutoff keeps
// the series under ~200 terms.
inline double polylog(double alpha, double z) {
  if (!(alpha > 0.0)) throw DomainError("polylog: requires alpha > 0");
  if (z > 1.0) throw DomainError("polylog: requires z <= 1, got " + std::to_string(z));
  if (z == 1.0) {
    if (alpha <= 1.0) throw DomainError("polylog: z = 1 requires alpha > 1");
    return riemann_zeta(alpha);
  }
  if (std::abs(z) < 0.98) return detail::polylog_series(alpha, z);
  return polylog_integral(alpha, z);
}

}  // namespace zipfmix
