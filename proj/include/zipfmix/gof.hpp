#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

#include "zipfmix/errors.hpp"
#include "zipfmix/inference.hpp"

namespace zipfmix {

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::uint64_t n = 0;  // effective sample size: the total weight
};

// One-sample two-sided KS distance between the weighted empirical CDF and a
// continuous CDF F: ties collapse into single jumps, and both sides of each
// jump are compared, D = max_x max(Fhat(x) - F(x), F(x) - Fhat(x-)).
inline double ks_statistic(const LambdaSequence& sample,
                           const std::function<double(double)>& cdf) {
  sample.validate();
  const double n = static_cast<double>(sample.total_weight);
  double d = 0.0;
  double fhat_prev = 0.0;
  std::uint64_t cum = 0;
  for (const auto& e : sample.entries) {
    cum += e.weight;
    const double fhat = static_cast<double>(cum) / n;
    const double f = cdf(e.lambda);
    d = std::max(d, std::max(fhat - f, f - fhat_prev));
    fhat_prev = fhat;
  }
  return d;
}

// Asymptotic two-sided p-value, p = 2 sum_k (-1)^{k-1} e^{-2 k^2 n d^2},
// truncated once terms drop below 1e-12 and clamped to [0,1]. Below x = 1
// (x = sqrt(n) d) the alternating series loses all precision, so the Jacobi
// dual of the same function is evaluated instead:
//   p = 1 - sqrt(2 pi)/x * sum_k e^{-(2k-1)^2 pi^2 / (8 x^2)}.
inline double ks_pvalue(double d, std::uint64_t n) {
  if (n < 1) throw DomainError("ks_pvalue: requires n >= 1");
  if (!(d >= 0.0) || d > 1.0) throw DomainError("ks_pvalue: requires d in [0,1]");
  if (d == 0.0) return 1.0;
  const double x = std::sqrt(static_cast<double>(n)) * d;
  if (x < 1.0) {
    constexpr double kPiSqOver8 = 1.2337005501361697;  // pi^2/8
    constexpr double kSqrt2Pi = 2.5066282746310002;
    const double a = kPiSqOver8 / (x * x);
    double sum = 0.0;
    for (int k = 1; k < 40; ++k) {
      const double term = std::exp(-static_cast<double>(2 * k - 1) * (2 * k - 1) * a);
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    const double p = 1.0 - kSqrt2Pi / x * sum;
    return std::min(1.0, std::max(0.0, p));
  }
  const double t = x * x;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k < 2000000; ++k) {
    const double term = std::exp(-2.0 * static_cast<double>(k) * k * t);
    sum += sign * term;
    if (term < 1e-12) break;
    sign = -sign;
  }
  const double p = 2.0 * sum;
  return std::min(1.0, std::max(0.0, p));
}

inline KsResult ks_test(const LambdaSequence& sample,
                        const std::function<double(double)>& cdf) {
  KsResult out;
  out.statistic = ks_statistic(sample, cdf);
  out.n = sample.total_weight;
  out.p_value = ks_pvalue(out.statistic, out.n);
  return out;
}

}  // namespace zipfmix
