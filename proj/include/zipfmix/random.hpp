#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "zipfmix/errors.hpp"

namespace zipfmix {

// Seeded source of uniform, exponential, normal, gamma and Poisson variates.
// Every transform below is spelled out (no std::*_distribution), so identical
// seeds give identical sequences on every platform and standard library.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Open interval (0,1); safe to pass through log().
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53;
  }

  double exponential() { return -std::log(uniform()); }

  // Box-Muller, one value per call.
  double normal() {
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    return r * std::cos(6.283185307179586476925287 * uniform());
  }

  // Marsaglia-Tsang squeeze; unit scale.
  double gamma(double shape) {
    if (!(shape > 0.0)) throw DomainError("RandomStream::gamma: shape must be > 0");
    if (shape < 1.0)
      return gamma(shape + 1.0) * std::pow(uniform(), 1.0 / shape);
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / (3.0 * std::sqrt(d));
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  std::uint64_t poisson(double lambda) {
    if (lambda < 0.0) throw DomainError("RandomStream::poisson: lambda must be >= 0");
    if (lambda == 0.0) return 0;
    if (lambda <= 30.0) return poisson_knuth(lambda);
    return poisson_ptrs(lambda);
  }

 private:
  std::uint64_t poisson_knuth(double lambda) {
    const double limit = std::exp(-lambda);
    std::uint64_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }

  // Hoermann's transformed rejection (PTRS), exact for lambda > ~10.
  std::uint64_t poisson_ptrs(double lambda) {
    const double log_lambda = std::log(lambda);
    const double b = 0.931 + 2.53 * std::sqrt(lambda);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
      const double u = uniform() - 0.5;
      const double v = uniform();
      const double us = 0.5 - std::abs(u);
      const double kf = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
      if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
      if (kf < 0.0 || (us < 0.013 && v > us)) continue;
      if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
          kf * log_lambda - lambda - std::lgamma(kf + 1.0))
        return static_cast<std::uint64_t>(kf);
    }
  }

  std::mt19937_64 engine_;
};

}  // namespace zipfmix
