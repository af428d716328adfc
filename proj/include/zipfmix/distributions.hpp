#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "zipfmix/errors.hpp"
#include "zipfmix/freq_table.hpp"
#include "zipfmix/random.hpp"
#include "zipfmix/specfun.hpp"

namespace zipfmix {

// ---------------------------------------------------------------------------
// Zipf on {1,2,...}: P(X = x) = x^-alpha / zeta(alpha), alpha > 1.
// ---------------------------------------------------------------------------
struct Zipf {
  double alpha;
  double zeta_alpha;  // cached zeta(alpha)

  explicit Zipf(double a) : alpha(a), zeta_alpha(riemann_zeta(a)) {}

  double log_pmf(std::uint64_t x) const {
    if (x < 1) throw DomainError("Zipf::log_pmf: support starts at 1");
    return -alpha * std::log(static_cast<double>(x)) - std::log(zeta_alpha);
  }

  double pmf(std::uint64_t x) const { return std::exp(log_pmf(x)); }

  double cdf(std::uint64_t x) const {
    if (x < 1) throw DomainError("Zipf::cdf: support starts at 1");
    double acc = 0.0;
    for (std::uint64_t i = 1; i <= x; ++i)
      acc += std::pow(static_cast<double>(i), -alpha);
    return acc / zeta_alpha;
  }

  // G(z) = Li_alpha(z) / zeta(alpha) for real z <= 1.
  double pgf(double z) const {
    if (z > 1.0) throw DomainError("Zipf::pgf: requires z <= 1");
    if (z == 1.0) return 1.0;
    if (z == 0.0) return 0.0;
    return polylog(alpha, z) / zeta_alpha;
  }

  // E[X^k] = zeta(alpha-k)/zeta(alpha); finite iff alpha > k+1.
  double moment(int k) const {
    if (k < 1) throw DomainError("Zipf::moment: k must be >= 1");
    if (!(alpha > k + 1.0))
      throw NonFiniteMomentError("Zipf moment of order " + std::to_string(k) +
                                 " requires alpha > " + std::to_string(k + 1));
    return riemann_zeta(alpha - k) / zeta_alpha;
  }

  double mean() const { return moment(1); }

  double variance() const {
    if (!(alpha > 3.0))
      throw NonFiniteMomentError("Zipf variance requires alpha > 3");
    const double z1 = riemann_zeta(alpha - 1);
    const double z2 = riemann_zeta(alpha - 2);
    return (z2 * zeta_alpha - z1 * z1) / (zeta_alpha * zeta_alpha);
  }
};

// (log P(x2) - log P(x1)) / (log x2 - log x1); equals -alpha identically.
inline double log_pmf_slope(const Zipf& d, std::uint64_t x1, std::uint64_t x2) {
  if (x1 == x2) throw DomainError("log_pmf_slope: x1 and x2 must differ");
  return (d.log_pmf(x2) - d.log_pmf(x1)) /
         (std::log(static_cast<double>(x2)) - std::log(static_cast<double>(x1)));
}

// Exact Zipf sampler: inverse transform over tabulated head probabilities,
// rejection from a continuous Pareto envelope for the tail. Exact at every
// alpha > 1, infinite-mean regimes included.
class ZipfSampler {
 public:
  explicit ZipfSampler(const Zipf& d, std::uint64_t head_size = 10000)
      : alpha_(d.alpha), head_size_(head_size) {
    head_cdf_.reserve(head_size_);
    double acc = 0.0;
    for (std::uint64_t x = 1; x <= head_size_; ++x) {
      acc += std::pow(static_cast<double>(x), -alpha_);
      head_cdf_.push_back(acc);
    }
    total_mass_ = d.zeta_alpha;
    head_mass_ = acc / total_mass_;
    for (auto& c : head_cdf_) c /= total_mass_;
  }

  std::uint64_t draw(RandomStream& rng) const {
    const double u = rng.uniform();
    if (u < head_mass_) {
      const auto it = std::lower_bound(head_cdf_.begin(), head_cdf_.end(), u);
      return static_cast<std::uint64_t>(it - head_cdf_.begin()) + 1;
    }
    // Tail x > head_size. Propose T ~ Pareto(alpha-1) on [N, inf) and round
    // up; P(X = x) under the proposal is proportional to the integral of
    // t^-alpha over [x-1, x], which dominates x^-alpha, so acceptance is
    //   x^-alpha (alpha-1) / ((x-1)^{1-alpha} - x^{1-alpha}).
    const double n = static_cast<double>(head_size_);
    for (;;) {
      const double t = n * std::pow(rng.uniform(), -1.0 / (alpha_ - 1.0));
      if (!(t < 9.0e18)) continue;  // keep within uint64; mass out here is ~0
      const double xf = std::floor(t) + 1.0;
      // (x-1)^{1-a} - x^{1-a} = x^{1-a} expm1((1-a) log1p(-1/x)), stable for
      // huge x where the direct difference cancels.
      const double bin = std::pow(xf, 1.0 - alpha_) *
                         std::expm1((1.0 - alpha_) * std::log1p(-1.0 / xf));
      const double accept =
          std::pow(xf, -alpha_) * (alpha_ - 1.0) / bin;
      if (rng.uniform() < accept) return static_cast<std::uint64_t>(xf);
    }
  }

 private:
  double alpha_;
  std::uint64_t head_size_;
  double total_mass_;
  double head_mass_;
  std::vector<double> head_cdf_;
};

inline std::vector<std::uint64_t> zipf_sample(const Zipf& d, RandomStream& rng,
                                              std::size_t n) {
  if (n < 1) throw DomainError("zipf_sample: n must be >= 1");
  ZipfSampler sampler(d);
  std::vector<std::uint64_t> out(n);
  for (auto& x : out) x = sampler.draw(rng);
  return out;
}

// ---------------------------------------------------------------------------
// Geometric on {1,2,...} in the log-scale parametrization s = -log(1-p).
// ---------------------------------------------------------------------------
struct ShiftedGeometric {
  double s;  // > 0

  explicit ShiftedGeometric(double s_) : s(s_) {
    if (!(s > 0.0)) throw DomainError("ShiftedGeometric: requires s > 0");
  }

  double p() const { return -std::expm1(-s); }  // success probability in (0,1)

  // e^{-s(x-1)} (1 - e^{-s}) == p (1-p)^{x-1}
  double pmf(std::uint64_t x) const {
    if (x < 1) throw DomainError("ShiftedGeometric::pmf: support starts at 1");
    return std::exp(-s * static_cast<double>(x - 1)) * (-std::expm1(-s));
  }

  // (e^s - 1) z / (e^s - z); pole at z = e^s.
  double pgf(double z) const {
    const double es = std::exp(s);
    if (!(z < es)) throw DomainError("ShiftedGeometric::pgf: requires z < e^s");
    return std::expm1(s) * z / (es - z);
  }

  // X = 1 + floor(E/s), E standard exponential.
  std::uint64_t sample(RandomStream& rng) const {
    const double g = std::floor(rng.exponential() / s);
    if (!(g < 9.0e18)) return static_cast<std::uint64_t>(9.0e18);  // unreachable guard
    return 1 + static_cast<std::uint64_t>(g);
  }
};

// ---------------------------------------------------------------------------
// Zero-truncated Poisson; lambda = 0 is the closure point: the unit mass at 1.
// ---------------------------------------------------------------------------

// lambda / (1 - e^-lambda), continuously extended to 1 at lambda = 0.
// Strictly increasing, range [1, inf).
inline double ztp_mean(double lambda) {
  if (lambda < 0.0) throw DomainError("ztp_mean: requires lambda >= 0");
  if (lambda == 0.0) return 1.0;
  return lambda / (-std::expm1(-lambda));
}

struct ZeroTruncatedPoisson {
  double lambda;  // >= 0

  explicit ZeroTruncatedPoisson(double l) : lambda(l) {
    if (lambda < 0.0) throw DomainError("ZeroTruncatedPoisson: requires lambda >= 0");
  }

  double pmf(std::uint64_t x) const {
    if (x < 1) throw DomainError("ZeroTruncatedPoisson::pmf: support starts at 1");
    if (lambda == 0.0) return x == 1 ? 1.0 : 0.0;
    const double lp = -lambda + static_cast<double>(x) * std::log(lambda) -
                      std::lgamma(static_cast<double>(x) + 1.0) -
                      std::log(-std::expm1(-lambda));
    return std::exp(lp);
  }

  // (e^{lambda z} - 1) / (e^lambda - 1); the identity map once lambda = 0.
  double pgf(double z) const {
    if (lambda == 0.0) return z;
    const double lz = lambda * z;
    if (lambda <= 700.0 && lz <= 700.0)
      return std::expm1(lz) / std::expm1(lambda);
    // Large-lambda regimes, written so nothing overflows.
    const double den = -std::expm1(-lambda);  // 1 - e^-lambda
    if (lz <= 700.0) return std::expm1(lz) * std::exp(-lambda) / den;
    return std::exp(lambda * (z - 1.0)) * (-std::expm1(-lz)) / den;
  }

  double mean() const { return ztp_mean(lambda); }

  std::uint64_t sample(RandomStream& rng) const {
    if (lambda == 0.0) return 1;
    if (lambda < 10.0) {
      // Sequential inverse transform on the truncated pmf; O(1 + lambda).
      const double u = rng.uniform();
      double p = lambda * std::exp(-lambda) / (-std::expm1(-lambda));
      double cum = p;
      std::uint64_t x = 1;
      while (u > cum && x < 400) {
        ++x;
        p *= lambda / static_cast<double>(x);
        cum += p;
      }
      return x;
    }
    // Rejection of zeros; P(0) = e^-lambda <= e^-10.
    for (;;) {
      const std::uint64_t k = rng.poisson(lambda);
      if (k > 0) return k;
    }
  }
};

inline std::vector<std::uint64_t> ztp_sample(const ZeroTruncatedPoisson& d,
                                             RandomStream& rng, std::size_t n) {
  if (n < 1) throw DomainError("ztp_sample: n must be >= 1");
  std::vector<std::uint64_t> out(n);
  for (auto& x : out) x = d.sample(rng);
  return out;
}

// ---------------------------------------------------------------------------
// Poisson stopped sum of Zipf variables: draw N ~ Poisson(lambda), return the
// sum of N independent Zipf(alpha) draws (zero when N = 0).
// ---------------------------------------------------------------------------
inline std::vector<std::uint64_t> zipf_pss_sample(double alpha, double lambda,
                                                  RandomStream& rng, std::size_t n) {
  if (!(alpha > 1.0)) throw DomainError("zipf_pss_sample: requires alpha > 1");
  if (!(lambda > 0.0)) throw DomainError("zipf_pss_sample: requires lambda > 0");
  if (n < 1) throw DomainError("zipf_pss_sample: n must be >= 1");
  const Zipf base(alpha);
  const ZipfSampler sampler(base);
  std::vector<std::uint64_t> out(n);
  for (auto& v : out) {
    const std::uint64_t count = rng.poisson(lambda);
    std::uint64_t sum = 0;
    for (std::uint64_t j = 0; j < count; ++j) sum += sampler.draw(rng);
    v = sum;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Maximum likelihood fit of the Zipf exponent from a frequency table.
// ---------------------------------------------------------------------------
struct FitResult {
  double alpha_hat = 0.0;
  double ci_low = 0.0;   // 95% Wald interval, clamped to the parameter space
  double ci_high = 0.0;
  double log_likelihood = 0.0;
  std::uint64_t n = 0;   // number of observations (words)
};

// alpha_hat solves -zeta'(a)/zeta(a) = mean of log x. The left side is
// strictly decreasing on (1, inf), so bracketed bisection on (1+1e-6, 100)
// is robust; it runs to a 1e-10 residual on the moment equation.
inline FitResult fit_zipf_mle(const FreqOfFreqTable& table) {
  table.validate();
  const std::uint64_t n = table.total_words();
  double sum_log = 0.0;
  for (const auto& r : table.rows)
    sum_log += static_cast<double>(r.freq) * std::log(static_cast<double>(r.value));
  const double mean_log = sum_log / static_cast<double>(n);
  if (mean_log <= 0.0)
    throw DegenerateSampleError(
        "fit_zipf_mle: every observation equals 1; alpha_hat diverges");

  auto g = [mean_log](double a) {
    const auto t = detail::zeta_em(a);
    return -t.d1 / t.z - mean_log;
  };

  double lo = 1.0 + 1e-6, hi = 100.0;
  if (g(hi) > 0.0)
    throw DegenerateSampleError("fit_zipf_mle: mean log too small, root beyond 100");
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (std::abs(gm) < 1e-10 || hi - lo < 1e-13) {
      lo = hi = mid;
      break;
    }
    (gm > 0.0 ? lo : hi) = mid;
  }
  const double alpha_hat = 0.5 * (lo + hi);

  const auto t = detail::zeta_em(alpha_hat);
  const double r1 = t.d1 / t.z;
  const double fisher = t.d2 / t.z - r1 * r1;  // Var[log X] > 0
  const double half_width = 1.959963984540054 / std::sqrt(static_cast<double>(n) * fisher);

  FitResult fit;
  fit.alpha_hat = alpha_hat;
  fit.ci_low = std::max(alpha_hat - half_width, 1.0 + 1e-12);
  fit.ci_high = alpha_hat + half_width;
  fit.log_likelihood = -alpha_hat * sum_log - static_cast<double>(n) * std::log(t.z);
  fit.n = n;
  return fit;
}

}  // namespace zipfmix
