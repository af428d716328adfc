#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "zipfmix/distributions.hpp"
#include "zipfmix/errors.hpp"
#include "zipfmix/freq_table.hpp"

namespace zipfmix {

// Moment-matching inversion: the unique lambda >= 0 with
// lambda/(1 - e^-lambda) = mean. mean = 1 maps to lambda = 0 (the degenerate
// ZTP). Since the mean exceeds lambda by e^-lambda-ish, the root always lies
// in [max(0, mean-1), mean]; bisection brackets it, Newton polishes.
inline double lambda_from_mean(double mean) {
  if (!(mean >= 1.0))
    throw DomainError("lambda_from_mean: ZTP mean is always >= 1, got " +
                      std::to_string(mean));
  if (mean == 1.0) return 0.0;
  if (mean > 50.0) {
    // One fixed-point step from lambda = mean is exact in double here:
    // the remaining correction is of order mean^2 e^{-2 mean} < 1e-40.
    return mean * (-std::expm1(-mean));  // == mean (1 - e^-mean)
  }
  double lo = std::max(0.0, mean - 1.0), hi = mean;
  for (int i = 0; i < 40; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ztp_mean(mid) < mean ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 8; ++i) {
    const double em = -std::expm1(-x);  // 1 - e^-x
    const double g = x / em - mean;
    if (g == 0.0) break;
    const double dg = (em - x * std::exp(-x)) / (em * em);
    const double step = g / dg;
    const double next = x - step;
    x = (next > lo && next < hi) ? next : 0.5 * (lo + hi);
    if (std::abs(g) < 1e-13 * std::max(1.0, mean)) break;
  }
  return x;
}

enum class Weighting {
  PerWord,       // each word is one observation; weight = n_i
  PerFrequency,  // each distinct frequency is one observation; weight = 1
};

// The estimated ZTP rates with their multiplicities; sorted, distinct.
struct LambdaSequence {
  struct Entry {
    double lambda = 0.0;
    std::uint64_t weight = 0;
  };

  std::vector<Entry> entries;
  std::uint64_t total_weight = 0;

  void validate() const {
    if (entries.empty()) throw InvariantViolation("lambda sequence: empty");
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].weight < 1)
        throw InvariantViolation("lambda sequence: zero weight");
      if (i > 0 && !(entries[i - 1].lambda < entries[i].lambda))
        throw InvariantViolation("lambda sequence: lambdas must be distinct ascending");
      sum += entries[i].weight;
    }
    if (sum != total_weight)
      throw InvariantViolation("lambda sequence: total_weight mismatch");
  }

  // Convenience for raw draws: sorts and merges exact ties.
  static LambdaSequence from_points(std::vector<double> points) {
    if (points.empty()) throw EmptyInputError("lambda sequence: no points");
    std::sort(points.begin(), points.end());
    LambdaSequence seq;
    for (const double p : points) {
      if (!seq.entries.empty() && seq.entries.back().lambda == p)
        ++seq.entries.back().weight;
      else
        seq.entries.push_back({p, 1});
    }
    seq.total_weight = points.size();
    return seq;
  }
};

// One rate per frequency row: lambda_i solves ztp_mean(lambda) = i, carrying
// either the word count n_i or a unit weight depending on the convention.
inline LambdaSequence lambda_sequence_from_table(const FreqOfFreqTable& table,
                                                 Weighting weighting = Weighting::PerWord) {
  table.validate();
  LambdaSequence seq;
  seq.entries.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    const double lambda = lambda_from_mean(static_cast<double>(row.value));
    const std::uint64_t w = weighting == Weighting::PerWord ? row.freq : 1;
    seq.entries.push_back({lambda, w});
    seq.total_weight += w;
  }
  seq.validate();
  return seq;
}

}  // namespace zipfmix
