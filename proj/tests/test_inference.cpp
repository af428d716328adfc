#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "test_support.hpp"
#include "zipfmix/inference.hpp"

using namespace zipfmix;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
FreqOfFreqTable chapter1_table() {
  FreqOfFreqTable t;
  t.rows = {{1, 555}, {2, 75}, {3, 31}, {4, 15}, {5, 6}, {6, 10},
            {7, 4},   {9, 1},  {10, 1}, {11, 1}, {12, 1}, {13, 1}};
  return t;
}

// Plain bisection on the monotone mean map, fully independent of the solver.
double bisect_lambda(double mean) {
  double lo = 0.0, hi = mean;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ztp_mean(mid) < mean ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}
}  // namespace

TEST_CASE("lambda_from_mean: boundary and anchors", "[inference]") {
  REQUIRE(lambda_from_mean(1.0) == 0.0);
  REQUIRE_THAT(lambda_from_mean(2.0), WithinRel(1.5936242600400401, 1e-10));
  // At mean 20 the correction 20 e^-20 is ~4e-8; the root still satisfies
  // the moment equation to 1e-10.
  const double l20 = lambda_from_mean(20.0);
  REQUIRE_THAT(l20, WithinAbs(20.0 - 20.0 * std::exp(-20.0), 1e-10));
  REQUIRE_THAT(ztp_mean(l20), WithinAbs(20.0, 1e-10));
  REQUIRE_THROWS_AS(lambda_from_mean(0.5), DomainError);
  REQUIRE_THROWS_AS(lambda_from_mean(0.999999), DomainError);
}

TEST_CASE("lambda_from_mean agrees with blind bisection", "[inference]") {
  for (const double m : {1.1, 2.0, 3.7, 9.0, 24.5}) {
    REQUIRE_THAT(lambda_from_mean(m), WithinAbs(bisect_lambda(m), 1e-9));
  }
}

TEST_CASE("mean/rate round trip on a log grid", "[inference]") {
  for (int k = 0; k <= 32; ++k) {
    const double m = std::pow(10.0, static_cast<double>(k) / 8.0);  // 1 .. 1e4
    const double l = lambda_from_mean(m);
    REQUIRE(std::abs(ztp_mean(l) - m) <= 1e-10);
  }
  // Just above the boundary.
  const double m = 1.0 + 1e-9;
  REQUIRE(std::abs(ztp_mean(lambda_from_mean(m)) - m) <= 1e-10);
}

TEST_CASE("rates are strictly increasing in the frequency value", "[inference]") {
  double prev = -1.0;
  for (int i = 1; i <= 100; ++i) {
    const double l = lambda_from_mean(static_cast<double>(i));
    REQUIRE(l > prev);
    prev = l;
  }
  REQUIRE(lambda_from_mean(1.0) == 0.0);
}

TEST_CASE("lambda sequence from the chapter fixture", "[inference]") {
  const auto table = chapter1_table();
  const auto per_word = lambda_sequence_from_table(table, Weighting::PerWord);
  REQUIRE(per_word.entries.size() == 12);
  REQUIRE(per_word.entries.front().lambda == 0.0);
  REQUIRE(per_word.entries.front().weight == 555);
  REQUIRE(per_word.total_weight == 701);
  REQUIRE(per_word.total_weight == table.total_words());

  const auto per_freq = lambda_sequence_from_table(table, Weighting::PerFrequency);
  REQUIRE(per_freq.total_weight == 12);
  for (const auto& e : per_freq.entries) REQUIRE(e.weight == 1);
}

TEST_CASE("lambda sequence small cases", "[inference]") {
  FreqOfFreqTable ones;
  ones.rows = {{1, 10}};
  const auto seq = lambda_sequence_from_table(ones);
  REQUIRE(seq.entries.size() == 1);
  REQUIRE(seq.entries[0].lambda == 0.0);
  REQUIRE(seq.entries[0].weight == 10);

  FreqOfFreqTable twos;
  twos.rows = {{2, 3}};
  const auto seq2 = lambda_sequence_from_table(twos);
  REQUIRE_THAT(seq2.entries[0].lambda, WithinRel(1.5936242600400401, 1e-10));
  REQUIRE(seq2.entries[0].weight == 3);
}

TEST_CASE("lambda sequence invariants are enforced", "[inference]") {
  LambdaSequence bad;
  bad.entries = {{0.5, 1}, {0.5, 2}};
  bad.total_weight = 3;
  REQUIRE_THROWS_AS(bad.validate(), InvariantViolation);
  LambdaSequence mismatch;
  mismatch.entries = {{0.5, 1}};
  mismatch.total_weight = 2;
  REQUIRE_THROWS_AS(mismatch.validate(), InvariantViolation);
  REQUIRE_THROWS_AS(LambdaSequence::from_points({}), EmptyInputError);

  const auto merged = LambdaSequence::from_points({1.0, 0.5, 1.0, 2.0, 0.5, 0.5});
  REQUIRE(merged.entries.size() == 3);
  REQUIRE(merged.entries[0].weight == 3);
  REQUIRE(merged.entries[1].weight == 2);
  REQUIRE(merged.total_weight == 6);
}
