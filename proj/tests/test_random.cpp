#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "test_support.hpp"
#include "zipfmix/random.hpp"

using namespace zipfmix;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("identical seeds give identical draw sequences", "[random]") {
  RandomStream a(12345), b(12345);
  for (int i = 0; i < 200; ++i) REQUIRE(a.uniform() == b.uniform());
  for (int i = 0; i < 200; ++i) REQUIRE(a.exponential() == b.exponential());
  for (int i = 0; i < 200; ++i) REQUIRE(a.gamma(2.5) == b.gamma(2.5));
  for (int i = 0; i < 200; ++i) REQUIRE(a.poisson(7.0) == b.poisson(7.0));
  for (int i = 0; i < 200; ++i) REQUIRE(a.poisson(80.0) == b.poisson(80.0));
}

TEST_CASE("uniform stays inside the open unit interval", "[random]") {
  RandomStream rng(99);
  double mn = 1.0, mx = 0.0, sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    mn = std::min(mn, u);
    mx = std::max(mx, u);
    sum += u;
  }
  REQUIRE(mn > 0.0);
  REQUIRE(mx < 1.0);
  REQUIRE_THAT(sum / n, WithinAbs(0.5, 4.0 / std::sqrt(12.0 * n)));
}

TEST_CASE("exponential and normal moments", "[random]") {
  RandomStream rng(7);
  const int n = 400000;
  std::vector<double> es(n), ns(n);
  for (auto& e : es) e = rng.exponential();
  for (auto& v : ns) v = rng.normal();
  const auto em = oracle::mean_se(es);
  REQUIRE_THAT(em.mean, WithinAbs(1.0, 4.0 * em.se));
  const auto nm = oracle::mean_se(ns);
  REQUIRE_THAT(nm.mean, WithinAbs(0.0, 4.0 * nm.se));
  double ss = 0.0;
  for (const double v : ns) ss += v * v;
  REQUIRE_THAT(ss / n, WithinAbs(1.0, 0.02));
}

TEST_CASE("gamma variates hit their first two moments", "[random]") {
  RandomStream rng(42);
  for (const double shape : {0.5, 1.0, 2.0, 3.5}) {
    const int n = 300000;
    std::vector<double> xs(n);
    for (auto& x : xs) x = rng.gamma(shape);
    const auto m = oracle::mean_se(xs);
    REQUIRE_THAT(m.mean, WithinAbs(shape, 4.5 * m.se));
    double ss = 0.0;
    for (const double x : xs) ss += (x - shape) * (x - shape);
    REQUIRE_THAT(ss / n, WithinRel(shape, 0.05));
  }
  REQUIRE_THROWS_AS(rng.gamma(0.0), DomainError);
}

TEST_CASE("poisson variates across both algorithm branches", "[random]") {
  RandomStream rng(2024);
  REQUIRE(rng.poisson(0.0) == 0);
  for (const double lambda : {0.4, 3.0, 25.0, 80.0, 400.0}) {
    const int n = 200000;
    std::vector<std::uint64_t> ks(n);
    for (auto& k : ks) k = rng.poisson(lambda);
    const auto m = oracle::mean_se(ks);
    REQUIRE_THAT(m.mean, WithinAbs(lambda, 4.5 * m.se));
    double ss = 0.0;
    for (const auto k : ks) {
      const double d = static_cast<double>(k) - lambda;
      ss += d * d;
    }
    REQUIRE_THAT(ss / n, WithinRel(lambda, 0.05));
  }
  REQUIRE_THROWS_AS(rng.poisson(-1.0), DomainError);
}
