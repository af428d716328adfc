#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "zipfmix/quadrature.hpp"
#include "zipfmix/specfun.hpp"

using namespace zipfmix;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("unit exponential integrates to one", "[quadrature]") {
  const auto r = integrate([](double t) { return std::exp(-t); }, 0.0, kInf);
  REQUIRE(r.converged);
  REQUIRE_THAT(r.value, WithinRel(1.0, 1e-10));
  REQUIRE(r.error_estimate <= std::max(1e-12, 1e-10 * std::abs(r.value)));
}

TEST_CASE("gamma integral identity at alpha = 3.5", "[quadrature]") {
  const double a = 3.5;
  const auto r = integrate(
      [a](double t) { return std::pow(t, a - 1.0) * std::exp(-t); }, 0.0, kInf,
      {1e-14, 1e-12, 500});
  REQUIRE(r.converged);
  REQUIRE_THAT(r.value, WithinRel(gamma_fn(a), 1e-10));
}

TEST_CASE("Bose-Einstein integral matches the defining series", "[quadrature]") {
  // \int_0^inf t^{a-1}/(e^t/z - 1) dt = Gamma(a) Li_a(z) at a = 2, z = 0.5.
  const double a = 2.0, z = 0.5;
  const auto r = integrate(
      [a, z](double t) { return std::pow(t, a - 1.0) / (std::exp(t) / z - 1.0); },
      0.0, kInf, {1e-14, 1e-12, 500});
  REQUIRE(r.converged);
  double series = 0.0;
  for (int k = 60; k >= 1; --k) series += std::pow(z, k) / (k * k);
  REQUIRE_THAT(r.value, WithinRel(gamma_fn(a) * series, 1e-10));
}

TEST_CASE("finite intervals and orientation", "[quadrature]") {
  const auto r = integrate([](double t) { return t * t; }, 0.0, 2.0);
  REQUIRE(r.converged);
  REQUIRE_THAT(r.value, WithinRel(8.0 / 3.0, 1e-13));
  const auto zero = integrate([](double t) { return t; }, 1.0, 1.0);
  REQUIRE(zero.converged);
  REQUIRE(zero.value == 0.0);
}

TEST_CASE("unreachable tolerance is reported, not silenced", "[quadrature]") {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-30;
  cfg.rel_tol = 1e-30;
  cfg.max_refinements = 12;
  const auto r = integrate([](double t) { return std::cos(20.0 * t * t); }, 0.0, 6.0, cfg);
  REQUIRE_FALSE(r.converged);
}

TEST_CASE("invalid config is rejected", "[quadrature]") {
  QuadratureConfig bad;
  bad.max_refinements = 0;
  REQUIRE_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, bad), DomainError);
}

TEST_CASE("power-endpoint substitution absorbs integrable kinks", "[quadrature]") {
  // \int_0^1 s^{-1/2} ds = 2.
  const auto flat = integrate_power_endpoint([](double) { return 1.0; }, 0.5, 1.0);
  REQUIRE(flat.converged);
  REQUIRE_THAT(flat.value, WithinRel(2.0, 1e-12));

  // \int_0^1 s^{p-1} e^s ds = sum_n 1/(n! (n+p)), here p = 0.1.
  const double p = 0.1;
  double oracle = 0.0, fact = 1.0;
  for (int n = 0; n <= 25; ++n) {
    oracle += 1.0 / (fact * (n + p));
    fact *= (n + 1);
  }
  const auto r = integrate_power_endpoint([](double s) { return std::exp(s); }, p, 1.0);
  REQUIRE(r.converged);
  REQUIRE_THAT(r.value, WithinRel(oracle, 1e-10));
}

TEST_CASE("converged results respect the config tolerances", "[quadrature]") {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-9;
  cfg.rel_tol = 1e-8;
  const auto r = integrate([](double t) { return std::sin(t); }, 0.0, 3.141592653589793, cfg);
  REQUIRE(r.converged);
  REQUIRE(r.error_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value)));
  REQUIRE_THAT(r.value, WithinRel(2.0, 1e-8));
}
