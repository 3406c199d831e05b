#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "euscat/quadrature.hpp"

using namespace euscat;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  QuadRule rule = gauss_legendre(8);
  // degree 15 is the highest exact degree for n = 8
  double val = rule.apply([](double x) { return std::pow(x, 14); });
  CHECK(val == doctest::Approx(2.0 / 15.0).epsilon(1e-14));
  double odd = rule.apply([](double x) { return std::pow(x, 15); });
  CHECK(std::abs(odd) < 1e-16);
}

TEST_CASE("gauss-legendre weights sum to the interval length") {
  for (int n : {2, 5, 16, 40, 64}) {
    QuadRule rule = gauss_legendre(n);
    CHECK(rule.w.sum() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(rule.x.minCoeff() > -1.0);
    CHECK(rule.x.maxCoeff() < 1.0);
  }
}

TEST_CASE("mapped rule integrates exp on [0, 2]") {
  QuadRule rule = mapped_rule(gauss_legendre(24), 0.0, 2.0);
  double val = rule.apply([](double x) { return std::exp(x); });
  CHECK(val == doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("composite rule handles multiple panels") {
  QuadRule rule = composite_gauss_legendre({0.0, 0.5, 1.0, 3.0}, 16);
  double val = rule.apply([](double x) { return x * std::exp(-x); });
  double exact = 1.0 - 4.0 * std::exp(-3.0);
  CHECK(val == doctest::Approx(exact).epsilon(1e-13));
  CHECK_THROWS(composite_gauss_legendre({1.0, 0.5}, 8));
}

TEST_CASE("gauss-hermite integrates gaussian moments") {
  QuadRule rule = gauss_hermite(32);
  double m0 = rule.apply([](double) { return 1.0; });
  CHECK(m0 == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
  double m2 = rule.apply([](double t) { return t * t; });
  CHECK(m2 == doctest::Approx(0.5 * std::sqrt(kPi)).epsilon(1e-13));
  // oscillatory weight: int e^{-t^2} cos(w t) = sqrt(pi) e^{-w^2/4}
  double w = 5.0;
  double osc = rule.apply([&](double t) { return std::cos(w * t); });
  CHECK(osc ==
        doctest::Approx(std::sqrt(kPi) * std::exp(-w * w / 4.0)).epsilon(1e-10));
}

TEST_CASE("adaptive integrator reaches tight tolerance") {
  double val = integrate_adaptive(
      [](double x) { return x * x * std::exp(-x * x); }, 0.0, 8.0, 1e-13);
  // int_0^inf x^2 e^{-x^2} = sqrt(pi)/4, tail beyond 8 is ~1e-29
  CHECK(val == doctest::Approx(std::sqrt(kPi) / 4.0).epsilon(1e-12));

  Complex cval = integrate_adaptive(
      [](double x) { return std::exp(Complex(0.0, 3.0) * x); }, 0.0, 1.0,
      1e-13);
  Complex exact = (std::exp(Complex(0.0, 3.0)) - 1.0) / Complex(0.0, 3.0);
  CHECK(std::abs(cval - exact) < 1e-13);
}

TEST_CASE("adaptive integrator resolves a narrow lorentzian") {
  double eps = 1e-4;
  double val = integrate_adaptive(
      [&](double x) { return eps / (x * x + eps * eps); }, -1.0, 1.0, 1e-12);
  double exact = 2.0 * std::atan(1.0 / eps);
  CHECK(val == doctest::Approx(exact).epsilon(1e-11));
}
