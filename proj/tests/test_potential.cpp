#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include <levscat/errors.hpp>
#include <levscat/potential.hpp>

using namespace levscat;
constexpr double kPi = std::numbers::pi;

TEST_CASE("square well values, edge mean value, support") {
  const auto p = Potential::square_well(3, 4.0, 1.0);
  CHECK(p(0.0) == -4.0);
  CHECK(p(0.999) == -4.0);
  CHECK(p(1.0) == -2.0);  // mean value at the jump
  CHECK(p(1.001) == 0.0);
  CHECK(p.support_radius() == 1.0);
  CHECK(!p.is_zero());
  CHECK(!p.is_smooth());
  CHECK_THROWS_AS(p.derivative(0.5, 1), UnsupportedProfileError);
  CHECK_THROWS_AS(p(-0.1), std::domain_error);
  CHECK(Potential::square_well(3, 0.0, 1.0).is_zero());
}

TEST_CASE("gaussian derivatives match finite differences through order 4") {
  const auto p = Potential::gaussian(3, -4.0, 1.3);
  const double h = 1e-4;
  for (double r : {0.3, 0.9, 2.1}) {
    for (int m = 1; m <= 4; ++m) {
      const double fd =
          (p.derivative(r + h, m - 1) - p.derivative(r - h, m - 1)) / (2 * h);
      CHECK(p.derivative(r, m) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
  CHECK(p(0.0) == -4.0);
  CHECK(p(1.3) == doctest::Approx(-4.0 * std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("poschl_teller profile and derivatives") {
  const auto p = Potential::poschl_teller(1.0);
  CHECK(p.dimension() == 1);
  CHECK(p(0.0) == doctest::Approx(-2.0).epsilon(1e-14));
  const double r = 0.7;
  const double s2 = 1.0 / (std::cosh(r) * std::cosh(r));
  CHECK(p(r) == doctest::Approx(-2.0 * s2).epsilon(1e-14));
  const double h = 1e-5;
  for (int m = 1; m <= 3; ++m) {
    const double fd = (p.derivative(r + h, m - 1) - p.derivative(r - h, m - 1)) / (2 * h);
    CHECK(p.derivative(r, m) == doctest::Approx(fd).epsilon(1e-7));
  }
  CHECK_THROWS_AS(Potential::poschl_teller(0.0), std::domain_error);
}

TEST_CASE("volume moments: 3D square well") {
  const auto p = Potential::square_well(3, 4.0, 1.0);
  CHECK(p.moment_power(1) == doctest::Approx(-16.0 * kPi / 3.0).epsilon(1e-14));
  CHECK(p.moment_power(2) == doctest::Approx(64.0 * kPi / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(p.moment_grad_sq(), UnsupportedProfileError);
}

TEST_CASE("volume moments: Poschl-Teller closed forms") {
  const auto p = Potential::poschl_teller(1.0);
  // Int sech^2 = 2, sech^4 = 4/3, sech^6 = 16/15 over the full line.
  CHECK(p.moment_power(1) == doctest::Approx(-4.0).epsilon(1e-10));
  CHECK(p.moment_power(2) == doctest::Approx(16.0 / 3.0).epsilon(1e-10));
  CHECK(p.moment_power(3) == doctest::Approx(-128.0 / 15.0).epsilon(1e-10));
  // V' = 4 sech^2 tanh, Int V'^2 = 64/15.
  CHECK(p.moment_grad_sq() == doctest::Approx(64.0 / 15.0).epsilon(1e-10));
}

TEST_CASE("volume moments: Gaussian closed forms in every dimension") {
  for (int n = 1; n <= 5; ++n) {
    const double A = -4.0, w = 1.2;
    const auto p = Potential::gaussian(n, A, w);
    for (int q = 1; q <= 3; ++q) {
      const double exact = std::pow(A, q) * std::pow(kPi, 0.5 * n) *
                           std::pow(w / std::sqrt(q), n);
      CHECK(p.moment_power(q) == doctest::Approx(exact).epsilon(1e-10));
    }
    // |grad V|^2 = (2A r / w^2)^2 exp(-2 r^2/w^2); integral = A^2 (pi/2)^{n/2} n w^{n-2}.
    const double grad = A * A * std::pow(kPi / 2.0, 0.5 * n) * n * std::pow(w, n - 2);
    CHECK(p.moment_grad_sq() == doctest::Approx(grad).epsilon(1e-10));
  }
}

TEST_CASE("scaled copies") {
  const auto p = Potential::gaussian(2, -3.0, 1.0).scaled(2.0);
  CHECK(p(0.0) == doctest::Approx(-6.0).epsilon(1e-14));
  const auto w = Potential::square_well(3, 4.0, 1.5).scaled(-0.5);
  CHECK(w(1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(w.support_radius() == 1.5);
}

TEST_CASE("tabulated resampling reproduces the smooth profile") {
  const auto g = Potential::gaussian(3, -2.0, 1.0);
  const auto t = g.to_tabulated(4001);
  for (double r : {0.8, 1.5, 2.3, 3.1}) {
    CHECK(t(r) == doctest::Approx(g(r)).epsilon(1e-8));
    CHECK(t.derivative(r, 1) == doctest::Approx(g.derivative(r, 1)).epsilon(1e-5));
  }
  // pointwise power resampling
  const auto t2 = g.to_tabulated(4001, 2);
  CHECK(t2(1.5) == doctest::Approx(g(1.5) * g(1.5)).epsilon(1e-8));
  CHECK_THROWS_AS(t.derivative(1.0, 3), UnsupportedProfileError);
}

TEST_CASE("tabulated validation") {
  CHECK_THROWS_AS(Potential::tabulated(3, {0.0, 1.0, 2.0}, {1.0, 1.0, 1.0}),
                  std::domain_error);  // too short
  CHECK_THROWS_AS(Potential::tabulated(3, {0.1, 1.0, 2.0, 3.0}, {1.0, 1.0, 1.0, 1.0}),
                  std::domain_error);  // must start at 0
  CHECK_THROWS_AS(Potential::tabulated(3, {0.0, 1.0, 1.0, 3.0}, {1.0, 1.0, 1.0, 1.0}),
                  std::domain_error);  // not increasing
  CHECK(Potential::tabulated(3, {0.0, 1.0, 2.0, 3.0}, {0.0, 0.0, 0.0, 0.0}).is_zero());
}

TEST_CASE("dimension validation") {
  CHECK_THROWS_AS(Potential::square_well(0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(Potential::gaussian(6, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(Potential::square_well(3, 1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(Potential::gaussian(3, 1.0, -1.0), std::domain_error);
}
