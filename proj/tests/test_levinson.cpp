#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include <levscat/errors.hpp>
#include <levscat/levinson.hpp>

using namespace levscat;
constexpr double kPi = std::numbers::pi;

TEST_CASE("resonance correction table") {
  ResonanceReport r;
  r.n = 1;
  CHECK(n_res(r, 1) == -0.5);  // generic 1D: threshold phase pi (N - 1/2)
  r.present = true;
  r.type = 's';
  r.count = 1;
  CHECK(n_res(r, 1) == 0.0);

  ResonanceReport r2;
  r2.n = 2;
  CHECK(n_res(r2, 2) == 0.0);
  r2.present = true;
  r2.type = 'p';
  r2.count = 2;
  CHECK(n_res(r2, 2) == 2.0);
  r2.type = 's';  // s-resonances do not enter in n = 2
  CHECK(n_res(r2, 2) == 0.0);

  ResonanceReport r3;
  r3.n = 3;
  CHECK(n_res(r3, 3) == 0.0);
  r3.present = true;
  r3.type = 's';
  r3.count = 1;
  CHECK(n_res(r3, 3) == 0.5);

  ResonanceReport r4;
  r4.n = 4;
  r4.present = true;
  r4.type = 's';
  r4.count = 1;
  CHECK(n_res(r4, 4) == 1.0);

  ResonanceReport r5;
  r5.n = 5;
  CHECK(n_res(r5, 5) == 0.0);
  CHECK_THROWS_AS(n_res(r5, 3), std::invalid_argument);
}

TEST_CASE("free potential closes the identity exactly in every dimension") {
  const SolverSettings s;
  for (int n = 1; n <= 5; ++n) {
    const auto rep = verify_levinson(Potential::square_well(n, 0.0, 1.0),
                                     GridSpec{1e-3, 10.0, 20}, s);
    CHECK(rep.N == 0);
    CHECK(rep.N_res == 0.0);
    CHECK(rep.integral == 0.0);
    CHECK(rep.beta_n == 0.0);
    CHECK(rep.residual == 0.0);
    for (double x : rep.profile.xi) CHECK(x == 0.0);
    for (double a : rep.asymptotics.a) CHECK(a == 0.0);
  }
}

TEST_CASE("Poschl-Teller: the exactly solvable 1D report") {
  const SolverSettings s;
  const auto rep = verify_levinson(Potential::poschl_teller(1.0),
                                   GridSpec{1e-3, 20.0, 100}, s);
  CHECK(rep.n == 1);
  CHECK(rep.N == 1);
  REQUIRE(rep.eigenvalues_weighted.size() == 1);
  CHECK(rep.eigenvalues_weighted[0] == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(rep.resonance.present);
  CHECK(rep.N_res == 0.0);
  CHECK(rep.beta_n == 0.0);
  CHECK(rep.integral == doctest::Approx(-1.0).epsilon(2e-3));
  CHECK(rep.residual < 2e-3);
  CHECK(rep.xi_zero_plus.predicted == -1.0);
  CHECK(rep.xi_zero_plus.measured == doctest::Approx(-1.0).epsilon(2e-3));
  CHECK(rep.xi_zero_plus.low_confidence);  // resonant threshold behaviour
}

TEST_CASE("1D square well: generic case with the negative half correction") {
  const SolverSettings s;
  const auto rep = verify_levinson(Potential::square_well(1, 2.0, 1.0),
                                   GridSpec{1e-3, 40.0, 100}, s);
  CHECK(rep.N == 1);
  CHECK(!rep.resonance.present);
  CHECK(rep.N_res == -0.5);
  CHECK(rep.integral == doctest::Approx(-0.5).epsilon(2e-3));
  CHECK(rep.residual < 1e-3);
  CHECK(rep.xi_zero_plus.measured == doctest::Approx(-0.5).epsilon(5e-3));
  CHECK(!rep.xi_zero_plus.low_confidence);
}

TEST_CASE("levinson_integral rejects mismatched dimensions") {
  SpectralShiftProfile p;
  p.n = 2;
  asym::AsymptoticData d;
  d.n = 3;
  CHECK_THROWS_AS(levinson_integral(p, d), std::invalid_argument);
}

TEST_CASE("non-integrable tail is refused") {
  // synthetic profile with xi' ~ -lambda^{-1/2}: integrand phi ~ lambda^{-1/2}
  SpectralShiftProfile p;
  p.n = 1;
  for (int i = 0; i <= 200; ++i) {
    const double lam = std::pow(10.0, -2.0 + 4.0 * i / 200.0);
    p.lambda.push_back(lam);
    p.xi.push_back(2.0 * std::sqrt(lam));
    p.xi_prime.push_back(-1.0 / std::sqrt(lam));  // deliberately inconsistent sign
  }
  asym::AsymptoticData d;
  d.n = 1;
  CHECK_THROWS_AS(levinson_integral(p, d), TailError);
}

TEST_CASE("heat trace check: Poschl-Teller reaches the j = 4 remainder order") {
  const SolverSettings s;
  const auto rep = verify_levinson(Potential::poschl_teller(1.0),
                                   GridSpec{1e-3, 20.0, 200}, s);
  const auto hc = heat_trace_check(rep, {0.5, 0.2, 0.1, 0.05});
  REQUIRE(hc.rows.size() == 4);
  // remainder after three expansion terms: t^{4 - n/2} = t^{3.5}
  CHECK(std::abs(hc.fitted_order - 3.5) < 0.5);
  for (const auto& row : hc.rows) CHECK(row.diff < 0.05);
  CHECK_THROWS_AS(heat_trace_check(rep, {0.0}), std::domain_error);
  CHECK_THROWS_AS(heat_trace_check(rep, {-1.0}), std::domain_error);
}

TEST_CASE("high energy spectral shift residual decays") {
  const SolverSettings s;
  const auto rep = verify_levinson(Potential::gaussian(3, -2.0, 1.0),
                                   GridSpec{1e-3, 20.0, 100}, s);
  const auto he = high_energy_ssf_check(rep.profile, rep.asymptotics);
  // -2 pi xi - Im P_3 = O(lambda^{-1/2}) for n = 3
  CHECK(he.fitted_exponent > -0.7);
  CHECK(he.fitted_exponent < -0.3);
  CHECK(he.max_residual < 0.05);
}
