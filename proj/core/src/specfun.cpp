#include "levscat/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace levscat::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

// True for half-odd orders (l + 1/2): only these have trigonometric seeds.
bool is_half_integer(double nu) {
  const double t = 2.0 * nu;
  return std::abs(t - std::round(t)) < 1e-13 && std::llround(t) % 2 != 0;
}

// Upward recurrence u_{v+1} = (2v/x) u_v - u_{v-1} from the trigonometric
// order +-1/2 seeds. Stable for Y at all orders and for J while v <= x.
void riccati_recurrence(double nu, double x, bool bessel_y, double& out,
                        double& out_prev) {
  double f_prev, f;  // orders -1/2 and 1/2
  if (bessel_y) {
    f_prev = std::sin(x);
    f = -std::cos(x);
  } else {
    f_prev = std::cos(x);
    f = std::sin(x);
  }
  int steps = static_cast<int>(std::round(nu - 0.5));
  double v = 0.5;
  for (int i = 0; i < steps; ++i) {
    double f_next = (2.0 * v / x) * f - f_prev;
    f_prev = f;
    f = f_next;
    v += 1.0;
  }
  out = f;
  out_prev = f_prev;
}

double riccati_from_cyl(double nu, double x, bool bessel_y) {
  double c = bessel_y ? boost::math::cyl_neumann(nu, x)
                      : boost::math::cyl_bessel_j(nu, x);
  return std::sqrt(kPi * x / 2.0) * c;
}

}  // namespace

RiccatiPair riccati_bessel(double nu, double x) {
  if (x <= 0.0) throw std::domain_error("riccati_bessel: argument must be positive");
  if (nu < -0.5) throw std::domain_error("riccati_bessel: order must be >= -1/2");

  double j, j_prev, y, y_prev;
  try {
    if (is_half_integer(nu)) {
      riccati_recurrence(nu, x, true, y, y_prev);
      if (nu <= x + 1.0) {
        riccati_recurrence(nu, x, false, j, j_prev);
      } else {
        // Upward J recurrence is unstable past the turning point.
        j = riccati_from_cyl(nu, x, false);
        j_prev = riccati_from_cyl(nu - 1.0, x, false);
      }
    } else {
      j = riccati_from_cyl(nu, x, false);
      j_prev = riccati_from_cyl(nu - 1.0, x, false);
      y = riccati_from_cyl(nu, x, true);
      y_prev = riccati_from_cyl(nu - 1.0, x, true);
    }
  } catch (const std::overflow_error&) {
    throw std::range_error("riccati_bessel: overflow regime");
  }
  if (!std::isfinite(y) || !std::isfinite(j)) {
    throw std::range_error("riccati_bessel: overflow regime");
  }

  // u_v' = u_{v-1} - (2v-1)/(2x) u_v.
  const double a = (2.0 * nu - 1.0) / (2.0 * x);
  return RiccatiPair{j, y, j_prev - a * j, y_prev - a * y};
}

double gamma_reciprocal(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  if (x > 0.5) {
    double g = std::tgamma(x);
    return std::isinf(g) ? 0.0 : 1.0 / g;
  }
  // Reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi.
  return std::tgamma(1.0 - x) * std::sin(kPi * x) / kPi;
}

double sphere_volume(int n) {
  if (n < 1) throw std::domain_error("sphere_volume: dimension must be >= 1");
  return 2.0 * std::pow(kPi, 0.5 * n) * gamma_reciprocal(0.5 * n);
}

double sphere_monomial_integral(const std::vector<int>& alpha) {
  int total = 0;
  for (int a : alpha) {
    if (a < 0) throw std::domain_error("sphere_monomial_integral: negative exponent");
    if (a % 2 != 0) return 0.0;
    total += a;
  }
  const int n = static_cast<int>(alpha.size());
  double num = 2.0;
  for (int a : alpha) num *= std::tgamma(0.5 * (a + 1));
  return num / std::tgamma(0.5 * (n + total));
}

DecayingPair riccati_bessel_k(double nu, double kappa, double r) {
  if (r <= 0.0 || kappa <= 0.0)
    throw std::domain_error("riccati_bessel_k: kappa and r must be positive");
  const double z = kappa * r;
  const double k0 = boost::math::cyl_bessel_k(nu, z);
  const double km = boost::math::cyl_bessel_k(nu - 1.0, z);
  const double kprime = -km - (nu / z) * k0;  // d/dz K_nu
  const double sr = std::sqrt(r);
  return DecayingPair{sr * k0, 0.5 / sr * k0 + sr * kappa * kprime};
}

}  // namespace levscat::specfun
