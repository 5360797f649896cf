#ifndef LEVSCAT_SPECFUN_HPP
#define LEVSCAT_SPECFUN_HPP

#include <vector>

namespace levscat::specfun {

/// Riccati-Bessel pair at order nu and argument x:
///   j = sqrt(pi x / 2) J_nu(x),  y = sqrt(pi x / 2) Y_nu(x)
/// together with their x-derivatives. Wronskian j*yp - jp*y == 1.
struct RiccatiPair {
  double j;
  double y;
  double jp;
  double yp;
};

/// Free radial solutions for phase matching. nu >= -1/2, x > 0.
/// Half-integer orders go through the closed-form trig recurrence; general
/// orders through the library Bessel backend.
RiccatiPair riccati_bessel(double nu, double x);

/// Entire function 1/Gamma(x); exactly zero at x = 0, -1, -2, ...
double gamma_reciprocal(double x);

/// Vol(S^{n-1}) = 2 pi^{n/2} / Gamma(n/2).
double sphere_volume(int n);

/// Integral of omega^alpha over S^{n-1} (zero when any alpha_j is odd).
double sphere_monomial_integral(const std::vector<int>& alpha);

/// Modified-Bessel based decaying exterior solution for negative energies:
/// value and r-derivative of sqrt(r) K_nu(kappa r).
struct DecayingPair {
  double u;
  double up;
};
DecayingPair riccati_bessel_k(double nu, double kappa, double r);

}  // namespace levscat::specfun

#endif
