#ifndef LEVSCAT_ASYMPTOTICS_HPP
#define LEVSCAT_ASYMPTOTICS_HPP

#include <boost/rational.hpp>
#include <complex>
#include <map>
#include <vector>

#include "levscat/potential.hpp"

namespace levscat::asym {

using Rational = boost::rational<long long>;

/// C_l(k) = (|k|+l)! / (k_1! ... k_l! (k_1+1)(k_1+k_2+2)...(|k|+l)),
/// exact rational arithmetic. The empty multi-index gives 1.
Rational c_coefficient(const std::vector<int>& k);

/// One radially-symbolic coefficient term q * x^beta * r^s * prod V^{(d_i)}(r).
struct RadialTerm {
  Rational q;
  std::vector<int> beta;  // Cartesian monomial exponents, length n
  int s;                  // additional (possibly negative) power of r
  std::vector<int> d;     // radial derivative orders of the V factors, sorted
};

/// Differential operator sum_r g_r(x) d^r with radially-symbolic coefficients,
/// keyed by the derivative multi-index r (length n).
struct DiffOp {
  int n;
  std::map<std::vector<int>, std::vector<RadialTerm>> terms;
};

/// Normal-ordered operator product V^{(k_1)} ... V^{(k_m)} where V^{(c)} is the
/// c-fold iterated commutator of -Laplacian with multiplication by V, expanded
/// with [H0, g d^r] = (-Delta g) d^r - 2 sum_j (d_j g) d_j d^r.
DiffOp commutator_expand(int n, const std::vector<int>& k);

/// Heat coefficient a_j(n,V) from the general combinatorial generator
/// (iterated-commutator sum over (m, k, r) with m+|k|+1-|r|/2 = j); j <= 3.
double heat_coefficient_general(const Potential& pot, int j);

/// The same coefficient from the closed forms in the volume integrals of V,
/// V^2 and V^3 + |grad V|^2 / 2; j in {1,2,3}.
double heat_coefficient_closed(const Potential& pot, int j);

/// High-energy data: heat coefficients a_j, the constant beta_n, and the
/// imaginary parts of the polynomial coefficients of p_n and P_n
/// (both polynomials are purely imaginary for real V):
///   p_n(lambda) = i * sum_j c_im[j-1] lambda^{n/2 - j - 1}
///   P_n(lambda) = i * (2 pi beta_n + sum_j C_im[j-1] lambda^{n/2 - j})
struct AsymptoticData {
  int n = 0;
  std::vector<double> a;     // a_1 .. a_J
  double beta_n = 0.0;
  std::vector<double> c_im;  // 2 pi a_j / Gamma(n/2 - j), j = 1..floor((n-1)/2)
  std::vector<double> C_im;  // 2 pi a_j / Gamma(n/2 - j + 1), j = 1..J
};

AsymptoticData build_asymptotics(const Potential& pot);

std::complex<double> eval_p(const AsymptoticData& data, double lambda);
std::complex<double> eval_P(const AsymptoticData& data, double lambda);

}  // namespace levscat::asym

#endif
