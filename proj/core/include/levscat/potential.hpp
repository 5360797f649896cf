#ifndef LEVSCAT_POTENTIAL_HPP
#define LEVSCAT_POTENTIAL_HPP

#include <string>
#include <vector>

namespace levscat {

enum class ProfileKind { square_well, gaussian, poschl_teller, tabulated };

/// Radial potential V(r) on R^n together with the decay/support metadata and
/// the volume integrals that feed the asymptotic coefficients.
///
/// Profiles:
///   square_well(V0, a):   V = -V0 on [0,a), 0 outside (V0 may be negative
///                         for a barrier).
///   gaussian(A, w):       V = A exp(-r^2/w^2).
///   poschl_teller(s):     V = -s(s+1) sech^2(r), n = 1 only.
///   tabulated(r, v):      natural cubic spline through the samples, 0 beyond
///                         the grid.
class Potential {
public:
  static Potential square_well(int n, double depth, double radius);
  static Potential gaussian(int n, double amplitude, double width);
  static Potential poschl_teller(double strength);
  static Potential tabulated(int n, std::vector<double> r, std::vector<double> v);

  int dimension() const { return n_; }
  ProfileKind kind() const { return kind_; }
  std::string kind_name() const;

  /// Declared decay exponent; effectively infinite for the built-in profiles.
  double decay_exponent() const { return rho_; }
  Potential& set_decay_exponent(double rho) { rho_ = rho; return *this; }

  /// Radius beyond which |V| < 1e-12 (exact support edge for the well).
  double support_radius() const { return support_; }

  /// True when every sample/parameter is exactly zero.
  bool is_zero() const;

  /// True for profiles with enough derivatives for the j=3 coefficient.
  bool is_smooth() const { return kind_ != ProfileKind::square_well; }

  /// Raw profile parameters (depth/amplitude/strength and radius/width).
  double param1() const { return p1_; }
  double param2() const { return p2_; }
  const std::vector<double>& samples_r() const { return tab_r_; }
  const std::vector<double>& samples_v() const { return tab_v_; }

  double operator()(double r) const;

  /// order-th radial derivative V^{(order)}(r); order 0 is the value itself.
  /// Throws UnsupportedProfileError beyond the profile's smoothness.
  double derivative(double r, int order) const;

  /// Integral of V(x)^p over R^n.
  double moment_power(int p) const;

  /// Integral of |grad V|^2 over R^n (smooth profiles only).
  double moment_grad_sq() const;

  /// Scaled copy c*V (profile-preserving for well/gaussian/tabulated).
  Potential scaled(double c) const;

  /// Resample this potential (or its pointwise p-th power) onto a tabulated
  /// profile with `points` equally spaced samples on [0, support_radius].
  Potential to_tabulated(int points, int power = 1) const;

private:
  Potential() = default;

  ProfileKind kind_ = ProfileKind::square_well;
  int n_ = 1;
  double p1_ = 0.0;  // V0 / amplitude / strength
  double p2_ = 0.0;  // radius / width
  double rho_ = 0.0;
  double support_ = 0.0;

  // tabulated data and natural-spline second derivatives
  std::vector<double> tab_r_, tab_v_, tab_m_;

  void build_spline();
  double spline_eval(double r, int order) const;
};

}  // namespace levscat

#endif
