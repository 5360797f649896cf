#ifndef LEVSCAT_RADIAL_HPP
#define LEVSCAT_RADIAL_HPP

#include <complex>
#include <optional>
#include <vector>

#include "levscat/potential.hpp"

namespace levscat {

/// Channel of the partial-wave decomposition over spherical harmonics.
struct PartialWave {
  int n;  // dimension, >= 2
  int l;  // angular momentum, >= 0

  /// Effective Bessel order of the reduced radial equation.
  double nu() const { return l + 0.5 * (n - 2); }

  /// Dimension m(n,l) of the order-l spherical harmonics on S^{n-1}.
  int degeneracy() const;
};

struct SolverSettings {
  /// Matching radius r_match = max(r_match_factor * R, R + r_match_pad).
  double r_match_factor = 1.25;
  double r_match_pad = 2.0;
  /// Numerov step; the effective step is min(step, step_k_factor / k) and is
  /// further reduced until h^2 max|Q| < 0.05.
  double step = 2e-3;
  double step_k_factor = 0.02;
  /// l_max < 0 selects the automatic rule: smallest l whose phase shift stays
  /// below l_tail_tol over the grid.
  int l_max = -1;
  double l_tail_tol = 1e-8;
  /// Largest acceptable |delta(lambda_max) mod pi| when anchoring the branch.
  double anchor_tol = 0.5;
  double branch_tail_tol = 1e-3;
  /// Growing/bounded coefficient ratio below which a zero-energy resonance is
  /// declared; ratios within a factor 10 of it are inconclusive.
  double resonance_tol = 1e-6;
  /// Eigenvalue bisection tolerance.
  double eig_tol = 1e-10;
  /// Worker threads for the (l, lambda) sweep; 0 picks the hardware count.
  /// Reduction order is fixed, so results are identical for any value.
  int threads = 1;
};

/// Geometric momentum grid; energies are lambda = k^2.
struct GridSpec {
  double k_min = 1e-3;
  double k_max = 20.0;
  int points_per_decade = 400;

  std::vector<double> k_grid() const;
};

/// Regular solution of -u'' + [(nu^2 - 1/4)/r^2 + V]u = lambda u on (0, r_end],
/// Numerov-integrated from a Frobenius startup u ~ r^{nu+1/2}. Values are
/// renormalized on overflow, so only u_end/du_end ratios and node counts are
/// meaningful globally.
struct RadialSolution {
  double r_end;
  double u_end;
  double du_end;
  int nodes;
};

RadialSolution solve_radial(const Potential& pot, double nu, double lambda,
                            double r_end, double h);

/// Principal-value phase shift at energy lambda > 0 from log-derivative
/// matching against the Riccati-Bessel pair at r_match.
double phase_shift(const Potential& pot, const PartialWave& pw, double lambda,
                   const SolverSettings& s);

/// Branch-continuous phase-shift table on the grid, anchored at lambda_max to
/// the representative of delta mod pi nearest zero and continued downward.
struct PhaseShiftTable {
  PartialWave pw;
  std::vector<double> lambda;
  std::vector<double> delta;
  std::vector<double> delta_prime;  // d(delta)/d(lambda)
};

PhaseShiftTable phase_shift_table(const Potential& pot, const PartialWave& pw,
                                  const GridSpec& grid, const SolverSettings& s);

/// Full-line 1D scattering data at momentum k > 0.
struct Jost1D {
  std::complex<double> t;
  std::complex<double> r_plus;
  std::complex<double> r_minus;

  std::complex<double> det() const { return t * t - r_plus * r_minus; }
};

Jost1D jost_1d(const Potential& pot, double k, const SolverSettings& s);

/// Number of negative eigenvalues in channel pw (nodes of the zero-energy
/// regular solution). For n=1 pass the full-line overload below.
int count_bound_states(const Potential& pot, const PartialWave& pw,
                       const SolverSettings& s);
int count_bound_states_1d(const Potential& pot, const SolverSettings& s);

/// Sorted negative eigenvalues of the channel, each to |dE| < tol; the list
/// length always equals the node count.
std::vector<double> eigenvalues(const Potential& pot, const PartialWave& pw,
                                double tol, const SolverSettings& s);
std::vector<double> eigenvalues_1d(const Potential& pot, double tol,
                                   const SolverSettings& s);

/// Zero-energy resonance data. For n=1 the resonant normalized limits
/// c_± = psi(±infinity) are reported with the sign convention c_+ > 0.
struct ResonanceReport {
  int n = 0;
  bool present = false;
  char type = '-';  // 's', 'p' or '-'
  int count = 0;
  std::optional<double> c_plus;
  std::optional<double> c_minus;
};

ResonanceReport detect_resonance(const Potential& pot, const SolverSettings& s);

}  // namespace levscat

#endif
