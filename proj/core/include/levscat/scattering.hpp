#ifndef LEVSCAT_SCATTERING_HPP
#define LEVSCAT_SCATTERING_HPP

#include <complex>
#include <vector>

#include "levscat/radial.hpp"

namespace levscat {

/// Dimension of the order-l spherical harmonics on S^{n-1}.
int degeneracy(int n, int l);

/// Spectral shift function xi and its derivative on the positive-energy grid,
/// together with the scattering-matrix traces derived from it:
///   T(lambda) = Tr(S* S') = -2 pi i xi'       (purely imaginary)
///   det S(lambda) = exp(-2 pi i xi)           (unit modulus)
struct SpectralShiftProfile {
  int n = 0;
  std::vector<double> lambda;
  std::vector<double> xi;
  std::vector<double> xi_prime;
  std::vector<std::complex<double>> det_s_values;

  std::size_t index_of(double lam) const;  // exact grid lookup, range error otherwise
  std::complex<double> trace_s_star_sprime(double lam) const;
  std::complex<double> det_s(double lam) const;
};

/// Assemble xi = -(1/pi) sum_l m(n,l) delta_l for n >= 2. All tables must
/// share the energy grid and be branch-normalized at lambda_max.
SpectralShiftProfile spectral_shift(int n, const std::vector<PhaseShiftTable>& tables);

/// Phase-shift tables for l = 0, 1, ... until the channel is negligible
/// (max |delta_l| < l_tail_tol) or l reaches the configured l_max. Channels
/// may be computed concurrently (settings.threads); the returned order is
/// always l-ascending.
std::vector<PhaseShiftTable> channel_sweep(const Potential& pot,
                                           const GridSpec& grid,
                                           const SolverSettings& s);

/// n = 1: xi = -(1/2 pi) arg det S with the argument tracked continuously in
/// lambda and anchored to 0 at lambda_max; xi' by finite differences.
SpectralShiftProfile spectral_shift_1d(const std::vector<double>& lambda,
                                       const std::vector<Jost1D>& smatrices);

/// Distance of the computed S-matrix at the bottom of the grid from its
/// predicted zero-energy limit (identity, identity minus twice the s-wave
/// projection, or the resonant/non-resonant 2x2 forms for n = 1).
struct SMatrixZeroCheck {
  int n;
  bool resonant;
  double distance;      // matrix/entrywise max distance to the prediction
  double lambda_probe;  // energy at which S was evaluated
};

SMatrixZeroCheck s_matrix_zero_check(const Potential& pot, const GridSpec& grid,
                                     const SolverSettings& s);

}  // namespace levscat

#endif
