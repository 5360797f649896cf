#ifndef LEVSCAT_LEVINSON_HPP
#define LEVSCAT_LEVINSON_HPP

#include <vector>

#include "levscat/asymptotics.hpp"
#include "levscat/radial.hpp"
#include "levscat/scattering.hpp"

namespace levscat {

/// Resonance correction entering the bound-state identity
///   -N = I - beta_n + N_res.
/// n=1: -1/2 without a resonance (threshold phase pi(N - 1/2)), 0 with one;
/// n=2: p-resonance count; n=3: 1/2 with a resonance, else 0;
/// n=4: s-resonance count; n>=5: 0.
double n_res(const ResonanceReport& report, int n);

/// Renormalized trace integral I = (1/2 pi i) Int_0^inf (Tr(S*S') - p_n) dlambda.
/// The body is quadrature on the grid (in k, lambda = k^2), the p_n part below
/// the grid is added in closed form, and the tail beyond lambda_max comes from
/// a power-law fit over the top decade (TailError on a non-integrable fit).
struct LevinsonIntegral {
  double value;          // I including head and tail corrections
  double tail;           // fitted tail contribution, reported separately
  double tail_exponent;  // fitted decay power of the integrand
  double imag_residual;  // numerical-error meter; the exact integral is real
};

LevinsonIntegral levinson_integral(const SpectralShiftProfile& profile,
                                   const asym::AsymptoticData& data,
                                   bool tail_fit = true);

struct XiZeroPlus {
  double measured;    // low-order extrapolation of xi(lambda) to 0+
  double predicted;   // -N - N_res
  bool low_confidence;  // resonant cases: nonsmooth low-energy behavior
};

struct LevinsonReport {
  int n = 0;
  int N = 0;              // degeneracy-weighted bound-state count
  double N_res = 0.0;
  double integral = 0.0;  // I
  double tail = 0.0;
  double beta_n = 0.0;
  double residual = 0.0;  // |(-N) - (I - beta_n + N_res)|
  XiZeroPlus xi_zero_plus{};
  ResonanceReport resonance{};
  std::vector<double> eigenvalues_weighted;      // lambda_k, one per channel level
  std::vector<int> eigenvalue_multiplicities;    // M(lambda_k)
  asym::AsymptoticData asymptotics{};
  SpectralShiftProfile profile{};  // retained for downstream checks/emission
};

/// Full pipeline: radial sweep, spectral shift assembly, asymptotic data,
/// resonance detection, renormalized integral, residual of the identity.
LevinsonReport verify_levinson(const Potential& pot, const GridSpec& grid,
                               const SolverSettings& s, bool tail_fit = true);

/// Spectral-side heat trace against the small-t expansion sum_j a_j t^{j-n/2}.
struct HeatCheckRow {
  double t;
  double lhs;   // Tr(exp(-tH) - exp(-tH0)) via the trace formula
  double rhs;   // three-term expansion
  double diff;  // |lhs - rhs|
};

struct HeatCheck {
  std::vector<HeatCheckRow> rows;
  double fitted_order;  // slope of log|diff| vs log t, expected near 4 - n/2
};

HeatCheck heat_trace_check(const LevinsonReport& report,
                           const std::vector<double>& t_list);

/// Max of |-2 pi i xi(lambda) - P_n(lambda)| over the top decade together with
/// its fitted decay exponent (expected near -1/2).
struct HighEnergyCheck {
  double max_residual;
  double fitted_exponent;
};

HighEnergyCheck high_energy_ssf_check(const SpectralShiftProfile& profile,
                                      const asym::AsymptoticData& data);

}  // namespace levscat

#endif
