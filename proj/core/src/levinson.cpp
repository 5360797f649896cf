#include "levscat/levinson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "internal.hpp"
#include "levscat/errors.hpp"

namespace levscat {

namespace {
constexpr double kPi = std::numbers::pi;
}

double n_res(const ResonanceReport& report, int n) {
  if (report.n != n) throw std::invalid_argument("n_res: dimension mismatch");
  switch (n) {
    case 1:
      // The half-correction enters with a negative sign here: in one
      // dimension the generic (non-resonant) threshold behaviour is
      // delta(0) = pi (N - 1/2), so -N = I - 1/2, verified against the
      // closed-form square-well scattering matrix.
      return report.present ? 0.0 : -0.5;
    case 2:
      return report.type == 'p' ? report.count : 0.0;
    case 3:
      return report.present ? 0.5 : 0.0;
    case 4:
      return report.type == 's' ? report.count : 0.0;
    default:
      return 0.0;
  }
}

namespace {

// xi(0+) by a two-parameter fit xi ~ xi0 + b g(lambda) through the three
// smallest grid energies. Candidate shapes: k, k^2, and (for n = 2, where the
// threshold approach is only logarithmic) 1/ln lambda; selected by the
// middle-point defect.
double extrapolate_xi_zero(const SpectralShiftProfile& p) {
  if (p.lambda.size() < 3) return p.xi.empty() ? 0.0 : p.xi.front();
  std::vector<std::vector<double>> shapes;
  for (double gamma : {0.5, 1.0}) {
    shapes.push_back({std::pow(p.lambda[0], gamma), std::pow(p.lambda[1], gamma),
                      std::pow(p.lambda[2], gamma)});
  }
  if (p.n == 2 && p.lambda[2] < 1.0)
    shapes.push_back({1.0 / std::log(p.lambda[0]), 1.0 / std::log(p.lambda[1]),
                      1.0 / std::log(p.lambda[2])});
  double best = p.xi[0], best_resid = std::numeric_limits<double>::infinity();
  for (const auto& g : shapes) {
    const double b = (p.xi[2] - p.xi[0]) / (g[2] - g[0]);
    const double xi0 = p.xi[0] - b * g[0];
    const double resid = std::abs(p.xi[1] - (xi0 + b * g[1]));
    if (resid < best_resid) {
      best_resid = resid;
      best = xi0;
    }
  }
  return best;
}

}  // namespace

LevinsonIntegral levinson_integral(const SpectralShiftProfile& profile,
                                   const asym::AsymptoticData& data,
                                   bool tail_fit) {
  if (profile.n != data.n)
    throw std::invalid_argument("levinson_integral: dimension mismatch");
  const std::size_t N = profile.lambda.size();

  // Real integrand of (1/2 pi i)(Tr(S*S') - p_n) = -xi' - Im p_n / (2 pi).
  std::vector<double> phi(N);
  for (std::size_t i = 0; i < N; ++i)
    phi[i] = -profile.xi_prime[i] -
             asym::eval_p(data, profile.lambda[i]).imag() / (2.0 * kPi);

  const double body = detail::trapezoid(profile.lambda, phi);

  // Head on [0, lambda_min]: the -p_n part in closed form, and the trace
  // part from the low-energy extrapolation of xi (it telescopes to
  // xi(0+) - xi(lambda_min), which is O(1/ln) in n = 2 and must not be
  // dropped there).
  double head = 0.0;
  const double lam_min = profile.lambda.front();
  for (std::size_t j = 1; j <= data.c_im.size(); ++j)
    head -= data.C_im[j - 1] / (2.0 * kPi) * std::pow(lam_min, 0.5 * data.n - j);
  head += extrapolate_xi_zero(profile) - profile.xi.front();

  LevinsonIntegral out{body + head, 0.0, 0.0, 0.0};

  // In even dimensions every power term of the subtracted trace vanishes
  // (Gamma poles at non-positive integers), so there is no power-law tail to
  // fit; the integrand there is already below the solver bias floor.
  if (tail_fit && data.n % 2 == 1) {
    const double lam_max = profile.lambda.back();
    std::size_t begin = N - 1;
    while (begin > 0 && profile.lambda[begin - 1] > lam_max / 10.0) --begin;
    double phi_max = 0.0;
    for (std::size_t i = begin; i < N; ++i)
      phi_max = std::max(phi_max, std::abs(phi[i]));
    // Below this floor the integrand has already converged into numerical
    // noise (n = 2/4 where every power term has a vanishing coefficient);
    // any fitted exponent there is meaningless.
    if (phi_max * lam_max < 1e-4) return out;
    const auto [c, e] = detail::power_law_fit(profile.lambda, phi, begin, N);
    if (c > 0.0) {
      if (e >= -1.0)
        throw TailError("integrand tail fit is non-integrable; increase k_max");
      double sign_acc = 0.0;
      for (std::size_t i = begin; i < N; ++i) sign_acc += phi[i];
      const double sign = sign_acc >= 0.0 ? 1.0 : -1.0;
      out.tail = sign * c * std::pow(lam_max, e + 1.0) / (-1.0 - e);
      out.tail_exponent = e;
      out.value += out.tail;
    }
  }
  return out;
}

namespace {

// Bound-state catalog across channels; entries are (lambda_k, m(n,l)).
void collect_bound_states(const Potential& pot, const SolverSettings& s,
                          LevinsonReport& rep) {
  rep.N = 0;
  if (pot.is_zero()) return;
  if (rep.n == 1) {
    const auto evs = eigenvalues_1d(pot, s.eig_tol, s);
    rep.N = static_cast<int>(evs.size());
    for (double e : evs) {
      rep.eigenvalues_weighted.push_back(e);
      rep.eigenvalue_multiplicities.push_back(1);
    }
    return;
  }
  for (int l = 0;; ++l) {
    const PartialWave pw{rep.n, l};
    const int count = count_bound_states(pot, pw, s);
    if (count == 0) break;  // counts are non-increasing in l
    const auto evs = eigenvalues(pot, pw, s.eig_tol, s);
    const int m = pw.degeneracy();
    rep.N += m * count;
    for (double e : evs) {
      rep.eigenvalues_weighted.push_back(e);
      rep.eigenvalue_multiplicities.push_back(m);
    }
  }
}

SpectralShiftProfile build_profile(const Potential& pot, const GridSpec& grid,
                                   const SolverSettings& s) {
  const int n = pot.dimension();
  if (n == 1) {
    const auto ks = grid.k_grid();
    std::vector<double> lambda(ks.size());
    std::vector<Jost1D> sm(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
      lambda[i] = ks[i] * ks[i];
      sm[i] = pot.is_zero() ? Jost1D{1.0, 0.0, 0.0} : jost_1d(pot, ks[i], s);
    }
    return spectral_shift_1d(lambda, sm);
  }

  return spectral_shift(n, channel_sweep(pot, grid, s));
}

}  // namespace

LevinsonReport verify_levinson(const Potential& pot, const GridSpec& grid,
                               const SolverSettings& s, bool tail_fit) {
  LevinsonReport rep;
  rep.n = pot.dimension();
  rep.resonance = detect_resonance(pot, s);
  rep.N_res = n_res(rep.resonance, rep.n);
  collect_bound_states(pot, s, rep);
  rep.profile = build_profile(pot, grid, s);
  rep.asymptotics = asym::build_asymptotics(pot);
  rep.beta_n = rep.asymptotics.beta_n;

  const LevinsonIntegral I = levinson_integral(rep.profile, rep.asymptotics, tail_fit);
  rep.integral = I.value;
  rep.tail = I.tail;
  rep.residual = std::abs(-rep.N - (rep.integral - rep.beta_n + rep.N_res));

  rep.xi_zero_plus.measured = extrapolate_xi_zero(rep.profile);
  rep.xi_zero_plus.predicted = -rep.N - rep.N_res;
  rep.xi_zero_plus.low_confidence = rep.resonance.present;
  return rep;
}

HeatCheck heat_trace_check(const LevinsonReport& report,
                           const std::vector<double>& t_list) {
  for (double t : t_list)
    if (t <= 0.0) throw std::domain_error("heat_trace_check: t must be positive");
  const auto& p = report.profile;
  const std::size_t N = p.lambda.size();

  const double xi0 = extrapolate_xi_zero(p);
  HeatCheck out;
  for (double t : t_list) {
    // Spectral side: Tr(e^{-tH} - e^{-tH0}) = sum_k M_k e^{-t lambda_k}
    // - t Int xi e^{-t lambda}; the trace formula integrated by parts so
    // only xi itself (never its noisier derivative) enters.
    double lhs = -report.N;  // boundary term of the negative-axis counting
    for (std::size_t i = 0; i < report.eigenvalues_weighted.size(); ++i)
      lhs += report.eigenvalue_multiplicities[i] *
             std::exp(-t * report.eigenvalues_weighted[i]);
    std::vector<double> f(N);
    for (std::size_t i = 0; i < N; ++i)
      f[i] = std::exp(-t * p.lambda[i]) * p.xi[i];
    // Head below the grid (xi ~ xi(0+)) and tail above it (xi frozen at its
    // top value, killed by the exponential).
    const double integral = xi0 * p.lambda.front() + detail::integrate_log(p.lambda, f) +
                            p.xi.back() * std::exp(-t * p.lambda.back()) / t;
    lhs -= t * integral;

    double rhs = 0.0;
    for (std::size_t j = 1; j <= report.asymptotics.a.size(); ++j)
      rhs += report.asymptotics.a[j - 1] * std::pow(t, j - 0.5 * report.n);
    out.rows.push_back({t, lhs, rhs, std::abs(lhs - rhs)});
  }

  std::vector<double> ts, ds;
  for (const auto& r : out.rows) {
    ts.push_back(r.t);
    ds.push_back(r.diff);
  }
  out.fitted_order = detail::power_law_fit(ts, ds, 0, ts.size()).second;
  return out;
}

HighEnergyCheck high_energy_ssf_check(const SpectralShiftProfile& profile,
                                      const asym::AsymptoticData& data) {
  if (profile.n != data.n)
    throw std::invalid_argument("high_energy_ssf_check: dimension mismatch");
  const std::size_t N = profile.lambda.size();
  const double lam_max = profile.lambda.back();
  std::size_t begin = N - 1;
  while (begin > 0 && profile.lambda[begin - 1] > lam_max / 10.0) --begin;

  std::vector<double> resid(N, 0.0);
  double mx = 0.0;
  for (std::size_t i = begin; i < N; ++i) {
    resid[i] = std::abs(-2.0 * kPi * profile.xi[i] -
                        asym::eval_P(data, profile.lambda[i]).imag());
    mx = std::max(mx, resid[i]);
  }
  const auto [c, e] = detail::power_law_fit(profile.lambda, resid, begin, N);
  (void)c;
  return HighEnergyCheck{mx, e};
}

}  // namespace levscat
