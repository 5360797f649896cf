#include "levscat/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "internal.hpp"
#include "levscat/errors.hpp"

namespace levscat {

namespace {
constexpr double kPi = std::numbers::pi;
const std::complex<double> kI(0.0, 1.0);
}  // namespace

int degeneracy(int n, int l) {
  if (n < 2) throw std::domain_error("degeneracy: n must be >= 2");
  if (l < 0) throw std::domain_error("degeneracy: l must be >= 0");
  if (l == 0) return 1;
  if (n == 2) return 2;
  // (2l + n - 2) (l + n - 3)! / (l! (n - 2)!) via a binomial product.
  long long binom = 1;  // C(l + n - 3, n - 3)
  for (int i = 1; i <= n - 3; ++i) binom = binom * (l + i) / i;
  return static_cast<int>(binom * (2 * l + n - 2) / (n - 2));
}

std::size_t SpectralShiftProfile::index_of(double lam) const {
  for (std::size_t i = 0; i < lambda.size(); ++i)
    if (std::abs(lambda[i] - lam) <= 1e-12 * lam) return i;
  throw std::range_error("energy is not a grid point of the profile");
}

namespace {

// Linear interpolation of a grid quantity; range error outside the grid.
double interp(const std::vector<double>& lambda, const std::vector<double>& f,
              double lam) {
  if (lambda.empty() || lam < lambda.front() * (1.0 - 1e-12) ||
      lam > lambda.back() * (1.0 + 1e-12))
    throw std::range_error("energy outside the profile grid");
  auto it = std::lower_bound(lambda.begin(), lambda.end(), lam);
  std::size_t i = static_cast<std::size_t>(it - lambda.begin());
  if (i == 0) return f.front();
  if (i >= lambda.size()) return f.back();
  const double w = (lam - lambda[i - 1]) / (lambda[i] - lambda[i - 1]);
  return (1.0 - w) * f[i - 1] + w * f[i];
}

}  // namespace

std::complex<double> SpectralShiftProfile::trace_s_star_sprime(double lam) const {
  return -2.0 * kPi * kI * interp(lambda, xi_prime, lam);
}

std::complex<double> SpectralShiftProfile::det_s(double lam) const {
  return std::exp(-2.0 * kPi * kI * interp(lambda, xi, lam));
}

SpectralShiftProfile spectral_shift(int n, const std::vector<PhaseShiftTable>& tables) {
  if (n < 2) throw std::domain_error("spectral_shift: use the 1D overload for n = 1");
  if (tables.empty()) throw std::domain_error("spectral_shift: no tables");
  SpectralShiftProfile p;
  p.n = n;
  p.lambda = tables.front().lambda;
  const std::size_t N = p.lambda.size();
  p.xi.assign(N, 0.0);
  p.xi_prime.assign(N, 0.0);
  for (const auto& t : tables) {
    if (t.lambda.size() != N)
      throw std::invalid_argument("spectral_shift: tables must share the energy grid");
    const double m = t.pw.degeneracy();
    for (std::size_t i = 0; i < N; ++i) {
      p.xi[i] -= m / kPi * t.delta[i];
      p.xi_prime[i] -= m / kPi * t.delta_prime[i];
    }
  }
  p.det_s_values.resize(N);
  for (std::size_t i = 0; i < N; ++i)
    p.det_s_values[i] = std::exp(-2.0 * kPi * kI * p.xi[i]);
  return p;
}

std::vector<PhaseShiftTable> channel_sweep(const Potential& pot,
                                           const GridSpec& grid,
                                           const SolverSettings& s) {
  const int n = pot.dimension();
  if (n < 2) throw std::domain_error("channel_sweep: n must be >= 2");
  std::vector<PhaseShiftTable> tables;
  if (pot.is_zero()) {
    tables.push_back(phase_shift_table(pot, {n, 0}, grid, s));
    return tables;
  }
  const int seed =
      static_cast<int>(std::ceil(grid.k_max * pot.support_radius())) + 4;
  const int hard_cap = s.l_max >= 0 ? s.l_max : seed + 60;
  unsigned workers = s.threads > 0 ? static_cast<unsigned>(s.threads)
                                   : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;

  bool done = false;
  for (int l0 = 0; l0 <= hard_cap && !done;) {
    const int batch = std::min<int>(workers, hard_cap - l0 + 1);
    std::vector<std::future<PhaseShiftTable>> futs;
    for (int b = 0; b < batch; ++b)
      futs.push_back(std::async(std::launch::async, [&, l = l0 + b] {
        return phase_shift_table(pot, PartialWave{n, l}, grid, s);
      }));
    for (auto& f : futs) {
      PhaseShiftTable t = f.get();
      double dmax = 0.0;
      for (double d : t.delta) dmax = std::max(dmax, std::abs(d));
      tables.push_back(std::move(t));
      if (s.l_max < 0 && dmax < s.l_tail_tol) {
        done = true;
        break;
      }
    }
    l0 += batch;
  }
  return tables;
}

SpectralShiftProfile spectral_shift_1d(const std::vector<double>& lambda,
                                       const std::vector<Jost1D>& smatrices) {
  if (lambda.size() != smatrices.size() || lambda.size() < 3)
    throw std::invalid_argument("spectral_shift_1d: grid/data mismatch");
  SpectralShiftProfile p;
  p.n = 1;
  p.lambda = lambda;
  const std::size_t N = lambda.size();
  p.det_s_values.resize(N);
  for (std::size_t i = 0; i < N; ++i) p.det_s_values[i] = smatrices[i].det();

  // arg det S tracked continuously downward from the lambda_max anchor.
  std::vector<double> theta(N);
  theta[N - 1] = std::arg(p.det_s_values[N - 1]);
  for (std::size_t i = N - 1; i-- > 0;) {
    const double pa = std::arg(p.det_s_values[i]);
    theta[i] = pa + 2.0 * kPi * std::round((theta[i + 1] - pa) / (2.0 * kPi));
  }
  p.xi.resize(N);
  for (std::size_t i = 0; i < N; ++i) p.xi[i] = -theta[i] / (2.0 * kPi);
  p.xi_prime = detail::grid_derivative(p.lambda, p.xi);
  return p;
}

SMatrixZeroCheck s_matrix_zero_check(const Potential& pot, const GridSpec& grid,
                                     const SolverSettings& s) {
  const int n = pot.dimension();
  const double lam = grid.k_min * grid.k_min;
  const ResonanceReport res = detect_resonance(pot, s);
  SMatrixZeroCheck out{n, res.present, 0.0, lam};

  if (n == 1) {
    const Jost1D S = pot.is_zero() ? Jost1D{1.0, 0.0, 0.0} : jost_1d(pot, grid.k_min, s);
    std::complex<double> p11, p12;
    if (res.present) {
      const double cp = *res.c_plus, cm = *res.c_minus;
      p11 = 2.0 * cp * cm;
      p12 = cp * cp - cm * cm;
    } else {
      p11 = 0.0;
      p12 = -1.0;
    }
    out.distance = std::max({std::abs(S.t - p11), std::abs(S.r_minus - p12),
                             std::abs(S.r_plus - p12), std::abs(S.t - p11)});
    if (pot.is_zero()) out.distance = 0.0;  // V = 0: S is the identity exactly
    return out;
  }

  if (pot.is_zero()) return out;
  const int L = static_cast<int>(std::ceil(grid.k_min * pot.support_radius())) + 4;
  double dist = 0.0;
  for (int l = 0; l <= L; ++l) {
    const double d = phase_shift(pot, PartialWave{n, l}, lam, s);
    const std::complex<double> eig = std::exp(2.0 * kI * d);
    // Resonant n=3 s-channel limit is Id - 2 P_s: eigenvalue -1 at l = 0.
    const std::complex<double> pred =
        (n == 3 && res.present && l == 0) ? std::complex<double>(-1.0, 0.0)
                                          : std::complex<double>(1.0, 0.0);
    dist = std::max(dist, std::abs(eig - pred));
  }
  out.distance = dist;
  return out;
}

}  // namespace levscat
