#include "levscat/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "internal.hpp"
#include "levscat/errors.hpp"
#include "levscat/scattering.hpp"
#include "levscat/specfun.hpp"

namespace levscat {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRenormThreshold = 1e200;
// Largest h^2 |Q| admitted at the startup point and in the step rule.
constexpr double kStepBudget = 0.04;

double max_abs_potential(const Potential& pot) {
  const double R = pot.support_radius();
  double m = std::abs(pot(0.0));
  for (int i = 1; i <= 256; ++i) m = std::max(m, std::abs(pot(R * i / 256.0)));
  return m;
}

// Step rule: resolve the local wavelength (h k small) and keep h^2 max|Q|
// within budget; square wells additionally get a grid node at the edge.
double choose_step(const Potential& pot, double lambda, const SolverSettings& s) {
  double h = s.step;
  if (lambda > 0.0) h = std::min(h, s.step_k_factor / std::sqrt(lambda));
  const double qmax = max_abs_potential(pot) + std::abs(lambda) + 1.0;
  h = std::min(h, std::sqrt(kStepBudget / qmax));
  if (pot.kind() == ProfileKind::square_well) {
    const double a = pot.support_radius();
    h = a / std::ceil(a / h);
  }
  return h;
}

double align_up(double r, double h) { return h * std::ceil(r / h - 1e-9); }

struct EndState {
  double u;
  double du;
  int nodes;
};

// One uniform-step Numerov sweep given two consecutive start values; returns
// the state at the final grid point with an O(h^4) endpoint derivative.
template <typename QFunc>
EndState numerov_sweep(const QFunc& Q, double r0, double u0, double u1, double h,
                       long long steps) {
  double fm = 1.0 - h * h / 12.0 * Q(r0);
  double f0 = 1.0 - h * h / 12.0 * Q(r0 + h);
  double um = u0, uc = u1;
  int nodes = (um < 0.0) != (uc < 0.0) && um != 0.0 ? 1 : 0;
  double r = r0 + h;
  for (long long i = 0; i < steps; ++i) {
    const double fp = 1.0 - h * h / 12.0 * Q(r + h);
    const double up = ((12.0 - 10.0 * f0) * uc - fm * um) / fp;
    if ((uc < 0.0) != (up < 0.0) && uc != 0.0) ++nodes;
    um = uc;
    uc = up;
    fm = f0;
    f0 = fp;
    r += h;
    if (std::abs(uc) > kRenormThreshold) {
      um /= kRenormThreshold;
      uc /= kRenormThreshold;
    }
  }
  // Endpoint is at r; take one virtual step for the centered derivative.
  const double fp = 1.0 - h * h / 12.0 * Q(r + h);
  const double up = ((12.0 - 10.0 * f0) * uc - fm * um) / fp;
  const double qn = Q(r);
  const double qprime = (Q(r + h) - Q(r - h)) / (2.0 * h);
  const double du = ((up - um) / (2.0 * h) - h * h / 6.0 * qprime * uc) /
                    (1.0 + h * h / 6.0 * qn);
  return EndState{uc, du, nodes};
}

// Regular solution integrated outward from a Frobenius startup
// u ~ r^{nu+1/2} (1 + a2 r^2); the start index is pushed out until the step
// budget holds (the skipped region is classically forbidden and nodeless).
EndState integrate_regular(const Potential& pot, double nu, double lambda,
                           double r_end, double h) {
  const double cf = nu * nu - 0.25;
  auto Q = [&](double r) { return cf / (r * r) + pot(r) - lambda; };
  const long long N = std::llround(r_end / h);
  if (N < 8) throw std::domain_error("integrate_regular: grid too short");
  long long i0 = 1;
  while (i0 < N - 4 && h * h * std::abs(Q(i0 * h)) >= kStepBudget) ++i0;
  if (i0 >= N - 4)
    throw std::domain_error("integrate_regular: step budget unattainable on grid");
  const double a2 = (pot(0.0) - lambda) / (4.0 * (nu + 1.0));
  auto startup = [&](double r) {
    return (nu + 0.5) * std::log(r) + std::log1p(std::max(a2 * r * r, -0.5));
  };
  const double r0 = i0 * h, r1 = (i0 + 1) * h;
  const double base = startup(r0);
  const double u0 = 1.0;
  const double u1 = std::exp(startup(r1) - base);
  return numerov_sweep(Q, r0, u0, u1, h, N - i0 - 1);
}

// Fourth-order Taylor start from (u, u') at r0, for full-line sweeps.
template <typename QFunc>
double taylor_second_point(const QFunc& Q, double r0, double u, double du, double h) {
  const double q = Q(r0);
  const double qp = (Q(r0 + h) - Q(r0 - h)) / (2.0 * h);
  const double qpp = (Q(r0 + h) - 2.0 * q + Q(r0 - h)) / (h * h);
  const double u2 = q * u;
  const double u3 = qp * u + q * du;
  const double u4 = qpp * u + 2.0 * qp * du + q * u2;
  return u + h * du + h * h / 2.0 * u2 + h * h * h / 6.0 * u3 +
         h * h * h * h / 24.0 * u4;
}

// Full-line sweep across [-Rb, x_end] for n = 1 problems.
EndState integrate_line(const Potential& pot, double lambda, double Rb,
                        double x_end, double h, double u, double du) {
  auto Q = [&](double x) { return pot(std::abs(x)) - lambda; };
  const long long N = std::llround((x_end + Rb) / h);
  const double u1 = taylor_second_point(Q, -Rb, u, du, h);
  return numerov_sweep(Q, -Rb, u, u1, h, N - 1);
}

double fold_principal(double d) {
  while (d > kPi / 2.0) d -= kPi;
  while (d <= -kPi / 2.0) d += kPi;
  return d;
}

double match_radius(const Potential& pot, const SolverSettings& s) {
  const double R = pot.support_radius();
  return std::max(s.r_match_factor * R, R + s.r_match_pad);
}

double principal_phase_shift(const Potential& pot, const PartialWave& pw,
                             double lambda, const SolverSettings& s) {
  if (pot.is_zero()) return 0.0;
  const double k = std::sqrt(lambda);
  const double h = choose_step(pot, lambda, s);
  const double r_m = align_up(match_radius(pot, s), h);
  specfun::RiccatiPair rb;
  try {
    rb = specfun::riccati_bessel(pw.nu(), k * r_m);
  } catch (const std::range_error&) {
    // Y_nu overflows only deep in the classically forbidden regime nu >> x,
    // where tan(delta) ~ J/Y underflows to zero anyway.
    if (k * r_m < pw.nu()) return 0.0;
    throw;
  }
  const EndState end = integrate_regular(pot, pw.nu(), lambda, r_m, h);
  const double num = end.du * rb.j - k * rb.jp * end.u;
  const double den = end.du * rb.y - k * rb.yp * end.u;
  return fold_principal(std::atan2(num, den));
}

}  // namespace

int PartialWave::degeneracy() const { return levscat::degeneracy(n, l); }

std::vector<double> GridSpec::k_grid() const {
  if (k_min <= 0.0 || k_max <= k_min || points_per_decade < 2)
    throw std::domain_error("grid: need 0 < k_min < k_max, points_per_decade >= 2");
  const double decades = std::log10(k_max / k_min);
  const int npts = static_cast<int>(std::ceil(decades * points_per_decade)) + 1;
  std::vector<double> ks(npts);
  for (int i = 0; i < npts; ++i)
    ks[i] = k_min * std::pow(10.0, decades * i / (npts - 1));
  ks.back() = k_max;
  return ks;
}

RadialSolution solve_radial(const Potential& pot, double nu, double lambda,
                            double r_end, double h) {
  const EndState end = integrate_regular(pot, nu, lambda, r_end, h);
  return RadialSolution{r_end, end.u, end.du, end.nodes};
}

double phase_shift(const Potential& pot, const PartialWave& pw, double lambda,
                   const SolverSettings& s) {
  if (lambda <= 0.0) throw std::domain_error("phase_shift: energy must be positive");
  return principal_phase_shift(pot, pw, lambda, s);
}

namespace {

// Settle the branch between adjacent grid momenta: the principal value at
// k_lo is lifted to the representative nearest the unwrapped value above;
// ambiguous jumps are resolved by momentum bisection.
double continue_branch(const Potential& pot, const PartialWave& pw, double k_lo,
                       double pv_lo, double k_hi, double d_hi,
                       const SolverSettings& s, int depth) {
  const double cand = pv_lo + kPi * std::round((d_hi - pv_lo) / kPi);
  if (std::abs(cand - d_hi) < 0.45 * kPi || depth >= 14) return cand;
  const double km = std::sqrt(k_lo * k_hi);
  const double pvm = principal_phase_shift(pot, pw, km * km, s);
  const double dm = continue_branch(pot, pw, km, pvm, k_hi, d_hi, s, depth + 1);
  return continue_branch(pot, pw, k_lo, pv_lo, km, dm, s, depth + 1);
}

}  // namespace

PhaseShiftTable phase_shift_table(const Potential& pot, const PartialWave& pw,
                                  const GridSpec& grid, const SolverSettings& s) {
  const std::vector<double> ks = grid.k_grid();
  const std::size_t N = ks.size();
  PhaseShiftTable table;
  table.pw = pw;
  table.lambda.resize(N);
  for (std::size_t i = 0; i < N; ++i) table.lambda[i] = ks[i] * ks[i];
  table.delta.assign(N, 0.0);
  if (pot.is_zero()) {
    table.delta_prime.assign(N, 0.0);
    return table;
  }

  std::vector<double> pv(N);
  for (std::size_t i = 0; i < N; ++i)
    pv[i] = principal_phase_shift(pot, pw, table.lambda[i], s);

  if (std::abs(pv[N - 1]) > s.anchor_tol)
    throw BranchError("phase shift branch not settled at lambda_max; increase k_max");
  table.delta[N - 1] = pv[N - 1];
  for (std::size_t i = N - 1; i-- > 0;)
    table.delta[i] = continue_branch(pot, pw, ks[i], pv[i], ks[i + 1],
                                     table.delta[i + 1], s, 0);

  table.delta_prime = detail::grid_derivative(table.lambda, table.delta);
  return table;
}

Jost1D jost_1d(const Potential& pot, double k, const SolverSettings& s) {
  if (pot.dimension() != 1) throw std::domain_error("jost_1d: n must be 1");
  if (k <= 0.0) throw std::domain_error("jost_1d: momentum must be positive");
  if (pot.is_zero()) return Jost1D{1.0, 0.0, 0.0};

  const double lambda = k * k;
  double h = choose_step(pot, lambda, s);
  double Rb = pot.support_radius() + 1.0;
  if (pot.kind() == ProfileKind::square_well) {
    // Keep grid nodes at both well edges +-a.
    const double a = pot.support_radius();
    Rb = a * std::ceil(Rb / a);
  }
  Rb = align_up(Rb, h);

  const EndState e1 = integrate_line(pot, lambda, Rb, Rb, h, 1.0, 0.0);
  const EndState e2 = integrate_line(pot, lambda, Rb, Rb, h, 0.0, 1.0);
  // Transfer matrix (psi, psi')(-Rb) -> (psi, psi')(+Rb).
  const double M11 = e1.u, M12 = e2.u, M21 = e1.du, M22 = e2.du;

  const std::complex<double> I(0.0, 1.0);
  const std::complex<double> phase = std::exp(-2.0 * I * k * Rb);
  const std::complex<double> denom = I * k * M11 + k * k * M12 - M21 + I * k * M22;
  const std::complex<double> t = 2.0 * I * k * phase / denom;
  const std::complex<double> r_left =
      (t - (M11 + I * k * M12) * phase) / (M11 - I * k * M12);
  const std::complex<double> r_right = t * (M11 - I * k * M12) - phase;

  const double unit_defect =
      std::abs(std::norm(t) + std::norm(r_left) - 1.0) +
      std::abs(std::norm(t) + std::norm(r_right) - 1.0);
  if (unit_defect > 1e-6)
    throw SolverAccuracyError("jost_1d: unitarity violated; reduce step");
  return Jost1D{t, r_right, r_left};
}

namespace {

// Interior/exterior Wronskian whose zeros in E are the channel eigenvalues.
double matching_wronskian(const Potential& pot, const PartialWave& pw, double E,
                          const SolverSettings& s) {
  const double kappa = std::sqrt(-E);
  const double h = choose_step(pot, E, s);
  const double r_m = align_up(match_radius(pot, s), h);
  const EndState in = integrate_regular(pot, pw.nu(), E, r_m, h);
  const auto ext = specfun::riccati_bessel_k(pw.nu(), kappa, r_m);
  const double scale = std::max({std::abs(in.u), std::abs(in.du), 1e-300});
  return (in.du / scale) * ext.u - (in.u / scale) * ext.up;
}

double matching_wronskian_1d(const Potential& pot, double E,
                             const SolverSettings& s) {
  const double kappa = std::sqrt(-E);
  const double h = choose_step(pot, E, s);
  const double Rb = align_up(pot.support_radius() + s.r_match_pad, h);
  const EndState in = integrate_line(pot, E, Rb, Rb, h, 1.0, kappa);
  const double scale = std::max({std::abs(in.u), std::abs(in.du), 1e-300});
  // Exterior decaying solution exp(-kappa x), up to normalization.
  return (in.du / scale) + kappa * (in.u / scale);
}

int node_count(const Potential& pot, const PartialWave* pw, double E,
               double r_far, const SolverSettings& s) {
  const double h = choose_step(pot, E, s);
  const double r_end = align_up(r_far, h);
  if (pw) return integrate_regular(pot, pw->nu(), E, r_end, h).nodes;
  // n = 1: sweep the full line from the left, starting on the branch bounded
  // (decaying for E < 0) at -infinity.
  const double Rb = align_up(pot.support_radius() + s.r_match_pad, h);
  const double kappa = E < 0.0 ? std::sqrt(-E) : 0.0;
  return integrate_line(pot, E, Rb, r_end, h, 1.0, kappa).nodes;
}

std::vector<double> eigenvalues_impl(const Potential& pot, const PartialWave* pw,
                                     double tol, const SolverSettings& s,
                                     int count) {
  std::vector<double> out;
  if (count == 0) return out;
  double vmin = 0.0;
  const double R = pot.support_radius();
  for (int i = 0; i <= 256; ++i) vmin = std::min(vmin, pot(R * i / 256.0));
  const double E_floor = vmin - 1.0;
  const double r_far = match_radius(pot, s) + 40.0;
  auto nodes_at = [&](double E) { return node_count(pot, pw, E, r_far, s); };
  auto wronskian = [&](double E) {
    return pw ? matching_wronskian(pot, *pw, E, s)
              : matching_wronskian_1d(pot, E, s);
  };

  for (int i = 0; i < count; ++i) {
    // Bracket the i-th eigenvalue by bisection on the node count.
    double lo = E_floor, hi = -1e-12;
    for (int it = 0; it < 50 && hi - lo > 1e-4 * std::max(1.0, -E_floor); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (nodes_at(mid) >= i + 1)
        hi = mid;
      else
        lo = mid;
    }
    // Expand until the matching Wronskian changes sign, then bisect it.
    double wlo = wronskian(lo), whi = wronskian(hi);
    for (int it = 0; it < 60 && wlo * whi > 0.0; ++it) {
      const double w = hi - lo;
      lo = std::max(E_floor, lo - w);
      hi = std::min(-1e-14, hi + w);
      wlo = wronskian(lo);
      whi = wronskian(hi);
    }
    if (wlo * whi > 0.0)
      throw SolverAccuracyError("eigenvalue matching failed to bracket");
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      const double wm = wronskian(mid);
      if (wm == 0.0) {
        lo = hi = mid;
        break;
      }
      if (wm * wlo < 0.0)
        hi = mid;
      else {
        lo = mid;
        wlo = wm;
      }
    }
    out.push_back(0.5 * (lo + hi));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

int count_bound_states(const Potential& pot, const PartialWave& pw,
                       const SolverSettings& s) {
  if (pot.is_zero()) return 0;
  const double r_far = match_radius(pot, s) + 20.0;
  return node_count(pot, &pw, 0.0, r_far, s);
}

int count_bound_states_1d(const Potential& pot, const SolverSettings& s) {
  if (pot.is_zero()) return 0;
  const double r_far = match_radius(pot, s) + 20.0;
  return node_count(pot, nullptr, 0.0, r_far, s);
}

std::vector<double> eigenvalues(const Potential& pot, const PartialWave& pw,
                                double tol, const SolverSettings& s) {
  if (tol <= 0.0) throw std::domain_error("eigenvalues: tol must be positive");
  const int count = count_bound_states(pot, pw, s);
  auto list = eigenvalues_impl(pot, &pw, tol, s, count);
  if (static_cast<int>(list.size()) != count)
    throw SolverAccuracyError("eigenvalue count mismatch with node count");
  return list;
}

std::vector<double> eigenvalues_1d(const Potential& pot, double tol,
                                   const SolverSettings& s) {
  if (tol <= 0.0) throw std::domain_error("eigenvalues: tol must be positive");
  const int count = count_bound_states_1d(pot, s);
  auto list = eigenvalues_impl(pot, nullptr, tol, s, count);
  if (static_cast<int>(list.size()) != count)
    throw SolverAccuracyError("eigenvalue count mismatch with node count");
  return list;
}

namespace {

// Decompose the zero-energy regular solution at r_m into the growing/bounded
// free pair (g, b); returns |A g(r_m)| / |B b(r_m)|.
double channel_resonance_ratio(const Potential& pot, const PartialWave& pw,
                               const SolverSettings& s) {
  const double h = choose_step(pot, 0.0, s);
  const double r_m = align_up(match_radius(pot, s), h);
  const EndState in = integrate_regular(pot, pw.nu(), 0.0, r_m, h);
  const double nu = pw.nu();
  double g, gp, b, bp;
  if (nu == 0.0) {
    g = std::sqrt(r_m) * std::log(r_m);
    gp = (0.5 * std::log(r_m) + 1.0) / std::sqrt(r_m);
    b = std::sqrt(r_m);
    bp = 0.5 / std::sqrt(r_m);
  } else {
    g = std::pow(r_m, nu + 0.5);
    gp = (nu + 0.5) * std::pow(r_m, nu - 0.5);
    b = std::pow(r_m, -nu + 0.5);
    bp = (-nu + 0.5) * std::pow(r_m, -nu - 0.5);
  }
  const double W = g * bp - gp * b;
  const double A = (in.u * bp - in.du * b) / W;
  const double B = (in.du * g - in.u * gp) / W;
  return std::abs(A * g) / std::max(std::abs(B * b), 1e-300);
}

bool ratio_is_resonant(double ratio, const SolverSettings& s) {
  if (ratio >= s.resonance_tol * 0.1 && ratio < s.resonance_tol * 10.0)
    throw InconclusiveResonanceError(
        "zero-energy coefficient ratio too close to threshold; refine solver");
  return ratio < s.resonance_tol;
}

}  // namespace

ResonanceReport detect_resonance(const Potential& pot, const SolverSettings& s) {
  ResonanceReport rep;
  rep.n = pot.dimension();
  if (rep.n >= 5) return rep;
  if (pot.is_zero()) {
    // The constant solution of -psi'' = 0 is bounded but not square
    // integrable, so the free line operator is resonant; in n >= 2 the free
    // operator is treated as non-resonant by convention.
    if (rep.n == 1) {
      rep.present = true;
      rep.type = 's';
      rep.count = 1;
      rep.c_plus = rep.c_minus = std::numbers::sqrt2 / 2.0;
    }
    return rep;
  }

  if (rep.n == 1) {
    const double h = choose_step(pot, 0.0, s);
    const double Rb = align_up(pot.support_radius() + s.r_match_pad, h);
    const EndState end = integrate_line(pot, 0.0, Rb, Rb, h, 1.0, 0.0);
    const double gamma = end.du;                  // coefficient of x
    const double alpha = end.u - Rb * end.du;     // bounded coefficient
    const double ratio = std::abs(gamma) * (Rb + 1.0) /
                         std::max(std::abs(alpha), 1e-300);
    if (ratio_is_resonant(ratio, s)) {
      rep.present = true;
      rep.type = 's';
      rep.count = 1;
      double cm = 1.0, cp = alpha;
      const double norm = std::hypot(cm, cp);
      cm /= norm;
      cp /= norm;
      if (cp < 0.0) {
        cp = -cp;
        cm = -cm;
      }
      rep.c_plus = cp;
      rep.c_minus = cm;
    }
    return rep;
  }

  if (rep.n == 2) {
    if (ratio_is_resonant(channel_resonance_ratio(pot, {2, 1}, s), s)) {
      rep.present = true;
      rep.type = 'p';
      rep.count = 2;  // radial symmetry ties the two p channels together
      return rep;
    }
    if (ratio_is_resonant(channel_resonance_ratio(pot, {2, 0}, s), s)) {
      rep.present = true;
      rep.type = 's';
      rep.count = 1;
    }
    return rep;
  }

  // n = 3 or 4: s-channel only.
  if (ratio_is_resonant(channel_resonance_ratio(pot, {rep.n, 0}, s), s)) {
    rep.present = true;
    rep.type = 's';
    rep.count = 1;
  }
  return rep;
}

}  // namespace levscat
