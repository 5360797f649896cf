#ifndef LEVSCAT_SRC_INTERNAL_HPP
#define LEVSCAT_SRC_INTERNAL_HPP

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace levscat::detail {

/// d(f)/d(lambda) on a geometric lambda grid: Richardson-extrapolated central
/// differences in log lambda, second-order one-sided at the ends.
inline std::vector<double> grid_derivative(const std::vector<double>& lambda,
                                           const std::vector<double>& f) {
  const std::size_t N = lambda.size();
  std::vector<double> out(N, 0.0);
  if (N < 3) return out;
  const double d = std::log(lambda[1] / lambda[0]);
  auto central = [&](std::size_t i, std::size_t w) {
    return (f[i + w] - f[i - w]) / (2.0 * w * d);
  };
  for (std::size_t i = 0; i < N; ++i) {
    double slope;
    if (i == 0)
      slope = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * d);
    else if (i == N - 1)
      slope = (3.0 * f[N - 1] - 4.0 * f[N - 2] + f[N - 3]) / (2.0 * d);
    else if (i >= 2 && i + 2 < N)
      slope = (4.0 * central(i, 1) - central(i, 2)) / 3.0;
    else
      slope = central(i, 1);
    out[i] = slope / lambda[i];
  }
  return out;
}

/// Least-squares fit |f| ~ c * lambda^e over the given points (log-log);
/// returns {c, e}. Points with |f| = 0 are skipped.
inline std::pair<double, double> power_law_fit(const std::vector<double>& lambda,
                                               const std::vector<double>& f,
                                               std::size_t begin, std::size_t end) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t i = begin; i < end; ++i) {
    const double a = std::abs(f[i]);
    if (a <= 0.0) continue;
    const double x = std::log(lambda[i]);
    const double y = std::log(a);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2) return {0.0, 0.0};
  const double e = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double c = std::exp((sy - e * sx) / m);
  return {c, e};
}

/// Integral of f over a geometric lambda grid: composite Simpson in
/// x = ln(lambda) applied to f * lambda (fourth-order in the log spacing).
/// Falls back to trapezoid when the grid is too short or not geometric.
inline double integrate_log(const std::vector<double>& lambda,
                            const std::vector<double>& f) {
  const std::size_t N = lambda.size();
  auto trap = [&] {
    double acc = 0.0;
    for (std::size_t i = 1; i < N; ++i)
      acc += 0.5 * (f[i] + f[i - 1]) * (lambda[i] - lambda[i - 1]);
    return acc;
  };
  if (N < 3) return trap();
  const double d = std::log(lambda[1] / lambda[0]);
  for (std::size_t i = 1; i < N; ++i)
    if (std::abs(std::log(lambda[i] / lambda[i - 1]) - d) > 1e-9 * d) return trap();
  std::vector<double> g(N);
  for (std::size_t i = 0; i < N; ++i) g[i] = f[i] * lambda[i];
  double acc = 0.0;
  std::size_t i = 0;
  for (; i + 2 < N; i += 2) acc += d / 3.0 * (g[i] + 4.0 * g[i + 1] + g[i + 2]);
  if (i + 1 < N)  // odd interval count: quadratic through the last three points
    acc += d / 12.0 * (-g[N - 3] + 8.0 * g[N - 2] + 5.0 * g[N - 1]);
  return acc;
}

/// Composite trapezoid of f(lambda) over the grid.
inline double trapezoid(const std::vector<double>& lambda,
                        const std::vector<double>& f) {
  double acc = 0.0;
  for (std::size_t i = 1; i < lambda.size(); ++i)
    acc += 0.5 * (f[i] + f[i - 1]) * (lambda[i] - lambda[i - 1]);
  return acc;
}

}  // namespace levscat::detail

#endif
