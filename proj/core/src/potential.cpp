#include "levscat/potential.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "levscat/errors.hpp"
#include "levscat/specfun.hpp"

namespace levscat {

namespace {

constexpr double kSupportCutoff = 1e-12;

using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;

double quad_0R(const std::function<double(double)>& f, double R) {
  double err = 0.0;
  double v = Quad::integrate(f, 0.0, R, 12, 1e-12, &err);
  if (std::abs(err) > 1e-8 * (1.0 + std::abs(v)))
    throw IntegrationError("moment quadrature failed to converge");
  return v;
}

// m-th derivative of exp(-x^2) is (-1)^m H_m(x) exp(-x^2) with the
// physicists' Hermite polynomial H_m.
double hermite(int m, double x) {
  double h0 = 1.0, h1 = 2.0 * x;
  if (m == 0) return h0;
  for (int i = 1; i < m; ++i) {
    double h2 = 2.0 * x * h1 - 2.0 * i * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

// Derivatives of sech^2 as polynomials in t = tanh(r): with p(t) the current
// coefficient polynomial, d/dr p(t) = p'(t) (1 - t^2).
double sech2_derivative(int order, double r) {
  std::vector<double> p = {1.0, 0.0, -1.0};  // sech^2 = 1 - t^2
  for (int o = 0; o < order; ++o) {
    std::vector<double> dp(p.size() > 1 ? p.size() - 1 : 1, 0.0);
    for (std::size_t i = 1; i < p.size(); ++i) dp[i - 1] = i * p[i];
    std::vector<double> next(dp.size() + 2, 0.0);
    for (std::size_t i = 0; i < dp.size(); ++i) {
      next[i] += dp[i];
      next[i + 2] -= dp[i];
    }
    p = std::move(next);
  }
  const double t = std::tanh(r);
  double v = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * t + p[i];
  return v;
}

}  // namespace

Potential Potential::square_well(int n, double depth, double radius) {
  if (n < 1 || n > 5) throw std::domain_error("potential: dimension must be in 1..5");
  if (radius <= 0.0) throw std::domain_error("square_well: radius must be positive");
  Potential p;
  p.kind_ = ProfileKind::square_well;
  p.n_ = n;
  p.p1_ = depth;
  p.p2_ = radius;
  p.rho_ = 1e6;
  p.support_ = radius;
  return p;
}

Potential Potential::gaussian(int n, double amplitude, double width) {
  if (n < 1 || n > 5) throw std::domain_error("potential: dimension must be in 1..5");
  if (width <= 0.0) throw std::domain_error("gaussian: width must be positive");
  Potential p;
  p.kind_ = ProfileKind::gaussian;
  p.n_ = n;
  p.p1_ = amplitude;
  p.p2_ = width;
  p.rho_ = 1e6;
  p.support_ = std::abs(amplitude) > kSupportCutoff
                   ? width * std::sqrt(std::log(std::abs(amplitude) / kSupportCutoff))
                   : 0.0;
  return p;
}

Potential Potential::poschl_teller(double strength) {
  if (strength <= 0.0) throw std::domain_error("poschl_teller: strength must be positive");
  Potential p;
  p.kind_ = ProfileKind::poschl_teller;
  p.n_ = 1;
  p.p1_ = strength;
  p.rho_ = 1e6;
  const double amp = strength * (strength + 1.0);
  p.support_ = std::acosh(std::sqrt(amp / kSupportCutoff));
  return p;
}

Potential Potential::tabulated(int n, std::vector<double> r, std::vector<double> v) {
  if (n < 1 || n > 5) throw std::domain_error("potential: dimension must be in 1..5");
  if (r.size() != v.size() || r.size() < 4)
    throw std::domain_error("tabulated: need >= 4 matching samples");
  if (r.front() != 0.0) throw std::domain_error("tabulated: grid must start at 0");
  for (std::size_t i = 1; i < r.size(); ++i)
    if (r[i] <= r[i - 1]) throw std::domain_error("tabulated: grid must be strictly increasing");
  Potential p;
  p.kind_ = ProfileKind::tabulated;
  p.n_ = n;
  p.rho_ = 1e6;
  p.tab_r_ = std::move(r);
  p.tab_v_ = std::move(v);
  p.build_spline();
  p.support_ = 0.0;
  for (std::size_t i = p.tab_v_.size(); i-- > 0;) {
    if (std::abs(p.tab_v_[i]) >= kSupportCutoff) {
      p.support_ = p.tab_r_[std::min(i + 1, p.tab_r_.size() - 1)];
      break;
    }
  }
  return p;
}

std::string Potential::kind_name() const {
  switch (kind_) {
    case ProfileKind::square_well: return "square_well";
    case ProfileKind::gaussian: return "gaussian";
    case ProfileKind::poschl_teller: return "poschl_teller";
    case ProfileKind::tabulated: return "tabulated";
  }
  return "?";
}

bool Potential::is_zero() const {
  if (kind_ == ProfileKind::tabulated)
    return std::all_of(tab_v_.begin(), tab_v_.end(), [](double v) { return v == 0.0; });
  return p1_ == 0.0;
}

double Potential::operator()(double r) const { return derivative(r, 0); }

double Potential::derivative(double r, int order) const {
  if (r < 0.0) throw std::domain_error("potential: radius must be >= 0");
  switch (kind_) {
    case ProfileKind::square_well:
      if (order > 0)
        throw UnsupportedProfileError("square_well is not differentiable");
      // Mean value at the edge: keeps edge-aligned finite-difference grids
      // second-order accurate across the discontinuity.
      if (std::abs(r - p2_) <= 1e-12 * std::max(1.0, p2_)) return -0.5 * p1_;
      return r < p2_ ? -p1_ : 0.0;
    case ProfileKind::gaussian: {
      const double x = r / p2_;
      const double sign = (order % 2 == 0) ? 1.0 : -1.0;
      return p1_ * sign * hermite(order, x) * std::exp(-x * x) /
             std::pow(p2_, order);
    }
    case ProfileKind::poschl_teller:
      return -p1_ * (p1_ + 1.0) * sech2_derivative(order, r);
    case ProfileKind::tabulated:
      if (order > 2)
        throw UnsupportedProfileError(
            "tabulated profile supports derivatives up to order 2");
      return spline_eval(r, order);
  }
  return 0.0;
}

double Potential::moment_power(int p) const {
  if (p < 1) throw std::domain_error("moment_power: p must be >= 1");
  const double vol = specfun::sphere_volume(n_);
  if (kind_ == ProfileKind::square_well)
    return std::pow(-p1_, p) * vol / n_ * std::pow(p2_, n_);
  if (is_zero()) return 0.0;
  const double R = kind_ == ProfileKind::tabulated ? tab_r_.back() : support_;
  return vol * quad_0R(
                   [&](double r) {
                     return std::pow((*this)(r), p) * std::pow(r, n_ - 1);
                   },
                   R);
}

double Potential::moment_grad_sq() const {
  if (kind_ == ProfileKind::square_well)
    throw UnsupportedProfileError("moment_grad_sq needs a differentiable profile");
  if (is_zero()) return 0.0;
  const double vol = specfun::sphere_volume(n_);
  const double R = kind_ == ProfileKind::tabulated ? tab_r_.back() : support_;
  return vol * quad_0R(
                   [&](double r) {
                     const double dv = derivative(r, 1);
                     return dv * dv * std::pow(r, n_ - 1);
                   },
                   R);
}

Potential Potential::scaled(double c) const {
  switch (kind_) {
    case ProfileKind::square_well: {
      Potential p = square_well(n_, c * p1_, p2_);
      p.rho_ = rho_;
      return p;
    }
    case ProfileKind::gaussian: {
      Potential p = gaussian(n_, c * p1_, p2_);
      p.rho_ = rho_;
      return p;
    }
    case ProfileKind::poschl_teller:
      return to_tabulated(2001).scaled(c);
    case ProfileKind::tabulated: {
      std::vector<double> v = tab_v_;
      for (double& x : v) x *= c;
      Potential p = tabulated(n_, tab_r_, std::move(v));
      p.rho_ = rho_;
      return p;
    }
  }
  throw std::logic_error("unreachable");
}

Potential Potential::to_tabulated(int points, int power) const {
  if (points < 4) throw std::domain_error("to_tabulated: need >= 4 points");
  const double R = support_ > 0.0 ? support_ : 1.0;
  std::vector<double> r(points), v(points);
  for (int i = 0; i < points; ++i) {
    r[i] = R * i / (points - 1);
    v[i] = std::pow((*this)(r[i]), power);
  }
  return tabulated(n_, std::move(r), std::move(v));
}

// Natural cubic spline: solve the tridiagonal system for the interior second
// derivatives, with zero curvature at both ends.
void Potential::build_spline() {
  const std::size_t m = tab_r_.size();
  tab_m_.assign(m, 0.0);
  std::vector<double> diag(m, 2.0), rhs(m, 0.0), sub(m, 0.0), sup(m, 0.0);
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const double h0 = tab_r_[i] - tab_r_[i - 1];
    const double h1 = tab_r_[i + 1] - tab_r_[i];
    sub[i] = h0 / (h0 + h1);
    sup[i] = h1 / (h0 + h1);
    rhs[i] = 6.0 / (h0 + h1) *
             ((tab_v_[i + 1] - tab_v_[i]) / h1 - (tab_v_[i] - tab_v_[i - 1]) / h0);
  }
  // Thomas algorithm on the interior unknowns (ends stay zero).
  for (std::size_t i = 2; i + 1 < m; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  for (std::size_t i = m - 2; i >= 1; --i) {
    tab_m_[i] = (rhs[i] - sup[i] * (i + 2 < m ? tab_m_[i + 1] : 0.0)) / diag[i];
    if (i == 1) break;
  }
}

double Potential::spline_eval(double r, int order) const {
  if (r >= tab_r_.back()) return 0.0;
  auto it = std::upper_bound(tab_r_.begin(), tab_r_.end(), r);
  std::size_t i = static_cast<std::size_t>(it - tab_r_.begin());
  if (i == 0) i = 1;
  const double h = tab_r_[i] - tab_r_[i - 1];
  const double A = (tab_r_[i] - r) / h;
  const double B = 1.0 - A;
  switch (order) {
    case 0:
      return A * tab_v_[i - 1] + B * tab_v_[i] +
             ((A * A * A - A) * tab_m_[i - 1] + (B * B * B - B) * tab_m_[i]) *
                 h * h / 6.0;
    case 1:
      return (tab_v_[i] - tab_v_[i - 1]) / h +
             (-(3.0 * A * A - 1.0) * tab_m_[i - 1] + (3.0 * B * B - 1.0) * tab_m_[i]) *
                 h / 6.0;
    case 2:
      return A * tab_m_[i - 1] + B * tab_m_[i];
    default:
      throw UnsupportedProfileError("spline derivative order > 2");
  }
}

}  // namespace levscat
