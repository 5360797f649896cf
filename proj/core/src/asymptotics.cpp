#include "levscat/asymptotics.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "levscat/errors.hpp"
#include "levscat/specfun.hpp"

namespace levscat::asym {

namespace {

constexpr double kPi = std::numbers::pi;

long long factorial(int m) {
  long long f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

// ---- radially-symbolic polynomial algebra ---------------------------------
//
// Everything the commutator expansion produces lives in the ring of finite
// sums q * x^beta * r^s * prod_i V^{(d_i)}(r): differentiation closes on it
// because d_j r = x_j / r and d_j V^{(d)}(r) = x_j r^{-1} V^{(d+1)}(r).

using Poly = std::vector<RadialTerm>;

bool same_shape(const RadialTerm& a, const RadialTerm& b) {
  return a.beta == b.beta && a.s == b.s && a.d == b.d;
}

void normalize(Poly& p) {
  for (auto& t : p) std::sort(t.d.begin(), t.d.end());
  std::sort(p.begin(), p.end(), [](const RadialTerm& a, const RadialTerm& b) {
    if (a.beta != b.beta) return a.beta < b.beta;
    if (a.s != b.s) return a.s < b.s;
    return a.d < b.d;
  });
  Poly out;
  for (const auto& t : p) {
    if (!out.empty() && same_shape(out.back(), t))
      out.back().q += t.q;
    else
      out.push_back(t);
  }
  std::erase_if(out, [](const RadialTerm& t) { return t.q == Rational(0); });
  p = std::move(out);
}

Poly derivative(const Poly& p, int j) {
  Poly out;
  for (const auto& t : p) {
    if (t.beta[j] > 0) {
      RadialTerm a = t;
      a.q *= t.beta[j];
      a.beta[j] -= 1;
      out.push_back(std::move(a));
    }
    if (t.s != 0) {
      RadialTerm b = t;
      b.q *= t.s;
      b.beta[j] += 1;
      b.s -= 2;
      out.push_back(std::move(b));
    }
    for (std::size_t i = 0; i < t.d.size(); ++i) {
      RadialTerm c = t;
      c.beta[j] += 1;
      c.s -= 1;
      c.d[i] += 1;
      out.push_back(std::move(c));
    }
  }
  normalize(out);
  return out;
}

Poly laplacian(const Poly& p, int n) {
  Poly out;
  for (int j = 0; j < n; ++j) {
    Poly dd = derivative(derivative(p, j), j);
    out.insert(out.end(), dd.begin(), dd.end());
  }
  normalize(out);
  return out;
}

Poly multiply(const Poly& a, const Poly& b, int n) {
  Poly out;
  for (const auto& ta : a)
    for (const auto& tb : b) {
      RadialTerm t;
      t.q = ta.q * tb.q;
      t.beta.resize(n);
      for (int j = 0; j < n; ++j) t.beta[j] = ta.beta[j] + tb.beta[j];
      t.s = ta.s + tb.s;
      t.d = ta.d;
      t.d.insert(t.d.end(), tb.d.begin(), tb.d.end());
      out.push_back(std::move(t));
    }
  normalize(out);
  return out;
}

void add_into(DiffOp& op, const std::vector<int>& r, Poly g) {
  auto& slot = op.terms[r];
  slot.insert(slot.end(), g.begin(), g.end());
  normalize(slot);
}

void prune(DiffOp& op) {
  for (auto it = op.terms.begin(); it != op.terms.end();)
    it = it->second.empty() ? op.terms.erase(it) : std::next(it);
}

// [H0, g d^r] = (-Delta g) d^r - 2 sum_j (d_j g) d_j d^r.
DiffOp ad_h0(const DiffOp& op) {
  DiffOp out{op.n, {}};
  for (const auto& [r, g] : op.terms) {
    Poly lap = laplacian(g, op.n);
    for (auto& t : lap) t.q = -t.q;
    add_into(out, r, std::move(lap));
    for (int j = 0; j < op.n; ++j) {
      Poly dg = derivative(g, j);
      for (auto& t : dg) t.q *= -2;
      std::vector<int> rr = r;
      rr[j] += 1;
      add_into(out, rr, std::move(dg));
    }
  }
  prune(out);
  return out;
}

long long binomial(int a, int b) {
  long long r = 1;
  for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

// Multivariate Leibniz composition (g d^a)(h d^b).
DiffOp compose(const DiffOp& A, const DiffOp& B) {
  const int n = A.n;
  DiffOp out{n, {}};
  for (const auto& [a, g] : A.terms)
    for (const auto& [b, h] : B.terms) {
      // iterate over all c <= a componentwise
      std::vector<int> c(n, 0);
      for (;;) {
        Rational w(1);
        for (int j = 0; j < n; ++j) w *= binomial(a[j], c[j]);
        Poly dh = h;
        for (int j = 0; j < n; ++j)
          for (int rep = 0; rep < c[j]; ++rep) dh = derivative(dh, j);
        Poly gh = multiply(g, dh, n);
        for (auto& t : gh) t.q *= w;
        std::vector<int> rr(n);
        for (int j = 0; j < n; ++j) rr[j] = a[j] - c[j] + b[j];
        add_into(out, rr, std::move(gh));
        // next multi-index c <= a
        int j = 0;
        while (j < n) {
          if (c[j] < a[j]) {
            ++c[j];
            break;
          }
          c[j] = 0;
          ++j;
        }
        if (j == n) break;
      }
    }
  prune(out);
  return out;
}

DiffOp v_op(int n) {
  DiffOp op{n, {}};
  RadialTerm t;
  t.q = 1;
  t.beta.assign(n, 0);
  t.s = 0;
  t.d = {0};
  op.terms[std::vector<int>(n, 0)] = {t};
  return op;
}

int max_derivative_order(const DiffOp& op) {
  int m = 0;
  for (const auto& [r, g] : op.terms)
    for (const auto& t : g)
      for (int d : t.d) m = std::max(m, d);
  return m;
}

// Integral over R^n of V(x) * (one coefficient term), split into the Folland
// sphere integral of omega^beta and a radial quadrature.
double integrate_v_times(const Potential& pot, const RadialTerm& t) {
  const int n = pot.dimension();
  const double ang = specfun::sphere_monomial_integral(t.beta);
  if (ang == 0.0) return 0.0;
  const int beta_sum = std::accumulate(t.beta.begin(), t.beta.end(), 0);
  const int e = beta_sum + t.s + n - 1;
  const double R = pot.support_radius();
  if (R == 0.0) return 0.0;
  auto f = [&](double r) {
    double v = std::pow(r, e) * pot(r);
    for (int d : t.d) v *= pot.derivative(r, d);
    return v;
  };
  double err = 0.0;
  const double val =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, R, 12,
                                                                    1e-12, &err);
  if (std::abs(err) > 1e-8 * (1.0 + std::abs(val)))
    throw IntegrationError("heat-coefficient radial quadrature failed");
  return ang * boost::rational_cast<double>(t.q) * val;
}

// Even multi-indices r of length n with |r| = total.
void enumerate_even(int n, int total, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == n - 1) {
    if (total % 2 == 0) {
      cur.push_back(total);
      out.push_back(cur);
      cur.pop_back();
    }
    return;
  }
  for (int v = 0; v <= total; v += 2) {
    cur.push_back(v);
    enumerate_even(n, total - v, cur, out);
    cur.pop_back();
  }
}

}  // namespace

Rational c_coefficient(const std::vector<int>& k) {
  for (int ki : k)
    if (ki < 0) throw std::domain_error("c_coefficient: negative index");
  const int total = std::accumulate(k.begin(), k.end(), 0);
  const int l = static_cast<int>(k.size());
  Rational num(factorial(total + l));
  Rational den(1);
  for (int ki : k) den *= factorial(ki);
  int partial = 0;
  for (int j = 0; j < l; ++j) {
    partial += k[j];
    den *= partial + j + 1;
  }
  return num / den;
}

DiffOp commutator_expand(int n, const std::vector<int>& k) {
  if (n < 1) throw std::domain_error("commutator_expand: n must be >= 1");
  DiffOp result;
  bool first = true;
  for (int ki : k) {
    DiffOp factor = v_op(n);
    for (int c = 0; c < ki; ++c) factor = ad_h0(factor);
    result = first ? factor : compose(result, factor);
    first = false;
  }
  if (first) result = DiffOp{n, {}};  // empty product: handled by caller
  return result;
}

double heat_coefficient_general(const Potential& pot, int j) {
  if (j < 1 || j > 3)
    throw std::domain_error("heat_coefficient_general supports j in {1,2,3}");
  const int n = pot.dimension();
  if (pot.is_zero()) return 0.0;

  const int M = j - 1;
  const int K = 2 * (j - 1);
  double total = 0.0;

  // m = 0 contributes the bare V e^{-tH0} term (j = 1 only).
  if (j == 1) {
    const double pref = -std::pow(kPi, 0.5 * n) / std::pow(2.0 * kPi, n);
    total += pref * pot.moment_power(1);
  }

  for (int m = 1; m <= M; ++m) {
    std::vector<int> k(m, 0);
    for (;;) {
      const int ksum = std::accumulate(k.begin(), k.end(), 0);
      const int rsum = 2 * (m + ksum + 1 - j);
      if (rsum >= 0 && rsum <= ksum) {
        const DiffOp op = commutator_expand(n, k);
        if (pot.kind() == ProfileKind::tabulated && max_derivative_order(op) > 2)
          throw UnsupportedProfileError(
              "general heat coefficient needs a smoother profile");
        std::vector<std::vector<int>> rs;
        std::vector<int> cur;
        enumerate_even(n, rsum, cur, rs);
        const double sign_i = (rsum / 2) % 2 == 0 ? 1.0 : -1.0;  // (-i)^{|r|}
        const double sign_mk = (m + ksum + 1) % 2 == 0 ? 1.0 : -1.0;
        const double cmk = boost::rational_cast<double>(c_coefficient(k));
        const double denom =
            std::pow(2.0 * kPi, n) * (m + 1) * factorial(m + ksum);
        for (const auto& r : rs) {
          auto it = op.terms.find(r);
          if (it == op.terms.end()) continue;
          double gamma_prod = 1.0;
          for (int ri : r) gamma_prod *= std::tgamma(0.5 * (ri + 1));
          double integral = 0.0;
          for (const auto& t : it->second) integral += integrate_v_times(pot, t);
          total += sign_i * cmk * sign_mk * gamma_prod / denom * integral;
        }
      }
      // next k in {0..K}^m
      int pos = 0;
      while (pos < m) {
        if (k[pos] < K) {
          ++k[pos];
          break;
        }
        k[pos] = 0;
        ++pos;
      }
      if (pos == m) break;
    }
  }
  return total;
}

double heat_coefficient_closed(const Potential& pot, int j) {
  const int n = pot.dimension();
  const double pref = std::tgamma(0.5 * n) * specfun::sphere_volume(n) /
                      std::pow(2.0 * kPi, n);
  switch (j) {
    case 1:
      return -pref / 2.0 * pot.moment_power(1);
    case 2:
      return pref / 4.0 * pot.moment_power(2);
    case 3:
      return -pref / 12.0 *
             (pot.moment_power(3) + 0.5 * pot.moment_grad_sq());
    default:
      throw std::domain_error("heat_coefficient_closed supports j in {1,2,3}");
  }
}

AsymptoticData build_asymptotics(const Potential& pot) {
  const int n = pot.dimension();
  if (n < 1 || n > 5) throw std::domain_error("build_asymptotics: n must be in 1..5");
  AsymptoticData d;
  d.n = n;
  const int J = 3;
  // a_3 needs two derivatives of V; for profiles without them the list is
  // honestly truncated (the identity itself only needs j <= floor(n/2)).
  for (int j = 1; j <= J; ++j) {
    try {
      d.a.push_back(pot.is_zero() ? 0.0 : heat_coefficient_closed(pot, j));
    } catch (const UnsupportedProfileError&) {
      break;
    }
  }
  if (n % 2 == 0 && static_cast<int>(d.a.size()) < n / 2)
    throw UnsupportedProfileError("beta_n needs the a_{n/2} coefficient");
  d.beta_n = n % 2 == 0 ? d.a[n / 2 - 1] : 0.0;
  const int p_terms = std::min<int>((n - 1) / 2, d.a.size());
  d.c_im.resize(p_terms);
  for (int j = 1; j <= p_terms; ++j)
    d.c_im[j - 1] = 2.0 * kPi * d.a[j - 1] * specfun::gamma_reciprocal(0.5 * n - j);
  d.C_im.resize(d.a.size());
  for (int j = 1; j <= static_cast<int>(d.a.size()); ++j)
    d.C_im[j - 1] =
        2.0 * kPi * d.a[j - 1] * specfun::gamma_reciprocal(0.5 * n - j + 1.0);
  return d;
}

std::complex<double> eval_p(const AsymptoticData& d, double lambda) {
  if (lambda <= 0.0) throw std::domain_error("eval_p: lambda must be positive");
  double im = 0.0;
  for (std::size_t j = 1; j <= d.c_im.size(); ++j)
    im += d.c_im[j - 1] * std::pow(lambda, 0.5 * d.n - j - 1.0);
  return {0.0, im};
}

std::complex<double> eval_P(const AsymptoticData& d, double lambda) {
  if (lambda <= 0.0) throw std::domain_error("eval_P: lambda must be positive");
  double im = 2.0 * kPi * d.beta_n;
  for (std::size_t j = 1; j <= d.c_im.size(); ++j)
    im += d.C_im[j - 1] * std::pow(lambda, 0.5 * d.n - j);
  return {0.0, im};
}

}  // namespace levscat::asym
