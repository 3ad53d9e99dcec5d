// Local Frobenius solution of the general Heun equation at z = 0, the Gauss
// hypergeometric series, and the Heun ODE residual.
#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "heunred/core.hpp"

namespace heunred {

inline constexpr int default_series_order = 128;

/// Value and first two derivatives at a point.
struct Jet {
  cplx value{0.0};
  cplx d1{0.0};
  cplx d2{0.0};
  double truncation = 0.0;  // estimated absolute truncation error of value
};

struct SeriesSolution {
  HeunParams params;
  std::vector<cplx> coefficients;  // c_0 .. c_N with c_0 = 1
  int order = 0;
  double radius = 0.0;  // min(1, |d|)
};

/// Coefficients of the solution H(z) = sum c_n z^n, c_0 = 1, from
///   d (n+1)(n+Γ) c_{n+1} = [n((n-1+Γ)(1+d) + dΔ + ε) + q] c_n
///                          - (n-1+a)(n-1+b) c_{n-1}.
inline SeriesSolution heun_series(const HeunParams& p, int order = default_series_order) {
  if (order < 2) throw HeunError(ErrorKind::invalid_input, "series order must be >= 2");
  if (is_nonpositive_integer(p.gamma))
    throw HeunError(ErrorKind::logarithmic_case,
                    "logarithmic case: gamma is a non-positive integer");
  if (!validate(p).ok()) throw HeunError(ErrorKind::invalid_input, "invalid Heun parameters");

  SeriesSolution s;
  s.params = p;
  s.order = order;
  s.radius = std::min(1.0, std::abs(p.d));
  auto& c = s.coefficients;
  c.resize(static_cast<std::size_t>(order) + 1);
  c[0] = 1.0;
  c[1] = p.q / (p.gamma * p.d);
  const cplx one_plus_d = 1.0 + p.d;
  const cplx d_delta_eps = p.d * p.delta + p.epsilon;
  for (int n = 1; n < order; ++n) {
    const double nn = n;
    const cplx lin = nn * ((nn - 1.0 + p.gamma) * one_plus_d + d_delta_eps) + p.q;
    const cplx back = (nn - 1.0 + p.a) * (nn - 1.0 + p.b);
    c[n + 1] = (lin * c[n] - back * c[n - 1]) / (p.d * (nn + 1.0) * (nn + p.gamma));
  }
  return s;
}

inline bool in_series_domain(const SeriesSolution& s, cplx z) {
  return std::abs(z) <= 0.5 * s.radius * (1.0 + 1e-12);
}

/// Horner evaluation of the truncated series and its first two derivatives.
/// Only |z| <= radius/2 is accepted.
inline Jet heun_eval(const SeriesSolution& s, cplx z) {
  if (!in_series_domain(s, z))
    throw HeunError(ErrorKind::out_of_domain,
                    "|z| exceeds half the series convergence radius");
  const auto& c = s.coefficients;
  const int n = static_cast<int>(c.size()) - 1;
  cplx v = c[n], v1 = 0.0, v2 = 0.0;
  for (int k = n - 1; k >= 0; --k) {
    v2 = v2 * z + 2.0 * v1;
    v1 = v1 * z + v;
    v = v * z + c[k];
  }
  const double az = std::abs(z);
  const double tail = std::abs(c[n]) * std::pow(az, n) + std::abs(c[n - 1]) * std::pow(az, n - 1);
  return {v, v1, v2, 2.0 * tail};
}

// ---------------------------------------------------------------------------
// Gauss hypergeometric function
// ---------------------------------------------------------------------------

inline constexpr double hyp2f1_series_limit = 0.9;

namespace detail {

inline cplx hyp2f1_series(cplx a, cplx b, cplx c, cplx x) {
  constexpr int max_terms = 20000;
  constexpr double eps = 1e-17;
  cplx term = 1.0, sum = 1.0;
  int small = 0;
  for (int n = 0; n < max_terms; ++n) {
    const double nn = n;
    term *= (a + nn) * (b + nn) / ((c + nn) * (nn + 1.0)) * x;
    sum += term;
    if (term == cplx{0.0}) return sum;
    if (std::abs(term) <= eps * std::abs(sum)) {
      if (++small == 3) return sum;
    } else {
      small = 0;
    }
  }
  throw HeunError(ErrorKind::out_of_domain, "2F1 series did not converge");
}

}  // namespace detail

/// True when gauss_2f1 can evaluate at x (directly or via Pfaff).
inline bool in_hyp2f1_domain(cplx x) {
  if (!is_finite(x)) return false;
  if (std::abs(x) <= hyp2f1_series_limit) return true;
  return x != cplx{1.0} && std::abs(x / (x - 1.0)) <= hyp2f1_series_limit;
}

/// F(a,b;c;x) by the Gauss series on |x| <= 0.9, or through
/// F(a,b;c;x) = (1-x)^{-a} F(a,c-b;c;x/(x-1)) when that argument is smaller.
inline cplx gauss_2f1(cplx a, cplx b, cplx c, cplx x) {
  if (is_nonpositive_integer(c))
    throw HeunError(ErrorKind::degenerate, "2F1 with c a non-positive integer");
  if (!in_hyp2f1_domain(x))
    throw HeunError(ErrorKind::out_of_domain, "2F1 argument outside the series domain");
  if (x == cplx{0.0}) return 1.0;
  const bool direct_ok = std::abs(x) <= hyp2f1_series_limit;
  if (x != cplx{1.0}) {
    const cplx w = x / (x - 1.0);
    if (std::abs(w) <= hyp2f1_series_limit && (!direct_ok || std::abs(w) < std::abs(x)))
      return std::pow(1.0 - x, -a) * detail::hyp2f1_series(a, c - b, c, w);
  }
  return detail::hyp2f1_series(a, b, c, x);
}

// ---------------------------------------------------------------------------
// ODE residual
// ---------------------------------------------------------------------------

inline cplx heun_operator(const HeunParams& p, cplx value, cplx d1, cplx d2, cplx z) {
  if (z == cplx{0.0} || z == cplx{1.0} || z == p.d)
    throw HeunError(ErrorKind::singular_point, "residual requested at a singular point");
  const cplx drift = p.gamma / z + p.delta / (z - 1.0) + p.epsilon / (z - p.d);
  const cplx potential = (p.a * p.b * z - p.q) / (z * (z - 1.0) * (z - p.d));
  return d2 + drift * d1 + potential * value;
}

inline double ode_residual(const HeunParams& p, cplx value, cplx d1, cplx d2, cplx z) {
  return std::abs(heun_operator(p, value, d1, d2, z));
}

/// First and second derivatives of an analytic function from its values on
/// a circle of the given radius (trapezoidal Cauchy integrals).
inline Jet contour_jet(const std::function<cplx(cplx)>& f, cplx z, double radius,
                       int points = 64) {
  Jet j;
  j.value = f(z);
  cplx s1 = 0.0, s2 = 0.0;
  for (int k = 0; k < points; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / points;
    const cplx e = std::polar(1.0, theta);
    const cplx fv = f(z + radius * e);
    s1 += fv / e;
    s2 += fv / (e * e);
  }
  j.d1 = s1 / (static_cast<double>(points) * radius);
  j.d2 = 2.0 * s2 / (static_cast<double>(points) * radius * radius);
  return j;
}

// ---------------------------------------------------------------------------
// Small dense complex linear solve (partial pivoting)
// ---------------------------------------------------------------------------

inline std::vector<cplx> solve_linear(std::vector<std::vector<cplx>> m, std::vector<cplx> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) == 0.0)
      throw HeunError(ErrorKind::degenerate, "singular linear system");
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const cplx f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<cplx> x(n);
  for (std::size_t i = n; i-- > 0;) {
    cplx s = rhs[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= m[i][k] * x[k];
    x[i] = s / m[i][i];
  }
  return x;
}

/// Newton iteration for a square complex system with a forward-difference
/// Jacobian. Returns the root; throws if the residual does not reach tol.
inline std::vector<cplx> newton_solve(
    const std::function<std::vector<cplx>(const std::vector<cplx>&)>& f,
    std::vector<cplx> x, double tol = 1e-10, int max_iter = 100) {
  const std::size_t n = x.size();
  for (int it = 0; it < max_iter; ++it) {
    const auto fx = f(x);
    double norm = 0.0;
    for (cplx v : fx) norm = std::max(norm, std::abs(v));
    if (norm <= tol * 1e-3) return x;
    std::vector<std::vector<cplx>> jac(n, std::vector<cplx>(n));
    for (std::size_t k = 0; k < n; ++k) {
      const double h = 1e-7 * std::max(1.0, std::abs(x[k]));
      auto xh = x;
      xh[k] += h;
      const auto fh = f(xh);
      for (std::size_t r = 0; r < n; ++r) jac[r][k] = (fh[r] - fx[r]) / h;
    }
    std::vector<cplx> rhs(n);
    for (std::size_t r = 0; r < n; ++r) rhs[r] = -fx[r];
    const auto step = solve_linear(jac, rhs);
    for (std::size_t k = 0; k < n; ++k) x[k] += step[k];
  }
  const auto fx = f(x);
  double norm = 0.0;
  for (cplx v : fx) norm = std::max(norm, std::abs(v));
  if (norm > tol)
    throw HeunError(ErrorKind::condition_violated, "Newton iteration did not converge");
  return x;
}

}  // namespace heunred
