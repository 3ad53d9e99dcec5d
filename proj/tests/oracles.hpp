// Test-only reference computations. Nothing here calls into the library's
// recurrence, 2F1 summation or transformation tables.
#pragma once

#include <cmath>
#include <algorithm>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Poly = std::vector<cplx>;

inline Poly poly_mul(const Poly& x, const Poly& y) {
  Poly r(x.size() + y.size() - 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
  return r;
}

inline Poly poly_add(Poly x, const Poly& y) {
  if (y.size() > x.size()) x.resize(y.size(), 0.0);
  for (std::size_t i = 0; i < y.size(); ++i) x[i] += y[i];
  return x;
}

inline Poly poly_scale(Poly x, cplx s) {
  for (auto& c : x) c *= s;
  return x;
}

/// Dense complex solve, full pivoting.
inline std::vector<cplx> dense_solve(std::vector<std::vector<cplx>> a, std::vector<cplx> b) {
  const std::size_t n = b.size();
  std::vector<std::size_t> col(n);
  for (std::size_t i = 0; i < n; ++i) col[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (std::abs(a[i][j]) > std::abs(a[pr][pc])) pr = i, pc = j;
    std::swap(a[k], a[pr]);
    std::swap(b[k], b[pr]);
    for (auto& row : a) std::swap(row[k], row[pc]);
    std::swap(col[k], col[pc]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<cplx> y(n);
  for (std::size_t k = n; k-- > 0;) {
    cplx s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a[k][j] * y[j];
    y[k] = s / a[k][k];
  }
  std::vector<cplx> x(n);
  for (std::size_t k = 0; k < n; ++k) x[col[k]] = y[k];
  return x;
}

/// Taylor coefficients c_0..c_N of the H(0) = 1 solution, by substituting a
/// truncated polynomial into z(z-1)(z-d)H'' + P1 H' + (abz - q)H = 0 and
/// solving the first N coefficient equations as one linear system.
inline std::vector<cplx> heun_coefficients_bruteforce(cplx d, cplx q, cplx a, cplx b, cplx g,
                                                      cplx dl, cplx e, int N) {
  const Poly z{0.0, 1.0}, zm1{-1.0, 1.0}, zmd{-d, 1.0};
  const Poly p2 = poly_mul(poly_mul(z, zm1), zmd);
  const Poly p1 = poly_add(poly_add(poly_scale(poly_mul(zm1, zmd), g), poly_scale(poly_mul(z, zmd), dl)),
                           poly_scale(poly_mul(z, zm1), e));
  const Poly p0{-q, a * b};
  // column n holds the image of z^n under the operator
  auto image = [&](int n) {
    Poly out(N + 4, 0.0);
    for (std::size_t j = 0; j < p2.size(); ++j)
      if (n >= 2 && n - 2 + static_cast<int>(j) < static_cast<int>(out.size()))
        out[n - 2 + j] += p2[j] * static_cast<double>(n) * (n - 1.0);
    for (std::size_t j = 0; j < p1.size(); ++j)
      if (n >= 1 && n - 1 + static_cast<int>(j) < static_cast<int>(out.size()))
        out[n - 1 + j] += p1[j] * static_cast<double>(n);
    for (std::size_t j = 0; j < p0.size(); ++j)
      if (n + static_cast<int>(j) < static_cast<int>(out.size())) out[n + j] += p0[j];
    return out;
  };
  std::vector<std::vector<cplx>> m(N, std::vector<cplx>(N));
  std::vector<cplx> rhs(N);
  const Poly im0 = image(0);
  for (int k = 0; k < N; ++k) rhs[k] = -im0[k];
  for (int n = 1; n <= N; ++n) {
    const Poly im = image(n);
    for (int k = 0; k < N; ++k) m[k][n - 1] = im[k];
  }
  std::vector<cplx> c = dense_solve(m, rhs);
  c.insert(c.begin(), 1.0);
  return c;
}

/// Plain partial sums of 2F1, |x| < 1 only.
inline cplx hyp2f1_naive(cplx a, cplx b, cplx c, cplx x, int terms = 4000) {
  cplx sum = 1.0, term = 1.0;
  for (int n = 0; n < terms; ++n) {
    term *= (a + double(n)) * (b + double(n)) / ((c + double(n)) * (n + 1.0)) * x;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

/// Centered differences for first and second derivatives.
inline cplx fd1(const std::function<cplx(cplx)>& f, cplx z, double h = 1e-5) {
  return (f(z - 2.0 * h) - 8.0 * f(z - h) + 8.0 * f(z + h) - f(z + 2.0 * h)) / (12.0 * h);
}

inline cplx fd2(const std::function<cplx(cplx)>& f, cplx z, double h = 1e-4) {
  return (-f(z - 2.0 * h) + 16.0 * f(z - h) - 30.0 * f(z) + 16.0 * f(z + h) - f(z + 2.0 * h)) /
         (12.0 * h * h);
}

/// Heun operator written out directly from the equation.
inline cplx heun_lhs(cplx d, cplx q, cplx a, cplx b, cplx g, cplx dl, cplx e, cplx h, cplx h1,
                     cplx h2, cplx z) {
  return h2 + (g / z + dl / (z - 1.0) + e / (z - d)) * h1 +
         (a * b * z - q) / (z * (z - 1.0) * (z - d)) * h;
}

inline double rel(cplx x, cplx y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
  cplx complex(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi)}; }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
};

}  // namespace oracle
