// Heun parameter sets, argument maps and power prefactors.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace heunred {

using cplx = std::complex<double>;

inline constexpr double default_tol_exact = 1e-12;
inline constexpr double default_tol_condition = 1e-10;

enum class ErrorKind {
  invalid_input,
  precondition,
  out_of_domain,
  logarithmic_case,
  condition_violated,
  unreachable_target,
  singular_point,
  empty_grid,
  degenerate,
};

class HeunError : public std::runtime_error {
 public:
  HeunError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline bool is_finite(cplx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// |x - y| <= tol * max(1, |x|, |y|)
inline bool approx_equal(cplx x, cplx y, double tol) {
  const double scale = std::max({1.0, std::abs(x), std::abs(y)});
  return std::abs(x - y) <= tol * scale;
}

inline bool is_nonpositive_integer(cplx z, double tol = default_tol_exact) {
  if (std::abs(z.imag()) > tol) return false;
  const double r = std::round(z.real());
  return r <= 0.0 && std::abs(z.real() - r) <= tol * std::max(1.0, std::abs(r));
}

// ---------------------------------------------------------------------------
// MobiusMap: z -> (alpha z + beta) / (gamma z + delta)
// ---------------------------------------------------------------------------

struct MobiusMap {
  cplx alpha{1.0}, beta{0.0}, gamma{0.0}, delta{1.0};

  static MobiusMap identity() { return {}; }

  static MobiusMap make(cplx alpha, cplx beta, cplx gamma, cplx delta) {
    MobiusMap m{alpha, beta, gamma, delta};
    if (std::abs(m.determinant()) == 0.0 || !is_finite(m.determinant()))
      throw HeunError(ErrorKind::invalid_input, "Mobius map is not invertible");
    return m;
  }

  cplx determinant() const { return alpha * delta - beta * gamma; }

  cplx operator()(cplx z) const {
    const cplx den = gamma * z + delta;
    if (den == cplx{0.0})
      throw HeunError(ErrorKind::out_of_domain, "Mobius map evaluated at its pole");
    return (alpha * z + beta) / den;
  }

  /// this ∘ inner, i.e. z -> this(inner(z)).
  MobiusMap after(const MobiusMap& inner) const {
    return {alpha * inner.alpha + beta * inner.gamma,
            alpha * inner.beta + beta * inner.delta,
            gamma * inner.alpha + delta * inner.gamma,
            gamma * inner.beta + delta * inner.delta};
  }

  MobiusMap inverse() const { return {delta, -beta, -gamma, alpha}; }
};

/// Projective equality: the coefficient vectors are parallel.
inline bool equivalent(const MobiusMap& x, const MobiusMap& y, double tol) {
  const cplx u[4] = {x.alpha, x.beta, x.gamma, x.delta};
  const cplx v[4] = {y.alpha, y.beta, y.gamma, y.delta};
  double nu = 0, nv = 0;
  for (int i = 0; i < 4; ++i) {
    nu = std::max(nu, std::abs(u[i]));
    nv = std::max(nv, std::abs(v[i]));
  }
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (std::abs(u[i] * v[j] - u[j] * v[i]) > tol * nu * nv) return false;
  return true;
}

// ---------------------------------------------------------------------------
// PowerPrefactor: scale * prod_k (c0_k + c1_k z)^{e_k}
//
// Every power uses the principal branch. Products are only meaningful where
// each base stays in the right half plane, which is what the verification
// grids enforce.
// ---------------------------------------------------------------------------

struct PowerFactor {
  cplx c0{1.0};
  cplx c1{0.0};
  cplx exponent{0.0};

  cplx base(cplx z) const { return c0 + c1 * z; }
};

struct PowerPrefactor {
  std::vector<PowerFactor> factors;
  cplx scale{1.0};

  bool empty() const { return factors.empty() && scale == cplx{1.0}; }

  cplx operator()(cplx z) const {
    cplx out = scale;
    for (const auto& f : factors) {
      const cplx b = f.base(z);
      if (b == cplx{0.0}) {
        if (f.exponent.real() < 0.0)
          throw HeunError(ErrorKind::out_of_domain, "prefactor base vanishes");
        if (f.exponent != cplx{0.0}) return cplx{0.0};
        continue;
      }
      out *= std::pow(b, f.exponent);
    }
    return out;
  }

  /// True when every base has positive real part at z.
  bool off_cut(cplx z) const {
    return std::all_of(factors.begin(), factors.end(),
                       [&](const PowerFactor& f) { return f.base(z).real() > 0.0; });
  }

  PowerPrefactor times(const PowerPrefactor& other) const {
    PowerPrefactor out = *this;
    out.factors.insert(out.factors.end(), other.factors.begin(), other.factors.end());
    out.scale *= other.scale;
    return out;
  }

  /// Rewrites z -> P(m(z)) as a product of affine powers.
  /// (c0 + c1 m(z)) = K (1 + k1 z) / (1 + k2 z) with K = c0 + c1 m(0).
  PowerPrefactor composed_with(const MobiusMap& m) const {
    if (m.delta == cplx{0.0})
      throw HeunError(ErrorKind::precondition,
                      "prefactor composition needs a map regular at z = 0");
    PowerPrefactor out;
    out.scale = scale;
    for (const auto& f : factors) {
      const cplx num0 = f.c0 * m.delta + f.c1 * m.beta;
      const cplx num1 = f.c0 * m.gamma + f.c1 * m.alpha;
      if (num0 == cplx{0.0})
        throw HeunError(ErrorKind::precondition,
                        "composed prefactor base vanishes at z = 0");
      const cplx k = num0 / m.delta;
      if (k != cplx{1.0}) out.scale *= std::pow(k, f.exponent);
      if (num1 != cplx{0.0}) out.factors.push_back({1.0, num1 / num0, f.exponent});
      if (m.gamma != cplx{0.0})
        out.factors.push_back({1.0, m.gamma / m.delta, -f.exponent});
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// HeunParams
// ---------------------------------------------------------------------------

/// Parameters of H'' + (Γ/z + Δ/(z-1) + ε/(z-d)) H' + (abz - q) H / (z(z-1)(z-d)) = 0.
/// epsilon is always the Fuchsian complement a + b + 1 - Γ - Δ.
struct HeunParams {
  cplx d, q, a, b, gamma, delta, epsilon;

  cplx fuchsian_residual() const { return a + b + 1.0 - (gamma + delta + epsilon); }

  friend bool operator==(const HeunParams&, const HeunParams&) = default;
};

inline HeunParams make_params(cplx d, cplx q, cplx a, cplx b, cplx gamma, cplx delta) {
  for (cplx v : {d, q, a, b, gamma, delta})
    if (!is_finite(v))
      throw HeunError(ErrorKind::invalid_input, "non-finite Heun parameter");
  if (std::abs(d) <= default_tol_exact)
    throw HeunError(ErrorKind::invalid_input, "d at regular singularity 0");
  if (std::abs(d - 1.0) <= default_tol_exact)
    throw HeunError(ErrorKind::invalid_input, "d at regular singularity 1");
  return HeunParams{d, q, a, b, gamma, delta, a + b + 1.0 - gamma - delta};
}

struct Validity {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

inline Validity validate(const HeunParams& p, double tol_exact = default_tol_exact) {
  Validity v;
  const std::pair<const char*, cplx> named[] = {
      {"d", p.d},         {"q", p.q},         {"a", p.a},
      {"b", p.b},         {"gamma", p.gamma}, {"delta", p.delta},
      {"epsilon", p.epsilon}};
  for (const auto& [name, value] : named)
    if (!is_finite(value)) v.violations.push_back(std::string("non-finite ") + name);
  if (!v.ok()) return v;
  if (std::abs(p.d) <= tol_exact) v.violations.emplace_back("d at regular singularity 0");
  if (std::abs(p.d - 1.0) <= tol_exact)
    v.violations.emplace_back("d at regular singularity 1");
  const double scale = 1.0 + std::abs(p.a) + std::abs(p.b);
  if (std::abs(p.fuchsian_residual()) > tol_exact * scale)
    v.violations.emplace_back("Fuchsian constraint a+b+1 = gamma+delta+epsilon violated");
  return v;
}

/// |a + b + 1 - Γ - Δ - ε| / (1 + |a| + |b|)
inline double fuchsian_defect(const HeunParams& p) {
  return std::abs(p.fuchsian_residual()) / (1.0 + std::abs(p.a) + std::abs(p.b));
}

}  // namespace heunred
