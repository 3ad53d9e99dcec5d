// Heun parameter maps and energy formulas for four quantum-mechanical
// problems:
//   - Coulomb problem on the 3-sphere (d = -1)
//   - s-wave bound states in an attractive inverse-square potential
//   - limit density of the discrete-time quantum walk
//   - charged particle on a sphere with a monopole field and Coulomb force
#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "heunred/core.hpp"
#include "heunred/forms.hpp"
#include "heunred/identities.hpp"
#include "heunred/numerics.hpp"
#include "heunred/reduction.hpp"

namespace heunred {

// ===========================================================================
// Coulomb problem on the 3-sphere
// ===========================================================================

struct CoulombSphereInput {
  int m = 0;  // |m|
  cplx gamma{0.0};
  cplx beta{0.0};
  cplx energy{0.0};
};

/// Parameters written through the two square roots s± = sqrt(1 + E ± iγ),
/// which lets callers pick branches explicitly.
inline HeunParams coulomb_params_from_roots(int m, cplx s_plus, cplx s_minus, cplx beta) {
  const double mp1 = m + 1.0;
  const cplx i{0.0, 1.0};
  return make_params(-1.0, i * beta / 2.0, mp1 + (s_minus - s_plus) / 2.0,
                     mp1 - (s_minus + s_plus) / 2.0, 1.0 - s_plus, mp1);
}

inline HeunParams coulomb_params(const CoulombSphereInput& in) {
  if (in.m < 0) throw HeunError(ErrorKind::invalid_input, "m must be non-negative");
  const cplx i{0.0, 1.0};
  const cplx s_plus = std::sqrt(1.0 + in.energy + i * in.gamma);
  const cplx s_minus = std::sqrt(1.0 + in.energy - i * in.gamma);
  return coulomb_params_from_roots(in.m, s_plus, s_minus, in.beta);
}

/// E_n = (n+m)(n+m+2) - γ² / (4(n+1+m)²). n may be complex (see n_reduc).
inline cplx coulomb_spectrum(cplx n, int m, cplx gamma) {
  const cplx nm = n + static_cast<double>(m);
  return nm * (nm + 2.0) - gamma * gamma / (4.0 * (nm + 1.0) * (nm + 1.0));
}

struct CoulombReducedEnergy {
  cplx energy;
  cplx n;
};

/// Energy forced by q = a(Δ + Γ - b) after the line-17 transport to d = 2,
/// and the matching (generally non-integer) quantum number.
inline CoulombReducedEnergy coulomb_reduc_energy(cplx beta, cplx gamma, int m,
                                                 double tol = default_tol_condition) {
  if (approx_equal(beta, gamma, tol))
    throw HeunError(ErrorKind::precondition, "beta = gamma is a pole of the reduced energy");
  const double mp1 = m + 1.0, mp1_2 = mp1 * mp1;
  const cplx b2 = beta * beta, g2 = gamma * gamma, bg = beta - gamma;
  const cplx num = -b2 * b2 + 4.0 * gamma * b2 * beta -
                   2.0 * (3.0 * g2 + 2.0 * mp1_2) * b2 +
                   4.0 * (g2 * gamma + 2.0 * mp1_2 * gamma) * beta - g2 * g2 +
                   4.0 * m * (m + 2.0) * mp1_2 * g2;
  return {num / (4.0 * mp1_2 * bg * bg), -mp1 * beta / bg};
}

/// Ground state at β = 0, ab = 0:
/// F((m+1)/2 - (√C1 - √(C1-8iγ))/8, (m+1)/2 - (√C1 + √(C1-8iγ))/8; 1 - √C1/4; z²),
/// C1 = 4(E + iγ + 1). The form may be flagged degenerate (c2 ∈ {0,-1,...}).
inline HypergeometricForm coulomb_ground_state_form(const CoulombSphereInput& in,
                                                    double tol = default_tol_condition) {
  const HeunParams p = coulomb_params(in);
  if (!approx_equal(in.beta, 0.0, tol))
    throw HeunError(ErrorKind::condition_violated, "ground-state form needs beta = 0");
  if (!approx_equal(p.a * p.b, 0.0, tol))
    throw HeunError(ErrorKind::condition_violated, "ground-state form needs a b = 0");
  const cplx i{0.0, 1.0};
  const cplx c1 = 4.0 * (in.energy + i * in.gamma + 1.0);
  const cplx r1 = std::sqrt(c1), r2 = std::sqrt(c1 - 8.0 * i * in.gamma);
  const double h = (in.m + 1.0) / 2.0;
  return {h - (r1 - r2) / 8.0, h - (r1 + r2) / 8.0, 1.0 - r1 / 4.0,
          RationalMap::make({0.0, 0.0, 1.0}, {1.0}), {}};
}

/// Γ = 0 and q = 0: E = -iγ, β = 0. The reduced equation is the associated
/// Legendre equation on {-1, 1, ∞}; the form is kept structural.
struct CoulombLegendreCase {
  HeunParams params;
  HypergeometricForm form;  // F(a, b; m+1; (1-z)/2)
  cplx lambda;              // (sqrt(1 - 2iγ) - 1)/2
  std::string representation;
};

inline CoulombLegendreCase coulomb_legendre_case(int m, cplx gamma) {
  const cplx i{0.0, 1.0};
  CoulombLegendreCase out;
  out.params = coulomb_params({m, gamma, 0.0, -i * gamma});
  out.form = reduce_case3(out.params);
  out.lambda = (std::sqrt(1.0 - 2.0 * i * gamma) - 1.0) / 2.0;
  out.representation = "(z^2-1)^(-" + std::to_string(m) + "/2) [P^" + std::to_string(m) +
                       "_lambda(z) + Q^" + std::to_string(m) + "_lambda(z)], lambda = " +
                       format_number(out.lambda);
  return out;
}

/// Solution of the parameter matching between the line-17 image of the
/// Coulomb equation and the quartic (2,1) formula.
struct CoulombQuarticMatch {
  int m = 0;
  cplx s_plus, s_minus, beta, gamma, energy;
  HeunParams params;
  TransformResult to_d2;
  HypergeometricForm form;
  std::vector<cplx> n_candidates;  // roots of E_n = energy in n
  bool integral_n = false;
};

namespace detail {

inline std::vector<cplx> quartic_mismatch(int m, const std::vector<cplx>& x) {
  const HeunParams p = coulomb_params_from_roots(m, x[0], x[1], x[2]);
  const HeunParams t = apply_line17(p).params;
  return {t.q - t.a * t.b, t.gamma - (t.a + t.b + 2.0) / 4.0, t.delta - (t.a + t.b) / 2.0};
}

/// Solutions n of coulomb_spectrum(n, m, γ) = E. With N = n + m + 1 the
/// equation is N⁴ - (1+E) N² - γ²/4 = 0; roots with N = 0 are excluded.
inline std::vector<cplx> invert_spectrum(cplx energy, int m, cplx gamma) {
  std::vector<cplx> out;
  const cplx s = 1.0 + energy;
  const cplx disc = std::sqrt(s * s + gamma * gamma);
  for (cplx n2 : {(s + disc) / 2.0, (s - disc) / 2.0}) {
    if (std::abs(n2) <= 1e-12) continue;
    for (double sign : {1.0, -1.0}) {
      const cplx n = sign * std::sqrt(n2) - (m + 1.0);
      bool dup = false;
      for (cplx o : out) dup = dup || approx_equal(o, n, 1e-12);
      if (!dup) out.push_back(n);
    }
  }
  return out;
}

}  // namespace detail

inline CoulombQuarticMatch coulomb_quartic_matching(int m, double tol = default_tol_condition) {
  if (m < 0) throw HeunError(ErrorKind::invalid_input, "m must be non-negative");
  const auto root = newton_solve([m](const std::vector<cplx>& x) {
    return detail::quartic_mismatch(m, x);
  }, {1.0, 1.0, 0.3}, tol);
  CoulombQuarticMatch out;
  // drop round-off below the solver tolerance
  auto chop = [tol](cplx x) {
    return cplx{std::abs(x.real()) < tol ? 0.0 : x.real(), std::abs(x.imag()) < tol ? 0.0 : x.imag()};
  };
  out.m = m;
  out.s_plus = chop(root[0]);
  out.s_minus = chop(root[1]);
  out.beta = chop(root[2]);
  const cplx i{0.0, 1.0};
  out.gamma = (out.s_plus * out.s_plus - out.s_minus * out.s_minus) / (2.0 * i);
  out.energy = (out.s_plus * out.s_plus + out.s_minus * out.s_minus) / 2.0 - 1.0;
  out.params = coulomb_params_from_roots(m, out.s_plus, out.s_minus, out.beta);
  out.to_d2 = apply_line17(out.params);
  out.form = pull_back(out.to_d2, reduce_quartic_d2(out.to_d2.params, tol));
  out.n_candidates = detail::invert_spectrum(out.energy, m, out.gamma);
  for (cplx n : out.n_candidates)
    if (std::abs(n.imag()) < 1e-9 && std::abs(n.real() - std::round(n.real())) < 1e-9)
      out.integral_n = true;
  return out;
}

// ===========================================================================
// Attractive inverse-square potential, s-wave
// ===========================================================================

struct InverseSquareInput {
  double omega = 1.0;
  double omega4 = 0.5;
  double kappa = 1.0;
};

inline void check_input(const InverseSquareInput& in) {
  if (!(in.kappa > 0.0)) throw HeunError(ErrorKind::invalid_input, "kappa must be positive");
  if (!(in.omega4 > 0.0 && in.omega4 < 1.0))
    throw HeunError(ErrorKind::invalid_input, "omega4 must lie in (0, 1)");
  if (!std::isfinite(in.omega) || 2.0 * in.omega == 1.0)
    throw HeunError(ErrorKind::invalid_input, "2 omega = 1 leaves d undefined");
}

/// Γ = 3/2, Δ = 1/2 - ω₄, ε = 2, q = 3/2 + κ/(1-2ω),
/// a,b = (3 - ω₄ ∓ ν)/2, ν = sqrt((ω₄-1)² - 4κ/(1-2ω)), d = 2ω/(2ω-1).
inline HeunParams inverse_square_params(const InverseSquareInput& in) {
  check_input(in);
  const double k = in.kappa / (1.0 - 2.0 * in.omega);
  const cplx nu = std::sqrt(cplx{(in.omega4 - 1.0) * (in.omega4 - 1.0) - 4.0 * k});
  return make_params(2.0 * in.omega / (2.0 * in.omega - 1.0), 1.5 + k,
                     (3.0 - in.omega4 - nu) / 2.0, (3.0 - in.omega4 + nu) / 2.0, 1.5,
                     0.5 - in.omega4);
}

/// Closed form at ω₄ = 1/2:
/// F(5/4 ∓ sqrt(2ω-1+16κ)/(4 sqrt(2ω-1)); 3/2; (2ω-1) z/(2ω)).
inline HypergeometricForm inverse_square_delta0_form(const InverseSquareInput& in) {
  check_input(in);
  const cplx w = 2.0 * in.omega - 1.0;
  const cplx root = std::sqrt(w + 16.0 * in.kappa) / (4.0 * std::sqrt(w));
  return {1.25 - root, 1.25 + root, 1.5,
          RationalMap::make({0.0, (2.0 * in.omega - 1.0) / (2.0 * in.omega)}, {1.0}), {}};
}

/// κ that makes q = 0 (and then ab = 0 at ω₄ = 1/2): κ = 3ω - 3/2.
inline double inverse_square_trivial_kappa(double omega) { return 3.0 * omega - 1.5; }

struct FeasibilityVerdict {
  CatalogPair pair;
  bool feasible = false;
  std::string reason;
  double omega = 0.0;                    // from d = 2ω/(2ω-1)
  std::optional<double> kappa;           // when fixed by the pair
  std::optional<double> omega4_bound;    // κ > 0 needs ω₄ beyond this value
  std::optional<double> omega4_forced;   // when the pair pins ω₄
};

/// Solves q = ab p under the inverse-square map. With K = κ/(1-2ω):
///   3/2 + K = p (2 - ω₄ + K).
inline FeasibilityVerdict inverse_square_feasibility(const CatalogPair& pair) {
  FeasibilityVerdict v;
  v.pair = pair;
  const double d = pair.d.real(), p = pair.p.real();
  v.omega = d / (2.0 * (d - 1.0));
  const double one_minus_2w = -1.0 / (d - 1.0);
  char buf[200];
  if (std::abs(p - 1.0) < 1e-14) {
    v.omega4_forced = 0.5;
    v.reason = "trivializes to omega4 = 1/2; also found in the case with {delta = 0 and q = ab}";
    if (std::abs(d - 4.0) < 1e-14)
      v.reason += "; gamma = 3/2 while the degree-3 formula needs gamma = 1/2";
    return v;
  }
  if (std::abs(p) < 1e-14) {
    v.kappa = -1.5 * one_minus_2w;
    v.feasible = *v.kappa > 0.0;
    std::snprintf(buf, sizeof buf, "requires omega = %.10g and kappa = %.10g%s", v.omega,
                  *v.kappa, v.feasible ? "" : " < 0, prohibited");
    v.reason = buf;
    return v;
  }
  // κ(ω₄) = (1-2ω)(p(2-ω₄) - 3/2)/(1-p), linear in ω₄
  auto kappa_at = [&](double w4) { return one_minus_2w * (p * (2.0 - w4) - 1.5) / (1.0 - p); };
  v.omega4_bound = 2.0 - 1.5 / p;
  v.feasible = std::max(kappa_at(0.0), kappa_at(1.0)) > 0.0;
  const bool needs_below = kappa_at(*v.omega4_bound - 1.0) > 0.0;
  std::snprintf(buf, sizeof buf, "kappa > 0 needs omega4 %s %.10g%s", needs_below ? "<" : ">",
                *v.omega4_bound,
                v.feasible ? "" : (*v.omega4_bound <= 0.0 ? "; needs negative omega4"
                                                           : "; outside (0, 1)"));
  v.reason = buf;
  return v;
}

// ===========================================================================
// Discrete-time quantum walk limit density
// ===========================================================================

struct QuantumWalkInput {
  double d = 4.0;
};

/// Γ = 1/2, Δ = 2, ε = 3/2, a = b = 3/2, q = (2d+1)/4.
inline HeunParams quantum_walk_params(const QuantumWalkInput& in) {
  if (!(in.d > 0.0)) throw HeunError(ErrorKind::invalid_input, "d must be positive");
  return make_params(in.d, (2.0 * in.d + 1.0) / 4.0, 1.5, 1.5, 0.5, 2.0);
}

namespace detail {

inline void check_density_point(cplx z, double d) {
  if (z == cplx{1.0}) throw HeunError(ErrorKind::out_of_domain, "density pole at z = 1");
  if ((cplx{d} - z).real() <= 0.0)
    throw HeunError(ErrorKind::out_of_domain, "density needs Re z < d");
}

}  // namespace detail

/// sqrt(1-d) / (π (1-z) sqrt(d-z)); complex for d > 1.
inline cplx quantum_walk_density(cplx z, double d) {
  detail::check_density_point(z, d);
  return std::sqrt(cplx{1.0 - d}) / (std::numbers::pi * (1.0 - z) * std::sqrt(d - z));
}

/// Same solution scaled to H(0) = 1: sqrt(d) / ((1-z) sqrt(d-z)).
inline cplx quantum_walk_density_normalized(cplx z, double d) {
  detail::check_density_point(z, d);
  return std::sqrt(d) / ((1.0 - z) * std::sqrt(d - z));
}

// ===========================================================================
// Charged particle on a sphere
// ===========================================================================

struct ChargedParticleInput {
  double S = 1.0;
  int m = 0;
  double R = 1.0;
  double l0 = std::numeric_limits<double>::infinity();
  double eps_prime = 1.0;
};

struct ChargedParticleParams {
  HeunParams params;
  double a_prime = 0.0, b_prime = 0.0;
  bool complex_ab = false;  // 4S² + 4ε' + 1 < 0
};

/// Γ = 2a'+1, Δ = ε = b'+1, d = -1, q = -4R/l0 with a' = |S-m|, b' = |S+m|,
/// a,b = a'+b'+1 ± sqrt(4S² + 4ε' + 1). `swap` exchanges a and b.
inline ChargedParticleParams charged_particle_params(const ChargedParticleInput& in,
                                                     bool swap = false) {
  if (!(in.R > 0.0)) throw HeunError(ErrorKind::invalid_input, "R must be positive");
  if (!(in.l0 > 0.0)) throw HeunError(ErrorKind::invalid_input, "l0 must be positive");
  ChargedParticleParams out;
  out.a_prime = std::abs(in.S - in.m);
  out.b_prime = std::abs(in.S + in.m);
  const double disc = 4.0 * in.S * in.S + 4.0 * in.eps_prime + 1.0;
  out.complex_ab = disc < 0.0;
  const cplx root = std::sqrt(cplx{disc});
  const double s = out.a_prime + out.b_prime + 1.0;
  cplx a = s + root, b = s - root;
  if (swap) std::swap(a, b);
  const double q = std::isinf(in.l0) ? 0.0 : -4.0 * in.R / in.l0;
  out.params = make_params(-1.0, q, a, b, 2.0 * out.a_prime + 1.0, out.b_prime + 1.0);
  return out;
}

/// ε' = (a'+b')(a'+b'+2)/4 - S², the energy at which ab = 0.
inline double charged_particle_trivial_energy(double a_prime, double b_prime, double S) {
  const double s = a_prime + b_prime;
  return s * (s + 2.0) / 4.0 - S * S;
}

/// ab written directly: (a'+b')(a'+b'+2) - 4(ε' + S²).
inline double charged_particle_ab(double a_prime, double b_prime, double S, double eps_prime) {
  const double s = a_prime + b_prime;
  return s * (s + 2.0) - 4.0 * (eps_prime + S * S);
}

/// F((a'+b'+1 + r)/2, (a'+b'+1 - r)/2; a'+1; z²), r = sqrt(4S² + 4ε' + 1).
inline HypergeometricForm charged_particle_harmonic_form(const ChargedParticleInput& in) {
  const double ap = std::abs(in.S - in.m), bp = std::abs(in.S + in.m);
  const cplx r = std::sqrt(cplx{4.0 * in.S * in.S + 4.0 * in.eps_prime + 1.0});
  const double s = ap + bp + 1.0;
  return {(s + r) / 2.0, (s - r) / 2.0, ap + 1.0, RationalMap::make({0.0, 0.0, 1.0}, {1.0}), {}};
}

}  // namespace heunred
