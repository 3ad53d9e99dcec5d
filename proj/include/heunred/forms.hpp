// Hypergeometric target forms prefactor(z) * F(a2, b2; c2; R(z)) and the
// quadrature solution of the ab = q = 0 equation.
#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "heunred/core.hpp"
#include "heunred/numerics.hpp"

namespace heunred {

using Poly = std::vector<cplx>;  // ascending powers

namespace poly {

inline Poly trimmed(Poly p) {
  while (p.size() > 1 && p.back() == cplx{0.0}) p.pop_back();
  return p;
}

inline Poly mul(const Poly& x, const Poly& y) {
  if (x.empty() || y.empty()) return {};
  Poly out(x.size() + y.size() - 1, cplx{0.0});
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  return out;
}

inline Poly add(const Poly& x, const Poly& y) {
  Poly out(std::max(x.size(), y.size()), cplx{0.0});
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += x[i];
  for (std::size_t i = 0; i < y.size(); ++i) out[i] += y[i];
  return out;
}

inline Poly scaled(Poly p, cplx s) {
  for (auto& c : p) c *= s;
  return p;
}

inline Poly power(const Poly& p, int k) {
  Poly out{1.0};
  for (int i = 0; i < k; ++i) out = mul(out, p);
  return out;
}

inline cplx eval(const Poly& p, cplx z) {
  cplx v = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * z + p[i];
  return v;
}

inline int degree(const Poly& p) {
  for (std::size_t i = p.size(); i-- > 0;)
    if (p[i] != cplx{0.0}) return static_cast<int>(i);
  return -1;
}

}  // namespace poly

inline constexpr int max_rational_degree = 4;

struct RationalMap {
  Poly num{0.0, 1.0};
  Poly den{1.0};

  static RationalMap identity() { return {}; }

  static RationalMap make(Poly num, Poly den) {
    RationalMap r{poly::trimmed(std::move(num)), poly::trimmed(std::move(den))};
    if (poly::degree(r.den) < 0)
      throw HeunError(ErrorKind::invalid_input, "rational map with zero denominator");
    if (r.degree() > max_rational_degree)
      throw HeunError(ErrorKind::invalid_input, "rational map degree exceeds 4");
    return r;
  }

  int degree() const { return std::max(poly::degree(num), poly::degree(den)); }

  cplx operator()(cplx z) const {
    const cplx dv = poly::eval(den, z);
    if (dv == cplx{0.0})
      throw HeunError(ErrorKind::out_of_domain, "rational map evaluated at a pole");
    return poly::eval(num, z) / dv;
  }

  /// z -> R(m(z)), cleared of the Mobius denominator.
  RationalMap composed_with(const MobiusMap& m) const {
    const int k = std::max(static_cast<int>(num.size()), static_cast<int>(den.size())) - 1;
    const Poly top{m.beta, m.alpha};
    const Poly bottom{m.delta, m.gamma};
    auto lift = [&](const Poly& p) {
      Poly out{0.0};
      for (int i = 0; i < static_cast<int>(p.size()); ++i)
        out = poly::add(out, poly::scaled(poly::mul(poly::power(top, i), poly::power(bottom, k - i)),
                                          p[static_cast<std::size_t>(i)]));
      return out;
    };
    return make(lift(num), lift(den));
  }
};

struct HypergeometricForm {
  cplx a2, b2, c2;
  RationalMap arg_map;
  PowerPrefactor prefactor;

  bool degenerate() const { return is_nonpositive_integer(c2); }
};

/// Evaluation is legal where R(z) lies in the 2F1 domain and every
/// prefactor base has positive real part.
inline bool form_admissible(const HypergeometricForm& f, cplx z) {
  if (poly::eval(f.arg_map.den, z) == cplx{0.0}) return false;
  if (!f.prefactor.off_cut(z)) return false;
  return in_hyp2f1_domain(f.arg_map(z));
}

inline cplx eval_hyp_form(const HypergeometricForm& f, cplx z) {
  if (!f.prefactor.off_cut(z))
    throw HeunError(ErrorKind::out_of_domain, "z on a prefactor branch cut");
  return f.prefactor(z) * gauss_2f1(f.a2, f.b2, f.c2, f.arg_map(z));
}

/// Integrand exponents for C1 + C2 ∫ z^{-Γ} (z-1)^{-Δ} (z-d)^{-ε} dz.
struct QuadratureDescriptor {
  cplx d;
  cplx exp_z, exp_z_minus_1, exp_z_minus_d;  // -Γ, -Δ, -ε
  bool infinity_regular = true;              // ab = 0 removes the singularity at ∞

  friend bool operator==(const QuadratureDescriptor&, const QuadratureDescriptor&) = default;
};

namespace detail {

struct GaussLegendre {
  std::vector<double> nodes, weights;
};

inline const GaussLegendre& gauss_legendre_20() {
  static const GaussLegendre rule = [] {
    constexpr int n = 20;
    GaussLegendre r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      r.nodes[i] = x;
      r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
  }();
  return rule;
}

}  // namespace detail

/// H(z) = C1 + C2 ∫_{z0}^{z} w(t) dt along the straight segment. Each factor
/// (t - t_k)^{-e_k} is rotated by a unit constant so that its base is real
/// and positive at z0; the rotation is absorbed into C2.
class QuadratureSolution {
 public:
  QuadratureSolution(QuadratureDescriptor desc, cplx base_point, cplx c1 = 0.0, cplx c2 = 1.0,
                     int panels = 8)
      : desc_(desc), z0_(base_point), c1_(c1), c2_(c2), panels_(panels) {
    const cplx pts[3] = {0.0, 1.0, desc.d};
    for (int k = 0; k < 3; ++k) {
      const cplx off = z0_ - pts[k];
      if (off == cplx{0.0})
        throw HeunError(ErrorKind::singular_point, "quadrature base point is singular");
      points_[k] = pts[k];
      rot_[k] = std::abs(off) / off;
    }
    exps_ = {desc.exp_z, desc.exp_z_minus_1, desc.exp_z_minus_d};
  }

  const QuadratureDescriptor& descriptor() const { return desc_; }
  cplx base_point() const { return z0_; }

  bool admissible(cplx z) const {
    for (int k = 0; k < 3; ++k) {
      if (exps_[k] == cplx{0.0}) continue;
      // the base is affine along the segment, so checking the ends suffices
      if ((rot_[k] * (z - points_[k])).real() <= 0.0) return false;
    }
    return true;
  }

  cplx integrand(cplx t) const {
    cplx w = 1.0;
    for (int k = 0; k < 3; ++k)
      if (exps_[k] != cplx{0.0}) w *= std::pow(rot_[k] * (t - points_[k]), exps_[k]);
    return w;
  }

  cplx operator()(cplx z) const {
    if (!admissible(z))
      throw HeunError(ErrorKind::out_of_domain, "quadrature path crosses a branch cut");
    const auto& gl = detail::gauss_legendre_20();
    const cplx span = z - z0_;
    cplx sum = 0.0;
    for (int p = 0; p < panels_; ++p) {
      const double lo = static_cast<double>(p) / panels_;
      const double hi = static_cast<double>(p + 1) / panels_;
      const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      for (std::size_t i = 0; i < gl.nodes.size(); ++i)
        sum += gl.weights[i] * half * integrand(z0_ + (mid + half * gl.nodes[i]) * span);
    }
    return c1_ + c2_ * sum * span;
  }

 private:
  QuadratureDescriptor desc_;
  cplx z0_, c1_, c2_;
  int panels_;
  std::array<cplx, 3> points_{}, rot_{}, exps_{};
};

}  // namespace heunred
