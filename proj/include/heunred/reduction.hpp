// Detection and construction of Heun-to-hypergeometric reductions.
//
// Four "trivial" cases remove one singular point from the equation. The
// nontrivial ones substitute a rational argument R of degree 2..4 and exist
// only when q = ab p for one of the catalog pairs (d, p).
#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "heunred/core.hpp"
#include "heunred/forms.hpp"
#include "heunred/identities.hpp"

namespace heunred {

enum class CaseTag { case1_eps0, case2_delta0, case3_gamma0, case4_trivial, nontrivial };

struct CatalogPair {
  cplx d;
  cplx p;
  int degree;
};

/// The harmonic orbit pairs plus (4,1).
inline std::vector<CatalogPair> catalog_pairs() {
  return {{-1.0, 0.0, 2}, {0.5, 0.5, 4}, {2.0, 1.0, 4}, {4.0, 1.0, 3}};
}

inline std::string format_number(cplx v) {
  auto fmt = [](double x) {
    if (x == std::round(x) && std::abs(x) < 1e15) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.0f", x);
      return std::string(buf);
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return std::string(buf);
  };
  if (v.imag() == 0.0) return fmt(v.real() == 0.0 ? 0.0 : v.real());
  if (v.real() == 0.0) return fmt(v.imag()) + "i";
  return "(" + fmt(v.real()) + (v.imag() < 0 ? "-" : "+") + fmt(std::abs(v.imag())) + "i)";
}

using ReducedForm = std::variant<std::monostate, HypergeometricForm, QuadratureDescriptor>;

struct ReductionEntry {
  CaseTag tag;
  std::optional<CatalogPair> pair;
  ReducedForm form;
  std::vector<std::string> conditions;  // satisfied conditions
  std::vector<std::string> notes;

  std::string label() const {
    switch (tag) {
      case CaseTag::case1_eps0: return "Case1_eps0";
      case CaseTag::case2_delta0: return "Case2_delta0";
      case CaseTag::case3_gamma0: return "Case3_gamma0";
      case CaseTag::case4_trivial: return "Case4_trivial";
      case CaseTag::nontrivial:
        return "Nontrivial(" + format_number(pair->d) + "," + format_number(pair->p) + ")";
    }
    return "?";
  }

  const HypergeometricForm* hypergeometric() const {
    return std::get_if<HypergeometricForm>(&form);
  }
};

struct ReductionReport {
  std::vector<ReductionEntry> entries;

  bool empty() const { return entries.empty(); }

  bool has(CaseTag tag) const {
    for (const auto& e : entries)
      if (e.tag == tag) return true;
    return false;
  }

  const ReductionEntry* find_pair(cplx d, cplx p, double tol = default_tol_exact) const {
    for (const auto& e : entries)
      if (e.tag == CaseTag::nontrivial && approx_equal(e.pair->d, d, tol) &&
          approx_equal(e.pair->p, p, tol))
        return &e;
    return nullptr;
  }
};

namespace detail {

struct ConditionCheck {
  std::vector<std::string> failed;

  void require(bool ok, const std::string& what) {
    if (!ok) failed.push_back(what);
  }

  void raise_if_failed(const std::string& what) const {
    if (failed.empty()) return;
    std::string msg = what + ": condition(s) violated:";
    for (const auto& f : failed) msg += " [" + f + "]";
    throw HeunError(ErrorKind::condition_violated, msg);
  }
};

inline bool is_zero(cplx x, double tol) { return approx_equal(x, 0.0, tol); }

inline HypergeometricForm plain_form(cplx a2, cplx b2, cplx c2, Poly num, Poly den = {1.0}) {
  return {a2, b2, c2, RationalMap::make(std::move(num), std::move(den)), {}};
}

}  // namespace detail

// --- trivial cases ----------------------------------------------------------

/// ε = 0, q = abd: the z - d factor cancels, leaving F(a, b; Γ; z).
inline HypergeometricForm reduce_case1(const HeunParams& p, double tol = default_tol_condition) {
  detail::ConditionCheck c;
  c.require(detail::is_zero(p.epsilon, tol), "epsilon = 0");
  c.require(approx_equal(p.q, p.a * p.b * p.d, tol), "q = a b d");
  c.raise_if_failed("case 1");
  return detail::plain_form(p.a, p.b, p.gamma, {0.0, 1.0});
}

/// Δ = 0, q = ab: F(a, b; Γ; z/d).
inline HypergeometricForm reduce_case2(const HeunParams& p, double tol = default_tol_condition) {
  detail::ConditionCheck c;
  c.require(detail::is_zero(p.delta, tol), "delta = 0");
  c.require(approx_equal(p.q, p.a * p.b, tol), "q = a b");
  c.raise_if_failed("case 2");
  return detail::plain_form(p.a, p.b, p.gamma, {0.0, 1.0 / p.d});
}

/// Γ = 0, q = 0: F(a, b; Δ; (z-1)/(d-1)), the solution regular at z = 1.
inline HypergeometricForm reduce_case3(const HeunParams& p, double tol = default_tol_condition) {
  detail::ConditionCheck c;
  c.require(detail::is_zero(p.gamma, tol), "gamma = 0");
  c.require(detail::is_zero(p.q, tol), "q = 0");
  c.raise_if_failed("case 3");
  const cplx s = 1.0 / (p.d - 1.0);
  return detail::plain_form(p.a, p.b, p.delta, {-s, s});
}

/// ab = 0, q = 0: H = C1 + C2 ∫ z^{-Γ}(z-1)^{-Δ}(z-d)^{-ε} dz.
inline QuadratureDescriptor reduce_case4(const HeunParams& p, double tol = default_tol_condition) {
  detail::ConditionCheck c;
  c.require(detail::is_zero(p.a * p.b, tol), "a b = 0");
  c.require(detail::is_zero(p.q, tol), "q = 0");
  c.raise_if_failed("case 4");
  return {p.d, -p.gamma, -p.delta, -p.epsilon, true};
}

// --- nontrivial reductions -------------------------------------------------

/// H(-1, 0; a, b, Γ, (a+b-Γ+1)/2; z) = F(a/2, b/2; (Γ+1)/2; z^2).
inline HypergeometricForm reduce_harmonic_d_minus1(const HeunParams& p,
                                                   double tol = default_tol_condition) {
  detail::ConditionCheck c;
  c.require(approx_equal(p.d, -1.0, tol), "d = -1");
  c.require(detail::is_zero(p.q, tol), "q = 0");
  c.require(approx_equal(p.delta, (p.a + p.b - p.gamma + 1.0) / 2.0, tol),
            "delta = (a+b-gamma+1)/2");
  c.raise_if_failed("(d,p) = (-1,0) reduction");
  return detail::plain_form(p.a / 2.0, p.b / 2.0, (p.gamma + 1.0) / 2.0, {0.0, 0.0, 1.0});
}

/// H(2, ab; a, b, (a+b+2)/4, (a+b)/2; t) = F(a/4, b/4; (a+b+2)/4; 1 - 4[t(2-t) - 1/2]^2).
/// The argument equals 4t(2-t)(1-t)^2.
inline HypergeometricForm reduce_quartic_d2(const HeunParams& p,
                                            double tol = default_tol_condition) {
  detail::ConditionCheck c;
  c.require(approx_equal(p.d, 2.0, tol), "d = 2");
  c.require(approx_equal(p.q, p.a * p.b, tol), "q = a b");
  c.require(approx_equal(p.gamma, (p.a + p.b + 2.0) / 4.0, tol), "gamma = (a+b+2)/4");
  c.require(approx_equal(p.delta, (p.a + p.b) / 2.0, tol), "delta = (a+b)/2");
  c.raise_if_failed("(d,p) = (2,1) reduction");
  return detail::plain_form(p.a / 4.0, p.b / 4.0, (p.a + p.b + 2.0) / 4.0,
                            {0.0, 8.0, -20.0, 16.0, -4.0});
}

/// H(4, ab; a, b, 1/2, 2(a+b)/3; z) = F(a/3, b/3; 1/2; 1 - (z-1)^2 (1 - z/4)).
inline HypergeometricForm reduce_cubic_d4(const HeunParams& p, double tol = default_tol_condition) {
  detail::ConditionCheck c;
  c.require(approx_equal(p.d, 4.0, tol), "d = 4");
  c.require(approx_equal(p.q, p.a * p.b, tol), "q = a b");
  c.require(approx_equal(p.gamma, 0.5, tol), "gamma = 1/2");
  c.require(approx_equal(p.delta, 2.0 * (p.a + p.b) / 3.0, tol), "delta = 2(a+b)/3");
  c.raise_if_failed("(d,p) = (4,1) reduction");
  return detail::plain_form(p.a / 3.0, p.b / 3.0, 0.5, {0.0, 2.25, -1.5, 0.25});
}

/// Pulls a form for T.params back to the source parameters of T.
inline HypergeometricForm pull_back(const TransformResult& t, const HypergeometricForm& f) {
  HypergeometricForm out = f;
  out.arg_map = f.arg_map.composed_with(t.arg_map);
  out.prefactor = t.prefactor.times(f.prefactor.composed_with(t.arg_map));
  return out;
}

/// Reduction for a catalog pair, transporting d first when needed. The pair
/// (1/2, 1/2) goes through line 9 to the quartic (2, 1) formula.
inline HypergeometricForm reduce_nontrivial(const HeunParams& p, const CatalogPair& pair,
                                            double tol = default_tol_condition) {
  TransformResult t = transport_to(p, pair.d, default_tol_exact);
  const HeunParams& tp = t.params;
  if (!approx_equal(tp.q, tp.a * tp.b * pair.p, tol))
    throw HeunError(ErrorKind::condition_violated, "q = a b p fails after transport");
  if (approx_equal(pair.d, -1.0, tol)) return pull_back(t, reduce_harmonic_d_minus1(tp, tol));
  if (approx_equal(pair.d, 2.0, tol)) return pull_back(t, reduce_quartic_d2(tp, tol));
  if (approx_equal(pair.d, 4.0, tol)) return pull_back(t, reduce_cubic_d4(tp, tol));
  if (approx_equal(pair.d, 0.5, tol)) {
    const TransformResult t2 = compose(t, apply_line9(tp));
    return pull_back(t2, reduce_quartic_d2(t2.params, tol));
  }
  throw HeunError(ErrorKind::unreachable_target, "no formula for this catalog pair");
}

// --- detection ---------------------------------------------------------------

inline ReductionReport detect_cases(const HeunParams& p, double tol = default_tol_condition) {
  using detail::is_zero;
  ReductionReport report;
  auto add = [&](CaseTag tag, ReducedForm form, std::vector<std::string> conds) {
    report.entries.push_back({tag, std::nullopt, std::move(form), std::move(conds), {}});
  };
  const cplx ab = p.a * p.b;
  if (is_zero(p.epsilon, tol) && approx_equal(p.q, ab * p.d, tol))
    add(CaseTag::case1_eps0, reduce_case1(p, tol), {"epsilon = 0", "q = a b d"});
  if (is_zero(p.delta, tol) && approx_equal(p.q, ab, tol))
    add(CaseTag::case2_delta0, reduce_case2(p, tol), {"delta = 0", "q = a b"});
  if (is_zero(p.gamma, tol) && is_zero(p.q, tol))
    add(CaseTag::case3_gamma0, reduce_case3(p, tol), {"gamma = 0", "q = 0"});
  if (is_zero(ab, tol) && is_zero(p.q, tol)) {
    add(CaseTag::case4_trivial, reduce_case4(p, tol), {"a b = 0", "q = 0"});
    report.entries.back().notes.push_back("no singular point at infinity");
  }

  for (cplx target : d_orbit(p.d, default_tol_exact)) {
    for (const auto& pair : catalog_pairs()) {
      if (!approx_equal(pair.d, target, default_tol_exact)) continue;
      const TransformResult t = transport_to(p, target, default_tol_exact);
      const HeunParams& tp = t.params;
      if (!approx_equal(tp.q, tp.a * tp.b * pair.p, tol)) continue;
      ReductionEntry e{CaseTag::nontrivial, pair, std::monostate{}, {}, {}};
      e.conditions.push_back("q = a b p after " + t.identity_id());
      try {
        e.form = reduce_nontrivial(p, pair, tol);
        e.conditions.emplace_back("exponent conditions of the degree-" +
                                  std::to_string(pair.degree) + " formula");
      } catch (const HeunError& err) {
        e.notes.emplace_back(std::string("necessary condition only; ") + err.what());
      }
      report.entries.push_back(std::move(e));
    }
  }
  return report;
}

}  // namespace heunred
