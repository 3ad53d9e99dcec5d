// Grid-based certification of reductions, identities and ODE solutions.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "heunred/core.hpp"
#include "heunred/forms.hpp"
#include "heunred/identities.hpp"
#include "heunred/numerics.hpp"

namespace heunred {

enum class GridKind { chebyshev, uniform };

/// Real abscissae shifted by imag_offset. Without an explicit interval the
/// grid spans [-0.4 rho, 0.4 rho] where rho is the largest radius on which
/// both sides are admissible.
struct GridSpec {
  int points = 21;
  GridKind kind = GridKind::chebyshev;
  std::optional<double> lo, hi;
  double imag_offset = 0.0;

  static GridSpec interval(double lo, double hi, int points = 21,
                           GridKind kind = GridKind::uniform) {
    GridSpec g;
    g.points = points;
    g.kind = kind;
    g.lo = lo;
    g.hi = hi;
    return g;
  }
};

struct VerificationReport {
  std::vector<cplx> grid;
  std::vector<double> rel_errors;
  double max_rel_err = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<std::string> notes;
  double truncation_estimate = 0.0;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

namespace detail {

inline std::vector<double> abscissae(double lo, double hi, int n, GridKind kind) {
  std::vector<double> xs;
  if (n <= 0) return xs;
  if (n == 1) return {0.5 * (lo + hi)};
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  for (int k = 0; k < n; ++k) {
    if (kind == GridKind::uniform) {
      xs.push_back(lo + (hi - lo) * k / (n - 1));
    } else {
      // Chebyshev-Lobatto, ascending; snap the centre point to exactly mid
      const double c = -std::cos(std::numbers::pi * k / (n - 1));
      xs.push_back(2 * k == n - 1 ? mid : mid + half * c);
    }
  }
  return xs;
}

/// Largest rho in (0, rho_max] for which every point of a dense sampling of
/// [-0.4 rho, 0.4 rho] (+ offset) is admissible; bisection.
inline double admissible_radius(double rho_max, double imag_offset,
                                const std::function<bool(cplx)>& ok) {
  auto all_ok = [&](double rho) {
    for (double x : abscissae(-0.4 * rho, 0.4 * rho, 201, GridKind::uniform))
      if (!ok({x, imag_offset})) return false;
    return true;
  };
  if (all_ok(rho_max)) return rho_max;
  double lo = 0.0, hi = rho_max;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (all_ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

inline bool safe_predicate(const std::function<bool(cplx)>& pred, cplx z) {
  try {
    return pred(z);
  } catch (const HeunError&) {
    return false;
  }
}

inline std::vector<cplx> build_grid(const GridSpec& spec, double rho_max,
                                    const std::function<bool(cplx)>& ok,
                                    std::vector<std::string>& notes) {
  auto guarded = [&](cplx z) { return safe_predicate(ok, z); };
  std::vector<cplx> grid;
  if (spec.lo && spec.hi) {
    std::size_t dropped = 0;
    for (double x : abscissae(*spec.lo, *spec.hi, spec.points, spec.kind)) {
      const cplx z{x, spec.imag_offset};
      if (guarded(z))
        grid.push_back(z);
      else
        ++dropped;
    }
    if (dropped > 0)
      notes.push_back(std::to_string(dropped) + " requested grid point(s) outside the admissible domain were dropped");
  } else {
    double rho = admissible_radius(rho_max, spec.imag_offset, guarded);
    // the sampled check can miss a node of the final grid; shrink until none fail
    for (int shrink = 0; rho > 0.0 && shrink < 200; ++shrink, rho *= 0.98) {
      grid.clear();
      for (double x : abscissae(-0.4 * rho, 0.4 * rho, spec.points, spec.kind))
        grid.push_back({x, spec.imag_offset});
      if (std::all_of(grid.begin(), grid.end(), guarded)) break;
    }
    if (!std::all_of(grid.begin(), grid.end(), guarded)) grid.clear();
    if (!grid.empty()) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "grid radius rho = %.6g", rho);
      notes.emplace_back(buf);
    }
  }
  if (grid.empty()) throw HeunError(ErrorKind::empty_grid, "no admissible grid points");
  return grid;
}

inline void finish(VerificationReport& r, double tol) {
  r.tolerance = tol;
  r.max_rel_err = 0.0;
  for (double e : r.rel_errors) r.max_rel_err = std::max(r.max_rel_err, e);
  r.pass = r.max_rel_err <= tol;
}

}  // namespace detail

/// Compares the normalized Frobenius solution of p with an arbitrary
/// closed-form candidate.
inline VerificationReport verify_function(const HeunParams& p,
                                          const std::function<cplx(cplx)>& candidate,
                                          const std::function<bool(cplx)>& admissible,
                                          const GridSpec& spec, double tol,
                                          int order = default_series_order) {
  const SeriesSolution s = heun_series(p, order);
  VerificationReport r;
  auto ok = [&](cplx z) { return in_series_domain(s, z) && admissible(z); };
  r.grid = detail::build_grid(spec, s.radius, ok, r.notes);
  for (cplx z : r.grid) {
    const Jet lhs = heun_eval(s, z);
    const cplx rhs = candidate(z);
    r.rel_errors.push_back(std::abs(lhs.value - rhs) / std::max(1.0, std::abs(lhs.value)));
    r.truncation_estimate = std::max(r.truncation_estimate, lhs.truncation);
  }
  detail::finish(r, tol);
  return r;
}

/// Compares the normalized Frobenius solution of p with the form pointwise.
inline VerificationReport verify_reduction(const HeunParams& p, const HypergeometricForm& f,
                                           const GridSpec& spec, double tol,
                                           int order = default_series_order) {
  if (f.degenerate())
    throw HeunError(ErrorKind::degenerate, "form has c2 at a non-positive integer");
  return verify_function(
      p, [&](cplx z) { return eval_hyp_form(f, z); },
      [&](cplx z) { return form_admissible(f, z); }, spec, tol, order);
}

/// Compares H_p(z) with prefactor(z) H_{p'}(arg_map(z)).
inline VerificationReport verify_identity(const HeunParams& p, const TransformResult& t,
                                          const GridSpec& spec, double tol,
                                          int order = default_series_order) {
  const SeriesSolution lhs_series = heun_series(p, order);
  const SeriesSolution rhs_series = heun_series(t.params, order);
  VerificationReport r;
  auto ok = [&](cplx z) {
    if (!in_series_domain(lhs_series, z) || !t.prefactor.off_cut(z)) return false;
    return in_series_domain(rhs_series, t.arg_map(z));
  };
  r.grid = detail::build_grid(spec, lhs_series.radius, ok, r.notes);
  for (cplx z : r.grid) {
    const Jet lhs = heun_eval(lhs_series, z);
    const Jet rhs = heun_eval(rhs_series, t.arg_map(z));
    const cplx pre = t.prefactor(z);
    r.rel_errors.push_back(std::abs(lhs.value - pre * rhs.value) /
                           std::max(1.0, std::abs(lhs.value)));
    r.truncation_estimate =
        std::max(r.truncation_estimate, lhs.truncation + std::abs(pre) * rhs.truncation);
  }
  detail::finish(r, tol);
  r.notes.push_back("identity " + t.identity_id());
  return r;
}

inline VerificationReport verify_identity(const HeunParams& p, IdentityId id,
                                          const GridSpec& spec, double tol,
                                          int order = default_series_order) {
  return verify_identity(p, apply_identity(p, id), spec, tol, order);
}

// --- residual certification -------------------------------------------------

struct SolutionEvaluator {
  std::function<Jet(cplx)> jet;
  std::function<bool(cplx)> admissible = [](cplx) { return true; };
  std::string label;
};

inline SolutionEvaluator series_evaluator(SeriesSolution s) {
  auto shared = std::make_shared<SeriesSolution>(std::move(s));
  return {[shared](cplx z) { return heun_eval(*shared, z); },
          [shared](cplx z) { return in_series_domain(*shared, z); }, "frobenius series"};
}

namespace detail {

inline double contour_radius(const HeunParams& p, cplx z) {
  const double dist = std::min({std::abs(z), std::abs(z - 1.0), std::abs(z - p.d)});
  return std::min(0.05, 0.25 * dist);
}

inline SolutionEvaluator contour_evaluator(const HeunParams& p,
                                           std::function<cplx(cplx)> value,
                                           std::function<bool(cplx)> pointwise_ok,
                                           std::string label) {
  auto jet = [p, value](cplx z) { return contour_jet(value, z, contour_radius(p, z)); };
  auto ok = [p, pointwise_ok](cplx z) {
    const double r = contour_radius(p, z);
    if (r <= 0.0 || !pointwise_ok(z)) return false;
    for (int k = 0; k < 16; ++k)
      if (!pointwise_ok(z + r * std::polar(1.0, 2.0 * std::numbers::pi * k / 16))) return false;
    return true;
  };
  return {jet, ok, std::move(label)};
}

}  // namespace detail

/// Derivatives by contour differentiation of the evaluated form.
inline SolutionEvaluator form_evaluator(const HeunParams& p, const HypergeometricForm& f) {
  return detail::contour_evaluator(
      p, [f](cplx z) { return eval_hyp_form(f, z); },
      [f](cplx z) { return form_admissible(f, z); }, "hypergeometric form");
}

/// Value by Gauss-Legendre quadrature, derivatives by contour differentiation.
inline SolutionEvaluator quadrature_evaluator(const HeunParams& p, const QuadratureSolution& q) {
  return detail::contour_evaluator(
      p, [q](cplx z) { return q(z); }, [q](cplx z) { return q.admissible(z); },
      "quadrature");
}

/// Heun residual of the evaluated solution at each grid point, relative to
/// max(1, |H|). Singular grid points are dropped.
inline VerificationReport verify_solution(const HeunParams& p, const SolutionEvaluator& ev,
                                          const GridSpec& spec, double tol) {
  VerificationReport r;
  auto regular = [&](cplx z) {
    return z != cplx{0.0} && z != cplx{1.0} && z != p.d;
  };
  std::size_t singular = 0;
  // singular points are dropped below, so they must not shrink the grid
  auto ok = [&](cplx z) { return !regular(z) || ev.admissible(z); };
  std::vector<cplx> grid =
      detail::build_grid(spec, std::min(1.0, std::abs(p.d)), ok, r.notes);
  for (cplx z : grid) {
    if (!regular(z)) {
      ++singular;
      continue;
    }
    r.grid.push_back(z);
  }
  if (singular > 0)
    r.notes.push_back(std::to_string(singular) + " singular grid point(s) rejected");
  if (r.grid.empty()) throw HeunError(ErrorKind::empty_grid, "no regular grid points");
  for (cplx z : r.grid) {
    const Jet j = ev.jet(z);
    r.rel_errors.push_back(ode_residual(p, j.value, j.d1, j.d2, z) /
                           std::max(1.0, std::abs(j.value)));
    r.truncation_estimate = std::max(r.truncation_estimate, j.truncation);
  }
  detail::finish(r, tol);
  if (!ev.label.empty()) r.notes.push_back("evaluator: " + ev.label);
  return r;
}

}  // namespace heunred
