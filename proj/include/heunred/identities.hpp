// Heun-function identities that move the third finite singularity d:
//   line 5 :  d -> d/(d-1),  z -> z/(z-1),  prefactor (1-z)^{-a}
//   line 9 :  d -> 1/d,      z -> z/d
//   line 17:  d = -1 -> 2,   z -> 2z/(z+1), prefactor (1+z)^{-a}
#pragma once

#include <deque>
#include <string>
#include <vector>

#include "heunred/core.hpp"

namespace heunred {

enum class IdentityId { identity, line5, line9, line17 };

inline std::string to_string(IdentityId id) {
  switch (id) {
    case IdentityId::identity: return "identity";
    case IdentityId::line5: return "line5";
    case IdentityId::line9: return "line9";
    case IdentityId::line17: return "line17";
  }
  return "?";
}

inline IdentityId identity_from_string(const std::string& s) {
  if (s == "identity") return IdentityId::identity;
  if (s == "line5" || s == "5") return IdentityId::line5;
  if (s == "line9" || s == "9") return IdentityId::line9;
  if (s == "line17" || s == "17") return IdentityId::line17;
  throw HeunError(ErrorKind::invalid_input, "unknown identity '" + s + "'");
}

/// H_source(z) = prefactor(z) * H_params(arg_map(z)).
struct TransformResult {
  HeunParams params;
  MobiusMap arg_map;
  PowerPrefactor prefactor;
  std::vector<IdentityId> steps;

  std::string identity_id() const {
    if (steps.empty()) return "identity";
    std::string s;
    for (auto id : steps) {
      if (!s.empty()) s += "+";
      s += to_string(id);
    }
    return s;
  }
};

inline TransformResult identity_transform(const HeunParams& p) {
  return {p, MobiusMap::identity(), {}, {}};
}

inline TransformResult apply_line5(const HeunParams& p) {
  const cplx dm1 = p.d - 1.0;
  TransformResult r;
  r.params = make_params(p.d / dm1, (p.a * p.d * p.gamma - p.q) / dm1, p.a,
                         p.a - p.delta + 1.0, p.gamma, p.a - p.b + 1.0);
  r.arg_map = MobiusMap::make(1.0, 0.0, 1.0, -1.0);
  r.prefactor.factors.push_back({1.0, -1.0, -p.a});
  r.steps = {IdentityId::line5};
  return r;
}

inline TransformResult apply_line9(const HeunParams& p) {
  TransformResult r;
  r.params = make_params(1.0 / p.d, p.q / p.d, p.a, p.b, p.gamma,
                         p.a + p.b - p.gamma - p.delta + 1.0);
  r.arg_map = MobiusMap::make(1.0, 0.0, 0.0, p.d);
  r.steps = {IdentityId::line9};
  return r;
}

/// Only defined at d = -1.
inline TransformResult apply_line17(const HeunParams& p, double tol = default_tol_exact) {
  if (!approx_equal(p.d, -1.0, tol))
    throw HeunError(ErrorKind::precondition, "line 17 identity requires d = -1");
  TransformResult r;
  r.params = make_params(2.0, p.a * p.gamma - p.q, p.a, -p.b + p.delta + p.gamma, p.gamma,
                         p.delta);
  r.arg_map = MobiusMap::make(2.0, 0.0, 1.0, 1.0);
  r.prefactor.factors.push_back({1.0, 1.0, -p.a});
  r.steps = {IdentityId::line17};
  return r;
}

inline TransformResult apply_identity(const HeunParams& p, IdentityId id,
                                      double tol = default_tol_exact) {
  switch (id) {
    case IdentityId::identity: return identity_transform(p);
    case IdentityId::line5: return apply_line5(p);
    case IdentityId::line9: return apply_line9(p);
    case IdentityId::line17: return apply_line17(p, tol);
  }
  throw HeunError(ErrorKind::invalid_input, "unknown identity");
}

/// `second` must have been computed from first.params.
inline TransformResult compose(const TransformResult& first, const TransformResult& second) {
  TransformResult r;
  r.params = second.params;
  r.arg_map = second.arg_map.after(first.arg_map);
  r.prefactor = first.prefactor.times(second.prefactor.composed_with(first.arg_map));
  r.steps = first.steps;
  r.steps.insert(r.steps.end(), second.steps.begin(), second.steps.end());
  return r;
}

namespace detail {

inline std::vector<IdentityId> applicable_identities(cplx d, double tol) {
  std::vector<IdentityId> ids;
  if (approx_equal(d, -1.0, tol)) ids.push_back(IdentityId::line17);
  ids.push_back(IdentityId::line5);
  ids.push_back(IdentityId::line9);
  return ids;
}

inline bool contains(const std::vector<cplx>& set, cplx v, double tol) {
  for (cplx s : set)
    if (approx_equal(s, v, tol)) return true;
  return false;
}

inline cplx image_of_d(cplx d, IdentityId id) {
  switch (id) {
    case IdentityId::line5: return d / (d - 1.0);
    case IdentityId::line9: return 1.0 / d;
    case IdentityId::line17: return 2.0;
    case IdentityId::identity: break;
  }
  return d;
}

}  // namespace detail

inline constexpr int max_transport_depth = 3;

/// Values of d reachable by composing at most three identities.
inline std::vector<cplx> d_orbit(cplx d, double tol = default_tol_exact) {
  if (std::abs(d) <= tol || std::abs(d - 1.0) <= tol)
    throw HeunError(ErrorKind::invalid_input, "d at a regular singularity");
  std::vector<cplx> seen{d};
  std::vector<cplx> frontier{d};
  for (int depth = 0; depth < max_transport_depth; ++depth) {
    std::vector<cplx> next;
    for (cplx v : frontier)
      for (auto id : detail::applicable_identities(v, tol)) {
        const cplx w = detail::image_of_d(v, id);
        if (!detail::contains(seen, w, tol)) {
          seen.push_back(w);
          next.push_back(w);
        }
      }
    frontier = std::move(next);
  }
  return seen;
}

/// Breadth-first search over identity compositions (depth <= 3).
inline TransformResult transport_to(const HeunParams& p, cplx target_d,
                                    double tol = default_tol_exact) {
  if (approx_equal(p.d, target_d, tol)) return identity_transform(p);
  std::deque<TransformResult> queue{identity_transform(p)};
  std::vector<cplx> seen{p.d};
  while (!queue.empty()) {
    TransformResult cur = std::move(queue.front());
    queue.pop_front();
    if (static_cast<int>(cur.steps.size()) >= max_transport_depth) continue;
    for (auto id : detail::applicable_identities(cur.params.d, tol)) {
      const cplx w = detail::image_of_d(cur.params.d, id);
      if (detail::contains(seen, w, tol)) continue;
      seen.push_back(w);
      TransformResult next = compose(cur, apply_identity(cur.params, id, tol));
      if (approx_equal(w, target_d, tol)) return next;
      queue.push_back(std::move(next));
    }
  }
  throw HeunError(ErrorKind::unreachable_target, "target d is not in the orbit of d");
}

}  // namespace heunred
