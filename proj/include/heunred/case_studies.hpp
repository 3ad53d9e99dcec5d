// Built-in case studies: each run derives the Heun parameters, detects
// reductions, evaluates the energy formulas and certifies every evaluable
// form numerically. Reports are JSON objects.
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "heunred/core.hpp"
#include "heunred/format.hpp"
#include "heunred/json_io.hpp"
#include "heunred/physics.hpp"
#include "heunred/reduction.hpp"
#include "heunred/verification.hpp"

namespace heunred {

struct RunConfig {
  double tol = 1e-8;
  int order = default_series_order;
  int grid_points = 21;
};

struct CaseOutcome {
  json report;
  bool pass = true;
  double max_rel_err = 0.0;
};

inline const std::vector<std::string>& case_names() {
  static const std::vector<std::string> names{"coulomb3sphere", "inverse-square", "quantum-walk",
                                              "charged-particle"};
  return names;
}

namespace detail {

class CaseBuilder {
 public:
  explicit CaseBuilder(std::string name) { report_["case"] = std::move(name); }

  json& operator[](const char* key) { return report_[key]; }

  void add(const std::string& name, const VerificationReport& r) {
    pass_ = pass_ && r.pass;
    max_err_ = std::max(max_err_, r.max_rel_err);
    verifications_.push_back({{"name", name}, {"report", r}});
  }

  // A verification that could not run counts as a failure.
  void add_error(const std::string& name, const std::string& what) {
    pass_ = false;
    verifications_.push_back({{"name", name}, {"error", what}});
  }

  void add_skipped(const std::string& name, const std::string& why) {
    verifications_.push_back({{"name", name}, {"skipped", why}});
  }

  template <class F>
  void attempt(const std::string& name, F&& run) {
    try {
      add(name, run());
    } catch (const HeunError& e) {
      add_error(name, e.what());
    }
  }

  CaseOutcome finish() {
    report_["verifications"] = verifications_;
    report_["max_rel_err"] = max_err_;
    report_["pass"] = pass_;
    return {report_, pass_, max_err_};
  }

 private:
  json report_ = json::object();
  json verifications_ = json::array();
  bool pass_ = true;
  double max_err_ = 0.0;
};

inline GridSpec default_grid(const RunConfig& cfg) {
  GridSpec g;
  g.points = cfg.grid_points;
  return g;
}

/// Quadrature grids stay on [0.25ρ, 0.75ρ], clear of the z^{-Γ} factor at 0.
inline GridSpec quadrature_grid(const HeunParams& p, const RunConfig& cfg) {
  const double rho = std::min(1.0, std::abs(p.d));
  return GridSpec::interval(0.25 * rho, 0.75 * rho, cfg.grid_points, GridKind::chebyshev);
}

inline QuadratureSolution quadrature_for(const HeunParams& p, const QuadratureDescriptor& q) {
  return {q, 0.5 * std::min(1.0, std::abs(p.d))};
}

inline json reductions_json(const ReductionReport& rr) {
  json out = json::array();
  for (const auto& e : rr.entries) {
    json j = e;
    if (const auto* f = e.hypergeometric()) j["text"] = format_form(*f);
    out.push_back(std::move(j));
  }
  return out;
}

/// Certifies every detected entry that carries an evaluable form.
inline void verify_entries(const HeunParams& p, const ReductionReport& rr, const RunConfig& cfg,
                           CaseBuilder& b) {
  for (const auto& e : rr.entries) {
    const std::string name = "reduction " + e.label();
    if (const auto* f = e.hypergeometric()) {
      if (f->degenerate()) {
        b.add_skipped(name, "degenerate form (c2 at a non-positive integer)");
      } else if (is_nonpositive_integer(p.gamma)) {
        // no normalized Frobenius series at 0; certify the form by its residual
        b.attempt(name + " (residual)", [&] {
          return verify_solution(p, form_evaluator(p, *f), default_grid(cfg), cfg.tol);
        });
      } else {
        b.attempt(name, [&] {
          return verify_reduction(p, *f, default_grid(cfg), cfg.tol, cfg.order);
        });
      }
    } else if (const auto* q = std::get_if<QuadratureDescriptor>(&e.form)) {
      b.attempt(name + " (quadrature residual)", [&] {
        return verify_solution(p, quadrature_evaluator(p, quadrature_for(p, *q)),
                               quadrature_grid(p, cfg), cfg.tol);
      });
    } else {
      b.add_skipped(name, "no form constructed");
    }
  }
}

inline json transform_json(const HeunParams& source, const TransformResult& t) {
  json j = t;
  j["text"] = format_transform(source, t);
  return j;
}

}  // namespace detail

// ---------------------------------------------------------------------------

struct CoulombCaseInput {
  int m = 1;
  cplx gamma{0.5};
  cplx beta{0.0};
  std::optional<cplx> energy;  // defaults to the ground-state energy E_0
  int levels = 4;              // number of spectrum entries reported
};

inline CaseOutcome run_coulomb_case(const CoulombCaseInput& in, const RunConfig& cfg) {
  if (in.m < 0) throw HeunError(ErrorKind::invalid_input, "m must be non-negative");
  if (in.levels < 1) throw HeunError(ErrorKind::invalid_input, "levels must be positive");
  detail::CaseBuilder b("coulomb3sphere");
  const cplx e0 = coulomb_spectrum(0.0, in.m, in.gamma);
  const CoulombSphereInput ci{in.m, in.gamma, in.beta, in.energy.value_or(e0)};
  b["inputs"] = {{"m", ci.m}, {"gamma", ci.gamma}, {"beta", ci.beta}, {"energy", ci.energy}};

  const HeunParams p = coulomb_params(ci);
  b["params"] = p;
  const ReductionReport rr = detect_cases(p, cfg.tol);
  b["reductions"] = detail::reductions_json(rr);

  json energies;
  energies["E0"] = e0;
  json levels = json::array();
  for (int n = 0; n < in.levels; ++n)
    levels.push_back({{"n", n}, {"E", coulomb_spectrum(static_cast<double>(n), in.m, in.gamma)}});
  energies["spectrum"] = levels;
  try {
    const auto red = coulomb_reduc_energy(in.beta, in.gamma, in.m, cfg.tol);
    energies["E_reduc"] = red.energy;
    energies["n_reduc"] = red.n;
    energies["spectrum_at_n_reduc"] = coulomb_spectrum(red.n, in.m, in.gamma);
  } catch (const HeunError& e) {
    energies["E_reduc"] = nullptr;
    energies["E_reduc_note"] = e.what();
  }
  b["energies"] = energies;

  detail::verify_entries(p, rr, cfg, b);
  b.attempt("frobenius series residual", [&] {
    return verify_solution(p, series_evaluator(heun_series(p, cfg.order)), detail::default_grid(cfg),
                           cfg.tol);
  });

  if (approx_equal(in.beta, 0.0, cfg.tol) && approx_equal(p.a * p.b, 0.0, cfg.tol)) {
    const HypergeometricForm g = coulomb_ground_state_form(ci, cfg.tol);
    b["ground_state_form"] = g;
    b["ground_state_form"]["text"] = format_form(g);
    if (g.degenerate())
      b.add_skipped("ground-state form", "degenerate form (c2 at a non-positive integer)");
    else
      b.attempt("ground-state form", [&] {
        return verify_reduction(p, g, detail::default_grid(cfg), cfg.tol, cfg.order);
      });
  }

  const CoulombLegendreCase leg = coulomb_legendre_case(in.m, in.gamma);
  b["legendre_case"] = {{"energy", cplx{0.0, -1.0} * in.gamma},
                        {"params", leg.params},
                        {"form", leg.form},
                        {"lambda", leg.lambda},
                        {"representation", leg.representation},
                        {"note", "structural only; not evaluated"}};

  try {
    const CoulombQuarticMatch mq = coulomb_quartic_matching(in.m, default_tol_condition);
    b["quartic_matching"] = {{"s_plus", mq.s_plus},
                             {"s_minus", mq.s_minus},
                             {"beta", mq.beta},
                             {"gamma", mq.gamma},
                             {"energy", mq.energy},
                             {"params", mq.params},
                             {"to_d2", detail::transform_json(mq.params, mq.to_d2)},
                             {"n_candidates", mq.n_candidates},
                             {"integral_n", mq.integral_n}};
    b.attempt("quartic matching form", [&] {
      return verify_reduction(mq.params, mq.form, detail::default_grid(cfg), cfg.tol, cfg.order);
    });
  } catch (const HeunError& e) {
    b["quartic_matching"] = {{"error", e.what()}};
  }
  return b.finish();
}

// ---------------------------------------------------------------------------

inline CaseOutcome run_inverse_square_case(const InverseSquareInput& in, const RunConfig& cfg) {
  detail::CaseBuilder b("inverse-square");
  b["inputs"] = {{"omega", in.omega}, {"omega4", in.omega4}, {"kappa", in.kappa}};
  const HeunParams p = inverse_square_params(in);
  b["params"] = p;
  const ReductionReport rr = detect_cases(p, cfg.tol);
  b["reductions"] = detail::reductions_json(rr);

  const double k0 = inverse_square_trivial_kappa(in.omega);
  b["energies"] = {{"trivial_kappa", k0},
                   {"trivial_kappa_allowed", k0 > 0.0},
                   {"trivial_note", "at q = 0 the solution is F(0, 5/2; 3/2; .) = 1"}};

  json verdicts = json::array();
  bool any_feasible = false;
  for (const auto& pair : catalog_pairs()) {
    const FeasibilityVerdict v = inverse_square_feasibility(pair);
    json j = {{"pair", pair}, {"feasible", v.feasible}, {"reason", v.reason}, {"omega", v.omega}};
    if (v.kappa) j["kappa"] = *v.kappa;
    if (v.omega4_bound) j["omega4_bound"] = *v.omega4_bound;
    if (v.omega4_forced) j["omega4_forced"] = *v.omega4_forced;
    any_feasible = any_feasible || v.feasible;
    verdicts.push_back(std::move(j));
  }
  b["feasibility"] = verdicts;
  b["nontrivial_harmonic_reduction"] =
      any_feasible ? "possible for some pair" : "no harmonic nontrivial reduction";

  detail::verify_entries(p, rr, cfg, b);
  if (std::abs(in.omega4 - 0.5) <= cfg.tol) {
    const HypergeometricForm f = inverse_square_delta0_form(in);
    b["closed_form"] = f;
    b["closed_form"]["text"] = format_form(f);
    b.attempt("closed form", [&] {
      return verify_reduction(p, f, detail::default_grid(cfg), cfg.tol, cfg.order);
    });
  }
  b.attempt("frobenius series residual", [&] {
    return verify_solution(p, series_evaluator(heun_series(p, cfg.order)), detail::default_grid(cfg),
                           cfg.tol);
  });
  return b.finish();
}

// ---------------------------------------------------------------------------

struct QuantumWalkCaseInput {
  double d = 4.0;
  double q_shift = 0.0;  // added to q; used to probe the verification
};

/// Compares the series of the (possibly shifted) parameters with the
/// unshifted closed forms, so any shift shows up as a failure.
inline CaseOutcome run_quantum_walk_case(const QuantumWalkCaseInput& in, const RunConfig& cfg) {
  detail::CaseBuilder b("quantum-walk");
  b["inputs"] = {{"d", in.d}, {"q_shift", in.q_shift}};
  const HeunParams base = quantum_walk_params({in.d});
  HeunParams p = base;
  p.q += in.q_shift;
  b["params"] = p;
  const ReductionReport rr = detect_cases(p, cfg.tol);
  b["reductions"] = detail::reductions_json(rr);

  const double half = 0.5 * std::min(1.0, in.d);
  const GridSpec grid = GridSpec::interval(-half, half, cfg.grid_points, GridKind::uniform);
  if (std::abs(in.d - 4.0) <= default_tol_exact) {
    const HypergeometricForm f = reduce_cubic_d4(base);
    b["closed_form"] = f;
    b["closed_form"]["text"] = format_form(f);
    b.attempt("reduction (4,1)", [&] { return verify_reduction(p, f, grid, cfg.tol, cfg.order); });
  }
  b["density_note"] = "normalized to H(0) = 1; the overall constant is free";
  b.attempt("normalized density", [&] {
    return verify_function(
        p, [&](cplx z) { return quantum_walk_density_normalized(z, in.d); },
        [&](cplx z) { return z != cplx{1.0} && (cplx{in.d} - z).real() > 0.0; }, grid, cfg.tol,
        cfg.order);
  });
  return b.finish();
}

// ---------------------------------------------------------------------------

struct ChargedParticleCaseInput {
  ChargedParticleInput particle;
  bool trivial_energy = true;  // replace eps_prime by the trivial-case energy
  bool swap_ab = false;
};

inline CaseOutcome run_charged_particle_case(const ChargedParticleCaseInput& in,
                                             const RunConfig& cfg) {
  detail::CaseBuilder b("charged-particle");
  ChargedParticleInput ci = in.particle;
  const double ap = std::abs(ci.S - ci.m), bp = std::abs(ci.S + ci.m);
  const double eps_trivial = charged_particle_trivial_energy(ap, bp, ci.S);
  if (in.trivial_energy) ci.eps_prime = eps_trivial;
  b["inputs"] = {{"S", ci.S},
                 {"m", ci.m},
                 {"R", ci.R},
                 {"l0", std::isinf(ci.l0) ? json("inf") : json(ci.l0)},
                 {"eps_prime", ci.eps_prime},
                 {"swap_ab", in.swap_ab}};

  const ChargedParticleParams cp = charged_particle_params(ci, in.swap_ab);
  const HeunParams& p = cp.params;
  b["params"] = p;
  b["a_prime"] = cp.a_prime;
  b["b_prime"] = cp.b_prime;
  b["complex_ab"] = cp.complex_ab;
  const ReductionReport rr = detect_cases(p, cfg.tol);
  b["reductions"] = detail::reductions_json(rr);
  b["energies"] = {{"eps_prime", ci.eps_prime},
                   {"eps_prime_trivial", eps_trivial},
                   {"ab", charged_particle_ab(cp.a_prime, cp.b_prime, ci.S, ci.eps_prime)}};

  detail::verify_entries(p, rr, cfg, b);
  if (approx_equal(p.q, 0.0, cfg.tol)) {
    const HypergeometricForm f = charged_particle_harmonic_form(ci);
    b["harmonic_form"] = f;
    b["harmonic_form"]["text"] = format_form(f);
    b.attempt("harmonic form", [&] {
      return verify_reduction(p, f, detail::default_grid(cfg), cfg.tol, cfg.order);
    });
  }
  return b.finish();
}

}  // namespace heunred
