// heunred: Heun parameter transforms, reduction detection, case studies and
// numerical verification from the command line.
//
// Exit codes: 0 ok / pass, 1 no reduction / verification failed,
//             2 invalid input, 3 identity not applicable.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "heunred/heunred.hpp"

namespace {

using heunred::cplx;
using heunred::ErrorKind;
using heunred::HeunError;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInapplicable = 3;

struct CliConfig {
  double tol = 1e-8;
  int order = heunred::default_series_order;
  int grid_points = 21;
  bool json_out = false;
};

json read_json(const std::string& path) {
  std::string text;
  if (path.empty() || path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw HeunError(ErrorKind::invalid_input, "cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw HeunError(ErrorKind::invalid_input, std::string("malformed JSON: ") + e.what());
  }
}

// Accepts a bare parameter object or one wrapped as {"params": {...}}.
heunred::HeunParams read_params(const std::string& path) {
  const json j = read_json(path);
  const json& body = j.is_object() && j.contains("params") ? j.at("params") : j;
  return body.get<heunred::HeunParams>();
}

heunred::HypergeometricForm read_form(const std::string& path) {
  const json j = read_json(path);
  const json& body = j.is_object() && j.contains("form") ? j.at("form") : j;
  if (!body.is_object()) throw HeunError(ErrorKind::invalid_input, "form must be a JSON object");
  return body.get<heunred::HypergeometricForm>();
}

// "x" or "x,y" for x + iy.
cplx parse_complex(const std::string& s) {
  std::istringstream in(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(in >> re)) throw HeunError(ErrorKind::invalid_input, "bad complex value '" + s + "'");
  if (in >> comma) {
    if (comma != ',' || !(in >> im))
      throw HeunError(ErrorKind::invalid_input, "bad complex value '" + s + "'");
  }
  std::string rest;
  if (in >> rest) throw HeunError(ErrorKind::invalid_input, "bad complex value '" + s + "'");
  return {re, im};
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

void print_report_text(const heunred::VerificationReport& r) {
  std::cout << (r.pass ? "PASS" : "FAIL") << "  max_rel_err = " << r.max_rel_err
            << "  tol = " << r.tolerance << "  points = " << r.grid.size() << "\n";
  for (const auto& n : r.notes) std::cout << "  note: " << n << "\n";
}

// --- subcommands ---

int cmd_transform(const CliConfig& cfg, const std::string& params_path,
                  const std::string& identity) {
  const heunred::HeunParams p = read_params(params_path);
  const heunred::IdentityId id = heunred::identity_from_string(identity);
  heunred::TransformResult t;
  try {
    t = heunred::apply_identity(p, id);
  } catch (const HeunError& e) {
    if (e.kind() != ErrorKind::precondition) throw;
    std::cerr << "error: " << e.what() << "\n";
    return kExitInapplicable;
  }
  json out = t;
  out["text"] = heunred::format_transform(p, t);
  if (!cfg.json_out) std::cout << out["text"].get<std::string>() << "\n";
  print(out);
  return kExitOk;
}

int cmd_reduce(const CliConfig& cfg, const std::string& params_path) {
  const heunred::HeunParams p = read_params(params_path);
  const heunred::ReductionReport rr = heunred::detect_cases(p, cfg.tol);
  if (cfg.json_out) {
    json out;
    out["params"] = p;
    out["found"] = !rr.empty();
    out["reductions"] = heunred::detail::reductions_json(rr);
    print(out);
  } else if (rr.empty()) {
    std::cout << "no reduction\n";
  } else {
    std::cout << heunred::format_heun(p, "z") << "\n";
    for (const auto& e : rr.entries) {
      std::cout << e.label() << "\n";
      for (const auto& c : e.conditions) std::cout << "  condition: " << c << "\n";
      if (const auto* f = e.hypergeometric()) {
        std::cout << "  form: " << heunred::format_form(*f) << "\n";
      } else if (const auto* q = std::get_if<heunred::QuadratureDescriptor>(&e.form)) {
        std::cout << "  quadrature: C1 + C2 int z^(" << heunred::format_number(q->exp_z)
                  << ") (z - 1)^(" << heunred::format_number(q->exp_z_minus_1) << ") (z - "
                  << heunred::format_number(q->d) << ")^("
                  << heunred::format_number(q->exp_z_minus_d) << ") dz\n";
      }
      for (const auto& n : e.notes) std::cout << "  note: " << n << "\n";
    }
  }
  return rr.empty() ? kExitFail : kExitOk;
}

struct CaseArgs {
  // coulomb3sphere
  int m = 1;
  std::string gamma = "0.5", beta = "0";
  std::optional<std::string> energy;
  int levels = 4;
  // inverse-square
  heunred::InverseSquareInput inv;
  // quantum-walk
  double d = 4.0, q_shift = 0.0;
  // charged-particle
  double S = 1.0, R = 1.0, l0 = std::numeric_limits<double>::infinity();
  int m_index = 0;
  std::optional<double> eps_prime;
  bool swap_ab = false;
};

int cmd_case(const CliConfig& cfg, const std::string& name, const CaseArgs& a) {
  const heunred::RunConfig run{cfg.tol, cfg.order, cfg.grid_points};
  heunred::CaseOutcome out;
  if (name == "coulomb3sphere") {
    heunred::CoulombCaseInput in;
    in.m = a.m;
    in.gamma = parse_complex(a.gamma);
    in.beta = parse_complex(a.beta);
    if (a.energy) in.energy = parse_complex(*a.energy);
    in.levels = a.levels;
    out = heunred::run_coulomb_case(in, run);
  } else if (name == "inverse-square") {
    out = heunred::run_inverse_square_case(a.inv, run);
  } else if (name == "quantum-walk") {
    out = heunred::run_quantum_walk_case({a.d, a.q_shift}, run);
  } else if (name == "charged-particle") {
    heunred::ChargedParticleCaseInput in;
    in.particle.S = a.S;
    in.particle.m = a.m_index;
    in.particle.R = a.R;
    in.particle.l0 = a.l0;
    in.trivial_energy = !a.eps_prime.has_value();
    if (a.eps_prime) in.particle.eps_prime = *a.eps_prime;
    in.swap_ab = a.swap_ab;
    out = heunred::run_charged_particle_case(in, run);
  } else {
    throw HeunError(ErrorKind::invalid_input, "unknown case '" + name + "'");
  }

  if (cfg.json_out) {
    print(out.report);
  } else {
    const json& r = out.report;
    std::cout << "case " << r["case"].get<std::string>() << "\n";
    std::cout << "params " << r["params"].dump() << "\n";
    for (const auto& e : r["reductions"])
      std::cout << "reduction " << e["case"].get<std::string>()
                << (e.contains("text") ? "  " + e["text"].get<std::string>() : "") << "\n";
    if (r.contains("energies")) std::cout << "energies " << r["energies"].dump() << "\n";
    if (r.contains("feasibility"))
      for (const auto& v : r["feasibility"])
        std::cout << "feasibility " << v["pair"]["d"]["re"] << "," << v["pair"]["p"]["re"] << ": "
                  << v["reason"].get<std::string>() << "\n";
    if (r.contains("nontrivial_harmonic_reduction"))
      std::cout << r["nontrivial_harmonic_reduction"].get<std::string>() << "\n";
    for (const auto& v : r["verifications"]) {
      std::cout << "verify " << v["name"].get<std::string>() << ": ";
      if (v.contains("report"))
        std::cout << (v["report"]["pass"].get<bool>() ? "PASS" : "FAIL")
                  << " max_rel_err = " << v["report"]["max_rel_err"].get<double>() << "\n";
      else if (v.contains("error"))
        std::cout << "ERROR " << v["error"].get<std::string>() << "\n";
      else
        std::cout << "skipped (" << v["skipped"].get<std::string>() << ")\n";
    }
    std::cout << (out.pass ? "PASS" : "FAIL") << "  max_rel_err = " << out.max_rel_err << "\n";
  }
  return out.pass ? kExitOk : kExitFail;
}

struct VerifyArgs {
  std::string params_path, form_path, identity;
  std::optional<double> lo, hi;
  double imag_offset = 0.0;
};

int cmd_verify(const CliConfig& cfg, const VerifyArgs& a) {
  const heunred::HeunParams p = read_params(a.params_path);
  heunred::GridSpec grid;
  grid.points = cfg.grid_points;
  grid.imag_offset = a.imag_offset;
  if (a.lo.has_value() != a.hi.has_value())
    throw HeunError(ErrorKind::invalid_input, "--lo and --hi go together");
  if (a.lo) {
    grid.lo = a.lo;
    grid.hi = a.hi;
  }
  heunred::VerificationReport r;
  if (!a.form_path.empty()) {
    r = heunred::verify_reduction(p, read_form(a.form_path), grid, cfg.tol, cfg.order);
  } else {
    const heunred::IdentityId id = heunred::identity_from_string(a.identity);
    heunred::TransformResult t;
    try {
      t = heunred::apply_identity(p, id);
    } catch (const HeunError& e) {
      if (e.kind() != ErrorKind::precondition) throw;
      std::cerr << "error: " << e.what() << "\n";
      return kExitInapplicable;
    }
    r = heunred::verify_identity(p, t, grid, cfg.tol, cfg.order);
  }
  if (cfg.json_out)
    print(r);
  else
    print_report_text(r);
  return r.pass ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heun-to-hypergeometric reductions: transforms, detection, case studies, verification"};
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig cfg;
  if (const char* env = std::getenv("HEUN_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) {
      std::cerr << "error: HEUN_TOL must be a positive number\n";
      return kExitInvalid;
    }
    cfg.tol = v;
  }
  app.add_option("--tol", cfg.tol, "tolerance (default 1e-8 or $HEUN_TOL)")
      ->check(CLI::PositiveNumber);
  app.add_option("--order", cfg.order, "series order")->check(CLI::Range(8, 100000));
  app.add_option("--grid-points", cfg.grid_points, "grid points")->check(CLI::Range(1, 100000));
  app.add_flag("--json", cfg.json_out, "JSON output only");

  std::string params_path;
  std::string identity;

  auto* transform = app.add_subcommand("transform", "apply an identity (line5, line9, line17)");
  transform->add_option("--identity,-i", identity, "identity id")->required();
  transform->add_option("--params,-p", params_path, "params JSON file ('-' or omitted: stdin)");

  auto* reduce = app.add_subcommand("reduce", "detect all reductions");
  reduce->add_option("--params,-p", params_path, "params JSON file ('-' or omitted: stdin)");

  std::string case_name;
  CaseArgs ca;
  auto* cs = app.add_subcommand("case", "run a built-in case study");
  cs->add_option("name", case_name,
                 "coulomb3sphere | inverse-square | quantum-walk | charged-particle")
      ->required();
  cs->add_option("--m", ca.m, "coulomb: |m|");
  cs->add_option("--gamma", ca.gamma, "coulomb: gamma as re[,im]");
  cs->add_option("--beta", ca.beta, "coulomb: beta as re[,im]");
  cs->add_option("--energy", ca.energy, "coulomb: energy as re[,im] (default E_0)");
  cs->add_option("--levels", ca.levels, "coulomb: spectrum entries reported");
  cs->add_option("--omega", ca.inv.omega, "inverse-square: omega");
  cs->add_option("--omega4", ca.inv.omega4, "inverse-square: omega4");
  cs->add_option("--kappa", ca.inv.kappa, "inverse-square: kappa");
  cs->add_option("--d", ca.d, "quantum-walk: d");
  cs->add_option("--q-shift", ca.q_shift, "quantum-walk: offset added to q");
  cs->add_option("--S", ca.S, "charged-particle: monopole strength");
  cs->add_option("--m-index", ca.m_index, "charged-particle: spherical-harmonic index");
  cs->add_option("--R", ca.R, "charged-particle: sphere radius");
  cs->add_option("--l0", ca.l0, "charged-particle: Bohr radius (default inf)");
  cs->add_option("--eps-prime", ca.eps_prime, "charged-particle: energy (default trivial)");
  cs->add_flag("--swap-ab", ca.swap_ab, "charged-particle: exchange a and b");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "certify a form or identity on a grid");
  verify->add_option("--params,-p", va.params_path, "params JSON file")->required();
  auto* form_opt = verify->add_option("--form,-f", va.form_path, "hypergeometric form JSON file");
  auto* id_opt = verify->add_option("--identity,-i", va.identity, "identity id");
  form_opt->excludes(id_opt);
  verify->add_option("--lo", va.lo, "grid start");
  verify->add_option("--hi", va.hi, "grid end");
  verify->add_option("--imag-offset", va.imag_offset, "imaginary offset of the grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }
  if (verify->parsed() && va.form_path.empty() && va.identity.empty()) {
    std::cerr << "error: verify needs --form or --identity\n";
    return kExitInvalid;
  }

  try {
    if (transform->parsed()) return cmd_transform(cfg, params_path, identity);
    if (reduce->parsed()) return cmd_reduce(cfg, params_path);
    if (cs->parsed()) return cmd_case(cfg, case_name, ca);
    return cmd_verify(cfg, va);
  } catch (const HeunError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}
