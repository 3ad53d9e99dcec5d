// JSON encodings of parameter sets, transforms, forms and reports.
#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "heunred/core.hpp"
#include "heunred/forms.hpp"
#include "heunred/identities.hpp"
#include "heunred/reduction.hpp"
#include "heunred/verification.hpp"

namespace nlohmann {

// {"re": x, "im": y}; a bare number is read as a real value.
template <>
struct adl_serializer<std::complex<double>> {
  static void to_json(json& j, const std::complex<double>& z) {
    j = json{{"re", z.real() + 0.0}, {"im", z.imag() + 0.0}};  // + 0.0 drops the sign of zero
  }
  static void from_json(const json& j, std::complex<double>& z) {
    if (j.is_number()) {
      z = {j.get<double>(), 0.0};
      return;
    }
    z = {j.at("re").get<double>(), j.value("im", 0.0)};
  }
};

}  // namespace nlohmann

namespace heunred {

using nlohmann::json;

// --- HeunParams: epsilon is written but recomputed on input ---

inline void to_json(json& j, const HeunParams& p) {
  j = json{{"d", p.d},     {"q", p.q},         {"a", p.a},
           {"b", p.b},     {"gamma", p.gamma}, {"delta", p.delta},
           {"epsilon", p.epsilon}};
}

inline void from_json(const json& j, HeunParams& p) {
  if (!j.is_object()) throw HeunError(ErrorKind::invalid_input, "params must be a JSON object");
  try {
    p = make_params(j.at("d").get<cplx>(), j.at("q").get<cplx>(), j.at("a").get<cplx>(),
                    j.at("b").get<cplx>(), j.at("gamma").get<cplx>(),
                    j.at("delta").get<cplx>());
  } catch (const json::exception& e) {
    throw HeunError(ErrorKind::invalid_input, std::string("bad params JSON: ") + e.what());
  }
}

inline void to_json(json& j, const MobiusMap& m) {
  j = json{{"alpha", m.alpha}, {"beta", m.beta}, {"gamma", m.gamma}, {"delta", m.delta}};
}

inline void from_json(const json& j, MobiusMap& m) {
  m = MobiusMap::make(j.at("alpha").get<cplx>(), j.at("beta").get<cplx>(),
                      j.at("gamma").get<cplx>(), j.at("delta").get<cplx>());
}

inline void to_json(json& j, const PowerFactor& f) {
  j = json{{"c0", f.c0}, {"c1", f.c1}, {"exponent", f.exponent}};
}

inline void from_json(const json& j, PowerFactor& f) {
  f.c0 = j.at("c0").get<cplx>();
  f.c1 = j.at("c1").get<cplx>();
  f.exponent = j.at("exponent").get<cplx>();
}

inline void to_json(json& j, const TransformResult& t) {
  j = json{{"identity", t.identity_id()},
           {"params", t.params},
           {"arg_map", t.arg_map},
           {"prefactor", t.prefactor.factors},
           {"prefactor_scale", t.prefactor.scale}};
}

inline void from_json(const json& j, TransformResult& t) {
  t.params = j.at("params").get<HeunParams>();
  t.arg_map = j.at("arg_map").get<MobiusMap>();
  t.prefactor.factors = j.at("prefactor").get<std::vector<PowerFactor>>();
  t.prefactor.scale = j.value("prefactor_scale", cplx{1.0});
  t.steps.clear();
  const std::string id = j.at("identity").get<std::string>();
  if (id == "identity") return;
  std::size_t start = 0;
  while (start <= id.size()) {
    const std::size_t plus = id.find('+', start);
    t.steps.push_back(identity_from_string(id.substr(start, plus - start)));
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
}

inline void to_json(json& j, const HypergeometricForm& f) {
  j = json{{"a2", f.a2},
           {"b2", f.b2},
           {"c2", f.c2},
           {"arg_num", f.arg_map.num},
           {"arg_den", f.arg_map.den},
           {"prefactor", f.prefactor.factors},
           {"prefactor_scale", f.prefactor.scale},
           {"degree", f.arg_map.degree()},
           {"degenerate", f.degenerate()}};
}

inline void from_json(const json& j, HypergeometricForm& f) {
  try {
    f.a2 = j.at("a2").get<cplx>();
    f.b2 = j.at("b2").get<cplx>();
    f.c2 = j.at("c2").get<cplx>();
    f.arg_map = RationalMap::make(j.at("arg_num").get<Poly>(),
                                  j.value("arg_den", Poly{cplx{1.0}}));
    f.prefactor.factors = j.value("prefactor", std::vector<PowerFactor>{});
    f.prefactor.scale = j.value("prefactor_scale", cplx{1.0});
  } catch (const json::exception& e) {
    throw HeunError(ErrorKind::invalid_input, std::string("bad form JSON: ") + e.what());
  }
}

inline void to_json(json& j, const QuadratureDescriptor& q) {
  j = json{{"d", q.d},
           {"exponents", json{{"z", q.exp_z},
                              {"z_minus_1", q.exp_z_minus_1},
                              {"z_minus_d", q.exp_z_minus_d}}},
           {"infinity_regular", q.infinity_regular}};
}

inline void from_json(const json& j, QuadratureDescriptor& q) {
  q.d = j.at("d").get<cplx>();
  const auto& e = j.at("exponents");
  q.exp_z = e.at("z").get<cplx>();
  q.exp_z_minus_1 = e.at("z_minus_1").get<cplx>();
  q.exp_z_minus_d = e.at("z_minus_d").get<cplx>();
  q.infinity_regular = j.at("infinity_regular").get<bool>();
}

inline void to_json(json& j, const CatalogPair& p) {
  j = json{{"d", p.d}, {"p", p.p}, {"degree", p.degree}};
}

inline void from_json(const json& j, CatalogPair& p) {
  p.d = j.at("d").get<cplx>();
  p.p = j.at("p").get<cplx>();
  p.degree = j.at("degree").get<int>();
}

inline CaseTag case_tag_from_label(const std::string& s) {
  if (s == "Case1_eps0") return CaseTag::case1_eps0;
  if (s == "Case2_delta0") return CaseTag::case2_delta0;
  if (s == "Case3_gamma0") return CaseTag::case3_gamma0;
  if (s == "Case4_trivial") return CaseTag::case4_trivial;
  if (s.rfind("Nontrivial", 0) == 0) return CaseTag::nontrivial;
  throw HeunError(ErrorKind::invalid_input, "unknown case label '" + s + "'");
}

inline void to_json(json& j, const ReductionEntry& e) {
  j = json{{"case", e.label()}, {"conditions", e.conditions}, {"notes", e.notes}};
  if (e.pair) j["pair"] = *e.pair;
  if (const auto* f = std::get_if<HypergeometricForm>(&e.form))
    j["form"] = *f;
  else if (const auto* q = std::get_if<QuadratureDescriptor>(&e.form))
    j["quadrature"] = *q;
  else
    j["form"] = nullptr;
}

inline void from_json(const json& j, ReductionEntry& e) {
  e.tag = case_tag_from_label(j.at("case").get<std::string>());
  e.conditions = j.at("conditions").get<std::vector<std::string>>();
  e.notes = j.value("notes", std::vector<std::string>{});
  e.pair.reset();
  if (j.contains("pair")) e.pair = j.at("pair").get<CatalogPair>();
  if (j.contains("quadrature"))
    e.form = j.at("quadrature").get<QuadratureDescriptor>();
  else if (j.contains("form") && !j.at("form").is_null())
    e.form = j.at("form").get<HypergeometricForm>();
  else
    e.form = std::monostate{};
}

inline void to_json(json& j, const ReductionReport& r) { j = r.entries; }

inline void from_json(const json& j, ReductionReport& r) {
  r.entries = j.get<std::vector<ReductionEntry>>();
}

inline void to_json(json& j, const VerificationReport& r) {
  j = json{{"grid", r.grid},
           {"rel_errors", r.rel_errors},
           {"max_rel_err", r.max_rel_err},
           {"tolerance", r.tolerance},
           {"pass", r.pass},
           {"notes", r.notes},
           {"truncation_estimate", r.truncation_estimate}};
}

inline void from_json(const json& j, VerificationReport& r) {
  r.grid = j.at("grid").get<std::vector<cplx>>();
  r.rel_errors = j.at("rel_errors").get<std::vector<double>>();
  r.max_rel_err = j.at("max_rel_err").get<double>();
  r.tolerance = j.at("tolerance").get<double>();
  r.pass = j.at("pass").get<bool>();
  r.notes = j.value("notes", std::vector<std::string>{});
  r.truncation_estimate = j.value("truncation_estimate", 0.0);
}

}  // namespace heunred
