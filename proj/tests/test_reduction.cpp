#include <catch_amalgamated.hpp>

#include "heunred/physics.hpp"
#include "heunred/reduction.hpp"
#include "heunred/verification.hpp"
#include "oracles.hpp"

using namespace heunred;

namespace {

const HeunParams kQuantumWalk = make_params(4.0, 2.25, 1.5, 1.5, 0.5, 2.0);

bool throws_condition(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const HeunError& e) {
    return e.kind() == ErrorKind::condition_violated;
  }
  return false;
}

/// Residual certification of a form, independent of the Frobenius series.
double form_residual(const HeunParams& p, const HypergeometricForm& f, double lo, double hi) {
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const cplx z{lo + (hi - lo) * k / 19.0, 0.0};
    if (z == cplx{0.0}) continue;
    auto g = [&](cplx w) { return eval_hyp_form(f, w); };
    const cplx v = g(z);
    const cplx lhs = oracle::heun_lhs(p.d, p.q, p.a, p.b, p.gamma, p.delta, p.epsilon, v,
                                      oracle::fd1(g, z, 1e-3), oracle::fd2(g, z, 1e-3), z);
    worst = std::max(worst, std::abs(lhs) / std::max(1.0, std::abs(v)));
  }
  return worst;
}

}  // namespace

TEST_CASE("quantum-walk parameters detect only (4,1)", "[reduction]") {
  const ReductionReport r = detect_cases(kQuantumWalk);
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].label() == "Nontrivial(4,1)");
  const auto* f = r.entries[0].hypergeometric();
  REQUIRE(f);
  CHECK(f->a2 == cplx{0.5});
  CHECK(f->c2 == cplx{0.5});
  CHECK(f->arg_map.degree() == 3);
  for (int c : {0, 1, 2, 3}) CHECK_FALSE(r.has(static_cast<CaseTag>(c)));
}

TEST_CASE("cubic form collapses to the closed-form density", "[reduction]") {
  const HypergeometricForm f = reduce_cubic_d4(kQuantumWalk);
  CHECK(eval_hyp_form(f, 0.0) == cplx{1.0});
  for (double x = -0.5; x <= 0.5; x += 0.05) {
    const cplx want = 2.0 / ((1.0 - x) * std::sqrt(4.0 - x));
    CHECK(oracle::rel(eval_hyp_form(f, x), want) < 1e-12);
  }
}

TEST_CASE("case 1: epsilon = 0 and q = abd", "[reduction]") {
  const HeunParams p = make_params(5.0, 10.0, 1.0, 2.0, 1.5, 2.5);
  REQUIRE(p.epsilon == cplx{0.0});
  const HypergeometricForm f = reduce_case1(p);
  CHECK(f.a2 == cplx{1.0});
  CHECK(f.b2 == cplx{2.0});
  CHECK(f.c2 == cplx{1.5});
  CHECK(form_residual(p, f, -0.4, 0.4) < 1e-7);
  CHECK(verify_reduction(p, f, {}, 1e-10).pass);
  CHECK(detect_cases(p).has(CaseTag::case1_eps0));

  const HypergeometricForm one = reduce_case1(make_params(5.0, 0.0, 0.0, 2.0, 1.5, 1.5));
  CHECK(eval_hyp_form(one, 0.37) == cplx{1.0});
  CHECK(throws_condition([] { reduce_case1(make_params(5.0, 9.0, 1.0, 2.0, 1.5, 2.5)); }));
}

TEST_CASE("case 2: inverse-square closed form", "[reduction]") {
  const InverseSquareInput in{1.0, 0.5, 1.0};
  const HeunParams p = inverse_square_params(in);
  CHECK(detect_cases(p).has(CaseTag::case2_delta0));
  const HypergeometricForm f = reduce_case2(p);
  const HypergeometricForm closed = inverse_square_delta0_form(in);
  const double r17 = std::sqrt(17.0) / 4.0;
  CHECK(std::abs(closed.a2 - (1.25 - r17)) < 1e-14);
  CHECK(std::abs(closed.b2 - (1.25 + r17)) < 1e-14);
  CHECK(closed.c2 == cplx{1.5});
  for (double x : {-0.4, -0.1, 0.2, 0.45}) CHECK(oracle::rel(eval_hyp_form(f, x), eval_hyp_form(closed, x)) < 1e-13);
  CHECK(verify_reduction(p, f, {}, 1e-8).pass);

  // q = 0 sub-case: F(0, 5/2; 3/2; .) = 1
  const HeunParams t = inverse_square_params({1.0, 0.5, inverse_square_trivial_kappa(1.0)});
  const HypergeometricForm g = reduce_case2(t);
  CHECK(std::abs(g.a2 * g.b2) < 1e-14);
  CHECK(std::abs(eval_hyp_form(g, 0.3) - 1.0) < 1e-14);
}

TEST_CASE("case 3: Legendre reduction of the Coulomb problem", "[reduction]") {
  const CoulombLegendreCase leg = coulomb_legendre_case(2, 0.6);
  CHECK(std::abs(leg.params.gamma) < 1e-14);
  CHECK(std::abs(leg.params.q) < 1e-14);
  CHECK(detect_cases(leg.params).has(CaseTag::case3_gamma0));
  // the series at 0 is logarithmic here; certify by the residual instead
  const auto r = verify_solution(leg.params, form_evaluator(leg.params, leg.form), {}, 1e-8);
  CHECK(r.pass);
  CHECK(std::abs(leg.lambda - (std::sqrt(cplx{1.0, -1.2}) - 1.0) / 2.0) < 1e-15);
  CHECK(leg.representation.find("P^2_lambda") != std::string::npos);

  const HypergeometricForm one = reduce_case3(make_params(-1.0, 0.0, 0.0, 2.0, 0.0, 1.5));
  CHECK(eval_hyp_form(one, 0.2) == cplx{1.0});
  CHECK(throws_condition([] { reduce_case3(make_params(-1.0, 0.0, 1.0, 2.0, 0.5, 1.5)); }));
}

TEST_CASE("case 4: quadrature descriptor", "[reduction]") {
  const ChargedParticleParams cp = charged_particle_params({1.0, 0, 1.0, INFINITY, 1.0});
  CHECK(approx_equal(cp.params.a * cp.params.b, 0.0, 1e-12));
  const QuadratureDescriptor q = reduce_case4(cp.params);
  CHECK(q.exp_z == -(2.0 * cp.a_prime + 1.0));
  CHECK(q.exp_z_minus_1 == -(cp.b_prime + 1.0));
  CHECK(approx_equal(q.exp_z_minus_d, -(cp.b_prime + 1.0), 1e-14));
  const ReductionReport r = detect_cases(cp.params);
  REQUIRE(r.has(CaseTag::case4_trivial));
  for (const auto& e : r.entries)
    if (e.tag == CaseTag::case4_trivial) CHECK(e.notes.at(0) == "no singular point at infinity");

  // Γ = Δ = ε = 0: H = C1 + C2 z
  const HeunParams lin = make_params(3.0, 0.0, 0.0, -1.0, 0.0, 0.0);
  const QuadratureSolution qs(reduce_case4(lin), 0.5);
  CHECK(std::abs(qs(0.25) - (-0.25)) < 1e-15);
  CHECK(throws_condition([] { reduce_case4(make_params(3.0, 0.0, 1.0, 1.0, 1.0, 1.0)); }));
}

TEST_CASE("(-1,0) harmonic reduction", "[reduction]") {
  const HeunParams c = coulomb_params({2, 0.8, 0.0, 1.7});
  CHECK(approx_equal(c.delta, (c.a + c.b - c.gamma + 1.0) / 2.0, 1e-14));
  const HypergeometricForm f = reduce_harmonic_d_minus1(c);
  CHECK(f.arg_map.degree() == 2);
  CHECK(verify_reduction(c, f, {}, 1e-8).pass);

  try {
    reduce_harmonic_d_minus1(make_params(-1.0, 0.5, 1.0, 2.0, 0.5, 0.25));
    FAIL("expected an error");
  } catch (const HeunError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("q = 0") != std::string::npos);
    CHECK(msg.find("delta = (a+b-gamma+1)/2") != std::string::npos);
    CHECK(msg.find("d = -1") == std::string::npos);
  }
  const HeunParams zero = make_params(-1.0, 0.0, 0.0, 2.0, 1.0, 1.0);
  CHECK(eval_hyp_form(reduce_harmonic_d_minus1(zero), 0.4) == cplx{1.0});
}

TEST_CASE("(2,1) quartic reduction", "[reduction]") {
  const cplx a{1.3, 0.2}, b{0.7, -0.4};
  const HeunParams p = make_params(2.0, a * b, a, b, (a + b + 2.0) / 4.0, (a + b) / 2.0);
  const HypergeometricForm f = reduce_quartic_d2(p);
  CHECK(f.arg_map.degree() == 4);
  // 1 - 4[t(2-t) - 1/2]^2 written out
  for (double t : {-0.3, 0.1, 0.35}) {
    const double want = 1.0 - 4.0 * std::pow(t * (2.0 - t) - 0.5, 2);
    CHECK(std::abs(f.arg_map(t) - want) < 1e-14);
  }
  CHECK(verify_reduction(p, f, {}, 1e-8).pass);
  CHECK(form_residual(p, f, -0.1, 0.1) < 1e-6);  // quartic argument stays in the 2F1 domain
  const HeunParams zero = make_params(2.0, 0.0, 0.0, 2.0, 1.0, 1.0);
  CHECK(eval_hyp_form(reduce_quartic_d2(zero), 0.1) == cplx{1.0});
  CHECK(throws_condition([&] { reduce_quartic_d2(make_params(2.0, a * b, a, b, 1.0, 1.0)); }));
}

TEST_CASE("(1/2,1/2) is reached by transport and agrees with (2,1)", "[reduction]") {
  const cplx a{0.9, 0.1}, b{0.6, 0.0};
  const HeunParams at2 = make_params(2.0, a * b, a, b, (a + b + 2.0) / 4.0, (a + b) / 2.0);
  const HeunParams p = apply_line9(at2).params;  // d = 1/2, q = ab/2
  CHECK(approx_equal(p.q, p.a * p.b * 0.5, 1e-14));
  const ReductionReport r = detect_cases(p);
  const ReductionEntry* half = r.find_pair(0.5, 0.5);
  const ReductionEntry* two = r.find_pair(2.0, 1.0);
  REQUIRE(half);
  REQUIRE(two);
  REQUIRE(half->hypergeometric());
  REQUIRE(two->hypergeometric());
  const auto rh = verify_reduction(p, *half->hypergeometric(), {}, 1e-8);
  const auto rt = verify_reduction(p, *two->hypergeometric(), {}, 1e-8);
  CHECK(rh.pass);
  CHECK(rt.pass);
  for (double x : {-0.1, 0.0, 0.08})
    CHECK(oracle::rel(eval_hyp_form(*half->hypergeometric(), x),
                      eval_hyp_form(*two->hypergeometric(), x)) < 1e-12);
}

TEST_CASE("catalog contents", "[reduction]") {
  const auto pairs = catalog_pairs();
  auto has = [&](cplx d, cplx p) {
    for (const auto& c : pairs)
      if (c.d == d && c.p == p) return true;
    return false;
  };
  CHECK(has(-1.0, 0.0));
  CHECK(has(0.5, 0.5));
  CHECK(has(2.0, 1.0));
  CHECK(has(4.0, 1.0));
  for (const auto& c : pairs) CHECK(c.d != cplx{3.0});
}

TEST_CASE("q = abp without the exponent conditions is reported as necessary only", "[reduction]") {
  const HeunParams p = make_params(4.0, 2.0, 1.0, 2.0, 1.5, 0.75);
  const ReductionReport r = detect_cases(p);
  const ReductionEntry* e = r.find_pair(4.0, 1.0);
  REQUIRE(e);
  CHECK(std::holds_alternative<std::monostate>(e->form));
  REQUIRE_FALSE(e->notes.empty());
  CHECK(e->notes[0].rfind("necessary condition only", 0) == 0);
}

TEST_CASE("detect_cases agrees with reduce_case_k", "[reduction]") {
  oracle::Rng rng(2024);
  for (int i = 0; i < 500; ++i) {
    cplx d = rng.complex(-3, 3);
    if (std::abs(d) < 0.3 || std::abs(d - 1.0) < 0.3) continue;
    cplx a = rng.complex(-2, 2), b = rng.complex(-2, 2), g = rng.complex(0.2, 2),
         dl = rng.complex(-2, 2), q = rng.complex(-2, 2);
    switch (rng.integer(0, 4)) {
      case 0:  // ε = 0, q = abd
        dl = a + b + 1.0 - g;
        q = a * b * d;
        break;
      case 1:
        dl = 0.0;
        q = a * b;
        break;
      case 2:
        g = 0.0;
        q = 0.0;
        break;
      case 3:
        a = 0.0;
        q = 0.0;
        break;
      default:
        break;
    }
    const HeunParams p = make_params(d, q, a, b, g, dl);
    const ReductionReport r = detect_cases(p);
    auto ok = [&](auto fn) {
      try {
        fn(p, default_tol_condition);
        return true;
      } catch (const HeunError&) {
        return false;
      }
    };
    CHECK(r.has(CaseTag::case1_eps0) == ok(reduce_case1));
    CHECK(r.has(CaseTag::case2_delta0) == ok(reduce_case2));
    CHECK(r.has(CaseTag::case3_gamma0) == ok(reduce_case3));
    CHECK(r.has(CaseTag::case4_trivial) == ok(reduce_case4));
  }
}

TEST_CASE("generic parameters have no reduction", "[reduction]") {
  CHECK(detect_cases(make_params(3.0, 0.7, 1.1, 0.4, 0.9, 0.3)).empty());
}
