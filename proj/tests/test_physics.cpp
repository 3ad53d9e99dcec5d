#include <catch_amalgamated.hpp>

#include "heunred/physics.hpp"
#include "heunred/verification.hpp"
#include "oracles.hpp"

using namespace heunred;

TEST_CASE("Coulomb parameter map", "[physics]") {
  const HeunParams p = coulomb_params({1, 0.0, 0.0, 0.0});
  CHECK(p.d == cplx{-1.0});
  CHECK(p.gamma == cplx{0.0});
  CHECK(p.delta == cplx{2.0});
  CHECK(p.epsilon == cplx{2.0});
  CHECK(p.a == cplx{2.0});
  CHECK(p.b == cplx{1.0});  // forced by a + b + 1 = Γ + Δ + ε
  CHECK(coulomb_params({3, 0.4, 0.0, 2.0}).q == cplx{0.0});
  CHECK(coulomb_params({0, 0.0, 2.0, 0.0}).q == cplx{0.0, 1.0});
  CHECK_THROWS_AS(coulomb_params({-1, 0.0, 0.0, 0.0}), HeunError);
}

TEST_CASE("physics maps satisfy the Fuchsian relation", "[physics]") {
  oracle::Rng rng(31);
  for (int i = 0; i < 1000; ++i) {
    const CoulombSphereInput c{rng.integer(0, 6), rng.complex(-3, 3), rng.complex(-3, 3),
                               rng.complex(-5, 20)};
    CHECK(validate(coulomb_params(c)).ok());
    const HeunParams p = coulomb_params(c);
    const cplx iu{0.0, 1.0};
    const cplx sp = std::sqrt(1.0 + c.energy + iu * c.gamma);
    CHECK(std::abs(p.gamma - (1.0 - sp)) < 1e-14);

    InverseSquareInput in{rng.uniform(-3, 3), rng.uniform(0.01, 0.99), rng.uniform(0.01, 5)};
    if (std::abs(2.0 * in.omega - 1.0) < 1e-3) continue;
    CHECK(validate(inverse_square_params(in)).ok());

    CHECK(validate(quantum_walk_params({rng.uniform(0.05, 10)})).ok());

    ChargedParticleInput cp{rng.uniform(-3, 3), rng.integer(-3, 3), rng.uniform(0.1, 3),
                            rng.uniform(0.1, 10), rng.uniform(-3, 5)};
    CHECK(validate(charged_particle_params(cp).params).ok());
    CHECK(validate(charged_particle_params(cp, true).params).ok());
  }
}

TEST_CASE("Coulomb spectrum", "[physics]") {
  CHECK(coulomb_spectrum(0.0, 0, 0.0) == cplx{0.0});
  CHECK(std::abs(coulomb_spectrum(1.0, 1, 2.0) - (8.0 - 1.0 / 9.0)) < 1e-14);
  for (int m = 0; m < 5; ++m) {
    const double g = 0.3 + m;
    CHECK(std::abs(coulomb_spectrum(0.0, m, g) - (m * (m + 2.0) - g * g / (4.0 * (m + 1.0) * (m + 1.0)))) < 1e-13);
  }
}

TEST_CASE("ground state at the spectrum energy has ab = 0", "[physics]") {
  for (int m = 0; m < 4; ++m) {
    const double g = 0.7;
    const HeunParams p = coulomb_params({m, g, 0.0, coulomb_spectrum(0.0, m, g)});
    CHECK(std::abs(p.a * p.b) < 1e-12);
  }
}

TEST_CASE("ground-state form", "[physics]") {
  const HypergeometricForm deg = coulomb_ground_state_form({1, 0.0, 0.0, 3.0});
  CHECK(deg.degenerate());
  CHECK(std::abs(deg.c2) < 1e-15);
  CHECK_FALSE(coulomb_ground_state_form({2, 0.0, 0.0, 8.0}).degenerate());
  CHECK_THROWS_AS(coulomb_ground_state_form({1, 0.2, 0.5, 3.0}), HeunError);

  const CoulombSphereInput in{1, 0.05, 0.0, coulomb_spectrum(0.0, 1, 0.05)};
  const HeunParams p = coulomb_params(in);
  const HypergeometricForm f = coulomb_ground_state_form(in);
  CHECK(verify_reduction(p, f, {}, 1e-8).pass);
}

TEST_CASE("reduced energy and quantum number", "[physics]") {
  for (int m = 0; m < 4; ++m) {
    const cplx g{1.3, 0.0};
    const auto r = coulomb_reduc_energy(0.0, g, m);
    CHECK(r.n == cplx{0.0});
    CHECK(oracle::rel(r.energy, coulomb_spectrum(0.0, m, g)) < 1e-12);
  }
  CHECK(std::abs(coulomb_reduc_energy(1.0, 3.0, 1).n - 1.0) < 1e-15);
  try {
    coulomb_reduc_energy(2.0, 2.0, 1);
    FAIL("expected the pole error");
  } catch (const HeunError& e) {
    CHECK(e.kind() == ErrorKind::precondition);
  }
}

TEST_CASE("spectrum at n_reduc reproduces E_reduc", "[physics]") {
  oracle::Rng rng(13);
  for (int i = 0; i < 500; ++i) {
    const cplx beta = rng.complex(-3, 3), gamma = rng.complex(-3, 3);
    if (std::abs(beta - gamma) < 0.05) continue;
    const int m = rng.integer(0, 6);
    const auto r = coulomb_reduc_energy(beta, gamma, m);
    CHECK(oracle::rel(coulomb_spectrum(r.n, m, gamma), r.energy) < 1e-10);
  }
}

TEST_CASE("quartic matching of the Coulomb problem", "[physics]") {
  for (int m : {0, 1, 2, 3, 4}) {
    const CoulombQuarticMatch mq = coulomb_quartic_matching(m);
    INFO("m = " << m);
    CHECK(std::abs(mq.beta) < 1e-9);
    CHECK(std::abs(mq.gamma) < 1e-9);
    CHECK(std::abs(mq.energy - (m * m / 4.0 - 1.0)) < 1e-9);
    const HeunParams t = mq.to_d2.params;
    CHECK(approx_equal(t.q, t.a * t.b, 1e-9));
    CHECK(approx_equal(t.gamma, (t.a + t.b + 2.0) / 4.0, 1e-9));
    // n = -m/2 - 1 and n = -3m/2 - 1 both give this energy
    bool first = false, second = false;
    for (cplx n : mq.n_candidates) {
      first = first || std::abs(n - (-m / 2.0 - 1.0)) < 1e-9;
      second = second || std::abs(n - (-1.5 * m - 1.0)) < 1e-9;
    }
    if (m == 0) {
      // n = -1 puts N = n + m + 1 at the 0/0 pole of the spectrum
      CHECK(mq.n_candidates.empty());
      CHECK_FALSE(mq.integral_n);
    } else {
      CHECK(first);
      CHECK(second);
      CHECK(mq.integral_n == (m % 2 == 0));
    }
    CHECK(verify_reduction(mq.params, mq.form, {}, 1e-8).pass);
  }
}

TEST_CASE("Legendre case energy", "[physics]") {
  const CoulombLegendreCase leg = coulomb_legendre_case(1, 0.5);
  CHECK(std::abs(leg.params.gamma) < 1e-14);  // E = -iγ makes Γ vanish
  CHECK(leg.params.q == cplx{0.0});
  CHECK(leg.form.c2 == cplx{2.0});  // Δ = m + 1
}

TEST_CASE("inverse-square parameter map", "[physics]") {
  const HeunParams p = inverse_square_params({1.0, 0.5, 1.0});
  CHECK(p.d == cplx{2.0});
  CHECK(p.delta == cplx{0.0});
  CHECK(approx_equal(p.q, p.a * p.b, 1e-14));
  CHECK(p.gamma == cplx{1.5});
  CHECK(p.epsilon == cplx{2.0});
  CHECK_THROWS_AS(inverse_square_params({0.5, 0.5, 1.0}), HeunError);
  CHECK_THROWS_AS(inverse_square_params({1.0, 0.5, -1.0}), HeunError);
  CHECK_THROWS_AS(inverse_square_params({1.0, 1.5, 1.0}), HeunError);
}

TEST_CASE("inverse-square case 2 fires exactly at omega4 = 1/2", "[physics]") {
  const double tol = 1e-10;
  for (double w4 : {0.1, 0.3, 0.5 - 1e-6, 0.5 - 1e-12, 0.5, 0.5 + 1e-12, 0.5 + 1e-6, 0.8}) {
    const HeunParams p = inverse_square_params({1.3, w4, 0.7});
    const ReductionReport r = detect_cases(p, tol);
    INFO("omega4 = " << w4);
    CHECK(r.has(CaseTag::case2_delta0) == (std::abs(w4 - 0.5) <= tol));
  }
}

TEST_CASE("inverse-square feasibility verdicts", "[physics]") {
  const FeasibilityVerdict m10 = inverse_square_feasibility({-1.0, 0.0, 2});
  CHECK_FALSE(m10.feasible);
  CHECK(m10.omega == Catch::Approx(0.25));
  REQUIRE(m10.kappa);
  CHECK(*m10.kappa == Catch::Approx(-0.75));
  CHECK(m10.reason.find("prohibited") != std::string::npos);

  const FeasibilityVerdict v21 = inverse_square_feasibility({2.0, 1.0, 4});
  CHECK_FALSE(v21.feasible);
  CHECK(v21.reason.find("also found in the case with {delta = 0 and q = ab}") != std::string::npos);

  const FeasibilityVerdict v41 = inverse_square_feasibility({4.0, 1.0, 3});
  CHECK_FALSE(v41.feasible);
  CHECK(v41.reason.find("gamma = 1/2") != std::string::npos);

  const FeasibilityVerdict half = inverse_square_feasibility({0.5, 0.5, 4});
  CHECK_FALSE(half.feasible);
  REQUIRE(half.omega4_bound);
  CHECK(*half.omega4_bound == Catch::Approx(-1.0));
  CHECK(half.reason.find("negative omega4") != std::string::npos);

  for (const auto& pair : catalog_pairs()) CHECK_FALSE(inverse_square_feasibility(pair).feasible);
}

TEST_CASE("inverse-square verdicts agree with a direct scan", "[physics]") {
  // scan the admissible (omega4, kappa) box for q = ab p under the map
  for (const auto& pair : catalog_pairs()) {
    const double d = pair.d.real(), pp = pair.p.real();
    const double omega = d / (2.0 * (d - 1.0));
    bool hit = false;
    for (int i = 1; i < 100 && !hit; ++i)
      for (int j = 1; j < 200 && !hit; ++j) {
        const double w4 = i / 100.0, kappa = j / 20.0;
        if (std::abs(w4 - 0.5) < 1e-12) continue;
        const HeunParams p = inverse_square_params({omega, w4, kappa});
        hit = std::abs(p.q - p.a * p.b * pp) < 1e-3;
      }
    CHECK_FALSE(hit);
  }
}

TEST_CASE("quantum-walk map and density", "[physics]") {
  const HeunParams p = quantum_walk_params({4.0});
  CHECK(p.q == cplx{2.25});
  CHECK(p.epsilon == cplx{1.5});
  CHECK(quantum_walk_density_normalized(0.0, 4.0) == cplx{1.0});
  for (double x : {-0.5, -0.2, 0.3, 0.5})
    CHECK(oracle::rel(quantum_walk_density_normalized(x, 4.0), 2.0 / ((1.0 - x) * std::sqrt(4.0 - x))) < 1e-15);
  // the raw density differs by a constant factor only
  const cplx k = quantum_walk_density(0.1, 4.0) / quantum_walk_density_normalized(0.1, 4.0);
  CHECK(oracle::rel(quantum_walk_density(-0.3, 4.0), k * quantum_walk_density_normalized(-0.3, 4.0)) < 1e-14);
  CHECK_THROWS_AS(quantum_walk_density(1.0, 4.0), HeunError);
  CHECK_THROWS_AS(quantum_walk_density(4.5, 4.0), HeunError);
  CHECK_THROWS_AS(quantum_walk_params({0.0}), HeunError);
}

TEST_CASE("quantum-walk density solves the equation for every d > 0", "[physics]") {
  for (double d : {4.0, 2.0, 0.7, 9.0}) {
    const HeunParams p = quantum_walk_params({d});
    const double half = 0.5 * std::min(1.0, d);
    const auto r = verify_function(
        p, [d](cplx z) { return quantum_walk_density_normalized(z, d); },
        [](cplx) { return true; }, GridSpec::interval(-half, half, 21), 1e-9);
    INFO("d = " << d);
    CHECK(r.pass);
  }
}

TEST_CASE("charged-particle map", "[physics]") {
  const ChargedParticleParams zero = charged_particle_params({0.0, 0, 1.0, INFINITY, 0.0});
  CHECK(zero.a_prime == 0.0);
  CHECK(zero.b_prime == 0.0);
  CHECK(zero.params.gamma == cplx{1.0});
  CHECK(zero.params.delta == cplx{1.0});
  CHECK(zero.params.epsilon == cplx{1.0});
  CHECK(zero.params.q == cplx{0.0});

  const ChargedParticleParams cp = charged_particle_params({1.0, 0, 1.0, INFINITY, 1.0});
  CHECK(cp.params.a == cplx{6.0});
  CHECK(cp.params.b == cplx{0.0});
  const ChargedParticleParams sw = charged_particle_params({1.0, 0, 1.0, INFINITY, 1.0}, true);
  CHECK(sw.params.a == cplx{0.0});
  CHECK(sw.params.b == cplx{6.0});

  CHECK(charged_particle_params({1.0, 0, 2.0, 4.0, 1.0}).params.q == cplx{-2.0});
  CHECK(charged_particle_params({0.0, 0, 1.0, INFINITY, -2.0}).complex_ab);
  CHECK_THROWS_AS(charged_particle_params({1.0, 0, -1.0, INFINITY, 1.0}), HeunError);
  CHECK_THROWS_AS(charged_particle_params({1.0, 0, 1.0, -1.0, 1.0}), HeunError);
}

TEST_CASE("charged-particle trivial energy", "[physics]") {
  CHECK(charged_particle_trivial_energy(0, 0, 0) == 0.0);
  CHECK(charged_particle_trivial_energy(1, 1, 1) == 1.0);
  oracle::Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const double S = rng.uniform(-3, 3);
    const int m = rng.integer(-3, 3);
    const double ap = std::abs(S - m), bp = std::abs(S + m);
    const double eps = charged_particle_trivial_energy(ap, bp, S);
    CHECK(std::abs(charged_particle_ab(ap, bp, S, eps)) < 1e-12);
    const HeunParams p = charged_particle_params({S, m, 1.0, INFINITY, eps}).params;
    CHECK(std::abs(p.a * p.b) < 1e-10);
  }
}

TEST_CASE("charged-particle harmonic form", "[physics]") {
  for (auto [S, m, eps] : {std::tuple{1.0, 0, 1.0}, std::tuple{0.5, 1, 2.5}, std::tuple{2.0, -1, 0.3}}) {
    const ChargedParticleInput in{S, m, 1.0, INFINITY, eps};
    const ChargedParticleParams cp = charged_particle_params(in);
    REQUIRE_FALSE(cp.complex_ab);
    const HypergeometricForm f = charged_particle_harmonic_form(in);
    CHECK(f.c2 == cplx{cp.a_prime + 1.0});
    CHECK(verify_reduction(cp.params, f, {}, 1e-8).pass);
  }
}
