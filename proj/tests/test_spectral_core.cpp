#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "specmap/spectral_core.hpp"
#include "support/oracles.hpp"

using specmap::complex;
using specmap::PI;
using specmap::SetKind;
using specmap::SetSpec;
using specmap::SpectralData;

namespace {

double dist(complex a, complex b) { return std::abs(a - b); }

// Random ℓ₂-summable deviation from the model, fixed seed.
SpectralData random_spectral(std::mt19937_64& gen, int n_max) {
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralData S = specmap::model_spectral_data(n_max);
  for (int n = 1; n <= n_max; ++n) {
    const double w = 0.1 / (n * n);
    S.rho[n - 1] += w * complex{normal(gen), normal(gen)};
    S.alpha[n - 1] += w * complex{normal(gen), normal(gen)};
  }
  return S;
}

}  // namespace

TEST_CASE("model data: closed values and zero deviation") {
  CHECK(specmap::model_rho(1) == 0.0);
  CHECK(specmap::model_rho(5) == 4.0);
  CHECK(dist(specmap::model_alpha(1), {1.0 / PI, 0.0}) <= 1e-16);
  CHECK(dist(specmap::model_alpha(4), {2.0 / PI, 0.0}) <= 1e-16);

  const SpectralData S = specmap::model_spectral_data(12);
  REQUIRE(S.count() == 12);
  CHECK(S.all_simple());
  REQUIRE(S.omega.has_value());
  CHECK(std::abs(*S.omega) == 0.0);
  for (double xi : specmap::xi_sequence(S)) CHECK(xi == 0.0);
}

TEST_CASE("xi_sequence: single-coordinate deviations") {
  SpectralData S = specmap::model_spectral_data(4);
  S.rho[0] = complex{0.3, 0.0};
  auto xi = specmap::xi_sequence(S);
  CHECK(std::abs(xi[0] - 0.3) <= 1e-15);
  for (int n = 2; n <= 4; ++n) CHECK(xi[n - 1] == 0.0);

  // 3–4–5: |ρ̂₁| = 0.3 together with |α̂₁| = 0.4.
  S.alpha[0] = complex{1.0 / PI, 0.4};
  xi = specmap::xi_sequence(S);
  CHECK(std::abs(xi[0] - 0.5) <= 1e-15);
}

TEST_CASE("decompose_asymptotics: hinted decomposition recomposes exactly") {
  SpectralData S;
  std::mt19937_64 gen(7);
  S = random_spectral(gen, 12);
  const complex omega{0.37, -0.21};

  const auto tail = specmap::decompose_asymptotics(S, omega);
  CHECK(tail.omega == omega);
  CHECK(tail.omega_spread == 0.0);
  REQUIRE(static_cast<int>(tail.varkappa.size()) == S.count());

  for (int n = 1; n <= S.count(); ++n) {
    const complex rho_back =
        (n - 1.0) + omega / (PI * n) + tail.varkappa[n - 1] / double(n);
    const complex alpha_back = 2.0 / PI + tail.s[n - 1] / double(n);
    CHECK(dist(rho_back, S.rho[n - 1]) <= 1e-13 * (1.0 + std::abs(S.rho[n - 1])));
    CHECK(dist(alpha_back, S.alpha[n - 1]) <= 1e-13);
  }
}

TEST_CASE("decompose_asymptotics: omega estimation on q ≡ 1 data") {
  // ρₙ = √((n−1)² + 1), ω = π/2 (= h + H + ½∫q with h = H = 0).
  SpectralData S;
  const int n_max = 40;
  for (int n = 1; n <= n_max; ++n) {
    const double k = n - 1;
    S.rho.push_back({std::sqrt(k * k + 1.0), 0.0});
    S.alpha.push_back(specmap::model_alpha(n));
  }
  const auto tail = specmap::decompose_asymptotics(S);
  CHECK(dist(tail.omega, {PI / 2.0, 0.0}) <= 5e-3);
  CHECK(tail.omega_spread <= 1e-2);

  // Too few entries for the Richardson estimate.
  SpectralData tiny = specmap::model_spectral_data(6);
  tiny.omega.reset();
  CHECK_THROWS_AS(specmap::decompose_asymptotics(tiny),
                  specmap::validation_error);
}

TEST_CASE("distance_d: hand values") {
  const SpectralData A = specmap::model_spectral_data(6);
  SpectralData B = A;
  CHECK(specmap::distance_d(A, B, 0.0, 0.0) == 0.0);

  // Single ρ deviation: ϰ₁ moves by 1·Δρ.
  B.rho[0] = complex{0.25, 0.0};
  CHECK(std::abs(specmap::distance_d(A, B, 0.0, 0.0) - 0.25) <= 1e-14);

  // Single α deviation at n = 2: s₂ moves by 2·Δα.
  B = A;
  B.alpha[1] += complex{0.1, 0.0};
  CHECK(std::abs(specmap::distance_d(A, B, 0.0, 0.0) - 0.2) <= 1e-14);

  // ω difference enters in quadrature; ϰ compensates the ω drift.
  B = A;
  const complex w{0.3, 0.4};
  // Same raw sequences, different ω: ϰₙ differs by −ω/π·… plus ω-term.
  const double d = specmap::distance_d(A, B, 0.0, w);
  CHECK(d >= std::abs(w));  // at least the explicit |ω¹−ω²| term
}

TEST_CASE("distance_d: metric axioms on random data") {
  std::mt19937_64 gen(42);
  for (int trial = 0; trial < 20; ++trial) {
    const SpectralData X = random_spectral(gen, 10);
    const SpectralData Y = random_spectral(gen, 10);
    const SpectralData Z = random_spectral(gen, 10);
    const double dxy = specmap::distance_d(X, Y, 0.0, 0.0);
    const double dyx = specmap::distance_d(Y, X, 0.0, 0.0);
    const double dxz = specmap::distance_d(X, Z, 0.0, 0.0);
    const double dyz = specmap::distance_d(Y, Z, 0.0, 0.0);
    CHECK(dxy >= 0.0);
    CHECK(std::abs(dxy - dyx) <= 1e-15);
    CHECK(dxz <= dxy + dyz + 1e-12);
  }
  // Length mismatch is rejected.
  CHECK_THROWS_AS(specmap::distance_d(specmap::model_spectral_data(4),
                                      specmap::model_spectral_data(5), 0.0, 0.0),
                  specmap::validation_error);
}

TEST_CASE("distance_dN: contour term plus tail") {
  const int N = 2;
  const SpectralData A = specmap::model_spectral_data(8);
  SpectralData B = A;

  // Identical tails, Weyl samples differing by a constant 0.3.
  std::vector<complex> MA(16, complex{0.1, 0.0});
  std::vector<complex> MB(16, complex{0.4, 0.0});
  const double d = specmap::distance_dN(A, B, N, MA, MB, 0.0, 0.0);
  CHECK(std::abs(d - 0.3) <= 1e-14);

  // A tail deviation at n = 4 > N contributes in quadrature.
  B.alpha[3] += complex{0.0, 0.05};  // s₄ moves by 4·0.05i
  const double d2 = specmap::distance_dN(A, B, N, MA, MB, 0.0, 0.0);
  CHECK(std::abs(d2 - (0.3 + 0.2)) <= 1e-14);

  // Deviations at n ≤ N are invisible to the tail part.
  B = A;
  B.rho[0] += 0.2;
  CHECK(std::abs(specmap::distance_dN(A, B, N, MA, MA, 0.0, 0.0)) <= 1e-14);
}

TEST_CASE("membership: B_Omega ball") {
  const SpectralData model = specmap::model_spectral_data(10);
  SetSpec ball;
  ball.kind = SetKind::B_Omega;
  ball.Omega = 1.0;
  CHECK(specmap::validate_membership(model, ball).member);

  // ‖{n·ξₙ}‖₂ = 0.3 exactly: member at Ω = 0.3, not below.
  SpectralData S = model;
  S.rho[0] = complex{0.3, 0.0};
  ball.Omega = 0.3;
  CHECK(specmap::validate_membership(S, ball).member);
  ball.Omega = 0.3 * (1.0 - 1e-6);
  const auto report = specmap::validate_membership(S, ball);
  CHECK(!report.member);
  REQUIRE(!report.violations.empty());
  CHECK(report.violations[0].index == -1);
}

TEST_CASE("membership: B_Omega_ring needs ω = 0 and the norm bound") {
  const SpectralData model = specmap::model_spectral_data(10);
  SetSpec ring;
  ring.kind = SetKind::B_Omega_ring;
  ring.Omega = 1.0;
  ring.K = 3.0;
  CHECK(specmap::validate_membership(model, ring, 2.0).member);
  CHECK(!specmap::validate_membership(model, ring, 3.5).member);

  // Missing operator-norm estimate is a usage error.
  CHECK_THROWS_AS(specmap::validate_membership(model, ring),
                  specmap::validation_error);

  // Nonzero ω violates the ring condition.
  SpectralData off = model;
  off.omega = complex{0.2, 0.0};
  CHECK(!specmap::validate_membership(off, ring, 2.0).member);
}

TEST_CASE("membership: V_Omega_delta separation conditions") {
  SetSpec V;
  V.kind = SetKind::V_Omega_delta;
  V.Omega = 1.0;
  V.delta = 0.1;

  CHECK(specmap::validate_membership(specmap::model_spectral_data(8), V).member);

  // Gap violation ρ₂ − ρ₁ = 0.05 < δ.
  SpectralData S = specmap::model_spectral_data(8);
  S.rho[1] = S.rho[0] + 0.05;
  auto report = specmap::validate_membership(S, V);
  CHECK(!report.member);
  REQUIRE(!report.violations.empty());
  CHECK(report.violations[0].index == 1);
  CHECK(report.violations[0].what.find("gap") != std::string::npos);

  // Non-real eigenvalue.
  S = specmap::model_spectral_data(8);
  S.rho[2] += complex{0.0, 0.2};
  CHECK(!specmap::validate_membership(S, V).member);

  // Small weight |α₂| < δ.
  S = specmap::model_spectral_data(8);
  S.alpha[1] = complex{0.05, 0.0};
  CHECK(!specmap::validate_membership(S, V).member);

  // Argument spread of α beyond π − δ.
  S = specmap::model_spectral_data(8);
  S.alpha[1] *= std::polar(1.0, 1.6);
  S.alpha[2] *= std::polar(1.0, -1.6);  // spread 3.2 > π − 0.1
  CHECK(!specmap::validate_membership(S, V).member);
}

TEST_CASE("membership: V± imaginary-sign condition with exception set") {
  SetSpec Vp;
  Vp.kind = SetKind::V_Omega_tau_plus;
  Vp.Omega = 2.0;
  Vp.tau.assign(6, 0.01);

  SpectralData S = specmap::model_spectral_data(6);
  for (auto& a : S.alpha) a += complex{0.0, 0.05};  // Im α ≥ τ everywhere
  CHECK(specmap::validate_membership(S, Vp).member);

  // A real negative weight joins the exception set, not a violation.
  S.alpha[1] = complex{-0.4, 0.0};
  CHECK(specmap::validate_membership(S, Vp).member);

  // Positive-real weight off the exception set fails the τ threshold.
  S.alpha[2] = complex{0.5, 0.0};
  auto report = specmap::validate_membership(S, Vp);
  CHECK(!report.member);
  CHECK(report.violations[0].index == 3);

  // The minus variant mirrors the sign.
  SetSpec Vm = Vp;
  Vm.kind = SetKind::V_Omega_tau_minus;
  SpectralData T = specmap::model_spectral_data(6);
  for (auto& a : T.alpha) a -= complex{0.0, 0.05};
  CHECK(specmap::validate_membership(T, Vm).member);
  CHECK(!specmap::validate_membership(S, Vm).member);
}

TEST_CASE("membership: problem-side balls P_Q and P_QA") {
  SetSpec PQ;
  PQ.kind = SetKind::P_Q;
  PQ.Q = 2.0;

  // ‖q‖ = √π ≈ 1.77 for q ≡ 1.
  auto P = oracle::const_triple({1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, 64);
  CHECK(specmap::validate_membership(P, PQ).member);
  PQ.Q = 1.7;
  CHECK(!specmap::validate_membership(P, PQ).member);

  // |h| = 3 alone breaks Q = 2; the violation is global.
  PQ.Q = 2.0;
  auto Ph = oracle::const_triple({0.0, 0.0}, {3.0, 0.0}, {0.0, 0.0}, 64);
  auto report = specmap::validate_membership(Ph, PQ);
  CHECK(!report.member);
  REQUIRE(!report.violations.empty());
  CHECK(report.violations[0].index == -1);

  // P_QA adds |αₙ| ≤ A and simplicity, checked on supplied spectral data.
  SetSpec PQA;
  PQA.kind = SetKind::P_QA;
  PQA.Q = 2.0;
  PQA.A = 1.0;
  SpectralData S = specmap::model_spectral_data(5);
  CHECK(specmap::validate_membership(P, PQA, &S).member);
  S.alpha[3] = complex{1.4, 0.0};
  CHECK(!specmap::validate_membership(P, PQA, &S).member);
  S = specmap::model_spectral_data(5);
  S.rho[2] = S.rho[1];
  S.index_set = {1, 2, 4, 5};
  S.multiplicities = {1, 2, 1, 1};
  CHECK(!specmap::validate_membership(P, PQA, &S).member);
  // P_QA without spectral data cannot be decided.
  CHECK_THROWS_AS(specmap::validate_membership(P, PQA, nullptr),
                  specmap::validation_error);
}

TEST_CASE("membership: kind mismatches are rejected") {
  SetSpec PQ;
  PQ.kind = SetKind::P_Q;
  PQ.Q = 1.0;
  CHECK_THROWS_AS(
      specmap::validate_membership(specmap::model_spectral_data(4), PQ),
      specmap::validation_error);

  SetSpec ball;
  ball.kind = SetKind::B_Omega;
  ball.Omega = 1.0;
  auto P = oracle::const_triple({0, 0}, {0, 0}, {0, 0}, 32);
  CHECK_THROWS_AS(specmap::validate_membership(P, ball),
                  specmap::validation_error);
}

TEST_CASE("check_spectral_data: structural invariants") {
  SpectralData S = specmap::model_spectral_data(4);
  CHECK_NOTHROW(specmap::check_spectral_data(S));

  SpectralData bad = S;
  bad.alpha.pop_back();
  CHECK_THROWS_AS(specmap::check_spectral_data(bad), specmap::validation_error);

  bad = S;
  bad.rho[1] = complex{std::nan(""), 0.0};
  CHECK_THROWS_AS(specmap::check_spectral_data(bad), specmap::validation_error);

  // Group structure must cover 1..count exactly.
  bad = S;
  bad.index_set = {1};
  bad.multiplicities = {3};
  CHECK_THROWS_AS(specmap::check_spectral_data(bad), specmap::validation_error);

  bad = S;
  bad.rho[1] = bad.rho[0];
  bad.index_set = {1, 3, 4};
  bad.multiplicities = {2, 1, 1};
  CHECK_NOTHROW(specmap::check_spectral_data(bad));

  // Group members must actually share the eigenvalue.
  bad.rho[1] = bad.rho[0] + 0.5;
  CHECK_THROWS_AS(specmap::check_spectral_data(bad), specmap::validation_error);
}

TEST_CASE("sqrt_to_rho: branch arg ρ ∈ [−π/2, π/2)") {
  CHECK(dist(specmap::sqrt_to_rho({4.0, 0.0}), {2.0, 0.0}) <= 1e-15);
  CHECK(dist(specmap::sqrt_to_rho({0.0, 2.0}), {1.0, 1.0}) <= 1e-15);
  // Negative real axis lands on −i√|λ| (arg −π/2 is in, +π/2 is out).
  CHECK(dist(specmap::sqrt_to_rho({-4.0, 0.0}), {0.0, -2.0}) <= 1e-15);
  CHECK(dist(specmap::sqrt_to_rho({-1.0, 0.0}), {0.0, -1.0}) <= 1e-15);
  // Round trip through squaring.
  const complex z{1.3, 0.4};
  CHECK(dist(specmap::sqrt_to_rho(z * z), z) <= 1e-15);
  const complex w{0.2, -1.7};  // arg in (−π/2, 0)
  CHECK(dist(specmap::sqrt_to_rho(w * w), w) <= 1e-14);
}
