#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "specmap/contour.hpp"
#include "specmap/direct.hpp"
#include "specmap/spectral_core.hpp"
#include "specmap/stability.hpp"
#include "support/oracles.hpp"

using specmap::complex;
using specmap::ContourConfig;
using specmap::ContourGrid;
using specmap::PI;
using specmap::SpectralData;

namespace {

double dist(complex a, complex b) { return std::abs(a - b); }

double combined_error(const specmap::ProblemTriple& A,
                      const specmap::ProblemTriple& B) {
  std::vector<complex> diff(A.q.values.size());
  for (size_t j = 0; j < diff.size(); ++j)
    diff[j] = A.q.values[j] - B.q.values[j];
  return specmap::grid_l2_norm(specmap::GridFunction(std::move(diff))) +
         std::abs(A.h - B.h) + std::abs(A.H - B.H);
}

}  // namespace

TEST_CASE("ContourGrid: geometry and quadrature weights") {
  const auto grid = ContourGrid::make(2, 64);
  CHECK(grid.N == 2);
  CHECK(grid.node_count() == 64);
  CHECK(grid.radius() == 1.5);
  REQUIRE(static_cast<int>(grid.weights.size()) == 64);

  complex winding = 0.0;   // (1/2πi) ∮ dθ/θ = 1
  complex mean = 0.0;      // ∮ θ dθ = 0
  for (int l = 0; l < 64; ++l) {
    CHECK(std::abs(std::abs(grid.nodes[l]) - 1.5) <= 1e-14);
    winding += grid.weights[l] / grid.nodes[l];
    mean += grid.weights[l] * grid.nodes[l];
  }
  winding /= complex{0.0, 2.0 * PI};
  CHECK(dist(winding, {1.0, 0.0}) <= 1e-13);
  CHECK(std::abs(mean) <= 1e-12);

  CHECK_THROWS_AS(ContourGrid::make(2, 0), specmap::validation_error);
  CHECK_THROWS_AS(ContourGrid::make(-1, 16), specmap::validation_error);
}

TEST_CASE("model_weyl: closed form") {
  for (const complex rho :
       {complex{0.5, 0.0}, complex{1.5, 0.3}, complex{2.4, -0.7}}) {
    CHECK(dist(specmap::model_weyl(rho), oracle::model_weyl_closed(rho)) <=
          1e-13);
  }
}

TEST_CASE("weyl_hat_on_contour: rational mode vanishes on model data") {
  const auto grid = ContourGrid::make(2, 32);
  const SpectralData S = specmap::model_spectral_data(8);
  const auto mhat = specmap::weyl_hat_on_contour(S, grid);
  REQUIRE(static_cast<int>(mhat.size()) == 32);
  for (const complex v : mhat) CHECK(std::abs(v) <= 1e-13);
}

TEST_CASE("weyl_hat_on_contour: sample mode subtracts the model") {
  const auto grid = ContourGrid::make(2, 32);
  std::vector<complex> samples(32);
  for (int l = 0; l < 32; ++l) samples[l] = specmap::model_weyl(grid.nodes[l]);
  const auto mhat = specmap::weyl_hat_on_contour(samples, grid);
  for (const complex v : mhat) CHECK(std::abs(v) <= 1e-13);

  std::vector<complex> wrong(31);
  CHECK_THROWS_AS(specmap::weyl_hat_on_contour(wrong, grid),
                  specmap::schema_error);
}

TEST_CASE("weyl_hat_on_contour: data pole on the contour is refused") {
  const auto grid = ContourGrid::make(2, 32);
  SpectralData S = specmap::model_spectral_data(8);
  S.rho[1] = complex{1.5, 0.0};  // sits exactly on Γ₂
  CHECK_THROWS_AS(specmap::weyl_hat_on_contour(S, grid),
                  specmap::numeric_error);
}

TEST_CASE("build_block_system: degenerate grid reduces to the simple system") {
  const SpectralData S = oracle::robin_spectral(0.3, 20);
  const double x = 1.9;
  const auto grid0 = ContourGrid::make(0, 0);
  const auto block = specmap::build_block_system(S, x, grid0, 12, true);
  const auto simple = specmap::build_system(S, x, 12, true);

  REQUIRE(block.matrix.rows() == simple.matrix.rows());
  for (int i = 0; i < simple.matrix.rows(); ++i) {
    CHECK(dist(block.rhs(i), simple.rhs(i)) <= 1e-15);
    CHECK(dist(block.rhs_prime(i), simple.rhs_prime(i)) <= 1e-15);
    for (int j = 0; j < simple.matrix.cols(); ++j) {
      CHECK(dist(block.matrix(i, j), simple.matrix(i, j)) <= 1e-15);
      CHECK(dist(block.r_prime(i, j), simple.r_prime(i, j)) <= 1e-15);
    }
  }
}

TEST_CASE("build_block_system: separation annulus is enforced") {
  const auto grid = ContourGrid::make(2, 32);
  SpectralData S = specmap::model_spectral_data(10);
  S.rho[1] = complex{1.4, 0.0};  // inside the forbidden annulus (1.25, 1.75)
  CHECK_THROWS_AS(specmap::build_block_system(S, 1.0, grid, 8, false),
                  specmap::validation_error);

  SpectralData T = specmap::model_spectral_data(10);
  T.rho[4] = complex{1.6, 0.0};  // tail entry wandered inside Γ₂
  CHECK_THROWS_AS(specmap::build_block_system(T, 1.0, grid, 8, false),
                  specmap::validation_error);
}

TEST_CASE("shift_normalize: mean shift to ω = 0") {
  SpectralData S;
  const int N = 12;
  for (int n = 1; n <= N; ++n) {
    const double k = n - 1.0;
    S.rho.push_back({std::sqrt(k * k + 0.5), 0.0});
    S.alpha.push_back(specmap::model_alpha(n));
  }
  S.omega = complex{PI / 4.0, 0.0};

  const auto [shifted, c] = specmap::shift_normalize(S, *S.omega);
  CHECK(dist(c, {0.5, 0.0}) <= 1e-15);
  REQUIRE(shifted.omega.has_value());
  CHECK(std::abs(*shifted.omega) <= 1e-15);
  for (int n = 1; n <= N; ++n) {
    // The shift is pinned in λ = ρ²: the stored double for √(k²+½) squares
    // back to k²+½ only up to an ulp, and near λ̊ = 0 the square root
    // amplifies that ulp to ~1e-8, so ρ̊ itself cannot be tested tighter.
    const double k2 = double(n - 1) * double(n - 1);
    CHECK(dist(shifted.rho[n - 1] * shifted.rho[n - 1], {k2, 0.0}) <=
          1e-13 * (1.0 + k2));
    CHECK(dist(shifted.alpha[n - 1], S.alpha[n - 1]) == 0.0);
  }
}

TEST_CASE("inverse_solve_multiple: agrees with the simple pipeline") {
  const SpectralData S = oracle::robin_spectral(0.3, 25);

  specmap::ReconstructConfig simple_cfg;
  simple_cfg.n_trunc = 25;
  simple_cfg.grid_nodes = 128;
  const auto simple = specmap::epsilon_and_reconstruct(S, simple_cfg);

  ContourConfig cfg;
  cfg.contour_index = 2;
  cfg.contour_nodes = 64;
  cfg.n_trunc = 25;
  cfg.grid_nodes = 128;
  const auto contour = specmap::inverse_solve_multiple(S, cfg);

  CHECK(combined_error(simple.P, contour.P) <= 1e-6);
  CHECK(contour.inv_norm >= 1.0 - 1e-12);
  CHECK(contour.n_trunc == 25);
}

TEST_CASE("inverse_solve_multiple: double eigenvalue goes through") {
  // Synthetic group: double pole at λ = 0.25 with Laurent pair (0, 0.8),
  // model tail from n = 3 on.  The block system must stay invertible and
  // produce a finite reconstruction.
  SpectralData S;
  S.rho = {complex{0.5, 0.0}, complex{0.5, 0.0}};
  S.alpha = {complex{0.0, 0.0}, complex{0.8, 0.0}};
  for (int n = 3; n <= 20; ++n) {
    S.rho.push_back({double(n - 1), 0.0});
    S.alpha.push_back(specmap::model_alpha(n));
  }
  S.index_set = {1};
  S.multiplicities = {2};
  for (int n = 3; n <= 20; ++n) S.index_set.push_back(n);
  S.multiplicities.insert(S.multiplicities.end(), 18, 1);
  S.omega = complex{0.0, 0.0};

  ContourConfig cfg;
  cfg.contour_index = 2;
  cfg.contour_nodes = 64;
  cfg.n_trunc = 18;
  cfg.grid_nodes = 96;
  const auto R = specmap::inverse_solve_multiple(S, cfg);
  for (const complex v : R.P.q.values) CHECK(specmap::is_finite(v));
  CHECK(std::isfinite(R.inv_norm));
  CHECK(R.residual_max <= 1e-8);

  // A multiple group in the discrete tail is not representable.
  ContourConfig low = cfg;
  low.contour_index = 0;
  low.contour_nodes = 16;
  CHECK_THROWS_AS(specmap::inverse_solve_multiple(S, low),
                  specmap::validation_error);
}

TEST_CASE("cauchy_delta / cauchy_delta0: rebuilt characteristic functions") {
  const auto P = oracle::triple_A(4096);
  const auto C = specmap::cauchy_data(P, 64);

  // Integer frequencies are reproduced through cosine orthogonality.
  for (int k = 1; k <= 3; ++k) {
    const complex rho{double(k), 0.0};
    CHECK(dist(specmap::cauchy_delta(C, rho), specmap::char_delta(P, rho)) <=
          1e-5);
    CHECK(dist(specmap::cauchy_delta0(C, rho), specmap::char_delta0(P, rho)) <=
          1e-5);
  }
  // Off-integer complex probe: truncation tail only.  The 𝒩₀ side is one
  // power slower: its sine coefficients decay like 1/k (nonzero endpoint
  // value), and off the integers the coupling ∫sin kt sin ρt dt does not
  // alternate, leaving an O(1/K) tail.
  CHECK(dist(specmap::cauchy_delta(C, oracle::kA_probe), oracle::kA_Delta) <=
        1e-3);
  CHECK(dist(specmap::cauchy_delta0(C, oracle::kA_probe), oracle::kA_Delta0) <=
        1e-2);
}

TEST_CASE("inverse_from_cauchy: constant potential round trip") {
  // q ≡ 1, h = H = 0.  The eigenvalues re-extracted from the rebuilt Δ are
  // sharp (~1e-7), but the weights inherit the 𝒩₀ sine tail of Δ⁰, which is
  // only O(1/K) at the low modes (≈ c²π²/8 · sin(ρₙπ)·(2/π)/(ρₙK), about
  // 8e-3 at n = 2 for c = 1, K = 64), so the reconstruction carries
  // percent-level weight error by design of the finite-mode format.
  const auto P = oracle::const_triple({1.0, 0.0}, {0, 0}, {0, 0}, 4096);
  const auto C = specmap::cauchy_data(P, 64);
  CHECK(dist(C.omega, {PI / 2.0, 0.0}) <= 1e-10);
  CHECK(dist(C.omega0, {PI / 2.0, 0.0}) <= 1e-10);

  // Γ₂ would cut through ρ₂ = √2; Γ₄ keeps ρ₁..ρ₄ inside (max 3.162 ≤ 3.25)
  // and the tail ρ₅ = √17 ≈ 4.12 outside the buffer ring.
  ContourConfig cfg;
  cfg.contour_index = 4;
  cfg.contour_nodes = 128;
  cfg.n_trunc = 25;
  cfg.grid_nodes = 128;
  const auto R = specmap::inverse_from_cauchy(C, cfg);

  double worst_q = 0.0;
  for (const complex v : R.P.q.values)
    worst_q = std::max(worst_q, std::abs(v - complex{1.0, 0.0}));
  CHECK(worst_q <= 8e-2);
  CHECK(std::abs(R.P.h) <= 3e-2);
  CHECK(std::abs(R.P.H) <= 3e-2);
}
