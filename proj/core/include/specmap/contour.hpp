#pragma once
// ─────────────────────────────────────────────────────────────────────────────
// Mixed continuous/discrete main equation for possibly-multiple eigenvalues.
//
// The circle Γ_N = {|ρ| = N−1/2} splits the data: groups with n ≤ N (allowed
// to be multiple) enter only through the Weyl-difference M̂ = M − M̃ sampled
// on Γ_N, while the tail n > N stays in the discrete divided-difference
// coordinates of the simple pipeline.  The unknown is the pair
//     f_C(θ_l) = φ(x, θ_l) at the K_c contour nodes,
//     ψ_D      = interleaved ψₙᵢ for n = N+1..N_trunc,
// and the contour integrals are Nyström-discretized by the trapezoid rule.
// With λ = θ², a full ρ-circle double-covers the λ-circle, giving
//     (1/2πi)∮ M̂(λ) F(√λ) dλ  ≈  (1/K_c) Σ_l θ_l² M̂(θ_l²) F(θ_l).
//
// Block layout (contour rows first):
//   CC_{ml} = δ_{ml} + w_l M̂(θ_l²) D̃(x, θ_m, θ_l),        w_l = θ_l²/K_c,
//   CD couples contour row m to tail columns (k,j) exactly like R̃_{n1,kj}
//      with ρ̃ₙ replaced by θ_m,
//   DC_{(n,0),l} = w_l M̂(θ_l²) G̃ₙ(x, ρₙ, θ_l),
//   DC_{(n,1),l} = w_l M̂(θ_l²) D̃(x, ρ̃ₙ, θ_l),
//   DD = the simple-pipeline R̃ restricted to n,k > N,
// with right-hand side [cos θ_m x ; ψ̃_D].  Afterwards
//   ε(x) = Σ_l w_l M̂(θ_l²) f_C(θ_l) cos θ_l x
//        + Σ_{k>N} ( α_{k0}φ_{k0}cos ρ_{k0}x − α_{k1}φ_{k1}cos ρ_{k1}x ),
// and (q,h,H) follow as in the simple pipeline (internal shift included).
// ─────────────────────────────────────────────────────────────────────────────

#include <Eigen/Dense>

#include "specmap/main_equation.hpp"
#include "specmap/types.hpp"

namespace specmap {

// Minimal distance from any data pole to Γ_N before raising numeric_error.
inline constexpr double kPoleGuard = 1e-3;

// ── Contour geometry ────────────────────────────────────────────────────────

struct ContourGrid {
  int N = 0;                     // contour index; radius N − 1/2
  std::vector<complex> nodes;    // θ_l equispaced on the circle
  std::vector<complex> weights;  // 2πi·θ_l/K_c  (∮ f dθ ≈ Σ w_l f(θ_l))

  int node_count() const { return static_cast<int>(nodes.size()); }
  double radius() const { return N - 0.5; }

  static ContourGrid make(int N, int node_count);
};

// ── Weyl difference on the contour ──────────────────────────────────────────

// Model Weyl function M̃(ρ²) = cos ρπ/(ρ sin ρπ), closed form.
complex model_weyl(complex rho);

// From data: rational M_N(λ) − M̃_N(λ) built from the Laurent groups with
// n ≤ grid.N versus the model poles λ̃₁..λ̃_N.  Poles must keep kPoleGuard
// distance from the contour.
std::vector<complex> weyl_hat_on_contour(const SpectralData& S,
                                         const ContourGrid& grid);

// From samples: M̂ = M_samples − M̃(θ_l²), one sample per node.
std::vector<complex> weyl_hat_on_contour(const std::vector<complex>& M_samples,
                                         const ContourGrid& grid);

// ── Block system ────────────────────────────────────────────────────────────

struct BlockSystem {
  double x = 0.0;
  int N = 0;              // contour index
  int n_trunc = 0;        // discrete tail ends here
  bool with_derivative = false;
  Eigen::MatrixXcd matrix;       // (K_c + 2T)×(K_c + 2T), T = n_trunc − N
  Eigen::VectorXcd rhs;
  Eigen::MatrixXcd r_prime;      // ∂ₓ of the operator part
  Eigen::VectorXcd rhs_prime;
  std::vector<complex> theta;    // contour nodes (aliases grid)
  std::vector<complex> m_hat;    // M̂ at the nodes
  std::vector<complex> rho_hat;  // ρ̂ₖ for tail k = N+1..n_trunc
};

// Requires 𝒮_N separation: |ρₙ| ≤ N−3/4 for n ≤ N, and for n > N simple
// eigenvalues with |ρₙ| ≥ N−1/4.  Throws validation_error otherwise.
BlockSystem build_block_system(const SpectralData& S, double x,
                               const ContourGrid& grid, int n_trunc,
                               bool with_derivative);

// ── Full pipelines ──────────────────────────────────────────────────────────

struct ContourConfig {
  int contour_index = 2;     // N
  int contour_nodes = 64;    // K_c
  int n_trunc = 30;
  int grid_nodes = 1024;
  bool explicit_inverse_norm = false;
};

// Inverse problem from data with (possibly) multiple eigenvalues among the
// first N indices.  Shift-normalizes internally like the simple pipeline.
ReconstructionResult inverse_solve_multiple(const SpectralData& S,
                                            const ContourConfig& config);

// Inverse problem from Cauchy data: synthesizes Δ, Δ⁰ by quadrature of the
// stored grid functions, certifies and finds eigenvalues, extracts Laurent
// weights of M = −Δ⁰/Δ, and dispatches to inverse_solve_multiple.
ReconstructionResult inverse_from_cauchy(const CauchyData& C,
                                         const ContourConfig& config);

// Synthesized characteristic functions from Cauchy data (exposed for tests
// and for the eigenvalue machinery).
complex cauchy_delta(const CauchyData& C, complex rho);
complex cauchy_delta0(const CauchyData& C, complex rho);

// ── Shift normalization ─────────────────────────────────────────────────────

// λ̊ₙ = λₙ − (2/π)ω with α, multiplicity structure unchanged; returns the
// shifted data (ω̊ = 0 attached) and the shift constant c = (2/π)ω to be
// added back to a reconstructed potential.
std::pair<SpectralData, complex> shift_normalize(const SpectralData& S,
                                                 complex omega);

}  // namespace specmap
