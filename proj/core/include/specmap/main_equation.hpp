#pragma once
// ─────────────────────────────────────────────────────────────────────────────
// Main equation for simple spectra: truncated linear system per grid point,
// solution of the inverse problem, and reconstruction diagnostics.
//
// Unknowns at a fixed x are interleaved per index pair (n,i):
//     ψ(x) = [ψ₁₀, ψ₁₁, ψ₂₀, ψ₂₁, …],   (vector order of the 2N system)
// where, writing ρₙ₀ = ρₙ (data), ρₙ₁ = ρ̃ₙ = n−1 (model), ρ̂ₙ = ρₙ₀ − ρₙ₁:
//     ψₙ₀ = (φₙ₀ − φₙ₁)/ρ̂ₙ   (→ φ̇ₙ₁ at coalescence),   ψₙ₁ = φₙ₁,
// and the system reads (I + R̃(x))ψ(x) = ψ̃(x) with
//     ψ̃ₙ₀(x) = g̃ₙ(x, ρₙ₀),   ψ̃ₙ₁(x) = cos ρ̃ₙx,
//     R̃_{n0,k0} = α_{k0}·ρ̂ₖ·G̃ₙ(x, ρₙ₀, ρ_{k0}),
//     R̃_{n0,k1} = α_{k0}·G̃ₙ(x, ρₙ₀, ρ_{k0}) − α_{k1}·G̃ₙ(x, ρₙ₀, ρ_{k1}),
//     R̃_{n1,k0} = α_{k0}·ρ̂ₖ·D̃(x, ρ̃ₙ, ρ_{k0}),
//     R̃_{n1,k1} = α_{k0}·D̃(x, ρ̃ₙ, ρ_{k0}) − α_{k1}·D̃(x, ρ̃ₙ, ρ_{k1}),
// with α_{k0} = αₖ (data), α_{k1} = α̃ₖ (model).  The x-derivative blocks use
// ∂ₓD̃(x,ρ,θ) = cos ρx cos θx and ∂ₓG̃ₙ = g̃ₙ(x,ρ)cos θx, and ψ′ solves
// (I + R̃)ψ′ = ψ̃′ − R̃′ψ on the same factorization.
//
// Solutions convert back through Tₙ = [[ρ̂ₙ, 1], [0, 1]]:
//     φₙ₀ = ρ̂ₙψₙ₀ + ψₙ₁,   φₙ₁ = ψₙ₁,
// and the reconstruction reads
//     ε(x) = Σₖ ( α_{k0}·φ_{k0}(x)·cos(ρ_{k0}x) − α_{k1}·φ_{k1}(x)·cos(ρ_{k1}x) ),
//     q = −2ε′,   h = −ε(0),   H = ε(π).
//
// ε′ converges in L₂ only when ω = 0; epsilon_and_reconstruct therefore
// shift-normalizes its input internally (λ → λ − 2ω/π leaves α, h, H alone
// and zeroes ω), reconstructs against the model, and adds the constant
// 2ω/π back to the recovered potential.
// ─────────────────────────────────────────────────────────────────────────────

#include <Eigen/Dense>

#include "specmap/types.hpp"

namespace specmap {

// Pivot threshold below which the factorization is declared singular.
inline constexpr double kSingularPivot = 1e-13;

// ── System assembly ─────────────────────────────────────────────────────────

struct MainEquationSystem {
  double x = 0.0;
  int n_trunc = 0;
  bool with_derivative = false;
  Eigen::MatrixXcd matrix;      // I + R̃(x), size 2N×2N, interleaved
  Eigen::VectorXcd rhs;         // ψ̃(x)
  Eigen::MatrixXcd r_prime;     // R̃′(x) when with_derivative
  Eigen::VectorXcd rhs_prime;   // ψ̃′(x) when with_derivative
  std::vector<complex> rho_hat; // ρ̂ₖ, k = 1..N (for the Tₖ transforms)
};

// Assembles the truncated system at x from the first n_trunc data pairs.
// Requires all-simple data with at least n_trunc entries; multiplicity
// structure must go through the contour pipeline instead.
MainEquationSystem build_system(const SpectralData& S, double x, int n_trunc,
                                bool with_derivative);

// ── Solve ───────────────────────────────────────────────────────────────────

struct SystemSolution {
  std::vector<complex> psi;        // interleaved ψ values
  std::vector<complex> psi_prime;  // interleaved ψ′ (empty without blocks)
  double inv_norm_estimate = 0.0;  // ‖(I+R̃(x))⁻¹‖_{∞→∞}
  bool inv_norm_exact = false;     // true when the inverse was formed
};

// Dense partial-pivot solve; throws numeric_error on a pivot below
// kSingularPivot (non-invertible main equation — degenerate data).
// explicit_inverse switches the norm report from a factorization-based
// estimate to the exact max-row-sum of the formed inverse.
SystemSolution solve_system(const MainEquationSystem& sys,
                            bool explicit_inverse = false);

// ── Change of variables back to φ ───────────────────────────────────────────

struct PhiRecovery {
  std::vector<complex> phi;        // interleaved [φ₁₀, φ₁₁, φ₂₀, φ₂₁, …]
  std::vector<complex> phi_prime;  // same layout (empty without derivative)
};

PhiRecovery recover_phi(const SystemSolution& sol, const SpectralData& S,
                        double x);

// ── Reconstruction ──────────────────────────────────────────────────────────

struct ReconstructConfig {
  int n_trunc = 30;
  int grid_nodes = 1024;
  bool explicit_inverse_norm = false;
};

struct ReconstructionResult {
  ProblemTriple P;               // recovered (q, h, H)
  GridFunction epsilon;          // ε on the output grid (shifted frame)
  double residual_max = 0.0;     // max post-solve system residual
  double eps_deriv_mismatch = 0; // L₂ gap: solved ε′ vs finite differences
  double inv_norm = 0.0;         // sup over nodes of the per-node estimate
  int n_trunc = 0;
  int grid_nodes = 0;
};

// Full inverse pipeline for simple data: per-node solves (parallel over
// grid nodes), ε and ε′ accumulation, reconstruction of (q, h, H).
ReconstructionResult epsilon_and_reconstruct(const SpectralData& S,
                                             const ReconstructConfig& config);

// q = −2ε′, h = −ε(0), H = ε(π) from sampled ε, ε′.
ProblemTriple reconstruct_from_epsilon(const GridFunction& epsilon,
                                       const GridFunction& epsilon_prime);

// sup over x_nodes of ‖(I+R̃(x))⁻¹‖_{∞→∞}.  Singular nodes yield +∞ and,
// when singular_node is non-null, the offending node index.
double operator_norm_profile(const SpectralData& S, int n_trunc,
                             const std::vector<double>& x_nodes,
                             bool explicit_inverse = false,
                             int* singular_node = nullptr);

}  // namespace specmap
