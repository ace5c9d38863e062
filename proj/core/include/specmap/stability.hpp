#pragma once
// ─────────────────────────────────────────────────────────────────────────────
// Stability experiments: structured perturbations of spectral data, sweeps
// of reconstruction difference against data distance, and the a-posteriori
// residual check that closes the loop through the direct solver.
// ─────────────────────────────────────────────────────────────────────────────

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specmap/contour.hpp"
#include "specmap/main_equation.hpp"
#include "specmap/spectral_core.hpp"
#include "specmap/types.hpp"

namespace specmap {

// ── Perturbation schemes ────────────────────────────────────────────────────
//
//  gaussian_tail    ρₙ += σ ζₙ/n, αₙ += σ ζₙ′/n with ζ, ζ′ complex standard
//                   normal (seeded, mt19937_64), preserving ℓ₂ summability.
//  single_entry     ρ_m += σ and α_m += σ for one index m (the worst single
//                   coordinate); deterministic, index from spec.
//  pair_split       splits a double eigenvalue (λ₁, weights α₁, α₂) into
//                       λ₁^δ = λ₁ + δ,   λ₂^δ = λ₁ − δ + cδ²,
//                       α₁^δ = a/δ,      α₂^δ = −a/δ,
//                   with a = α₂/2, c = α₁/a; weights diverge while the
//                   reconstruction moves only O(δ²).
//  alpha_degenerate α_m ← σ (drives a weight toward 0; σ = 0 exactly
//                   degenerate, triggering the singular-system guard).

enum class PerturbScheme : std::uint8_t {
  gaussian_tail,
  single_entry,
  pair_split,
  alpha_degenerate,
};

struct PerturbSpec {
  PerturbScheme scheme = PerturbScheme::gaussian_tail;
  double magnitude = 0.0;   // σ or δ above
  std::uint64_t seed = 0;   // gaussian_tail only
  int index = 1;            // single_entry / alpha_degenerate / pair leader
};

SpectralData perturb(const SpectralData& S, const PerturbSpec& spec);

// ── Sweeps ──────────────────────────────────────────────────────────────────

struct StabilityRow {
  double magnitude = 0.0;
  double distance = 0.0;     // d or d_N between base and perturbed data
  double difference = 0.0;   // ‖q¹−q²‖_{L₂} + |h¹−h²| + |H¹−H²|
  double ratio = 0.0;        // difference / distance (0 when distance ≈ 0)
  bool base_member = false;  // base data inside the validation panel
  bool pert_member = false;
  double inv_norm = 0.0;     // max over x of the perturbed-system inverse norm
};

struct StabilityReport {
  std::vector<StabilityRow> rows;
  std::string scheme;
  std::string distance_kind;  // "d" or "d_N"
};

// Simple-spectrum sweep: perturbs S by `scheme` at each magnitude, runs the
// divided-difference pipeline on base and perturbed data, and reports
// difference against the ℓ₂ distance d.  Membership flags come from the
// panel {B_Ω(Ω=1), 𝒱(Ω=1, δ=0.2)}.
StabilityReport lipschitz_sweep(const SpectralData& S,
                                const std::vector<double>& magnitudes,
                                const PerturbSpec& scheme,
                                const ReconstructConfig& config);

// Multiple-spectrum sweep (pair_split and friends): reconstructs through the
// contour pipeline on both sides and reports difference against d_N.
StabilityReport lipschitz_sweep(const SpectralData& S,
                                const std::vector<double>& magnitudes,
                                const PerturbSpec& scheme,
                                const ContourConfig& config);

// ── A-posteriori residual ───────────────────────────────────────────────────

// Reconstructs (q,h,H) from the first n_trunc groups of S, re-solves the
// direct problem on the result, and returns
//     max_{n ≤ n_check} ( |ρₙ − ρₙ^rec| + |αₙ − αₙ^rec| ),
// with n_check = min(n_trunc, S.count()).  Data are shift-normalized
// internally, so ω ≠ 0 costs no accuracy.
double residual_check(const SpectralData& S, int n_trunc, int grid_nodes,
                      int n_check = 0);

}  // namespace specmap
