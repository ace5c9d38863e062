#pragma once
// ─────────────────────────────────────────────────────────────────────────────
// Model data, asymptotic decomposition, distances, and set membership.
//
// Model problem (q ≡ 0, h = H = 0):
//     ρ̃ₙ = n − 1,   α̃₁ = 1/π,   α̃ₙ = 2/π (n ≥ 2).
//
// Tail coordinates of data S = {ρₙ, αₙ}:
//     ρₙ = (n−1) + ω/(πn) + ϰₙ/n   ⇒   ϰₙ = n(ρₙ − n + 1) − ω/π,
//     αₙ = 2/π + sₙ/n              ⇒   sₙ = n(αₙ − 2/π),
//
// distance between two data sequences (with their own ω’s):
//     d(S¹,S²) = √( |ω¹−ω²|² + Σₙ ( |ϰₙ¹−ϰₙ²|² + |sₙ¹−sₙ²|² ) ),
//
// truncated/contour variant for index N with Γ_N = {|ρ| = N−1/2}:
//     d_N = max_{Γ_N} |M¹−M²| + √( |ω¹−ω²|² + Σ_{n>N} (…) ),
//
// deviation-from-model sequence entering the admissible balls:
//     ξₙ = √( |ρₙ − (n−1)|² + |αₙ − α̃ₙ|² ),     ‖{n·ξₙ}‖₂ ≤ Ω.
// ─────────────────────────────────────────────────────────────────────────────

#include "specmap/types.hpp"

namespace specmap {

// ── Model data ──────────────────────────────────────────────────────────────

double model_rho(int n);      // ρ̃ₙ = n − 1  (n ≥ 1)
complex model_alpha(int n);   // α̃₁ = 1/π, α̃ₙ = 2/π

// First n_max model pairs {ρ̃ₙ, α̃ₙ}; ω = 0 attached.
SpectralData model_spectral_data(int n_max);

// ── Asymptotic decomposition ────────────────────────────────────────────────
// Splits S into (ω, {ϰₙ}, {sₙ}).  When omega_hint is absent, ω is estimated
// by Richardson extrapolation in 1/n of f(n) = πn(ρₙ−n+1) over the last
// quartile of indices (needs count ≥ 8); omega_spread reports the scatter
// of the extrapolated values.  Recomposing ρₙ from the result is exact to
// round-off by construction.
TailDecomposition decompose_asymptotics(const SpectralData& S,
                                        std::optional<complex> omega_hint = {});

// ── Distances ───────────────────────────────────────────────────────────────

// Full ℓ₂ distance; both sequences must have equal length.
double distance_d(const SpectralData& S1, const SpectralData& S2,
                  complex omega1, complex omega2);

// Contour variant: sup|M¹−M²| is approximated by the max over the supplied
// sample vectors (same nodes on Γ_N for both), the tail sum starts at n = N+1.
double distance_dN(const SpectralData& S1, const SpectralData& S2, int N,
                   const std::vector<complex>& M1_on_contour,
                   const std::vector<complex>& M2_on_contour,
                   complex omega1, complex omega2);

// ── Deviation from the model ────────────────────────────────────────────────

// ξₙ = √(|ρₙ−ρ̃ₙ|² + |αₙ−α̃ₙ|²), n = 1..count.
std::vector<double> xi_sequence(const SpectralData& S);

// ── Membership validators ───────────────────────────────────────────────────
// Every defining inequality of the chosen set is checked on the finite data;
// each failure is reported with its sequence index (−1 = global condition).
//
// aux carries the measured sup-norm of (I+R̃(x))⁻¹ for B_Omega_ring.
MembershipReport validate_membership(const SpectralData& S, const SetSpec& spec,
                                     std::optional<double> aux = {});

// Problem-side balls.  For P_QA pass the computed spectral data so the
// weight bound |αₙ| ≤ A and eigenvalue simplicity can be checked.
MembershipReport validate_membership(const ProblemTriple& P, const SetSpec& spec,
                                     const SpectralData* spectral = nullptr);

}  // namespace specmap
