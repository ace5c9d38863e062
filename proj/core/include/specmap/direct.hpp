#pragma once
// ─────────────────────────────────────────────────────────────────────────────
// Forward solver: integrate the equation for arbitrary complex ρ, build the
// characteristic functions, locate eigenvalues with certified counts, and
// produce weight numbers, Weyl-function values, and Cauchy data.
//
//   Δ(ρ)  = φ′(π,ρ) + H·φ(π,ρ),   φ(0,ρ) = 1, φ′(0,ρ) = h,
//   Δ⁰(ρ) = ψ′(π,ρ) + H·ψ(π,ρ),   ψ(0,ρ) = 0, ψ′(0,ρ) = 1,
//   M(ρ²) = −Δ⁰(ρ)/Δ(ρ).
//
// Eigenvalues are the zeros of Δ; both Δ and Δ⁰ are even in ρ and entire in
// λ = ρ².  Root finding therefore runs in the λ-plane (Newton with central-
// difference derivatives), counts are certified by argument-principle
// winding numbers over Γ_N = {|ρ| = N−1/2}, and a quadtree subdivision of
// the enclosed λ-region resolves clusters when the harvest disagrees with
// the certified count.
//
// Weight numbers:  αₙ = (∫₀^π φ²(x,ρₙ) dx)⁻¹ for simple eigenvalues, and as
// a cross-check the residue form αₙ = −2ρₙ·Δ⁰(ρₙ)/Δ̇(ρₙ) (λ-plane variant
// αₙ = −Δ⁰(ρₙ)/(dΔ/dλ)(λₙ) near ρ = 0).
//
// Cauchy data: the representations
//   Δ(ρ)  = −ρ sin ρπ + ω cos ρπ + ∫₀^π 𝒩(t) cos ρt dt,
//   ρΔ⁰(ρ) = ρ cos ρπ + ω₀ sin ρπ + ∫₀^π 𝒩₀(t) sin ρt dt,
// make the Fourier coefficients of 𝒩, 𝒩₀ readable at integer ρ = k:
//   𝒩̂ₖ = Δ(k) − ω(−1)ᵏ,   𝒩̂₀ₖ = k·Δ⁰(k) − k(−1)ᵏ.
// ─────────────────────────────────────────────────────────────────────────────

#include "specmap/types.hpp"

namespace specmap {

// ── ODE integration ─────────────────────────────────────────────────────────

struct SolutionSample {
  complex value;       // y(x_j)
  complex derivative;  // y′(x_j)
};

struct OdeSolution {
  std::vector<SolutionSample> samples;  // one per grid node of q
  double error_estimate = 0.0;          // Richardson endpoint estimate
};

// Fixed-step RK4 on [y, y′] for −y″ + q·y = ρ²·y over [0,π], stepping on the
// q-grid with a half-step companion pass; the returned samples come from the
// half-step pass, error_estimate from the Richardson comparison at x = π.
// Throws validation_error when |ρ| exceeds rho_cap (if positive) or when the
// grid resolves fewer than 16 nodes per oscillation period (|ρ| > M/8).
OdeSolution integrate_solution(const GridFunction& q, complex init_value,
                               complex init_slope, complex rho,
                               double rho_cap = 0.0);

// ── Characteristic functions and the Weyl function ──────────────────────────

complex char_delta(const ProblemTriple& P, complex rho);   // Δ(ρ)
complex char_delta0(const ProblemTriple& P, complex rho);  // Δ⁰(ρ)

// M(ρ²) = −Δ⁰/Δ; throws numeric_error when |Δ| ≤ 1e−12·(1+|ρ|²).
complex weyl_function(const ProblemTriple& P, complex rho);

// ── Eigenvalues ─────────────────────────────────────────────────────────────

struct EigenvalueSet {
  std::vector<complex> rho;        // ρ₁..ρ_{n_max}, multiples consecutive
  std::vector<int> index_set;      // group leaders when multiplicity found
  std::vector<int> multiplicities;
  int contour_count = 0;           // certified λ-count inside Γ_{n_max}
};

// Newton in λ from the asymptotic starts, winding-number certification on
// Γ_{n_max}, quadtree subdivision fallback.  Throws numeric_error when the
// certified count cannot be reconciled with the harvest.
EigenvalueSet find_eigenvalues(const ProblemTriple& P, int n_max);

// λ-count inside {|ρ| = radius} by the argument principle (winding of Δ
// along the ρ-circle is twice the λ-count).
int certified_count(const ProblemTriple& P, double radius);

// ── Weight numbers ──────────────────────────────────────────────────────────

// αₙ = (∫₀^π φ²(x,ρₙ)dx)⁻¹, composite Simpson on the solver grid.
// Throws numeric_error when the normalization integral is below 1e−12.
complex weight_number_simple(const ProblemTriple& P, complex rho_n);

// Residue of M(λ) at λₙ = ρₙ²; Δ̇ by central differences with step
// 1e−5·(1+|ρₙ|) (λ-plane differences for |ρₙ| < 1/2).
complex weight_number_residue(const ProblemTriple& P, complex rho_n);

// ── Laurent data at a pole ──────────────────────────────────────────────────

// α_{n+ν} = (1/2πi) ∮ M(λ)(λ−λₙ)^ν dλ, ν = 0..m_n−1, from equispaced
// samples on the circle |λ−λₙ| = r (trapezoid = exact DFT quadrature).
// Requires ≥ 16 samples and r > 0.
std::vector<complex> laurent_coefficients(
    const std::vector<complex>& M_samples_on_circle, complex center,
    double radius, int m_n);

// ── Cauchy data and ω ───────────────────────────────────────────────────────

// 𝒩, 𝒩₀ synthesized from K Fourier modes on the q-grid of P.  Requires K ≥ 8.
CauchyData cauchy_data(const ProblemTriple& P, int fourier_modes);

// ω = h + H + ½∫₀^π q.
complex omega_direct(const ProblemTriple& P);

// ω₀ = H + ½∫₀^π q.
complex omega0_direct(const ProblemTriple& P);

// ── Convenience: full forward map ───────────────────────────────────────────

// find_eigenvalues + weight numbers (+ ω attached); multiplicity groups get
// their Laurent coefficients via a small circle around the common pole.
SpectralData forward_problem(const ProblemTriple& P, int n_max);

}  // namespace specmap
