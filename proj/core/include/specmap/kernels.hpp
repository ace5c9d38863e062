#pragma once
// ─────────────────────────────────────────────────────────────────────────────
// Model-problem kernels and their divided differences.
//
// With the model solutions φ̃(x,ρ) = cos ρx, everything below reduces to
// elementary trigonometric integrals:
//
//   D̃(x, ρ, θ) = ∫₀ˣ cos ρt · cos θt dt
//              = ½ [ sin((ρ−θ)x)/(ρ−θ) + sin((ρ+θ)x)/(ρ+θ) ],
//
//   ∂ρD̃(x, ρ, θ) = ½ [ d(ρ−θ) + d(ρ+θ) ],   d(z) = (xz·cos zx − sin zx)/z²,
//
//   ∂ₓD̃(x, ρ, θ) = cos ρx · cos θx,
//
// and the divided differences anchored at the model frequency ρ̃ₙ = n−1:
//
//   g̃ₙ(x, ρ)    = (cos ρx − cos ρ̃ₙx)/(ρ − ρ̃ₙ)        → −x·sin ρ̃ₙx,
//   G̃ₙ(x, ρ, θ) = (D̃(x,ρ,θ) − D̃(x,ρ̃ₙ,θ))/(ρ − ρ̃ₙ)   → ∂ρD̃(x, ρ̃ₙ, θ),
//
// the arrows giving the coalescence limits ρ → ρ̃ₙ.
//
// Numerical policy:
//  * sin(zx)/z and d(z) switch to their Taylor series for |z| < 1e−4
//    (the direct quotients lose about half the mantissa there);
//  * the divided differences switch to the analytic limit for
//    |ρ − ρ̃ₙ| < 1e−6, evaluating the limit formula at the midpoint
//    (ρ + ρ̃ₙ)/2, which keeps the branch switch second-order accurate.
// ─────────────────────────────────────────────────────────────────────────────

#include "specmap/types.hpp"

namespace specmap {

// |z| below which series replace the direct quotients sin(zx)/z, d(z).
inline constexpr double kSeriesSwitch = 1e-4;

// |ρ − ρ̃ₙ| below which divided differences use the analytic limit.
inline constexpr double kCoalesceSwitch = 1e-6;

// sin(z·x)/z, series-stabilized; equals x at z = 0.
complex sin_ratio(complex z, double x);

// d/dz [ sin(z·x)/z ] = (x·z·cos zx − sin zx)/z², series-stabilized.
complex sin_ratio_deriv(complex z, double x);

// D̃(x, ρ, θ) = ∫₀ˣ cos ρt cos θt dt.
complex dtilde_kernel(double x, complex rho, complex theta);

// ∂D̃/∂ρ (x, ρ, θ).
complex dtilde_kernel_drho(double x, complex rho, complex theta);

// ∂D̃/∂x (x, ρ, θ) = cos ρx · cos θx.
complex dtilde_kernel_dx(double x, complex rho, complex theta);

// g̃ₙ(x, ρ): divided difference of cos(·x) between ρ and ρ̃ₙ = n−1  (n ≥ 1).
complex g_divided(double x, complex rho, int n);

// ∂g̃ₙ/∂x: divided difference of −(·)sin(·x) between ρ and ρ̃ₙ.
complex g_divided_dx(double x, complex rho, int n);

// G̃ₙ(x, ρ, θ): divided difference of D̃(x, ·, θ) between ρ and ρ̃ₙ.
complex G_divided(double x, complex rho, complex theta, int n);

// ∂G̃ₙ/∂x (x, ρ, θ) = g̃ₙ(x, ρ) · cos θx.
complex G_divided_dx(double x, complex rho, complex theta, int n);

}  // namespace specmap
