#pragma once
// ─────────────────────────────────────────────────────────────────────────────
// Reference data for the test suite.
//
// The closed-form families below are elementary to derive by hand (constant
// potentials, the exponential Robin family) and are evaluated directly.
// The frozen literals were produced before this library existed, by an
// independent adaptive Runge–Kutta integration (rtol 1e−13) of the defining
// initial-value problems, cross-checked in 40-digit arithmetic, and are
// pinned here to full double precision.  Nothing in this header calls the
// library under test except the plain data types.
// ─────────────────────────────────────────────────────────────────────────────

#include <cmath>
#include <complex>
#include <vector>

#include "specmap/types.hpp"

namespace oracle {

using specmap::complex;
using specmap::PI;

// ── Closed forms: constant potential q ≡ c with boundary constants (h, H) ───
//
//   φ(x,ρ)  = cos μx + h·sin(μx)/μ,        μ² = ρ² − c,
//   ψ(x,ρ)  = sin(μx)/μ,
//   Δ(ρ)    = −μ sin μπ + h cos μπ + H·(cos μπ + h sin(μπ)/μ),
//   Δ⁰(ρ)   =  cos μπ + H sin(μπ)/μ.

inline complex sinc_scaled(complex mu, double x) {
  // sin(μx)/μ, stable for small μ.
  const complex z = mu * x;
  if (std::abs(z) < 1e-6) {
    const complex z2 = z * z;
    return x * (1.0 - z2 / 6.0 * (1.0 - z2 / 20.0));
  }
  return std::sin(z) / mu;
}

inline complex phi_const(double x, complex rho, complex c, complex h) {
  const complex mu = std::sqrt(rho * rho - c);
  return std::cos(mu * x) + h * sinc_scaled(mu, x);
}

inline complex phi_const_deriv(double x, complex rho, complex c, complex h) {
  const complex mu = std::sqrt(rho * rho - c);
  return -mu * std::sin(mu * x) + h * std::cos(mu * x);
}

inline complex delta_const(complex rho, complex c, complex h, complex H) {
  return phi_const_deriv(PI, rho, c, h) + H * phi_const(PI, rho, c, h);
}

inline complex delta0_const(complex rho, complex c, complex H) {
  const complex mu = std::sqrt(rho * rho - c);
  return std::cos(mu * PI) + H * sinc_scaled(mu, PI);
}

// Model Weyl function M̃(ρ²) = cos ρπ / (ρ sin ρπ).
inline complex model_weyl_closed(complex rho) {
  return std::cos(rho * PI) / (rho * std::sin(rho * PI));
}

// ── Closed forms: the exponential Robin family (q ≡ 0, H = −h, real h) ──────
//
// Mean-free data (ω = 0) with one genuinely non-model eigenvalue:
//   λ₁ = −h²  (ρ₁ = −ih on the branch arg ρ ∈ [−π/2, π/2)),
//   φ₁(x) = e^{hx},                        α₁ = 2h/(e^{2hπ} − 1),
//   ρₙ = n−1 (n ≥ 2),
//   φₙ(x) = cos((n−1)x) + h sin((n−1)x)/(n−1),
//   αₙ = (2/π)·(n−1)²/((n−1)² + h²).

inline complex robin_rho(int n, double h) {
  return n == 1 ? complex{0.0, -h} : complex{static_cast<double>(n - 1), 0.0};
}

inline complex robin_alpha(int n, double h) {
  if (n == 1) return complex{2.0 * h / std::expm1(2.0 * h * PI), 0.0};
  const double k = n - 1;
  return complex{(2.0 / PI) * k * k / (k * k + h * h), 0.0};
}

inline complex robin_phi(double x, int n, double h) {
  if (n == 1) return complex{std::exp(h * x), 0.0};
  const double k = n - 1;
  return complex{std::cos(k * x) + h * std::sin(k * x) / k, 0.0};
}

inline complex robin_phi_deriv(double x, int n, double h) {
  if (n == 1) return complex{h * std::exp(h * x), 0.0};
  const double k = n - 1;
  return complex{-k * std::sin(k * x) + h * std::cos(k * x), 0.0};
}

inline specmap::SpectralData robin_spectral(double h, int n_max) {
  specmap::SpectralData S;
  for (int n = 1; n <= n_max; ++n) {
    S.rho.push_back(robin_rho(n, h));
    S.alpha.push_back(robin_alpha(n, h));
  }
  S.omega = complex{0.0, 0.0};
  return S;
}

inline specmap::ProblemTriple robin_triple(double h, int grid_nodes) {
  specmap::ProblemTriple P;
  P.q = specmap::GridFunction::constant({0.0, 0.0}, grid_nodes);
  P.h = complex{h, 0.0};
  P.H = complex{-h, 0.0};
  return P;
}

// ── Grid builders ───────────────────────────────────────────────────────────

inline specmap::ProblemTriple const_triple(complex c, complex h, complex H,
                                           int grid_nodes) {
  specmap::ProblemTriple P;
  P.q = specmap::GridFunction::constant(c, grid_nodes);
  P.h = h;
  P.H = H;
  return P;
}

// ── Frozen: the tangent family L(q ≡ 0, h = 1, H = 0) ───────────────────────
// Δ(ρ) = cos ρπ − ρ sin ρπ; first three zeros (all real, simple).

inline constexpr double kTanRoot1 = 0.38344860277068993;
inline constexpr double kTanRoot2 = 1.2187220135242587;
inline constexpr double kTanRoot3 = 2.1391916875032346;

// ── Frozen: "triple A", a smooth non-self-adjoint benchmark problem ─────────
//   q(x) = 0.15 + (−0.1+0.45i)(x/π) + (0.31+0.2i)(x/π)³,
//   h = 0.4 − 0.3i,  H = −0.25 + 0.12i.
// q is a cubic polynomial, so the solver's cubic off-grid interpolation
// represents it exactly; discretization error comes from stepping alone.

inline const complex kA_q0{0.15, 0.0};
inline const complex kA_q1{-0.1, 0.45};  // coefficient of (x/π)
inline const complex kA_q3{0.31, 0.2};   // coefficient of (x/π)³
inline const complex kA_h{0.4, -0.3};
inline const complex kA_H{-0.25, 0.12};

inline complex triple_A_q(double x) {
  const double t = x / PI;
  return kA_q0 + kA_q1 * t + kA_q3 * (t * t * t);
}

inline specmap::ProblemTriple triple_A(int grid_nodes) {
  specmap::ProblemTriple P;
  std::vector<complex> v(grid_nodes + 1);
  for (int j = 0; j <= grid_nodes; ++j) v[j] = triple_A_q(PI * j / grid_nodes);
  P.q = specmap::GridFunction(std::move(v));
  P.h = kA_h;
  P.H = kA_H;
  return P;
}

inline const complex kA_intq{0.55763269601218823, 0.86393797973719322};
inline const complex kA_omega{0.42881634800609414, 0.25196898986859662};

inline const complex kA_rho[6] = {
    {0.60652295444530024, 0.33333478552283202},
    {1.1162969677717376, 0.068937541189204546},
    {2.06557182628748, 0.038402398642918931},
    {3.0447018000112385, 0.026196371017719839},
    {4.033787099959433, 0.019817804223208117},
    {5.0271265244968557, 0.01591987333511383},
};

inline const complex kA_alpha[6] = {
    {0.017172339934417961, 0.12702540203312071},
    {0.58795998890519152, 0.10741373486196078},
    {0.61854279679074509, 0.025390274185121679},
    {0.62789760210944323, 0.011297413428224786},
    {0.63157301461866233, 0.0063575238965410648},
    {0.63334757459743107, 0.004069267786424146},
};

// Characteristic data of triple A at the off-spectrum point ρ = 1.3 + 0.4i.
inline const complex kA_probe{1.3, 0.4};
inline const complex kA_Delta{0.92200478804948827, 1.5547151502162015};
inline const complex kA_Delta0{-0.7982444738108716, 0.70999048022295996};
inline const complex kA_Weyl{-0.11258696233641552, -0.58020286998010751};

// Cosine/sine moments of the triple-A Cauchy functions:
//   𝒩̂ₖ = ∫₀^π 𝒩(t) cos kt dt  (k = 0..3),   𝒩̂⁰ₖ = ∫₀^π 𝒩₀(t) sin kt dt  (k = 1..3).
inline const complex kA_Nhat[4] = {
    {0.32243539114960118, 1.8525771950789616},
    {-0.027324179180432673, 0.16726741296155206},
    {0.0054179210894851337, -0.038412743195965576},
    {-0.0023343595910482184, 0.016932003756156722},
};
inline const complex kA_N0hat[3] = {
    {-0.19020205566822068, 0.21831729841791006},
    {0.069533714746097264, -0.10805875261095858},
    {-0.043344440888245295, 0.070757322629282651},
};

// ── Frozen: kernel spot values ──────────────────────────────────────────────

// D̃(1.1, 2+1e−9, 2): near-diagonal evaluation straddling the series branch.
inline constexpr double kKerNearDiag = 0.4310497407512898;
// ∂ρD̃(1.1, 1.7, 0.6).
inline constexpr double kKerDrho = -0.46016242178673947;
// g̃₃(2.2, 2+1e−8): divided difference 1e−8 away from coalescence.
inline constexpr double kKerG3near = 2.0935245699943904;
// G̃₃(2.2, 2+1e−8, 0.95).
inline constexpr double kKerGG3near = -0.68779307904909541;

// ── Frozen: L(q ≡ 0, h = 0.3i, H = 0) — complex spectrum, ω = 0.3i ──────────

inline const complex kI_h{0.0, 0.3};
inline const complex kI_rho2{1.0097992000867742, 0.096479573013014838};
inline const complex kI_alpha2{0.67428687756454653, -0.077933692839457988};
inline const complex kI_rho3{2.0011714479783027, 0.048052126869853135};
inline const complex kI_alpha3{0.65004874833983972, -0.016526459255115509};

// ── Frozen: q ≡ 2i constants, ρₙ = √((n−1)² + 2i) on the fixed branch ───────

inline const complex k2i_rho[4] = {
    {1.0, 1.0},
    {1.272019649514069, 0.78615137775742328},
    {2.0581710272714924, 0.48586827175664565},
    {3.0182399223134073, 0.3313189228620117},
};

// ── Frozen: square roots for the pair-splitting worked example ──────────────

inline constexpr double kSqrt11 = 1.0488088481701516;    // √1.1
inline constexpr double kSqrt091 = 0.95393920141694566;  // √0.91

}  // namespace oracle
