#pragma once
// ─────────────────────────────────────────────────────────────────────────────
// Domain types for the Sturm–Liouville spectral toolkit.
//
// The boundary value problem on (0, π):
//
//     −y″ + q(x)·y = λ·y,   y′(0) − h·y(0) = 0,   y′(π) + H·y(π) = 0,
//
// with complex-valued q ∈ L₂(0,π) and complex constants h, H.  Writing
// λ = ρ², the spectral data of the problem are the square roots of the
// eigenvalues together with the weight numbers:
//
//     S = { ρₙ, αₙ }ₙ≥₁,   αₙ = ( ∫₀^π φ²(x, ρₙ) dx )⁻¹  (simple case),
//
// where φ(·,ρ) solves the equation with φ(0,ρ) = 1, φ′(0,ρ) = h.  The
// branch of ρₙ is fixed by arg ρₙ ∈ [−π/2, π/2).  Groups of equal
// eigenvalues are described by an index set of group leaders and the
// corresponding multiplicities; the weights of a group are then the
// Laurent coefficients of the Weyl function at the common pole.
//
// Sequences attached to S:
//
//     ρₙ = (n−1) + ω/(πn) + ϰₙ/n,      αₙ = 2/π + sₙ/n,
//     ω  = h + H + ½∫₀^π q(t) dt,
//
// and the ℓ₂-type distance between two data sequences is built from
// (ω, {ϰₙ}, {sₙ}).  All of that machinery lives in spectral_core.hpp;
// this header only fixes the value types shared across the library.
// ─────────────────────────────────────────────────────────────────────────────

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace specmap {

using complex = std::complex<double>;

inline constexpr double PI = 3.14159265358979323846264338327950288;

// ── Error taxonomy ───────────────────────────────────────────────────────────
// schema_error     → malformed input (bad JSON, wrong array lengths, …)
// validation_error → well-formed input violating a documented precondition
// numeric_error    → runtime numerical failure (singular system, lost root, …)

struct schema_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ── Uniform grid samples on [0, π] ──────────────────────────────────────────
// values[j] is the sample at x_j = j·π/M for j = 0..M; M = nodes() ≥ 2.

struct GridFunction {
  std::vector<complex> values;

  GridFunction() = default;
  explicit GridFunction(std::vector<complex> v) : values(std::move(v)) {
    if (values.size() < 3)
      throw validation_error("GridFunction: need at least 3 samples (M >= 2)");
  }

  static GridFunction constant(complex c, int grid_nodes) {
    if (grid_nodes < 2)
      throw validation_error("GridFunction: grid_nodes must be >= 2");
    return GridFunction(
        std::vector<complex>(static_cast<size_t>(grid_nodes) + 1, c));
  }

  int nodes() const { return static_cast<int>(values.size()) - 1; }
  double dx() const { return PI / nodes(); }
  double x_at(int j) const { return PI * j / nodes(); }
};

// Cubic Lagrange interpolation of grid samples at an arbitrary x ∈ [0,π]
// (4-point stencil, clamped at the ends; exact for cubic polynomials).
complex grid_value_at(const GridFunction& f, double x);

// ∫₀^π f(t) dt by composite Simpson (Simpson 3/8 patch when M is odd).
complex grid_integral(const GridFunction& f);

// ‖f‖_{L₂(0,π)} with the same quadrature applied to |f|².
double grid_l2_norm(const GridFunction& f);

// ── The unknowns of the inverse problem ─────────────────────────────────────

struct ProblemTriple {
  GridFunction q;  // potential samples on the uniform grid
  complex h{0.0, 0.0};
  complex H{0.0, 0.0};
};

// ── Spectral data ───────────────────────────────────────────────────────────
// index_set/multiplicities empty  →  all eigenvalues simple.
// Otherwise index_set holds the 1-based leader index n of each group of
// equal eigenvalues (groups are consecutive) and multiplicities holds mₙ;
// every n = 1..count() must belong to exactly one group.  For a group the
// entries alpha[n−1 .. n+mₙ−2] are the Laurent coefficients of the Weyl
// function at λₙ in increasing pole order.

struct SpectralData {
  std::vector<complex> rho;
  std::vector<complex> alpha;
  std::optional<complex> omega;      // optional ω hint carried with the data
  std::vector<int> index_set;        // group leaders (1-based), optional
  std::vector<int> multiplicities;   // aligned with index_set

  int count() const { return static_cast<int>(rho.size()); }
  bool all_simple() const { return index_set.empty(); }
};

// Structural invariants: equal rho/alpha lengths, finite entries, group
// structure consistent and consecutive.  Throws validation_error.
void check_spectral_data(const SpectralData& S);

// ── Asymptotic (tail) coordinates of spectral data ──────────────────────────
//     ϰₙ = n·(ρₙ − n + 1) − ω/π,     sₙ = n·(αₙ − 2/π).

struct TailDecomposition {
  complex omega{0.0, 0.0};
  std::vector<complex> varkappa;
  std::vector<complex> s;
  double omega_spread = 0.0;  // scatter of the ω estimate (0 when hinted)
};

// ── Boundary-value data on the frequency side ───────────────────────────────
// The characteristic functions admit the closed forms
//     Δ(ρ)  = −ρ sin ρπ + ω cos ρπ + ∫₀^π 𝒩(t)  cos ρt dt,
//     Δ⁰(ρ) =  cos ρπ + ω₀ sin(ρπ)/ρ + ρ⁻¹ ∫₀^π 𝒩₀(t) sin ρt dt,
// with ω₀ = H + ½∫q.  CauchyData stores grid samples of 𝒩, 𝒩₀ and the
// two constants; that is enough to rebuild both characteristic functions.

struct CauchyData {
  GridFunction N;    // 𝒩 on the uniform t-grid
  GridFunction N0;   // 𝒩₀ on the uniform t-grid
  complex omega{0.0, 0.0};
  complex omega0{0.0, 0.0};
};

// ── Admissible-set descriptions for the membership validators ───────────────

enum class SetKind {
  B_Omega,           // ‖{n·ξₙ}‖₂ ≤ Ω  (ball around the model data)
  B_Omega_ring,      // … plus ω = 0 and sup‖(I+R̃(x))⁻¹‖ ≤ K (aux input)
  V_Omega_delta,     // … plus real ρₙ, gaps ≥ δ, |αₙ| ≥ δ, arg spread ≤ π−δ
  V_Omega_tau_plus,  // … plus Im αₙ ≥ τₙ off a finite negative-real set
  V_Omega_tau_minus, // … plus −Im αₙ ≥ τₙ off a finite negative-real set
  P_Q,               // ‖q‖_{L₂} + |h| + |H| ≤ Q   (problem-side ball)
  P_QA               // … plus simple eigenvalues and |αₙ| ≤ A
};

struct SetSpec {
  SetKind kind = SetKind::B_Omega;
  double Omega = 0.0;
  double delta = 0.0;
  double Q = 0.0;
  double A = 0.0;
  double K = 0.0;            // operator-norm bound for B_Omega_ring
  std::vector<double> tau;   // thresholds for the V± sets
};

struct Violation {
  int index;          // 1-based sequence index; −1 for a global condition
  std::string what;
};

struct MembershipReport {
  bool member = true;
  std::vector<Violation> violations;
};

// ── Small shared helpers ────────────────────────────────────────────────────

// √λ with the branch fixed by arg ρ ∈ [−π/2, π/2).
complex sqrt_to_rho(complex lambda);

bool is_finite(complex z);

}  // namespace specmap
