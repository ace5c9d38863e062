#include "specmap/direct.hpp"

#include <algorithm>
#include <cmath>

#include "analytic_roots.hpp"
#include "specmap/parallel.hpp"
#include "specmap/spectral_core.hpp"

namespace specmap {

namespace {

// ── RK4 core ────────────────────────────────────────────────────────────────
// State (y, y′) for −y″ + q·y = ρ²·y, i.e. y″ = (q − λ)y with λ = ρ².
// q is pre-sampled at quarter nodes so both the full-step and the half-step
// pass read midpoint values without re-interpolating.

struct Rk4Result {
  std::vector<SolutionSample> samples;  // at the original grid nodes
  complex end_value;
  complex end_slope;
};

std::vector<complex> quarter_samples(const GridFunction& q) {
  const int M = q.nodes();
  std::vector<complex> qq(4 * M + 1);
  for (int i = 0; i <= 4 * M; ++i) {
    qq[i] = (i % 4 == 0) ? q.values[i / 4]
                         : grid_value_at(q, PI * i / (4.0 * M));
  }
  return qq;
}

// One RK4 step of size s from (y, v); qa, qm, qb are q at the start,
// midpoint, and end of the step.
inline void rk4_step(complex& y, complex& v, double s, complex lambda,
                     complex qa, complex qm, complex qb) {
  const complex ca = qa - lambda, cm = qm - lambda, cb = qb - lambda;
  const complex k1y = v, k1v = ca * y;
  const complex k2y = v + 0.5 * s * k1v, k2v = cm * (y + 0.5 * s * k1y);
  const complex k3y = v + 0.5 * s * k2v, k3v = cm * (y + 0.5 * s * k2y);
  const complex k4y = v + s * k3v, k4v = cb * (y + s * k3y);
  y += (s / 6.0) * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
  v += (s / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
}

// steps_per_node = 1 (full pass) or 2 (half pass); samples at the grid
// nodes are recorded only when requested.
Rk4Result rk4_pass(const std::vector<complex>& qq, int M, complex y0,
                   complex v0, complex lambda, int steps_per_node,
                   bool keep_samples) {
  Rk4Result out;
  complex y = y0, v = v0;
  const double s = PI / (double(M) * steps_per_node);
  const int qstride = 4 / steps_per_node;  // quarter-node stride per step

  if (keep_samples) {
    out.samples.resize(M + 1);
    out.samples[0] = {y, v};
  }
  const int total = M * steps_per_node;
  for (int step = 0; step < total; ++step) {
    const int base = step * qstride;
    rk4_step(y, v, s, lambda, qq[base], qq[base + qstride / 2],
             qq[base + qstride]);
    if (keep_samples && (step + 1) % steps_per_node == 0)
      out.samples[(step + 1) / steps_per_node] = {y, v};
  }
  out.end_value = y;
  out.end_slope = v;
  return out;
}

void check_resolution(const GridFunction& q, complex rho, double rho_cap) {
  if (rho_cap > 0.0 && std::abs(rho) > rho_cap)
    throw validation_error("integrate_solution: |rho| exceeds the cap");
  if (std::abs(rho) > q.nodes() / 8.0)
    throw validation_error(
        "integrate_solution: grid resolves fewer than 16 nodes per "
        "oscillation (|rho| > M/8)");
}

// ── Shared characteristic-function plumbing ─────────────────────────────────

struct DeltaEvaluator {
  const ProblemTriple& P;
  std::vector<complex> qq;
  int M;

  explicit DeltaEvaluator(const ProblemTriple& P_)
      : P(P_), qq(quarter_samples(P_.q)), M(P_.q.nodes()) {}

  complex delta_rho(complex rho) const {
    check_resolution(P.q, rho, 0.0);
    const auto end = rk4_pass(qq, M, 1.0, P.h, rho * rho, 2, false);
    return end.end_slope + P.H * end.end_value;
  }
  complex delta_lambda(complex lambda) const {
    return delta_rho(sqrt_to_rho(lambda));
  }
  complex delta0_rho(complex rho) const {
    check_resolution(P.q, rho, 0.0);
    const auto end = rk4_pass(qq, M, 0.0, 1.0, rho * rho, 2, false);
    return end.end_slope + P.H * end.end_value;
  }
  detail::FnLambda as_fn() const {
    return [this](complex lambda) { return delta_lambda(lambda); };
  }
};

}  // namespace

// ── Public API ──────────────────────────────────────────────────────────────

OdeSolution integrate_solution(const GridFunction& q, complex init_value,
                               complex init_slope, complex rho,
                               double rho_cap) {
  check_resolution(q, rho, rho_cap);
  const auto qq = quarter_samples(q);
  const int M = q.nodes();
  const complex lambda = rho * rho;

  const auto full = rk4_pass(qq, M, init_value, init_slope, lambda, 1, false);
  auto half = rk4_pass(qq, M, init_value, init_slope, lambda, 2, true);

  OdeSolution out;
  out.samples = std::move(half.samples);
  // Richardson: halving the RK4 step shrinks the endpoint error ≈ 16×, so
  // the half-pass error is about |full − half| / 15.
  out.error_estimate = (std::abs(full.end_value - half.end_value) +
                        std::abs(full.end_slope - half.end_slope)) /
                       15.0;
  return out;
}

complex char_delta(const ProblemTriple& P, complex rho) {
  return DeltaEvaluator(P).delta_rho(rho);
}

complex char_delta0(const ProblemTriple& P, complex rho) {
  return DeltaEvaluator(P).delta0_rho(rho);
}

complex weyl_function(const ProblemTriple& P, complex rho) {
  const DeltaEvaluator eval(P);
  const complex delta = eval.delta_rho(rho);
  // Below this size the value is dominated by the integrator's own bias,
  // which grows like |rho|^6 h^4 at a characteristic root.
  const double h4 = std::pow(PI / P.q.nodes(), 4.0);
  const double floor_bias =
      100.0 * (1.0 + std::pow(std::abs(rho), 6.0)) * h4;
  if (std::abs(delta) <= 1e-12 * (1.0 + std::norm(rho)) + floor_bias)
    throw numeric_error(
        "weyl_function: evaluation point is numerically an eigenvalue");
  return -eval.delta0_rho(rho) / delta;
}

int certified_count(const ProblemTriple& P, double radius) {
  if (radius <= 0.0)
    throw validation_error("certified_count: radius must be positive");
  const DeltaEvaluator eval(P);
  return detail::count_in_rho_circle(eval.as_fn(), radius);
}

EigenvalueSet find_eigenvalues(const ProblemTriple& P, int n_max) {
  if (n_max < 1)
    throw validation_error("find_eigenvalues: n_max must be >= 1");
  if (n_max - 0.5 > P.q.nodes() / 8.0)
    throw validation_error(
        "find_eigenvalues: grid too coarse for the requested index range");
  const DeltaEvaluator eval(P);
  const auto harvest =
      detail::locate_spectrum(eval.as_fn(), omega_direct(P), n_max);

  EigenvalueSet out;
  out.contour_count = harvest.census;
  bool any_multiple = false;
  for (const auto& r : harvest.groups) {
    if (out.rho.size() >= static_cast<size_t>(n_max)) break;
    const complex rho = sqrt_to_rho(r.lambda);
    const int leader = static_cast<int>(out.rho.size()) + 1;
    const int m = std::min<int>(r.multiplicity,
                                n_max - static_cast<int>(out.rho.size()));
    out.index_set.push_back(leader);
    out.multiplicities.push_back(m);
    if (m > 1) any_multiple = true;
    for (int i = 0; i < m; ++i) out.rho.push_back(rho);
  }
  if (!any_multiple) {
    out.index_set.clear();
    out.multiplicities.clear();
  }
  return out;
}

complex weight_number_simple(const ProblemTriple& P, complex rho_n) {
  const auto sol = integrate_solution(P.q, 1.0, P.h, rho_n);
  std::vector<complex> sq(sol.samples.size());
  for (size_t j = 0; j < sq.size(); ++j)
    sq[j] = sol.samples[j].value * sol.samples[j].value;
  const complex integral = grid_integral(GridFunction(std::move(sq)));
  if (std::abs(integral) < 1e-12)
    throw numeric_error(
        "weight_number_simple: normalization integral vanishes");
  return 1.0 / integral;
}

complex weight_number_residue(const ProblemTriple& P, complex rho_n) {
  const DeltaEvaluator eval(P);
  const complex delta0 = eval.delta0_rho(rho_n);
  if (std::abs(rho_n) < 0.5) {
    // λ-plane differences stay regular through ρ = 0.
    const complex lambda = rho_n * rho_n;
    const double e = 1e-5 * (1.0 + std::abs(rho_n));
    const complex deriv =
        (eval.delta_lambda(lambda + e) - eval.delta_lambda(lambda - e)) /
        (2.0 * e);
    if (std::abs(deriv) == 0.0)
      throw numeric_error("weight_number_residue: stationary Delta");
    return -delta0 / deriv;
  }
  const double e = 1e-5 * (1.0 + std::abs(rho_n));
  const complex deriv =
      (eval.delta_rho(rho_n + e) - eval.delta_rho(rho_n - e)) / (2.0 * e);
  if (std::abs(deriv) == 0.0)
    throw numeric_error("weight_number_residue: stationary Delta");
  return -2.0 * rho_n * delta0 / deriv;
}

std::vector<complex> laurent_coefficients(
    const std::vector<complex>& M_samples_on_circle, complex center,
    double radius, int m_n) {
  const int K = static_cast<int>(M_samples_on_circle.size());
  if (K < 16)
    throw validation_error(
        "laurent_coefficients: need at least 16 circle samples");
  if (radius <= 0.0)
    throw validation_error("laurent_coefficients: radius must be positive");
  if (m_n < 1)
    throw validation_error("laurent_coefficients: order must be >= 1");
  (void)center;

  std::vector<complex> coef(m_n);
  for (int nu = 0; nu < m_n; ++nu) {
    complex acc{0.0, 0.0};
    for (int l = 0; l < K; ++l) {
      const complex u = radius * std::polar(1.0, 2.0 * PI * l / K);
      // (1/2πi)∮ f·uᵛ dλ with dλ = iu·dθ  →  (1/K) Σ f_l·u_l^{ν+1}.
      acc += M_samples_on_circle[l] * std::pow(u, nu + 1);
    }
    coef[nu] = acc / double(K);
  }
  return coef;
}

CauchyData cauchy_data(const ProblemTriple& P, int fourier_modes) {
  if (fourier_modes < 8)
    throw validation_error("cauchy_data: need at least 8 Fourier modes");
  const DeltaEvaluator eval(P);
  const complex omega = omega_direct(P);
  const complex omega0 = omega0_direct(P);

  // 𝒩̂ₖ = Δ(k) − ω(−1)ᵏ (k ≥ 0);  𝒩̂₀ₖ = k·Δ⁰(k) − k(−1)ᵏ (k ≥ 1).
  std::vector<complex> nhat(fourier_modes + 1);
  std::vector<complex> n0hat(fourier_modes + 1, complex{0.0, 0.0});
  parallel_for(0, fourier_modes + 1, [&](int k) {
    const complex rho{double(k), 0.0};
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    nhat[k] = eval.delta_rho(rho) - omega * sign;
    if (k >= 1) n0hat[k] = double(k) * (eval.delta0_rho(rho) - sign);
  });

  const int M = P.q.nodes();
  CauchyData C;
  C.omega = omega;
  C.omega0 = omega0;
  C.N = GridFunction(std::vector<complex>(M + 1));
  C.N0 = GridFunction(std::vector<complex>(M + 1));
  parallel_for(0, M + 1, [&](int j) {
    const double t = PI * j / M;
    complex n_acc = nhat[0] / PI;
    complex n0_acc{0.0, 0.0};
    for (int k = 1; k <= fourier_modes; ++k) {
      n_acc += (2.0 / PI) * nhat[k] * std::cos(k * t);
      n0_acc += (2.0 / PI) * n0hat[k] * std::sin(k * t);
    }
    C.N.values[j] = n_acc;
    C.N0.values[j] = n0_acc;
  });
  return C;
}

complex omega_direct(const ProblemTriple& P) {
  return P.h + P.H + 0.5 * grid_integral(P.q);
}

complex omega0_direct(const ProblemTriple& P) {
  return P.H + 0.5 * grid_integral(P.q);
}

SpectralData forward_problem(const ProblemTriple& P, int n_max) {
  const auto eigen = find_eigenvalues(P, n_max);
  SpectralData S;
  S.rho = eigen.rho;
  S.alpha.resize(eigen.rho.size());
  S.index_set = eigen.index_set;
  S.multiplicities = eigen.multiplicities;
  S.omega = omega_direct(P);

  if (eigen.index_set.empty()) {
    parallel_for(0, static_cast<int>(S.rho.size()), [&](int i) {
      S.alpha[i] = weight_number_simple(P, S.rho[i]);
    });
    return S;
  }

  // Mixed case: simple groups via the normalization integral, larger groups
  // via Laurent extraction on a small circle around the common pole.
  for (size_t g = 0; g < eigen.index_set.size(); ++g) {
    const int leader = eigen.index_set[g];
    const int m = eigen.multiplicities[g];
    if (m == 1) {
      S.alpha[leader - 1] = weight_number_simple(P, S.rho[leader - 1]);
      continue;
    }
    const complex lambda_n = S.rho[leader - 1] * S.rho[leader - 1];
    double gap = 1e300;
    for (size_t g2 = 0; g2 < eigen.index_set.size(); ++g2) {
      if (g2 == g) continue;
      const complex other = S.rho[eigen.index_set[g2] - 1];
      gap = std::min(gap, std::abs(other * other - lambda_n));
    }
    const double radius = std::clamp(gap / 3.0, 1e-4, 0.5);
    const int K = 64;
    std::vector<complex> samples(K);
    for (int l = 0; l < K; ++l) {
      const complex lam = lambda_n + radius * std::polar(1.0, 2.0 * PI * l / K);
      samples[l] = weyl_function(P, sqrt_to_rho(lam));
    }
    const auto coef = laurent_coefficients(samples, lambda_n, radius, m);
    for (int i = 0; i < m; ++i) S.alpha[leader - 1 + i] = coef[i];
  }
  return S;
}

}  // namespace specmap
