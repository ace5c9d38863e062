#pragma once
// ─────────────────────────────────────────────────────────────────────────────
// Zero location for an entire function F(λ) presented as a callable:
// argument-principle censusing with adaptive phase accumulation, Newton with
// central-difference derivatives from user-supplied starts, and a quadtree
// subdivision rescue when the harvest disagrees with the certified count.
// Shared by the forward solver (F = Δ via ODE integration) and the
// Cauchy-data pipeline (F = Δ rebuilt from its trigonometric representation).
// Internal header — not installed.
// ─────────────────────────────────────────────────────────────────────────────

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "specmap/parallel.hpp"
#include "specmap/types.hpp"

namespace specmap::detail {

using FnLambda = std::function<complex(complex)>;

struct RootGroup {
  complex lambda;
  int multiplicity = 1;
};

inline bool lambda_less(const RootGroup& a, const RootGroup& b) {
  if (a.lambda.real() != b.lambda.real())
    return a.lambda.real() < b.lambda.real();
  return a.lambda.imag() < b.lambda.imag();
}

// Phase increment of F along one path segment, subdividing until each piece
// turns by less than π/2 (plus one safety split to expose hidden ±π jumps).
inline double arc_phase(const std::function<complex(double)>& F, double t0,
                        double t1, complex F0, complex F1, int depth) {
  if (std::abs(F0) == 0.0 || std::abs(F1) == 0.0)
    throw numeric_error(
        "winding: function vanishes on the census contour");
  const double dphi = std::arg(F1 / F0);
  if (std::abs(dphi) <= PI / 2.0) {
    if (depth > 4) return dphi;
    const double tm = 0.5 * (t0 + t1);
    const complex Fm = F(tm);
    return arc_phase(F, t0, tm, F0, Fm, depth + 1) +
           arc_phase(F, tm, t1, Fm, F1, depth + 1);
  }
  if (depth >= 28)
    throw numeric_error(
        "winding: phase did not stabilize (zero too close to the census "
        "contour)");
  const double tm = 0.5 * (t0 + t1);
  const complex Fm = F(tm);
  return arc_phase(F, t0, tm, F0, Fm, depth + 1) +
         arc_phase(F, tm, t1, Fm, F1, depth + 1);
}

// Winding number of F over the closed path t ∈ [0,1].
inline int winding_number(const std::function<complex(double)>& F,
                          int segments) {
  std::vector<complex> vals(segments + 1);
  for (int i = 0; i <= segments; ++i) vals[i] = F(double(i) / segments);
  vals[segments] = vals[0];

  double total = 0.0;
  for (int i = 0; i < segments; ++i) {
    total += arc_phase(F, double(i) / segments, double(i + 1) / segments,
                       vals[i], vals[i + 1], 0);
  }
  const double turns = total / (2.0 * PI);
  const int rounded = static_cast<int>(std::lround(turns));
  if (std::abs(turns - rounded) > 0.25)
    throw numeric_error("winding: non-integer turn count " +
                        std::to_string(turns));
  return rounded;
}

// Zero count of F inside the ρ-disk {|ρ| < radius}; the ρ-circle double-
// covers the λ-circle |λ| = radius², so one λ-circuit already gives the
// λ-count directly.
inline int count_in_rho_circle(const FnLambda& F, double radius) {
  const double R = radius * radius;
  auto path = [&](double t) { return F(R * std::polar(1.0, 2.0 * PI * t)); };
  const int segments = std::max(64, int(16.0 * radius));
  return winding_number(path, segments);
}

inline int count_in_box(const FnLambda& F, complex lo, complex hi) {
  const complex c00 = lo;
  const complex c10{hi.real(), lo.imag()};
  const complex c11 = hi;
  const complex c01{lo.real(), hi.imag()};
  auto path = [&](double t) {
    const double u = t * 4.0;
    complex lambda;
    if (u < 1.0)
      lambda = c00 + u * (c10 - c00);
    else if (u < 2.0)
      lambda = c10 + (u - 1.0) * (c11 - c10);
    else if (u < 3.0)
      lambda = c11 + (u - 2.0) * (c01 - c11);
    else
      lambda = c01 + (u - 3.0) * (c00 - c01);
    return F(lambda);
  };
  const double span = std::abs(hi - lo);
  const int segments = std::max(32, int(8.0 * std::sqrt(span)));
  return winding_number(path, segments);
}

struct NewtonOutcome {
  complex lambda{0.0, 0.0};
  bool converged = false;
};

// Newton in λ; stops on |F| ≤ 1e−11·(1+|ρ|²) with ρ = √λ.  A callable that
// throws validation_error (e.g. the ODE grid cannot resolve the current λ)
// simply marks the start as unconverged.
inline NewtonOutcome newton_lambda(const FnLambda& F, complex lambda0) {
  complex lambda = lambda0;
  for (int iter = 0; iter < 40; ++iter) {
    complex val;
    try {
      val = F(lambda);
    } catch (const validation_error&) {
      return {};
    }
    const complex rho = sqrt_to_rho(lambda);
    if (std::abs(val) <= 1e-11 * (1.0 + std::norm(rho))) return {lambda, true};

    const double e = 1e-6 * (1.0 + std::abs(lambda));
    complex fp, fm;
    try {
      fp = F(lambda + e);
      fm = F(lambda - e);
    } catch (const validation_error&) {
      return {};
    }
    const complex deriv = (fp - fm) / (2.0 * e);
    if (!is_finite(deriv) || std::abs(deriv) == 0.0) return {};
    complex step = val / deriv;
    const double cap = 2.0 + 0.5 * std::abs(lambda);
    if (std::abs(step) > cap) step *= cap / std::abs(step);
    lambda -= step;
    if (!is_finite(lambda)) return {};
  }
  return {};
}

inline void quadtree_collect(const FnLambda& F, complex lo, complex hi,
                             int depth, std::vector<RootGroup>& out) {
  const int count = count_in_box(F, lo, hi);
  if (count == 0) return;

  const complex center = 0.5 * (lo + hi);
  const double size = std::abs(hi - lo);
  if (count == 1) {
    // Accept the polish only when it stays inside this box; Newton from the
    // center of a large box can escape into a sibling's root, which would
    // both lose this root and double-count the neighbour.
    const auto polished = newton_lambda(F, center);
    if (polished.converged && polished.lambda.real() >= lo.real() &&
        polished.lambda.real() <= hi.real() &&
        polished.lambda.imag() >= lo.imag() &&
        polished.lambda.imag() <= hi.imag()) {
      out.push_back({polished.lambda, 1});
      return;
    }
  }
  if (size < 1e-8 * (1.0 + std::abs(center)) || depth >= 40) {
    out.push_back({center, count});
    return;
  }

  // Split slightly off-center so roots sitting on symmetry lines do not
  // land exactly on a cut.
  const double fx = 0.5 + 0.0137 / (depth + 1.0);
  const double fy = 0.5 - 0.0119 / (depth + 1.0);
  const double mx = lo.real() + fx * (hi.real() - lo.real());
  const double my = lo.imag() + fy * (hi.imag() - lo.imag());
  quadtree_collect(F, lo, {mx, my}, depth + 1, out);
  quadtree_collect(F, {mx, lo.imag()}, {hi.real(), my}, depth + 1, out);
  quadtree_collect(F, {lo.real(), my}, {mx, hi.imag()}, depth + 1, out);
  quadtree_collect(F, {mx, my}, hi, depth + 1, out);
}

struct SpectrumHarvest {
  std::vector<RootGroup> groups;  // sorted by (Re λ, Im λ)
  int census = 0;                 // certified count inside Γ_{n_max}
};

// Newton from the asymptotic starts λₙ ≈ ((n−1) + ω/(πn))², argument-
// principle certification on Γ_{n_max} = {|ρ| = n_max − 1/2}, quadtree
// rescue on disagreement.  Guarantees Σ multiplicities ≥ n_max or throws.
inline SpectrumHarvest locate_spectrum(const FnLambda& F, complex omega,
                                       int n_max) {
  if (n_max < 1)
    throw validation_error("locate_spectrum: n_max must be >= 1");

  std::vector<NewtonOutcome> hits(n_max);
  parallel_for(0, n_max, [&](int i) {
    const int n = i + 1;
    const complex start = (n - 1.0) + omega / (PI * n);
    hits[i] = newton_lambda(F, start * start);
  });

  const double census_radius = n_max - 0.5;
  const int census = count_in_rho_circle(F, census_radius);

  std::vector<RootGroup> roots;
  bool clean = true;
  for (const auto& hit : hits) {
    if (!hit.converged) {
      clean = false;
      break;
    }
    bool duplicate = false;
    for (const auto& r : roots) {
      if (std::abs(r.lambda - hit.lambda) <=
          1e-7 * (1.0 + std::abs(r.lambda))) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) {
      clean = false;
      break;
    }
    roots.push_back({hit.lambda, 1});
  }
  if (clean) {
    int inside = 0;
    for (const auto& r : roots)
      if (std::abs(sqrt_to_rho(r.lambda)) < census_radius) ++inside;
    clean = inside == census;
  }

  if (!clean) {
    const double R = census_radius * census_radius * 1.02 + 0.5;
    std::vector<RootGroup> swept;
    quadtree_collect(F, {-R, -R}, {R, R}, 0, swept);

    std::vector<RootGroup> merged;
    for (const auto& r : swept) {
      if (std::abs(sqrt_to_rho(r.lambda)) < census_radius)
        merged.push_back(r);
    }
    int inside = 0;
    for (const auto& r : merged) inside += r.multiplicity;
    if (inside != census)
      throw numeric_error(
          "locate_spectrum: census and harvest cannot be reconciled (" +
          std::to_string(inside) + " vs " + std::to_string(census) + ")");
    for (const auto& hit : hits) {
      if (!hit.converged) continue;
      if (std::abs(sqrt_to_rho(hit.lambda)) < census_radius) continue;
      bool known = false;
      for (const auto& r : merged)
        if (std::abs(r.lambda - hit.lambda) <=
            1e-7 * (1.0 + std::abs(r.lambda)))
          known = true;
      if (!known) merged.push_back({hit.lambda, 1});
    }
    roots = std::move(merged);
  }

  std::sort(roots.begin(), roots.end(), lambda_less);

  int available = 0;
  for (const auto& r : roots) available += r.multiplicity;
  if (available < n_max)
    throw numeric_error("locate_spectrum: only " + std::to_string(available) +
                        " eigenvalues located for n_max = " +
                        std::to_string(n_max));

  SpectrumHarvest out;
  out.groups = std::move(roots);
  out.census = census;
  return out;
}

}  // namespace specmap::detail
