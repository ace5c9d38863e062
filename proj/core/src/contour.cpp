#include "specmap/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "analytic_roots.hpp"
#include "specmap/direct.hpp"
#include "specmap/kernels.hpp"
#include "specmap/parallel.hpp"
#include "specmap/spectral_core.hpp"

namespace specmap {

namespace {

// Groups of S as (leader, multiplicity) pairs, singletons when no structure.
std::vector<std::pair<int, int>> group_list(const SpectralData& S) {
  std::vector<std::pair<int, int>> groups;
  if (S.index_set.empty()) {
    for (int n = 1; n <= S.count(); ++n) groups.push_back({n, 1});
  } else {
    for (size_t g = 0; g < S.index_set.size(); ++g)
      groups.push_back({S.index_set[g], S.multiplicities[g]});
  }
  return groups;
}

int multiplicity_at(const std::vector<std::pair<int, int>>& groups, int n) {
  for (const auto& [leader, m] : groups)
    if (n >= leader && n < leader + m) return m;
  return 1;
}

// Rational Weyl difference M_N(λ) − M̃_N(λ) from the first N groups.
complex rational_weyl_hat(const SpectralData& S,
                          const std::vector<std::pair<int, int>>& groups,
                          int N, complex lambda) {
  complex acc{0.0, 0.0};
  for (const auto& [leader, m] : groups) {
    if (leader > N) break;
    const complex pole = S.rho[leader - 1] * S.rho[leader - 1];
    complex power{1.0, 0.0};
    for (int nu = 0; nu < m; ++nu) {
      power /= (lambda - pole);
      acc += S.alpha[leader - 1 + nu] * power;
    }
  }
  for (int n = 1; n <= N; ++n) {
    const complex mr{model_rho(n), 0.0};
    acc -= model_alpha(n) / (lambda - mr * mr);
  }
  return acc;
}

void check_poles_off_contour(const SpectralData& S,
                             const std::vector<std::pair<int, int>>& groups,
                             const ContourGrid& grid) {
  std::vector<complex> poles;
  for (const auto& [leader, m] : groups) {
    if (leader > grid.N) break;
    poles.push_back(S.rho[leader - 1] * S.rho[leader - 1]);
  }
  for (int n = 1; n <= grid.N; ++n) {
    const complex mr{model_rho(n), 0.0};
    poles.push_back(mr * mr);
  }
  for (const complex pole : poles) {
    for (const complex theta : grid.nodes) {
      if (std::abs(theta * theta - pole) < kPoleGuard)
        throw numeric_error(
            "weyl_hat_on_contour: data pole within the guard distance of "
            "the contour");
    }
  }
}

// Dense solve shared by the block pipeline: partial-pivot LU with the same
// singularity guard and inverse-norm reporting as the simple pipeline.
struct DenseSolution {
  Eigen::VectorXcd f;
  Eigen::VectorXcd f_prime;
  double inv_norm = 0.0;
  bool inv_norm_exact = false;
};

DenseSolution solve_dense(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b,
                          const Eigen::MatrixXcd* r_prime,
                          const Eigen::VectorXcd* b_prime,
                          bool explicit_inverse) {
  const int dim = static_cast<int>(A.rows());
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);

  double min_pivot = std::numeric_limits<double>::infinity();
  for (int i = 0; i < dim; ++i)
    min_pivot = std::min(min_pivot, std::abs(lu.matrixLU()(i, i)));
  if (min_pivot < kSingularPivot)
    throw numeric_error(
        "solve_dense: block main-equation matrix is not invertible "
        "(degenerate spectral data; smallest pivot " +
        std::to_string(min_pivot) + ")");

  DenseSolution sol;
  sol.f = lu.solve(b);
  if (r_prime != nullptr && b_prime != nullptr)
    sol.f_prime = lu.solve((*b_prime) - (*r_prime) * sol.f);

  if (explicit_inverse) {
    const Eigen::MatrixXcd inv = lu.inverse();
    double norm = 0.0;
    for (int i = 0; i < dim; ++i)
      norm = std::max(norm, inv.row(i).cwiseAbs().sum());
    sol.inv_norm = norm;
    sol.inv_norm_exact = true;
  } else {
    Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(dim);
    Eigen::VectorXcd alt(dim);
    for (int i = 0; i < dim; ++i) alt(i) = (i % 2 == 0) ? 1.0 : -1.0;
    const double n1 = lu.solve(ones).cwiseAbs().maxCoeff();
    const double n2 = lu.solve(alt).cwiseAbs().maxCoeff();
    sol.inv_norm = std::max(n1, n2);
  }
  return sol;
}

}  // namespace

// ── Contour geometry ────────────────────────────────────────────────────────

ContourGrid ContourGrid::make(int N, int node_count) {
  if (N < 0)
    throw validation_error("ContourGrid: contour index must be >= 0");
  if (N == 0) {
    if (node_count != 0)
      throw validation_error(
          "ContourGrid: the degenerate contour (N = 0) carries no nodes");
    ContourGrid grid;
    grid.N = 0;
    return grid;
  }
  if (node_count < 16)
    throw validation_error("ContourGrid: need at least 16 contour nodes");

  ContourGrid grid;
  grid.N = N;
  grid.nodes.resize(node_count);
  grid.weights.resize(node_count);
  const double r = N - 0.5;
  for (int l = 0; l < node_count; ++l) {
    const complex theta = r * std::polar(1.0, 2.0 * PI * l / node_count);
    grid.nodes[l] = theta;
    grid.weights[l] = complex{0.0, 2.0 * PI / node_count} * theta;
  }
  return grid;
}

complex model_weyl(complex rho) {
  return std::cos(rho * PI) / (rho * std::sin(rho * PI));
}

std::vector<complex> weyl_hat_on_contour(const SpectralData& S,
                                         const ContourGrid& grid) {
  check_spectral_data(S);
  if (S.count() < grid.N)
    throw validation_error(
        "weyl_hat_on_contour: data carries fewer entries than the contour "
        "index");
  const auto groups = group_list(S);
  check_poles_off_contour(S, groups, grid);

  std::vector<complex> mhat(grid.node_count());
  for (int l = 0; l < grid.node_count(); ++l) {
    const complex theta = grid.nodes[l];
    mhat[l] = rational_weyl_hat(S, groups, grid.N, theta * theta);
  }
  return mhat;
}

std::vector<complex> weyl_hat_on_contour(const std::vector<complex>& M_samples,
                                         const ContourGrid& grid) {
  if (static_cast<int>(M_samples.size()) != grid.node_count())
    throw schema_error(
        "weyl_hat_on_contour: sample count does not match the contour grid");
  std::vector<complex> mhat(grid.node_count());
  for (int l = 0; l < grid.node_count(); ++l)
    mhat[l] = M_samples[l] - model_weyl(grid.nodes[l]);
  return mhat;
}

// ── Block system ────────────────────────────────────────────────────────────

BlockSystem build_block_system(const SpectralData& S, double x,
                               const ContourGrid& grid, int n_trunc,
                               bool with_derivative) {
  check_spectral_data(S);
  const int N = grid.N;
  const int Kc = grid.node_count();
  if (n_trunc < N)
    throw validation_error(
        "build_block_system: n_trunc must reach at least the contour index");
  if (S.count() < n_trunc)
    throw validation_error("build_block_system: data carries " +
                           std::to_string(S.count()) +
                           " pairs, fewer than n_trunc = " +
                           std::to_string(n_trunc));

  // 𝒮_N separation: heads inside the contour with a 1/4 buffer, tail simple
  // and outside the buffer ring.
  const auto groups = group_list(S);
  for (int n = 1; n <= N; ++n) {
    if (std::abs(S.rho[n - 1]) > N - 0.75)
      throw validation_error(
          "build_block_system: |rho_" + std::to_string(n) +
          "| enters the separation annulus around the contour");
  }
  for (const auto& [leader, m] : groups) {
    if (leader <= N && leader + m - 1 > N)
      throw validation_error(
          "build_block_system: an eigenvalue group straddles the contour "
          "index");
  }
  for (int n = N + 1; n <= n_trunc; ++n) {
    if (multiplicity_at(groups, n) != 1)
      throw validation_error(
          "build_block_system: multiple eigenvalue in the discrete tail "
          "(raise the contour index)");
    if (std::abs(S.rho[n - 1]) < N - 0.25)
      throw validation_error(
          "build_block_system: tail |rho_" + std::to_string(n) +
          "| enters the separation annulus around the contour");
  }

  const int T = n_trunc - N;
  const int dim = Kc + 2 * T;

  BlockSystem sys;
  sys.x = x;
  sys.N = N;
  sys.n_trunc = n_trunc;
  sys.with_derivative = with_derivative;
  sys.theta = grid.nodes;
  sys.m_hat = (Kc > 0) ? weyl_hat_on_contour(S, grid) : std::vector<complex>{};
  sys.matrix.resize(dim, dim);
  sys.rhs.resize(dim);
  if (with_derivative) {
    sys.r_prime.resize(dim, dim);
    sys.rhs_prime.resize(dim);
  }
  sys.rho_hat.resize(T);
  for (int k = N + 1; k <= n_trunc; ++k)
    sys.rho_hat[k - N - 1] = S.rho[k - 1] - model_rho(k);

  // λ-plane residue weights for the double-covered contour: θ_l²/K_c.
  std::vector<complex> w(Kc);
  for (int l = 0; l < Kc; ++l)
    w[l] = grid.nodes[l] * grid.nodes[l] / double(Kc);

  // Contour rows.
  for (int m = 0; m < Kc; ++m) {
    const complex theta_m = grid.nodes[m];
    sys.rhs(m) = std::cos(theta_m * x);
    if (with_derivative) sys.rhs_prime(m) = -theta_m * std::sin(theta_m * x);

    for (int l = 0; l < Kc; ++l) {
      const complex one = (m == l) ? complex{1.0, 0.0} : complex{0.0, 0.0};
      const complex wm = w[l] * sys.m_hat[l];
      sys.matrix(m, l) = one + wm * dtilde_kernel(x, theta_m, grid.nodes[l]);
      if (with_derivative)
        sys.r_prime(m, l) = wm * dtilde_kernel_dx(x, theta_m, grid.nodes[l]);
    }
    for (int k = N + 1; k <= n_trunc; ++k) {
      const int c0 = Kc + 2 * (k - N - 1), c1 = c0 + 1;
      const complex rho_k0 = S.rho[k - 1];
      const complex rho_k1{model_rho(k), 0.0};
      const complex a0 = S.alpha[k - 1];
      const complex a1 = model_alpha(k);
      const complex rho_hat = rho_k0 - rho_k1;
      const complex D_k0 = dtilde_kernel(x, theta_m, rho_k0);
      const complex D_k1 = dtilde_kernel(x, theta_m, rho_k1);
      sys.matrix(m, c0) = a0 * rho_hat * D_k0;
      sys.matrix(m, c1) = a0 * D_k0 - a1 * D_k1;
      if (with_derivative) {
        const complex Dx_k0 = dtilde_kernel_dx(x, theta_m, rho_k0);
        const complex Dx_k1 = dtilde_kernel_dx(x, theta_m, rho_k1);
        sys.r_prime(m, c0) = a0 * rho_hat * Dx_k0;
        sys.r_prime(m, c1) = a0 * Dx_k0 - a1 * Dx_k1;
      }
    }
  }

  // Discrete tail rows (same entries as the simple pipeline, indices > N).
  for (int n = N + 1; n <= n_trunc; ++n) {
    const int r0 = Kc + 2 * (n - N - 1), r1 = r0 + 1;
    const complex rho_n0 = S.rho[n - 1];
    const double rho_n1 = model_rho(n);

    sys.rhs(r0) = g_divided(x, rho_n0, n);
    sys.rhs(r1) = std::cos(rho_n1 * x);
    if (with_derivative) {
      sys.rhs_prime(r0) = g_divided_dx(x, rho_n0, n);
      sys.rhs_prime(r1) = -rho_n1 * std::sin(rho_n1 * x);
    }

    for (int l = 0; l < Kc; ++l) {
      const complex wm = w[l] * sys.m_hat[l];
      sys.matrix(r0, l) = wm * G_divided(x, rho_n0, grid.nodes[l], n);
      sys.matrix(r1, l) = wm * dtilde_kernel(x, rho_n1, grid.nodes[l]);
      if (with_derivative) {
        sys.r_prime(r0, l) = wm * G_divided_dx(x, rho_n0, grid.nodes[l], n);
        sys.r_prime(r1, l) = wm * dtilde_kernel_dx(x, rho_n1, grid.nodes[l]);
      }
    }
    for (int k = N + 1; k <= n_trunc; ++k) {
      const int c0 = Kc + 2 * (k - N - 1), c1 = c0 + 1;
      const complex rho_k0 = S.rho[k - 1];
      const complex rho_k1{model_rho(k), 0.0};
      const complex a0 = S.alpha[k - 1];
      const complex a1 = model_alpha(k);
      const complex rho_hat = rho_k0 - rho_k1;
      const double one0 = (n == k) ? 1.0 : 0.0;

      const complex G_k0 = G_divided(x, rho_n0, rho_k0, n);
      const complex G_k1 = G_divided(x, rho_n0, rho_k1, n);
      sys.matrix(r0, c0) = one0 + a0 * rho_hat * G_k0;
      sys.matrix(r0, c1) = a0 * G_k0 - a1 * G_k1;

      const complex D_k0 = dtilde_kernel(x, rho_n1, rho_k0);
      const complex D_k1 = dtilde_kernel(x, rho_n1, rho_k1);
      sys.matrix(r1, c0) = a0 * rho_hat * D_k0;
      sys.matrix(r1, c1) = one0 + a0 * D_k0 - a1 * D_k1;

      if (with_derivative) {
        const complex Gx_k0 = G_divided_dx(x, rho_n0, rho_k0, n);
        const complex Gx_k1 = G_divided_dx(x, rho_n0, rho_k1, n);
        sys.r_prime(r0, c0) = a0 * rho_hat * Gx_k0;
        sys.r_prime(r0, c1) = a0 * Gx_k0 - a1 * Gx_k1;
        const complex Dx_k0 = dtilde_kernel_dx(x, rho_n1, rho_k0);
        const complex Dx_k1 = dtilde_kernel_dx(x, rho_n1, rho_k1);
        sys.r_prime(r1, c0) = a0 * rho_hat * Dx_k0;
        sys.r_prime(r1, c1) = a0 * Dx_k0 - a1 * Dx_k1;
      }
    }
  }
  return sys;
}

// ── Shift normalization ─────────────────────────────────────────────────────

std::pair<SpectralData, complex> shift_normalize(const SpectralData& S,
                                                 complex omega) {
  const complex c = 2.0 * omega / PI;
  SpectralData out = S;
  for (auto& r : out.rho) r = sqrt_to_rho(r * r - c);
  out.omega = complex{0.0, 0.0};
  return {std::move(out), c};
}

// ── Full pipelines ──────────────────────────────────────────────────────────

ReconstructionResult inverse_solve_multiple(const SpectralData& S,
                                            const ContourConfig& config) {
  check_spectral_data(S);
  if (config.grid_nodes < 2)
    throw validation_error("inverse_solve_multiple: grid_nodes must be >= 2");

  const complex omega = decompose_asymptotics(S).omega;
  auto shifted = shift_normalize(S, omega);
  const SpectralData& Sh = shifted.first;
  const complex shift = shifted.second;

  const auto grid = ContourGrid::make(
      config.contour_index, config.contour_index == 0 ? 0 : config.contour_nodes);
  const int N = grid.N;
  const int Kc = grid.node_count();
  const int n_trunc = config.n_trunc;
  const int M = config.grid_nodes;

  // Surface separation violations before spawning the node sweep.
  (void)build_block_system(Sh, 0.0, grid, n_trunc, false);

  std::vector<complex> eps(M + 1), deps(M + 1);
  std::vector<double> residual(M + 1, 0.0), norms(M + 1, 0.0);

  parallel_for(0, M + 1, [&](int j) {
    const double x = PI * j / M;
    const auto sys = build_block_system(Sh, x, grid, n_trunc, true);
    const auto sol = solve_dense(sys.matrix, sys.rhs, &sys.r_prime,
                                 &sys.rhs_prime, config.explicit_inverse_norm);

    residual[j] = (sys.matrix * sol.f - sys.rhs).cwiseAbs().maxCoeff();
    norms[j] = sol.inv_norm;

    complex e{0.0, 0.0}, de{0.0, 0.0};
    for (int l = 0; l < Kc; ++l) {
      const complex theta = grid.nodes[l];
      const complex wm = theta * theta / double(Kc) * sys.m_hat[l];
      const complex ct = std::cos(theta * x), st = std::sin(theta * x);
      e += wm * sol.f(l) * ct;
      de += wm * (sol.f_prime(l) * ct - theta * sol.f(l) * st);
    }
    for (int k = N + 1; k <= n_trunc; ++k) {
      const int i0 = Kc + 2 * (k - N - 1), i1 = i0 + 1;
      const complex rk0 = Sh.rho[k - 1];
      const double rk1 = model_rho(k);
      const complex a0 = Sh.alpha[k - 1];
      const complex a1 = model_alpha(k);
      const complex rho_hat = rk0 - rk1;
      const complex phi0 = rho_hat * sol.f(i0) + sol.f(i1);
      const complex phi1 = sol.f(i1);
      const complex dphi0 = rho_hat * sol.f_prime(i0) + sol.f_prime(i1);
      const complex dphi1 = sol.f_prime(i1);
      const complex c0 = std::cos(rk0 * x), s0 = std::sin(rk0 * x);
      const double c1 = std::cos(rk1 * x), s1 = std::sin(rk1 * x);
      e += a0 * phi0 * c0 - a1 * phi1 * c1;
      de += a0 * (dphi0 * c0 - rk0 * phi0 * s0) -
            a1 * (dphi1 * c1 - rk1 * phi1 * s1);
    }
    eps[j] = e;
    deps[j] = de;
  });

  ReconstructionResult R;
  R.epsilon = GridFunction(eps);
  const GridFunction deps_grid(deps);
  R.P = reconstruct_from_epsilon(R.epsilon, deps_grid);
  for (auto& v : R.P.q.values) v += shift;

  std::vector<complex> gap(M + 1);
  const double dx = PI / M;
  for (int j = 0; j <= M; ++j) {
    complex fd;
    if (j == 0)
      fd = (-3.0 * eps[0] + 4.0 * eps[1] - eps[2]) / (2.0 * dx);
    else if (j == M)
      fd = (3.0 * eps[M] - 4.0 * eps[M - 1] + eps[M - 2]) / (2.0 * dx);
    else
      fd = (eps[j + 1] - eps[j - 1]) / (2.0 * dx);
    gap[j] = deps[j] - fd;
  }
  R.eps_deriv_mismatch = grid_l2_norm(GridFunction(std::move(gap)));

  R.residual_max = *std::max_element(residual.begin(), residual.end());
  R.inv_norm = *std::max_element(norms.begin(), norms.end());
  R.n_trunc = n_trunc;
  R.grid_nodes = M;
  return R;
}

// ── Cauchy data ─────────────────────────────────────────────────────────────

complex cauchy_delta(const CauchyData& C, complex rho) {
  std::vector<complex> integrand(C.N.values.size());
  const int M = C.N.nodes();
  for (int j = 0; j <= M; ++j) {
    const double t = PI * j / M;
    integrand[j] = C.N.values[j] * std::cos(rho * t);
  }
  const complex tail = grid_integral(GridFunction(std::move(integrand)));
  return -rho * std::sin(rho * PI) + C.omega * std::cos(rho * PI) + tail;
}

complex cauchy_delta0(const CauchyData& C, complex rho) {
  std::vector<complex> integrand(C.N0.values.size());
  const int M = C.N0.nodes();
  for (int j = 0; j <= M; ++j) {
    const double t = PI * j / M;
    // sin(ρt)/ρ, series-stabilized through ρ = 0.
    integrand[j] = C.N0.values[j] * sin_ratio(rho, t);
  }
  const complex tail = grid_integral(GridFunction(std::move(integrand)));
  return std::cos(rho * PI) + C.omega0 * sin_ratio(rho, PI) + tail;
}

ReconstructionResult inverse_from_cauchy(const CauchyData& C,
                                         const ContourConfig& config) {
  if (C.N.nodes() != C.N0.nodes())
    throw validation_error(
        "inverse_from_cauchy: N and N0 live on different grids");
  if (config.n_trunc < 1)
    throw validation_error("inverse_from_cauchy: n_trunc must be >= 1");

  const detail::FnLambda F = [&](complex lambda) {
    return cauchy_delta(C, sqrt_to_rho(lambda));
  };
  const auto harvest = detail::locate_spectrum(F, C.omega, config.n_trunc);

  // Laurent weights of M = −Δ⁰/Δ at every located pole.
  SpectralData S;
  S.omega = C.omega;
  bool any_multiple = false;
  for (const auto& g : harvest.groups) {
    if (S.count() >= config.n_trunc) break;
    double gap = 1e300;
    for (const auto& g2 : harvest.groups) {
      if (&g2 == &g) continue;
      gap = std::min(gap, std::abs(g2.lambda - g.lambda));
    }
    const double radius = std::clamp(gap / 3.0, 1e-4, 0.4);
    const int K = 64;
    std::vector<complex> samples(K);
    for (int l = 0; l < K; ++l) {
      const complex lam =
          g.lambda + radius * std::polar(1.0, 2.0 * PI * l / K);
      const complex delta = cauchy_delta(C, sqrt_to_rho(lam));
      if (std::abs(delta) == 0.0)
        throw numeric_error(
            "inverse_from_cauchy: Delta vanishes on a weight-extraction "
            "circle");
      samples[l] = -cauchy_delta0(C, sqrt_to_rho(lam)) / delta;
    }
    const int m = std::min(g.multiplicity, config.n_trunc - S.count());
    const auto coef = laurent_coefficients(samples, g.lambda, radius, m);
    const int leader = S.count() + 1;
    S.index_set.push_back(leader);
    S.multiplicities.push_back(m);
    if (m > 1) any_multiple = true;
    const complex rho = sqrt_to_rho(g.lambda);
    for (int i = 0; i < m; ++i) {
      S.rho.push_back(rho);
      S.alpha.push_back(coef[i]);
    }
  }
  if (!any_multiple) {
    S.index_set.clear();
    S.multiplicities.clear();
  }

  return inverse_solve_multiple(S, config);
}

}  // namespace specmap
