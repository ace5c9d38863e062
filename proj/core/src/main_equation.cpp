#include "specmap/main_equation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specmap/kernels.hpp"
#include "specmap/parallel.hpp"
#include "specmap/spectral_core.hpp"

namespace specmap {

namespace {

void require_simple_prefix(const SpectralData& S, int n_trunc) {
  if (n_trunc < 1)
    throw validation_error("main equation: n_trunc must be >= 1");
  if (S.count() < n_trunc)
    throw validation_error("main equation: data carries " +
                           std::to_string(S.count()) +
                           " pairs, fewer than n_trunc = " +
                           std::to_string(n_trunc));
  for (const int m : S.multiplicities) {
    if (m > 1)
      throw validation_error(
          "main equation: grouped eigenvalues require the contour pipeline");
  }
}

// ψ̃ and the operator entries for one (row n, column k) block pair.
struct ColumnData {
  complex rho0;    // ρ_{k0} (data)
  complex rho1;    // ρ_{k1} = k−1 (model)
  complex alpha0;  // α_{k0}
  complex alpha1;  // α̃ₖ
  complex rho_hat; // ρ_{k0} − ρ_{k1}
};

std::vector<ColumnData> column_data(const SpectralData& S, int n_trunc) {
  std::vector<ColumnData> cols(n_trunc);
  for (int k = 1; k <= n_trunc; ++k) {
    auto& c = cols[k - 1];
    c.rho0 = S.rho[k - 1];
    c.rho1 = complex{model_rho(k), 0.0};
    c.alpha0 = S.alpha[k - 1];
    c.alpha1 = model_alpha(k);
    c.rho_hat = c.rho0 - c.rho1;
  }
  return cols;
}

}  // namespace

MainEquationSystem build_system(const SpectralData& S, double x, int n_trunc,
                                bool with_derivative) {
  require_simple_prefix(S, n_trunc);
  const int N = n_trunc;
  const auto cols = column_data(S, N);

  MainEquationSystem sys;
  sys.x = x;
  sys.n_trunc = N;
  sys.with_derivative = with_derivative;
  sys.matrix.resize(2 * N, 2 * N);
  sys.rhs.resize(2 * N);
  sys.rho_hat.resize(N);
  for (int k = 1; k <= N; ++k) sys.rho_hat[k - 1] = cols[k - 1].rho_hat;
  if (with_derivative) {
    sys.r_prime.resize(2 * N, 2 * N);
    sys.rhs_prime.resize(2 * N);
  }

  for (int n = 1; n <= N; ++n) {
    const int r0 = 2 * (n - 1), r1 = r0 + 1;
    const complex rho_n0 = S.rho[n - 1];
    const double rho_n1 = model_rho(n);

    sys.rhs(r0) = g_divided(x, rho_n0, n);
    sys.rhs(r1) = std::cos(rho_n1 * x);
    if (with_derivative) {
      sys.rhs_prime(r0) = g_divided_dx(x, rho_n0, n);
      sys.rhs_prime(r1) = -rho_n1 * std::sin(rho_n1 * x);
    }

    for (int k = 1; k <= N; ++k) {
      const auto& c = cols[k - 1];
      const int c0 = 2 * (k - 1), c1 = c0 + 1;
      const double one0 = (n == k) ? 1.0 : 0.0;

      // Row (n,0): divided-difference kernel G̃ₙ at ρ = ρₙ₀.
      const complex G_k0 = G_divided(x, rho_n0, c.rho0, n);
      const complex G_k1 = G_divided(x, rho_n0, c.rho1, n);
      sys.matrix(r0, c0) = one0 + c.alpha0 * c.rho_hat * G_k0;
      sys.matrix(r0, c1) = c.alpha0 * G_k0 - c.alpha1 * G_k1;

      // Row (n,1): plain kernel D̃ at the model frequency ρ̃ₙ.
      const complex D_k0 = dtilde_kernel(x, rho_n1, c.rho0);
      const complex D_k1 = dtilde_kernel(x, rho_n1, c.rho1);
      sys.matrix(r1, c0) = c.alpha0 * c.rho_hat * D_k0;
      sys.matrix(r1, c1) = one0 + c.alpha0 * D_k0 - c.alpha1 * D_k1;

      if (with_derivative) {
        const complex Gx_k0 = G_divided_dx(x, rho_n0, c.rho0, n);
        const complex Gx_k1 = G_divided_dx(x, rho_n0, c.rho1, n);
        sys.r_prime(r0, c0) = c.alpha0 * c.rho_hat * Gx_k0;
        sys.r_prime(r0, c1) = c.alpha0 * Gx_k0 - c.alpha1 * Gx_k1;
        const complex Dx_k0 = dtilde_kernel_dx(x, rho_n1, c.rho0);
        const complex Dx_k1 = dtilde_kernel_dx(x, rho_n1, c.rho1);
        sys.r_prime(r1, c0) = c.alpha0 * c.rho_hat * Dx_k0;
        sys.r_prime(r1, c1) = c.alpha0 * Dx_k0 - c.alpha1 * Dx_k1;
      }
    }
  }
  return sys;
}

SystemSolution solve_system(const MainEquationSystem& sys,
                            bool explicit_inverse) {
  const int dim = static_cast<int>(sys.matrix.rows());
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sys.matrix);

  double min_pivot = std::numeric_limits<double>::infinity();
  for (int i = 0; i < dim; ++i)
    min_pivot = std::min(min_pivot, std::abs(lu.matrixLU()(i, i)));
  if (min_pivot < kSingularPivot)
    throw numeric_error(
        "solve_system: main-equation matrix is not invertible "
        "(degenerate spectral data; smallest pivot " +
        std::to_string(min_pivot) + ")");

  SystemSolution sol;
  const Eigen::VectorXcd psi = lu.solve(sys.rhs);
  sol.psi.assign(psi.data(), psi.data() + dim);

  if (sys.with_derivative) {
    const Eigen::VectorXcd rhs_p = sys.rhs_prime - sys.r_prime * psi;
    const Eigen::VectorXcd psi_p = lu.solve(rhs_p);
    sol.psi_prime.assign(psi_p.data(), psi_p.data() + dim);
  }

  if (explicit_inverse) {
    const Eigen::MatrixXcd inv = lu.inverse();
    double norm = 0.0;
    for (int i = 0; i < dim; ++i)
      norm = std::max(norm, inv.row(i).cwiseAbs().sum());
    sol.inv_norm_estimate = norm;
    sol.inv_norm_exact = true;
  } else {
    // Lower-bound probes: ‖A⁻¹‖_∞ ≥ ‖A⁻¹b‖_∞ for any ‖b‖_∞ = 1.
    Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(dim);
    Eigen::VectorXcd alt(dim);
    for (int i = 0; i < dim; ++i) alt(i) = (i % 2 == 0) ? 1.0 : -1.0;
    const double n1 = lu.solve(ones).cwiseAbs().maxCoeff();
    const double n2 = lu.solve(alt).cwiseAbs().maxCoeff();
    sol.inv_norm_estimate = std::max(n1, n2);
    sol.inv_norm_exact = false;
  }
  return sol;
}

PhiRecovery recover_phi(const SystemSolution& sol, const SpectralData& S,
                        double x) {
  (void)x;  // the Tₖ transform is x-independent
  const int N = static_cast<int>(sol.psi.size()) / 2;
  PhiRecovery rec;
  rec.phi.resize(2 * N);
  if (!sol.psi_prime.empty()) rec.phi_prime.resize(2 * N);
  for (int k = 1; k <= N; ++k) {
    const complex rho_hat = S.rho[k - 1] - model_rho(k);
    const int i0 = 2 * (k - 1), i1 = i0 + 1;
    rec.phi[i0] = rho_hat * sol.psi[i0] + sol.psi[i1];
    rec.phi[i1] = sol.psi[i1];
    if (!sol.psi_prime.empty()) {
      rec.phi_prime[i0] = rho_hat * sol.psi_prime[i0] + sol.psi_prime[i1];
      rec.phi_prime[i1] = sol.psi_prime[i1];
    }
  }
  return rec;
}

ProblemTriple reconstruct_from_epsilon(const GridFunction& epsilon,
                                       const GridFunction& epsilon_prime) {
  if (epsilon.nodes() != epsilon_prime.nodes())
    throw validation_error(
        "reconstruct_from_epsilon: grids of epsilon and epsilon' differ");
  ProblemTriple P;
  std::vector<complex> q(epsilon_prime.values.size());
  for (size_t j = 0; j < q.size(); ++j) q[j] = -2.0 * epsilon_prime.values[j];
  P.q = GridFunction(std::move(q));
  P.h = -epsilon.values.front();
  P.H = epsilon.values.back();
  return P;
}

ReconstructionResult epsilon_and_reconstruct(const SpectralData& S,
                                             const ReconstructConfig& config) {
  check_spectral_data(S);
  require_simple_prefix(S, config.n_trunc);
  if (config.grid_nodes < 2)
    throw validation_error("epsilon_and_reconstruct: grid_nodes must be >= 2");

  // ε′ converges only in the ω = 0 frame: shift the spectrum by the constant
  // 2ω/π, reconstruct there, and add the constant back to the potential.
  const complex omega = decompose_asymptotics(S).omega;
  const complex shift = 2.0 * omega / PI;
  SpectralData Sh = S;
  for (auto& r : Sh.rho) r = sqrt_to_rho(r * r - shift);
  Sh.omega = complex{0.0, 0.0};

  const int N = config.n_trunc;
  const int M = config.grid_nodes;
  std::vector<complex> eps(M + 1), deps(M + 1);
  std::vector<double> residual(M + 1, 0.0), norms(M + 1, 0.0);

  parallel_for(0, M + 1, [&](int j) {
    const double x = PI * j / M;
    const auto sys = build_system(Sh, x, N, true);
    const auto sol = solve_system(sys, config.explicit_inverse_norm);

    const Eigen::Map<const Eigen::VectorXcd> psi(sol.psi.data(),
                                                 static_cast<int>(sol.psi.size()));
    residual[j] = (sys.matrix * psi - sys.rhs).cwiseAbs().maxCoeff();
    norms[j] = sol.inv_norm_estimate;

    const auto rec = recover_phi(sol, Sh, x);
    complex e{0.0, 0.0}, de{0.0, 0.0};
    for (int k = 1; k <= N; ++k) {
      const int i0 = 2 * (k - 1), i1 = i0 + 1;
      const complex rk0 = Sh.rho[k - 1];
      const double rk1 = model_rho(k);
      const complex a0 = Sh.alpha[k - 1];
      const complex a1 = model_alpha(k);
      const complex c0 = std::cos(rk0 * x), s0 = std::sin(rk0 * x);
      const double c1 = std::cos(rk1 * x), s1 = std::sin(rk1 * x);
      e += a0 * rec.phi[i0] * c0 - a1 * rec.phi[i1] * c1;
      de += a0 * (rec.phi_prime[i0] * c0 - rk0 * rec.phi[i0] * s0) -
            a1 * (rec.phi_prime[i1] * c1 - rk1 * rec.phi[i1] * s1);
    }
    eps[j] = e;
    deps[j] = de;
  });

  ReconstructionResult R;
  R.epsilon = GridFunction(eps);
  const GridFunction deps_grid(deps);
  R.P = reconstruct_from_epsilon(R.epsilon, deps_grid);
  for (auto& v : R.P.q.values) v += shift;

  // Cross-check the solved derivative against finite differences of ε.
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
  R.n_trunc = N;
  R.grid_nodes = M;
  return R;
}

double operator_norm_profile(const SpectralData& S, int n_trunc,
                             const std::vector<double>& x_nodes,
                             bool explicit_inverse, int* singular_node) {
  require_simple_prefix(S, n_trunc);
  double worst = 0.0;
  for (size_t j = 0; j < x_nodes.size(); ++j) {
    try {
      const auto sys = build_system(S, x_nodes[j], n_trunc, false);
      const auto sol = solve_system(sys, explicit_inverse);
      worst = std::max(worst, sol.inv_norm_estimate);
    } catch (const numeric_error&) {
      if (singular_node != nullptr) *singular_node = static_cast<int>(j);
      return std::numeric_limits<double>::infinity();
    }
  }
  return worst;
}

}  // namespace specmap
