#include "specmap/stability.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "specmap/direct.hpp"

namespace specmap {

namespace {

std::string scheme_name(PerturbScheme scheme) {
  switch (scheme) {
    case PerturbScheme::gaussian_tail: return "gaussian_tail";
    case PerturbScheme::single_entry: return "single_entry";
    case PerturbScheme::pair_split: return "pair_split";
    case PerturbScheme::alpha_degenerate: return "alpha_degenerate";
  }
  return "unknown";
}

void check_index(const SpectralData& S, int index) {
  if (index < 1 || index > S.count())
    throw validation_error("perturb: index " + std::to_string(index) +
                           " outside the data range 1.." +
                           std::to_string(S.count()));
}

SpectralData perturb_gaussian(const SpectralData& S, const PerturbSpec& spec) {
  SpectralData out = S;
  std::mt19937_64 engine(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int n = 1; n <= S.count(); ++n) {
    const complex zr{normal(engine), normal(engine)};
    const complex za{normal(engine), normal(engine)};
    out.rho[n - 1] += spec.magnitude * zr / double(n);
    out.alpha[n - 1] += spec.magnitude * za / double(n);
  }
  return out;
}

SpectralData perturb_pair_split(const SpectralData& S,
                                const PerturbSpec& spec) {
  check_index(S, spec.index);
  if (spec.magnitude == 0.0)
    throw validation_error("perturb: pair_split needs a nonzero magnitude");

  // The split index must lead a group of multiplicity exactly 2.
  bool found = false;
  for (size_t g = 0; g < S.index_set.size(); ++g) {
    if (S.index_set[g] == spec.index) {
      if (S.multiplicities[g] != 2)
        throw validation_error(
            "perturb: pair_split requires a double eigenvalue at the index");
      found = true;
      break;
    }
  }
  if (!found)
    throw validation_error(
        "perturb: pair_split requires a double eigenvalue at the index");

  const int i = spec.index - 1;
  const double delta = spec.magnitude;
  const complex lambda1 = S.rho[i] * S.rho[i];
  const complex alpha1 = S.alpha[i];      // residue
  const complex alpha2 = S.alpha[i + 1];  // second-order coefficient
  const complex a = alpha2 / 2.0;
  if (std::abs(a) == 0.0)
    throw validation_error(
        "perturb: pair_split needs a nonzero second Laurent coefficient");
  const complex c = alpha1 / a;

  SpectralData out = S;
  out.rho[i] = sqrt_to_rho(lambda1 + delta);
  out.rho[i + 1] = sqrt_to_rho(lambda1 - delta + c * delta * delta);
  out.alpha[i] = a / delta;
  out.alpha[i + 1] = -a / delta;

  // Rebuild the group structure: the split pair became two simple entries.
  std::vector<int> leaders, mults;
  for (size_t g = 0; g < S.index_set.size(); ++g) {
    if (S.index_set[g] == spec.index) {
      leaders.push_back(spec.index);
      mults.push_back(1);
      leaders.push_back(spec.index + 1);
      mults.push_back(1);
    } else {
      leaders.push_back(S.index_set[g]);
      mults.push_back(S.multiplicities[g]);
    }
  }
  const bool any_multiple =
      std::any_of(mults.begin(), mults.end(), [](int m) { return m > 1; });
  if (any_multiple) {
    out.index_set = std::move(leaders);
    out.multiplicities = std::move(mults);
  } else {
    out.index_set.clear();
    out.multiplicities.clear();
  }
  return out;
}

}  // namespace

SpectralData perturb(const SpectralData& S, const PerturbSpec& spec) {
  check_spectral_data(S);
  switch (spec.scheme) {
    case PerturbScheme::gaussian_tail:
      return perturb_gaussian(S, spec);
    case PerturbScheme::single_entry: {
      check_index(S, spec.index);
      SpectralData out = S;
      out.rho[spec.index - 1] += spec.magnitude;
      out.alpha[spec.index - 1] += spec.magnitude;
      return out;
    }
    case PerturbScheme::pair_split:
      return perturb_pair_split(S, spec);
    case PerturbScheme::alpha_degenerate: {
      check_index(S, spec.index);
      SpectralData out = S;
      out.alpha[spec.index - 1] = complex{spec.magnitude, 0.0};
      return out;
    }
  }
  throw validation_error("perturb: unknown scheme");
}

namespace {

double triple_difference(const ProblemTriple& A, const ProblemTriple& B) {
  if (A.q.nodes() != B.q.nodes())
    throw validation_error("triple difference: output grids differ");
  std::vector<complex> diff(A.q.values.size());
  for (size_t j = 0; j < diff.size(); ++j)
    diff[j] = A.q.values[j] - B.q.values[j];
  return grid_l2_norm(GridFunction(std::move(diff))) + std::abs(A.h - B.h) +
         std::abs(A.H - B.H);
}

// Validation panel {B_Ω(1), 𝒱(1, 0.2)}, applied in the shift-normalized
// frame so a constant mean offset does not mask the tail behaviour.
bool panel_member(const SpectralData& S) {
  const complex omega = decompose_asymptotics(S).omega;
  const SpectralData shifted = shift_normalize(S, omega).first;

  SetSpec ball;
  ball.kind = SetKind::B_Omega;
  ball.Omega = 1.0;
  SetSpec vset;
  vset.kind = SetKind::V_Omega_delta;
  vset.Omega = 1.0;
  vset.delta = 0.2;
  return validate_membership(shifted, ball).member &&
         validate_membership(shifted, vset).member;
}

double safe_ratio(double difference, double distance) {
  return (distance > 0.0) ? difference / distance : 0.0;
}

}  // namespace

StabilityReport lipschitz_sweep(const SpectralData& S,
                                const std::vector<double>& magnitudes,
                                const PerturbSpec& scheme,
                                const ReconstructConfig& config) {
  check_spectral_data(S);
  const auto base = epsilon_and_reconstruct(S, config);
  const bool base_member = panel_member(S);
  const complex omega1 = decompose_asymptotics(S).omega;

  StabilityReport report;
  report.scheme = scheme_name(scheme.scheme);
  report.distance_kind = "d";
  for (const double magnitude : magnitudes) {
    PerturbSpec spec = scheme;
    spec.magnitude = magnitude;
    const SpectralData Sp = perturb(S, spec);
    const complex omega2 = decompose_asymptotics(Sp).omega;

    StabilityRow row;
    row.magnitude = magnitude;
    row.distance = distance_d(S, Sp, omega1, omega2);
    const auto pert = epsilon_and_reconstruct(Sp, config);
    row.difference = triple_difference(base.P, pert.P);
    row.ratio = safe_ratio(row.difference, row.distance);
    row.base_member = base_member;
    row.pert_member = panel_member(Sp);
    row.inv_norm = pert.inv_norm;
    report.rows.push_back(row);
  }
  return report;
}

StabilityReport lipschitz_sweep(const SpectralData& S,
                                const std::vector<double>& magnitudes,
                                const PerturbSpec& scheme,
                                const ContourConfig& config) {
  check_spectral_data(S);
  const auto base = inverse_solve_multiple(S, config);
  const bool base_member = panel_member(S);
  const complex omega1 = decompose_asymptotics(S).omega;

  const auto grid = ContourGrid::make(
      config.contour_index,
      config.contour_index == 0 ? 0 : config.contour_nodes);
  const auto m1 = weyl_hat_on_contour(S, grid);

  StabilityReport report;
  report.scheme = scheme_name(scheme.scheme);
  report.distance_kind = "d_N";
  for (const double magnitude : magnitudes) {
    PerturbSpec spec = scheme;
    spec.magnitude = magnitude;
    const SpectralData Sp = perturb(S, spec);
    const complex omega2 = decompose_asymptotics(Sp).omega;
    const auto m2 = weyl_hat_on_contour(Sp, grid);

    StabilityRow row;
    row.magnitude = magnitude;
    row.distance =
        distance_dN(S, Sp, config.contour_index, m1, m2, omega1, omega2);
    const auto pert = inverse_solve_multiple(Sp, config);
    row.difference = triple_difference(base.P, pert.P);
    row.ratio = safe_ratio(row.difference, row.distance);
    row.base_member = base_member;
    row.pert_member = panel_member(Sp);
    row.inv_norm = pert.inv_norm;
    report.rows.push_back(row);
  }
  return report;
}

double residual_check(const SpectralData& S, int n_trunc, int grid_nodes,
                      int n_check) {
  check_spectral_data(S);
  if (n_check <= 0) n_check = std::min(n_trunc, S.count());
  if (n_check > S.count())
    throw validation_error("residual_check: n_check exceeds the data length");

  ReconstructConfig config;
  config.n_trunc = n_trunc;
  config.grid_nodes = grid_nodes;
  const auto R = epsilon_and_reconstruct(S, config);
  const auto F = forward_problem(R.P, n_check);

  double worst = 0.0;
  for (int n = 1; n <= n_check; ++n) {
    worst = std::max(worst, std::abs(S.rho[n - 1] - F.rho[n - 1]) +
                                std::abs(S.alpha[n - 1] - F.alpha[n - 1]));
  }
  return worst;
}

}  // namespace specmap
