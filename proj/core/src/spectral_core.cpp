#include "specmap/spectral_core.hpp"

#include <algorithm>
#include <cmath>

namespace specmap {

namespace {

constexpr double kBoundaryMargin = 1e-12;  // relative slack on ≤ comparisons

bool effectively_real(complex z, double scale) {
  return std::abs(z.imag()) <= 1e-12 * (1.0 + scale);
}

// Exception set of the V± conditions: weights sitting on the negative real
// axis are allowed there and excluded from the deviation ball.
std::vector<bool> negative_real_weights(const SpectralData& S) {
  std::vector<bool> flagged(S.count(), false);
  for (int n = 0; n < S.count(); ++n) {
    const complex a = S.alpha[n];
    flagged[n] = a.real() < 0.0 && effectively_real(a, std::abs(a));
  }
  return flagged;
}

double deviation_norm(const SpectralData& S, const std::vector<bool>* skip) {
  double sum = 0.0;
  const auto xi = xi_sequence(S);
  for (int n = 1; n <= S.count(); ++n) {
    if (skip && (*skip)[n - 1]) continue;
    const double t = n * xi[n - 1];
    sum += t * t;
  }
  return std::sqrt(sum);
}

void check_ball(const SpectralData& S, double Omega,
                const std::vector<bool>* skip, MembershipReport& report) {
  const double norm = deviation_norm(S, skip);
  if (norm > Omega + kBoundaryMargin * (1.0 + Omega)) {
    report.member = false;
    report.violations.push_back(
        {-1, "deviation norm ||{n·xi_n}||_2 = " + std::to_string(norm) +
                 " exceeds Omega = " + std::to_string(Omega)});
  }
}

// ω attached to the data, or estimated from the tail when absent.
complex resolved_omega(const SpectralData& S) {
  if (S.omega) return *S.omega;
  return decompose_asymptotics(S).omega;
}

void check_v_delta(const SpectralData& S, double delta,
                   MembershipReport& report) {
  const double tol = kBoundaryMargin * (1.0 + delta);
  for (int n = 1; n <= S.count(); ++n) {
    const complex rho = S.rho[n - 1];
    if (!effectively_real(rho, std::abs(rho))) {
      report.member = false;
      report.violations.push_back(
          {n, "eigenvalue sqrt is not real (Im = " +
                  std::to_string(rho.imag()) + ")"});
    }
    if (n < S.count()) {
      const double gap = S.rho[n].real() - rho.real();
      if (gap < delta - tol) {
        report.member = false;
        report.violations.push_back(
            {n, "gap to the next eigenvalue sqrt is " + std::to_string(gap) +
                    " < delta"});
      }
    }
    if (std::abs(S.alpha[n - 1]) < delta - tol) {
      report.member = false;
      report.violations.push_back(
          {n, "weight modulus " + std::to_string(std::abs(S.alpha[n - 1])) +
                  " below delta"});
    }
  }

  double arg_lo = 1e300, arg_hi = -1e300;
  for (const complex a : S.alpha) {
    const double t = std::arg(a);
    arg_lo = std::min(arg_lo, t);
    arg_hi = std::max(arg_hi, t);
  }
  if (S.count() > 0 && arg_hi - arg_lo > PI - delta + tol) {
    report.member = false;
    report.violations.push_back(
        {-1, "weight argument spread " + std::to_string(arg_hi - arg_lo) +
                 " exceeds pi - delta"});
  }
}

void check_v_tau(const SpectralData& S, const SetSpec& spec, double sign,
                 MembershipReport& report) {
  if (spec.tau.empty())
    throw validation_error("membership: V_tau set needs a tau sequence");
  const auto exceptions = negative_real_weights(S);
  for (int n = 1; n <= S.count(); ++n) {
    if (exceptions[n - 1]) continue;
    const double tau_n =
        spec.tau[std::min<size_t>(n - 1, spec.tau.size() - 1)];
    const double signed_im = sign * S.alpha[n - 1].imag();
    if (signed_im < tau_n - kBoundaryMargin * (1.0 + tau_n)) {
      report.member = false;
      report.violations.push_back(
          {n, "signed imaginary part of the weight " +
                  std::to_string(signed_im) + " below tau"});
    }
  }
  check_ball(S, spec.Omega, &exceptions, report);
}

}  // namespace

// ── Model data ──────────────────────────────────────────────────────────────

double model_rho(int n) { return n - 1.0; }

complex model_alpha(int n) {
  return {n == 1 ? 1.0 / PI : 2.0 / PI, 0.0};
}

SpectralData model_spectral_data(int n_max) {
  if (n_max < 1)
    throw validation_error("model_spectral_data: n_max must be >= 1");
  SpectralData S;
  S.rho.reserve(n_max);
  S.alpha.reserve(n_max);
  for (int n = 1; n <= n_max; ++n) {
    S.rho.push_back({model_rho(n), 0.0});
    S.alpha.push_back(model_alpha(n));
  }
  S.omega = complex{0.0, 0.0};
  return S;
}

// ── Asymptotic decomposition ────────────────────────────────────────────────

TailDecomposition decompose_asymptotics(const SpectralData& S,
                                        std::optional<complex> omega_hint) {
  check_spectral_data(S);
  TailDecomposition tail;

  std::optional<complex> omega = omega_hint ? omega_hint : S.omega;
  if (omega) {
    tail.omega = *omega;
    tail.omega_spread = 0.0;
  } else {
    // Richardson in 1/n: with f(n) = πn(ρₙ−n+1) = ω + c/n + O(1/n²), the
    // slope of n·f(n) between consecutive indices reproduces ω to O(1/n²).
    if (S.count() < 8)
      throw validation_error(
          "decompose_asymptotics: need >= 8 entries (or an omega hint) to "
          "estimate omega");
    const int n_max = S.count();
    const int n0 = std::max(2, n_max - n_max / 4 + 1);
    std::vector<complex> estimates;
    for (int n = n0; n < n_max; ++n) {
      const complex f1 =
          PI * double(n) * (S.rho[n - 1] - (n - 1.0));
      const complex f2 =
          PI * double(n + 1) * (S.rho[n] - double(n));
      estimates.push_back(double(n + 1) * f2 - double(n) * f1);
    }
    complex mean{0.0, 0.0};
    for (const complex e : estimates) mean += e;
    mean /= double(estimates.size());
    double spread = 0.0;
    for (const complex e : estimates)
      spread = std::max(spread, std::abs(e - mean));
    tail.omega = mean;
    tail.omega_spread = spread;
  }

  tail.varkappa.resize(S.count());
  tail.s.resize(S.count());
  for (int n = 1; n <= S.count(); ++n) {
    tail.varkappa[n - 1] =
        double(n) * (S.rho[n - 1] - (n - 1.0)) - tail.omega / PI;
    tail.s[n - 1] = double(n) * (S.alpha[n - 1] - 2.0 / PI);
  }
  return tail;
}

// ── Distances ───────────────────────────────────────────────────────────────

namespace {

// Σₙ over the given index range of |ϰₙ¹−ϰₙ²|² + |sₙ¹−sₙ²|².
double tail_sum_squares(const TailDecomposition& t1,
                        const TailDecomposition& t2, int from_n) {
  double sum = 0.0;
  for (size_t i = from_n - 1; i < t1.varkappa.size(); ++i) {
    sum += std::norm(t1.varkappa[i] - t2.varkappa[i]);
    sum += std::norm(t1.s[i] - t2.s[i]);
  }
  return sum;
}

}  // namespace

double distance_d(const SpectralData& S1, const SpectralData& S2,
                  complex omega1, complex omega2) {
  if (S1.count() != S2.count())
    throw validation_error("distance_d: sequences have different lengths");
  const auto t1 = decompose_asymptotics(S1, omega1);
  const auto t2 = decompose_asymptotics(S2, omega2);
  return std::sqrt(std::norm(omega1 - omega2) + tail_sum_squares(t1, t2, 1));
}

double distance_dN(const SpectralData& S1, const SpectralData& S2, int N,
                   const std::vector<complex>& M1_on_contour,
                   const std::vector<complex>& M2_on_contour,
                   complex omega1, complex omega2) {
  if (S1.count() != S2.count())
    throw validation_error("distance_dN: sequences have different lengths");
  if (M1_on_contour.size() != M2_on_contour.size())
    throw validation_error("distance_dN: sample vectors have different sizes");
  if (N < 0 || N > S1.count())
    throw validation_error("distance_dN: N outside the data range");

  double sup = 0.0;
  for (size_t l = 0; l < M1_on_contour.size(); ++l)
    sup = std::max(sup, std::abs(M1_on_contour[l] - M2_on_contour[l]));

  const auto t1 = decompose_asymptotics(S1, omega1);
  const auto t2 = decompose_asymptotics(S2, omega2);
  return sup + std::sqrt(std::norm(omega1 - omega2) +
                         tail_sum_squares(t1, t2, N + 1));
}

// ── Deviation from the model ────────────────────────────────────────────────

std::vector<double> xi_sequence(const SpectralData& S) {
  std::vector<double> xi(S.count());
  for (int n = 1; n <= S.count(); ++n) {
    const double dr = std::abs(S.rho[n - 1] - (n - 1.0));
    const double da = std::abs(S.alpha[n - 1] - model_alpha(n));
    xi[n - 1] = std::sqrt(dr * dr + da * da);
  }
  return xi;
}

// ── Membership validators ───────────────────────────────────────────────────

MembershipReport validate_membership(const SpectralData& S, const SetSpec& spec,
                                     std::optional<double> aux) {
  check_spectral_data(S);
  MembershipReport report;

  switch (spec.kind) {
    case SetKind::B_Omega:
      check_ball(S, spec.Omega, nullptr, report);
      break;

    case SetKind::B_Omega_ring: {
      if (!aux)
        throw validation_error(
            "membership: B_Omega_ring needs the measured sup-norm of "
            "(I+R)^{-1} as aux");
      const complex omega = resolved_omega(S);
      if (std::abs(omega) > 1e-9) {
        report.member = false;
        report.violations.push_back(
            {-1, "omega = " + std::to_string(std::abs(omega)) +
                     " must vanish on the ring"});
      }
      if (*aux > spec.K + kBoundaryMargin * (1.0 + spec.K)) {
        report.member = false;
        report.violations.push_back(
            {-1, "inverse-operator norm " + std::to_string(*aux) +
                     " exceeds K = " + std::to_string(spec.K)});
      }
      check_ball(S, spec.Omega, nullptr, report);
      break;
    }

    case SetKind::V_Omega_delta:
      check_v_delta(S, spec.delta, report);
      check_ball(S, spec.Omega, nullptr, report);
      break;

    case SetKind::V_Omega_tau_plus:
      check_v_tau(S, spec, +1.0, report);
      break;

    case SetKind::V_Omega_tau_minus:
      check_v_tau(S, spec, -1.0, report);
      break;

    case SetKind::P_Q:
    case SetKind::P_QA:
      throw validation_error(
          "membership: problem-side set requires a problem triple");
  }
  return report;
}

MembershipReport validate_membership(const ProblemTriple& P,
                                     const SetSpec& spec,
                                     const SpectralData* spectral) {
  MembershipReport report;
  if (spec.kind != SetKind::P_Q && spec.kind != SetKind::P_QA)
    throw validation_error(
        "membership: data-side set requires spectral data, not a triple");

  const double size =
      grid_l2_norm(P.q) + std::abs(P.h) + std::abs(P.H);
  if (size > spec.Q + kBoundaryMargin * (1.0 + spec.Q)) {
    report.member = false;
    report.violations.push_back(
        {-1, "||q||_2 + |h| + |H| = " + std::to_string(size) +
                 " exceeds Q = " + std::to_string(spec.Q)});
  }

  if (spec.kind == SetKind::P_QA) {
    if (!spectral)
      throw validation_error(
          "membership: P_QA needs the spectral data of the triple");
    check_spectral_data(*spectral);
    if (!spectral->all_simple()) {
      for (size_t g = 0; g < spectral->index_set.size(); ++g) {
        if (spectral->multiplicities[g] > 1) {
          report.member = false;
          report.violations.push_back(
              {spectral->index_set[g], "multiple eigenvalue in the data"});
        }
      }
    }
    for (int n = 1; n <= spectral->count(); ++n) {
      const double a = std::abs(spectral->alpha[n - 1]);
      if (a > spec.A + kBoundaryMargin * (1.0 + spec.A)) {
        report.member = false;
        report.violations.push_back(
            {n, "weight modulus " + std::to_string(a) + " exceeds A"});
      }
    }
  }
  return report;
}

}  // namespace specmap
