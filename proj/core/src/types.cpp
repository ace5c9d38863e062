#include "specmap/types.hpp"

#include <algorithm>
#include <cmath>

namespace specmap {

complex grid_value_at(const GridFunction& f, double x) {
  const int M = f.nodes();
  const double dx = f.dx();
  const double s = x / dx;
  int j0 = static_cast<int>(std::floor(s)) - 1;
  j0 = std::clamp(j0, 0, M - 3);

  complex result{0.0, 0.0};
  for (int i = 0; i < 4; ++i) {
    double weight = 1.0;
    for (int k = 0; k < 4; ++k) {
      if (k == i) continue;
      weight *= (s - (j0 + k)) / double(i - k);
    }
    result += weight * f.values[j0 + i];
  }
  return result;
}

namespace {

// Composite Simpson over nodes [a, a+2k] plus a 3/8 patch on a trailing odd
// remainder of three intervals.
complex simpson_sum(const std::vector<complex>& v, double dx) {
  const int M = static_cast<int>(v.size()) - 1;
  const int even_end = (M % 2 == 0) ? M : M - 3;

  complex acc{0.0, 0.0};
  if (even_end >= 2) {
    complex odd{0.0, 0.0}, even{0.0, 0.0};
    for (int j = 1; j < even_end; j += 2) odd += v[j];
    for (int j = 2; j < even_end; j += 2) even += v[j];
    acc += (dx / 3.0) * (v[0] + 4.0 * odd + 2.0 * even + v[even_end]);
  }
  if (even_end != M) {
    acc += (3.0 * dx / 8.0) * (v[M - 3] + 3.0 * v[M - 2] + 3.0 * v[M - 1] +
                               v[M]);
  }
  return acc;
}

}  // namespace

complex grid_integral(const GridFunction& f) {
  return simpson_sum(f.values, f.dx());
}

double grid_l2_norm(const GridFunction& f) {
  std::vector<complex> sq(f.values.size());
  for (size_t j = 0; j < sq.size(); ++j)
    sq[j] = std::norm(f.values[j]);  // |f|² as a real-valued grid function
  const complex integral = simpson_sum(sq, f.dx());
  return std::sqrt(std::max(0.0, integral.real()));
}

void check_spectral_data(const SpectralData& S) {
  if (S.rho.size() != S.alpha.size())
    throw validation_error("spectral data: rho and alpha lengths differ");
  for (int n = 0; n < S.count(); ++n) {
    if (!is_finite(S.rho[n]) || !is_finite(S.alpha[n]))
      throw validation_error("spectral data: non-finite entry at index " +
                             std::to_string(n + 1));
  }
  if (S.index_set.empty() && S.multiplicities.empty()) return;
  if (S.index_set.size() != S.multiplicities.size())
    throw validation_error(
        "spectral data: index_set and multiplicities lengths differ");

  int expected = 1;
  for (size_t g = 0; g < S.index_set.size(); ++g) {
    if (S.index_set[g] != expected)
      throw validation_error(
          "spectral data: group leaders must tile 1..count consecutively");
    const int m = S.multiplicities[g];
    if (m < 1)
      throw validation_error("spectral data: multiplicity below 1");
    if (expected + m - 1 > S.count())
      throw validation_error(
          "spectral data: group extends past the end of the sequence");
    const complex lead = S.rho[expected - 1];
    for (int i = 1; i < m; ++i) {
      if (std::abs(S.rho[expected - 1 + i] - lead) >
          1e-9 * (1.0 + std::abs(lead)))
        throw validation_error(
            "spectral data: entries of one group must share the eigenvalue");
    }
    expected += m;
  }
  if (expected != S.count() + 1)
    throw validation_error("spectral data: groups do not cover every index");
}

complex sqrt_to_rho(complex lambda) {
  complex w = std::sqrt(lambda);  // principal: Re w ≥ 0
  // On the negative real axis the principal branch lands at arg = +π/2,
  // outside [−π/2, π/2); flip to the admissible square root.
  if (w.real() == 0.0 && w.imag() > 0.0) w = -w;
  return w;
}

bool is_finite(complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace specmap
