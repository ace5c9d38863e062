#include "specmap/kernels.hpp"

#include <cmath>

namespace specmap {

namespace {

// Model frequency anchoring the n-th divided difference.
inline double model_mu(int n) { return n - 1.0; }

}  // namespace

complex sin_ratio(complex z, double x) {
  if (std::abs(z) < kSeriesSwitch) {
    const complex u2 = (z * x) * (z * x);
    return x * (1.0 + u2 * (-1.0 / 6.0 + u2 * (1.0 / 120.0 - u2 / 5040.0)));
  }
  return std::sin(z * x) / z;
}

complex sin_ratio_deriv(complex z, double x) {
  if (std::abs(z) < kSeriesSwitch) {
    const double x3 = x * x * x;
    const complex u2 = (z * x) * (z * x);
    return x3 * z * (-1.0 / 3.0 + u2 * (1.0 / 30.0 - u2 / 840.0));
  }
  const complex u = z * x;
  return (x * z * std::cos(u) - std::sin(u)) / (z * z);
}

complex dtilde_kernel(double x, complex rho, complex theta) {
  return 0.5 * (sin_ratio(rho - theta, x) + sin_ratio(rho + theta, x));
}

complex dtilde_kernel_drho(double x, complex rho, complex theta) {
  return 0.5 *
         (sin_ratio_deriv(rho - theta, x) + sin_ratio_deriv(rho + theta, x));
}

complex dtilde_kernel_dx(double x, complex rho, complex theta) {
  return std::cos(rho * x) * std::cos(theta * x);
}

complex g_divided(double x, complex rho, int n) {
  const double mu = model_mu(n);
  const complex rho_hat = rho - mu;
  if (std::abs(rho_hat) < kCoalesceSwitch) {
    const complex mid = 0.5 * (rho + mu);
    return -x * std::sin(mid * x);
  }
  return (std::cos(rho * x) - std::cos(mu * x)) / rho_hat;
}

complex g_divided_dx(double x, complex rho, int n) {
  const double mu = model_mu(n);
  const complex rho_hat = rho - mu;
  if (std::abs(rho_hat) < kCoalesceSwitch) {
    const complex mid = 0.5 * (rho + mu);
    return -std::sin(mid * x) - mid * x * std::cos(mid * x);
  }
  return (-rho * std::sin(rho * x) + mu * std::sin(mu * x)) / rho_hat;
}

complex G_divided(double x, complex rho, complex theta, int n) {
  const double mu = model_mu(n);
  const complex rho_hat = rho - mu;
  if (std::abs(rho_hat) < kCoalesceSwitch) {
    const complex mid = 0.5 * (rho + mu);
    return dtilde_kernel_drho(x, mid, theta);
  }
  return (dtilde_kernel(x, rho, theta) - dtilde_kernel(x, mu, theta)) /
         rho_hat;
}

complex G_divided_dx(double x, complex rho, complex theta, int n) {
  return g_divided(x, rho, n) * std::cos(theta * x);
}

}  // namespace specmap
