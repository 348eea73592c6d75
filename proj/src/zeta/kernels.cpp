#include <cmath>

#include "galsum/error.hpp"
#include "galsum/numeric.hpp"
#include "galsum/zeta.hpp"
#include "tails.hpp"

namespace galsum::zeta {

KernelKind parse_kernel(const std::string& name) {
  if (name == "Phi") return KernelKind::Phi;
  if (name == "Phi_hat") return KernelKind::Phi_hat;
  if (name == "K") return KernelKind::K;
  if (name == "K_hat") return KernelKind::K_hat;
  throw ValidationError("unknown kernel '" + name + "' (Phi, Phi_hat, K, K_hat)");
}

std::string kernel_name(KernelKind k) {
  switch (k) {
    case KernelKind::Phi: return "Phi";
    case KernelKind::Phi_hat: return "Phi_hat";
    case KernelKind::K: return "K";
    case KernelKind::K_hat: return "K_hat";
  }
  return "?";
}

cplx Phi(cplx z) { return std::exp(-0.5 * z * z); }

double Phi_hat(double xi) { return std::sqrt(2 * M_PI) * std::exp(-0.5 * xi * xi); }

cplx K(const KernelParams& p, cplx z) {
  const double a = p.eps * p.logT();
  if (std::abs(z) < 1e-8) {
    // sin^2(az)/(a z)^2 = 1 - (az)^2/3 + ...
    const cplx w = a * z;
    return a / M_PI * (1.0 - w * w / 3.0);
  }
  const cplx sn = std::sin(a * z);
  return sn * sn / (M_PI * a * z * z);
}

double K_hat(const KernelParams& p, double xi) {
  return std::max(0.0, 1.0 - std::abs(xi) / (2 * p.eps * p.logT()));
}

double kernel(const KernelParams& p, KernelKind which, double x) {
  p.validate();
  switch (which) {
    case KernelKind::Phi: return Phi(x).real();
    case KernelKind::Phi_hat: return Phi_hat(x);
    case KernelKind::K: return K(p, x).real();
    case KernelKind::K_hat: return K_hat(p, x);
  }
  return 0;
}

namespace detail {

double sin_tail(double x) {
  // int_x^inf sin(v)/v dv = f(x) cos x + g(x) sin x with the Laplace
  // transforms f = int e^{-xt}/(1+t^2), g = int t e^{-xt}/(1+t^2).
  if (x <= 0) throw DomainError("sin_tail: x > 0 required");
  QuadOptions opt;
  opt.abs_tol = 1e-15;
  opt.rel_tol = 1e-13;
  const double top = 60.0 / x;
  auto f = integrate([x](double t) { return std::exp(-x * t) / (1 + t * t); }, 0, top, opt).value;
  auto g = integrate([x](double t) { return t * std::exp(-x * t) / (1 + t * t); }, 0, top, opt).value;
  return f * std::cos(x) + g * std::sin(x);
}

double cos_over_u2_tail(double c, double U) {
  c = std::abs(c);
  if (c == 0) return 1.0 / U;
  return std::cos(c * U) / U - c * sin_tail(c * U);
}

double K_cos_tail(const KernelParams& p, double lambda, double U) {
  // K(u) = (1 - cos 2au) / (2 pi a u^2)
  const double a = p.eps * p.logT();
  return (cos_over_u2_tail(lambda, U) - 0.5 * cos_over_u2_tail(lambda + 2 * a, U) -
          0.5 * cos_over_u2_tail(lambda - 2 * a, U)) /
         (2 * M_PI * a);
}

}  // namespace detail

double fourier_numeric(const KernelParams& p, KernelKind F, double xi, double tol) {
  p.validate();
  QuadOptions opt;
  opt.abs_tol = tol / 100;
  opt.rel_tol = 0;
  if (F == KernelKind::Phi) {
    const double U = std::sqrt(2 * std::log(1 / tol)) + 4;
    CompensatedSum s;
    for (double lo = 0; lo < U; lo += 1.0)
      s.add(integrate([xi](double t) { return std::exp(-0.5 * t * t) * std::cos(xi * t); }, lo, lo + 1, opt).value);
    return 2 * s.value();
  }
  if (F != KernelKind::K) throw DomainError("fourier_numeric: F must be Phi or K");
  // Quadrature on [0, U] in unit panels; the tail beyond U is exact.
  const double U = 40.0;
  CompensatedSum s;
  for (double lo = 0; lo < U; lo += 1.0)
    s.add(integrate([&](double u) { return K(p, u).real() * std::cos(xi * u); }, lo, lo + 1, opt).value);
  return 2 * (s.value() + detail::K_cos_tail(p, xi, U));
}

}  // namespace galsum::zeta
