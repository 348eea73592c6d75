#include <cmath>

#include "galsum/dirichlet.hpp"
#include "galsum/error.hpp"
#include "galsum/numeric.hpp"

namespace galsum::dirichlet {

namespace {

double norm_const(int nu) {
  const double g = std::tgamma(0.25 + 0.5 * nu);
  return 4.0 / (g * g);
}

void check_nu(int nu) {
  if (nu != 0 && nu != 1) throw DomainError("nu must be 0 or 1");
}

// Bound for the outer tail past T >= 1 using K_0(z) <= sqrt(pi/(2z)) e^{-z}:
// int_T^inf t^{nu-1/2} K_0(2t) dt <= (sqrt(pi)/4) e^{-2T}.
double tail_bound(double T, int nu) { return norm_const(nu) * std::sqrt(M_PI) / 4.0 * std::exp(-2.0 * T); }

double cutoff(double x, int nu, double tol) {
  const double T = 0.5 * std::log(norm_const(nu) * std::sqrt(M_PI) / (4.0 * tol)) + 1.0;
  return std::max({T, x + 1.0, 1.0});
}

// t^{nu-1/2} K_0(2t)
double integrand(double t, int nu) { return (nu ? std::sqrt(t) : 1.0 / std::sqrt(t)) * inner_bessel(t); }

}  // namespace

double inner_bessel(double t, double rel_tol) {
  if (!(t > 0)) throw DomainError("inner_bessel: t > 0 required");
  // v = sqrt(t) e^{w/2} turns the v-integral into int_0^inf e^{-2t cosh w} dw,
  // whose trapezoid sums converge geometrically.
  const double W = std::acosh(std::max(1.0, 750.0 / (2.0 * t)));
  auto f = [t](double w) { return std::exp(-2.0 * t * std::cosh(w)); };
  double h = 0.5;
  double sum = 0.5 * f(0.0);
  for (double w = h; w <= W; w += h) sum += f(w);
  double prev = h * sum;
  for (int level = 0; level < 16; ++level) {
    h *= 0.5;
    for (double w = h; w <= W; w += 2 * h) sum += f(w);
    const double cur = h * sum;
    if (std::abs(cur - prev) <= rel_tol * cur) return cur;
    prev = cur;
  }
  throw AccuracyError("inner_bessel: trapezoid did not converge", prev, rel_tol);
}

double w_kernel_majorant(double x, int nu) {
  check_nu(nu);
  if (x < 1.0) return 1.0;
  return std::min(1.0, tail_bound(x, nu));
}

double w_kernel(double x, int nu, double tol) {
  check_nu(nu);
  if (!(x >= 0)) throw DomainError("w_kernel: x >= 0 required");
  if (!(tol >= 1e-12)) throw DomainError("w_kernel: tol >= 1e-12 required");
  const double c = norm_const(nu);
  const double T = cutoff(x, nu, tol / 4);
  // t = w^2 removes the t^{-1/2} endpoint singularity.
  auto g = [nu](double w) { return w > 0 ? 2.0 * w * integrand(w * w, nu) : 0.0; };
  QuadOptions opt;
  opt.abs_tol = tol / (4.0 * c);
  opt.rel_tol = 0.0;
  auto r = integrate(g, std::sqrt(x), std::sqrt(T), opt);
  const double err = c * r.error + tail_bound(T, nu);
  if (err > tol) throw AccuracyError("w_kernel: quadrature error above tolerance", err, tol);
  return std::clamp(c * r.value, 0.0, 1.0);
}

std::vector<double> w_table(std::uint64_t q, int nu, std::uint64_t n_max, double tol) {
  check_nu(nu);
  if (q == 0) throw DomainError("w_table: q >= 1 required");
  const double step = M_PI / static_cast<double>(q);
  const double T = cutoff(0.0, nu, std::min(tol, 1e-12) * 1e-3);
  const auto n_end = static_cast<std::uint64_t>(std::ceil(T / step));
  const std::uint64_t top = std::max(n_max, n_end);
  std::vector<double> w(top + 1, 0.0);
  const double c = norm_const(nu);
  const auto& gl = gauss_legendre(20);
  // Backward accumulation of segment integrals from x = pi n_end / q.
  CompensatedSum acc;
  for (std::uint64_t n = n_end; n-- > 1;) {
    const double a = step * n, b = a + step, mid = 0.5 * (a + b), half = 0.5 * step;
    double seg = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) seg += gl.weights[i] * integrand(mid + half * gl.nodes[i], nu);
    acc.add(c * half * seg);
    if (n <= top) w[n] = std::min(1.0, acc.value());
  }
  w[0] = 1.0;
  w.resize(n_max + 1);
  return w;
}

}  // namespace galsum::dirichlet
