#include <cmath>

#include "galsum/error.hpp"
#include "galsum/numeric.hpp"
#include "galsum/zeta.hpp"
#include "tails.hpp"

namespace galsum::zeta {

namespace {

// zeta at height |Im w| with N ~ |Im w| head terms; doubled until the
// remainder is negligible against `tol`.
cplx zeta_fast(cplx w, double tol) {
  std::uint64_t N = std::max<std::uint64_t>(50, static_cast<std::uint64_t>(std::abs(w.imag())) + 1);
  for (int it = 0; it < 12; ++it, N *= 2) {
    auto z = zeta_em(w, N, 7);
    if (z.remainder_bound <= tol) return z.value;
  }
  throw AccuracyError("lemma53: zeta remainder above tolerance", 0, tol);
}

// c_n = sum_{kl = n} k^{-s} l^{-conj s}
std::vector<cplx> dirichlet_coefficients(cplx s, std::size_t X) {
  std::vector<cplx> c(X + 1, 0.0);
  for (std::size_t k = 1; k <= X; ++k) {
    const cplx ks = std::exp(-s * std::log(static_cast<double>(k)));
    for (std::size_t l = 1; k * l <= X; ++l)
      c[k * l] += ks * std::exp(-std::conj(s) * std::log(static_cast<double>(l)));
  }
  return c;
}

}  // namespace

IdentityCheck lemma53_check(cplx s, TestFunction F, const KernelParams& p, double tol) {
  p.validate();
  const double sig = s.real(), t = s.imag();
  if (!(sig > 0 && sig < 1)) throw DomainError("lemma53: Re s must lie in (0, 1)");
  if (t == 0) throw DomainError("lemma53: Im s != 0 required");
  if (!(tol > 0)) throw DomainError("lemma53: tol > 0 required");

  auto Fz = [&](cplx z) { return F == TestFunction::gaussian ? Phi(z) : K(p, z); };
  auto Fhat = [&](double xi) { return F == TestFunction::gaussian ? Phi_hat(xi) : K_hat(p, xi); };
  IdentityCheck out;

  // --- right-hand side: finite Dirichlet series plus the two pole terms
  std::size_t X;
  if (F == TestFunction::K) {
    X = static_cast<std::size_t>(std::floor(std::exp(2 * p.eps * p.logT()) * (1 + 1e-12)));
  } else {
    // F^(log n) n^{1 - sigma} log n below tol/1e4 (d(n) n^{-sigma} <= n^{1 - sigma} log n-ish)
    X = 2;
    while (Phi_hat(std::log(static_cast<double>(X))) * std::pow(static_cast<double>(X), 2.0 - sig) > tol * 1e-4) X *= 2;
  }
  if (X > 50'000'000) throw CapacityError("lemma53: series cutoff too large");
  {
    const auto c = dirichlet_coefficients(s, X);
    ComplexCompensatedSum ser;
    for (std::size_t n = 1; n <= X; ++n) {
      const double w = Fhat(std::log(static_cast<double>(n)));
      if (w != 0) ser.add(w * c[n]);
    }
    out.series = ser.value();
    out.series_terms = X;
  }
  const cplx I(0, 1);
  const cplx z1 = zeta({1.0, -2 * t}, 1e-15).value, z2 = zeta({1.0, 2 * t}, 1e-15).value;
  out.correction = 2 * M_PI * z1 * Fz(I * s - I) + 2 * M_PI * z2 * Fz(I * std::conj(s) - I);
  out.rhs = out.series - out.correction;

  // --- left-hand side on the real line
  auto g = [&](double u) {
    return zeta_fast(s + I * u, tol * 1e-4) * std::conj(zeta_fast(s - I * u, tol * 1e-4)) * Fz(u).real();
  };
  QuadOptions opt;
  opt.rel_tol = 0;
  auto panels = [&](double U, double width) {
    ComplexCompensatedSum acc;
    double err = 0;
    const int n = static_cast<int>(std::ceil(U / width));
    opt.abs_tol = tol * 1e-2 / (2 * n);
    for (int i = 0; i < n; ++i) {
      const double a = i * width, b = std::min(U, a + width);
      auto r1 = integrate_complex(g, a, b, opt);
      auto r2 = integrate_complex(g, -b, -a, opt);
      acc.add(r1.value);
      acc.add(r2.value);
      err += r1.error + r2.error;
    }
    return std::pair{acc.value(), err};
  };

  if (F == TestFunction::gaussian) {
    // Gaussian tail against |zeta(sigma + iv)| << (1 + |v|)^{1 - sigma}
    double U = 4;
    while (std::exp(-0.5 * U * U) * std::pow(2 + std::abs(t) + U, 2 * (1 - sig)) * 10 > tol * 1e-2) U += 0.5;
    auto [v, e] = panels(U, 1.0);
    out.lhs = v;
    out.cutoff_U = U;
    out.lhs_error = e;
  } else {
    // K decays only like u^{-2}: the part beyond U is modelled by the
    // Dirichlet polynomial sum_{n <= Y} c_n n^{-iu}, whose tail integrals
    // against K are exact. Two cutoffs give the error estimate.
    const auto Y = static_cast<std::size_t>(std::ceil(std::exp(2 * p.eps * p.logT() + 1)));
    const auto c = dirichlet_coefficients(s, Y);
    auto tail = [&](double U) {
      ComplexCompensatedSum acc;
      for (std::size_t n = 1; n <= Y; ++n)
        acc.add(2.0 * c[n] * detail::K_cos_tail(p, std::log(static_cast<double>(n)), U));
      return acc.value();
    };
    // Cutoff doubles from 100 until consecutive estimates agree to tol/4.
    double U = 100;
    auto [inner, qerr] = panels(U, 1.0);
    cplx prev = inner + tail(U);
    ComplexCompensatedSum acc;
    acc.add(inner);
    for (;;) {
      opt.abs_tol = tol * 1e-2 / (4 * U);
      for (double a = U; a < 2 * U; a += 1.0) {
        auto r1 = integrate_complex(g, a, a + 1, opt);
        auto r2 = integrate_complex(g, -a - 1, -a, opt);
        acc.add(r1.value);
        acc.add(r2.value);
        qerr += r1.error + r2.error;
      }
      U *= 2;
      const cplx cur = acc.value() + tail(U);
      out.lhs_error = std::abs(cur - prev) + qerr;
      out.lhs = cur;
      out.cutoff_U = U;
      if (out.lhs_error < tol / 4 || U >= 800) break;
      prev = cur;
    }
  }
  out.abs_diff = std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace galsum::zeta
