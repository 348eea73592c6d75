#include <algorithm>
#include <cmath>

#include "galsum/error.hpp"
#include "galsum/numeric.hpp"
#include "galsum/zeta.hpp"

namespace galsum::zeta {

namespace {

// B_2, B_4, ..., B_16
constexpr double kBernoulli[] = {1.0 / 6,     -1.0 / 30, 1.0 / 42,       -1.0 / 30,
                                 5.0 / 66,    -691.0 / 2730, 7.0 / 6,    -3617.0 / 510};
constexpr int kMaxBernoulli = 7;
constexpr std::uint64_t kMaxTerms = 1ull << 24;

double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

ZetaValue zeta_em(cplx s, std::uint64_t N, int m) {
  if (std::abs(s - 1.0) < 1e-300) throw DomainError("zeta: pole at s = 1");
  if (s.real() <= -5.0) throw DomainError("zeta_em: Re s > -5 required");
  m = std::clamp(m, 1, kMaxBernoulli);
  N = std::max<std::uint64_t>(N, 2);
  const double sig = s.real(), t = s.imag();

  ComplexCompensatedSum head;
  for (std::uint64_t n = 1; n < N; ++n) {
    const double ln = std::log(static_cast<double>(n));
    const double mag = std::exp(-sig * ln), ang = -t * ln;
    head.add({mag * std::cos(ang), mag * std::sin(ang)});
  }
  const double lN = std::log(static_cast<double>(N));
  const cplx Ns = std::exp(-s * lN);  // N^{-s}
  cplx v = head.value() + Ns * static_cast<double>(N) / (s - 1.0) + 0.5 * Ns;

  // T_k = B_2k/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
  cplx poch = s;  // s(s+1)...(s+2k-2)
  cplx Npow = Ns / static_cast<double>(N);
  for (int k = 1; k <= m; ++k) {
    v += kBernoulli[k - 1] / factorial(2 * k) * poch * Npow;
    poch *= (s + (2.0 * k - 1)) * (s + 2.0 * k);
    Npow /= static_cast<double>(N) * static_cast<double>(N);
  }
  // |R_m| <= |next term| |s + 2m + 1| / (sigma + 2m + 1)
  const double next = std::abs(kBernoulli[m] / factorial(2 * m + 2) * poch * Npow);
  ZetaValue z;
  z.value = v;
  z.terms = N;
  z.remainder_bound = next * std::abs(s + (2.0 * m + 1)) / (sig + 2.0 * m + 1);
  return z;
}

ZetaValue zeta(cplx s, double tol) {
  std::uint64_t N = std::max<std::uint64_t>(50, static_cast<std::uint64_t>(std::ceil(2 * std::abs(s.imag()))));
  for (;;) {
    auto z = zeta_em(s, N, 6);
    if (z.remainder_bound <= tol) return z;
    if (2 * N > kMaxTerms)
      throw AccuracyError("zeta: tolerance unreachable at the term cap", z.remainder_bound, tol);
    N *= 2;
  }
}

cplx zeta_critical(double t, double tol) {
  if (!(std::abs(t) <= 1e6)) throw DomainError("zeta_critical: |t| <= 1e6 required");
  if (!(tol >= 1e-10)) throw DomainError("zeta_critical: tol >= 1e-10 required");
  return zeta({0.5, t}, tol).value;
}

void KernelParams::validate() const {
  if (!(T > 1)) throw ValidationError("T > 1 required");
  if (!(eps > 0 && eps < 1)) throw ValidationError("eps must lie in (0, 1)");
  if (!(beta >= 0 && beta < 1)) throw ValidationError("beta must lie in [0, 1)");
}

double KernelParams::logT() const { return std::log(T); }

ZScan z_beta_max(const KernelParams& p, double grid_step, double tol) {
  p.validate();
  if (!(grid_step > 0 && grid_step <= 0.05)) throw ValidationError("grid_step must lie in (0, 0.05]");
  const double lo = std::pow(p.T, p.beta), hi = p.T;
  if (!(lo < hi)) throw ValidationError("T^beta < T required");
  auto f = [&](double x) { return std::abs(zeta_critical(x, tol)); };

  std::vector<double> xs;
  for (std::uint64_t k = 0;; ++k) {
    const double x = lo + k * grid_step;
    if (x >= hi) break;
    xs.push_back(x);
  }
  xs.push_back(hi);
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = f(xs[i]);
  const auto i = static_cast<std::size_t>(std::max_element(ys.begin(), ys.end()) - ys.begin());
  ZScan out{ys[i], xs[i], xs.size()};

  // Parabolic step through the three points around the argmax, then golden
  // section inside the bracket.
  if (i > 0 && i + 1 < xs.size()) {
    double a = xs[i - 1], b = xs[i + 1];
    const double y0 = ys[i - 1], y1 = ys[i], y2 = ys[i + 1];
    const double den = y0 - 2 * y1 + y2;
    if (den < 0) {
      const double xv = xs[i] + 0.5 * grid_step * (y0 - y2) / den;
      if (xv > a && xv < b) {
        const double yv = f(xv);
        if (yv > out.value) out = {yv, xv, out.grid_points};
      }
    }
    const double g = 0.5 * (std::sqrt(5.0) - 1);
    double c = b - g * (b - a), d = a + g * (b - a), fc = f(c), fd = f(d);
    for (int it = 0; it < 40 && b - a > 1e-12; ++it) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - g * (b - a);
        fc = f(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + g * (b - a);
        fd = f(d);
      }
      if (fc > out.value) out = {fc, c, out.grid_points};
      if (fd > out.value) out = {fd, d, out.grid_points};
    }
  }
  return out;
}

}  // namespace galsum::zeta
