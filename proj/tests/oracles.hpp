#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library under test.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace oracle {

using u64 = std::uint64_t;
using cplx = std::complex<double>;

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<u64> divisors(u64 n) {
  std::vector<u64> d;
  for (u64 k = 1; k * k <= n; ++k)
    if (n % k == 0) {
      d.push_back(k);
      if (k * k != n) d.push_back(n / k);
    }
  std::sort(d.begin(), d.end());
  return d;
}

// sum over ordered pairs of ((m,n)/[m,n])^alpha, straight from gcd
inline double gal_sum(const std::vector<u64>& v, double alpha) {
  long double s = 0;
  for (u64 a : v)
    for (u64 b : v) {
      const u64 g = std::gcd(a, b);
      const long double ratio = static_cast<long double>(g) / a * g / b;
      s += std::pow(ratio, static_cast<long double>(alpha));
    }
  return static_cast<double>(s);
}

inline double gal_subsum(const std::vector<u64>& v, double alpha) {
  long double s = 0;
  for (u64 m : v)
    for (u64 n : v)
      if (m % n == 0) s += std::pow(static_cast<long double>(n) / m, static_cast<long double>(alpha));
  return static_cast<double>(s);
}

inline std::vector<u64> random_set(std::mt19937_64& rng, std::size_t size, u64 max) {
  std::uniform_int_distribution<u64> d(1, max);
  std::vector<u64> v;
  while (v.size() < size) {
    const u64 x = d(rng);
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
  }
  std::sort(v.begin(), v.end());
  return v;
}

// Random divisor-closed set: union of the divisor sets of a few seeds.
inline std::vector<u64> random_divisor_closed(std::mt19937_64& rng, int seeds, u64 max) {
  std::uniform_int_distribution<u64> d(1, max);
  std::vector<u64> v;
  for (int i = 0; i < seeds; ++i)
    for (u64 x : divisors(d(rng))) v.push_back(x);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// log Gamma(z) for Re z > 0 (Lanczos, g = 7, n = 9)
inline cplx lgamma(cplx z) {
  static const double c[] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                             771.32342877765313,   -176.61502916214059,   12.507343278686905,
                             -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) return std::log(M_PI / std::sin(M_PI * z)) - lgamma(1.0 - z);
  z -= 1.0;
  cplx x = c[0];
  for (int i = 1; i < 9; ++i) x += c[i] / (z + static_cast<double>(i));
  const cplx t = z + 7.5;
  return 0.5 * std::log(2 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// W_nu(x) from its Mellin-Barnes form on Re s = 1:
// W(x) = 1/(2 pi i) int Gamma(s/2 + 1/4 + nu/2)^2 / Gamma(1/4 + nu/2)^2 x^{-s} ds / s.
inline double w_contour(double x, int nu) {
  const double c = 1.0, a = 0.25 + 0.5 * nu;
  const double lg0 = std::lgamma(a);
  auto f = [&](double y) {
    const cplx s(c, y);
    const cplx v = std::exp(2.0 * lgamma(0.5 * s + a) - 2 * lg0 - s * std::log(x)) / s;
    return v.real();
  };
  using boost::math::quadrature::gauss_kronrod;
  double total = 0;
  for (double lo = 0; lo < 160; lo += 4) total += gauss_kronrod<double, 61>::integrate(f, lo, lo + 4, 0, 1e-14);
  return total / M_PI;
}

// Hurwitz zeta(1/2, a), a in (0, 1], by Euler-Maclaurin in long double.
inline long double hurwitz_half(long double a) {
  using L = long double;
  const L s = 0.5L;
  const int N = 60;
  L sum = 0;
  for (int n = 0; n < N; ++n) sum += 1 / std::sqrt(n + a);
  const L x = N + a;
  sum += std::pow(x, 1 - s) / (s - 1) + 0.5L * std::pow(x, -s);
  static const L B[] = {1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30, 5.0L / 66, -691.0L / 2730, 7.0L / 6};
  L poch = s, fact = 1, xp = std::pow(x, -s - 1);
  for (int k = 1; k <= 7; ++k) {
    fact *= (2 * k - 1) * (2 * k);
    sum += B[k - 1] / fact * poch * xp;
    poch *= (s + 2 * k - 1) * (s + 2 * k);
    xp /= x * x;
  }
  return sum;
}

// L(1/2, chi) = q^{-1/2} sum_a chi(a) zeta(1/2, a/q) for a character given
// by its values on 1..q-1.
inline cplx l_half(const std::vector<cplx>& chi) {
  const auto q = static_cast<long double>(chi.size() + 1);
  std::complex<long double> s = 0;
  for (std::size_t a = 1; a <= chi.size(); ++a)
    s += std::complex<long double>(chi[a - 1].real(), chi[a - 1].imag()) * hurwitz_half(a / q);
  s /= std::sqrt(q);
  return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

// zeta(s) at 50 digits: Euler-Maclaurin with N = 60 + |t| and 20 corrections.
inline cplx zeta50(cplx s_in) {
  using R = boost::multiprecision::cpp_bin_float_50;
  using C = boost::multiprecision::cpp_complex_50;
  const C s(R(s_in.real()), R(s_in.imag()));
  const int N = 60 + static_cast<int>(std::abs(s_in.imag()));
  C sum = 0;
  for (int n = 1; n < N; ++n) sum += exp(-s * log(R(n)));
  const R x = N;
  const C xs = exp(-s * log(x));
  sum += xs * x / (s - R(1)) + xs / R(2);
  C poch = s;
  R fact = 1;
  C xp = xs / x;
  for (int k = 1; k <= 20; ++k) {
    fact *= R((2 * k - 1) * (2 * k));
    sum += boost::math::bernoulli_b2n<R>(k) / fact * poch * xp;
    poch *= (s + R(2 * k - 1)) * (s + R(2 * k));
    xp /= x * x;
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

// Hardy Z(t) = e^{i theta(t)} zeta(1/2 + it), real.
inline double hardy_z(double t) {
  const double theta = lgamma(cplx(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(M_PI);
  return (std::exp(cplx(0, theta)) * zeta50({0.5, t})).real();
}

}  // namespace oracle
