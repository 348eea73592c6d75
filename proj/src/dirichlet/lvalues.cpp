#include <cmath>

#include "galsum/error.hpp"
#include "galsum/numeric.hpp"
#include "internal.hpp"

namespace galsum::dirichlet {

namespace detail {

double series_tail(std::uint64_t q, int nu, std::uint64_t n0) {
  const double step = M_PI / static_cast<double>(q);
  if (step * (n0 + 1) < 1.0) return INFINITY;
  // 2 sum_{n > n0} d(n)/sqrt(n) W(pi n/q) <= 4 sum_{n > n0} W_maj(pi n/q), geometric.
  const double g = std::tgamma(0.25 + 0.5 * nu);
  const double c = std::sqrt(M_PI) / (g * g);
  return 4.0 * c * std::exp(-2.0 * step * (n0 + 1)) / (-std::expm1(-2.0 * step));
}

std::uint64_t effective_cutoff(std::uint64_t q, int nu, double budget) {
  std::uint64_t n = std::max<std::uint64_t>(q, 1);
  while (series_tail(q, nu, n) > budget) n += std::max<std::uint64_t>(q / 8, 1);
  return n;
}

cplx half_line_series(const CharacterTable& t, std::size_t j, const std::vector<double>& W,
                      std::uint64_t n_max) {
  const auto L = static_cast<std::int64_t>(t.exponent());
  std::vector<std::int64_t> ph(n_max + 1, -1);
  for (std::uint64_t n = 1; n <= n_max; ++n) ph[n] = t.phase(j, static_cast<std::int64_t>(n));
  std::vector<cplx> a(n_max + 1, 0.0);
  for (std::uint64_t k = 1; k <= n_max; ++k) {
    if (ph[k] < 0) continue;
    for (std::uint64_t l = 1; k * l <= n_max; ++l)
      if (ph[l] >= 0) a[k * l] += t.root(static_cast<std::uint64_t>(((ph[k] - ph[l]) % L + L) % L));
  }
  ComplexCompensatedSum s;
  for (std::uint64_t n = 1; n <= n_max && n < W.size(); ++n)
    if (W[n] != 0.0) s.add(a[n] * (2.0 * W[n] / std::sqrt(static_cast<double>(n))));
  return s.value();
}

LHalf l_half_sq_with(const CharacterTable& t, std::size_t j, double tol, const std::vector<double>& W,
                     std::uint64_t x_used) {
  LHalf out;
  const std::uint64_t q = t.modulus();
  const int nu = t.parity(j);
  out.x_max = l_half_truncation(q, tol);
  out.x_used = std::min(x_used, out.x_max);
  out.tail_bound = series_tail(q, nu, out.x_used);
  if (out.tail_bound > tol) throw AccuracyError("l_half_sq: truncation tail above tolerance", out.tail_bound, tol);
  const cplx v = half_line_series(t, j, W, out.x_used);
  out.raw = v.real();
  out.imag = v.imag();
  out.value = std::max(out.raw, 0.0);
  return out;
}

}  // namespace detail

std::uint64_t l_half_truncation(std::uint64_t q, double tol) {
  const double lt = std::log(1.0 / tol);
  return static_cast<std::uint64_t>(std::ceil(std::max(q * lt * lt, 64.0 * q)));
}

LHalf l_half_sq(const CharacterTable& t, std::size_t j, double tol) {
  if (!t.prime_modulus()) throw DomainError("l_half_sq: prime modulus required");
  if (t.principal(j)) throw DomainError("l_half_sq: principal character");
  if (!(tol > 0 && tol < 1)) throw DomainError("l_half_sq: tol must lie in (0, 1)");
  const int nu = t.parity(j);
  const auto n0 = std::min(detail::effective_cutoff(t.modulus(), nu, tol * 1e-3),
                           l_half_truncation(t.modulus(), tol));
  const auto W = w_table(t.modulus(), nu, n0, tol);
  return detail::l_half_sq_with(t, j, tol, W, n0);
}

}  // namespace galsum::dirichlet
