#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "galsum/error.hpp"
#include "galsum/gal.hpp"
#include "galsum/numeric.hpp"

namespace galsum::engine {

namespace {

void check_prime(std::uint64_t p) {
  if (!nt::is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
}

void check_increasing(const std::vector<std::uint32_t>& v, const char* name) {
  if (v.empty()) throw DomainError(std::string(name) + " must be nonempty");
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] <= v[i - 1]) throw DomainError(std::string(name) + " must be strictly increasing");
}

}  // namespace

double sigma_p(const std::vector<std::uint32_t>& nu_m, const std::vector<std::uint32_t>& nu_n,
               std::uint64_t p) {
  check_prime(p);
  check_increasing(nu_m, "nu_m");
  check_increasing(nu_n, "nu_n");
  const double lp = std::log(static_cast<double>(p));
  CompensatedSum s;
  for (auto a : nu_m)
    for (auto b : nu_n) s.add(std::exp(-0.5 * lp * std::abs(static_cast<double>(a) - b)));
  return s.value();
}

double sigma_p_star(std::uint32_t r, std::uint32_t s, std::uint64_t p) {
  check_prime(p);
  if (r > s) std::swap(r, s);
  const double q = std::sqrt(static_cast<double>(p)) - 1.0;
  const double base = r + 1.0;
  if (s == r) return base + 2.0 * r / q;
  if (s == r + 1) return base + (2.0 * r + 1.0) / q;
  return base + (2.0 * r + 2.0) / q;
}

double sigma_p_plus(std::uint32_t r, std::uint32_t s, std::uint64_t p) {
  check_prime(p);
  if (r > s) std::swap(r, s);
  // u diagonal pairs, v pairs at distance 1, w pairs at distance 2 with one
  // exponent zero; h is g1(p) on the last two classes.
  std::uint64_t u = 0, v = 0, w = 0;
  for (std::uint32_t a = 0; a <= r; ++a)
    for (std::uint32_t b = 0; b <= s; ++b) {
      const auto d = a > b ? a - b : b - a;
      if (d == 0)
        ++u;
      else if (d == 1)
        ++v;
      else if (d == 2 && std::min(a, b) == 0)
        ++w;
    }
  return u + (v + w) / (std::sqrt(static_cast<double>(p)) - 1.0);
}

}  // namespace galsum::engine
