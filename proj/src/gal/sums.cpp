#include <cmath>
#include <map>

#include "galsum/error.hpp"
#include "galsum/gal.hpp"
#include "galsum/numeric.hpp"
#include "prepared.hpp"

namespace galsum::engine {

namespace {

constexpr std::size_t kMaxDivisorEntries = 20'000'000;

void require_nonempty(const IntegerSet& M) {
  if (M.empty()) throw DomainError("Gal sum of the empty set");
}

// Sum_d J(d) (Sum_{d|m} m^-a)^2 with J(p^k) = p^{2ak}(1 - p^{-2a}), written
// as prod_{p|d}(1-p^{-2a}) (Sum_{d|m} (d/m)^a)^2 so nothing overflows.
template <class Key, class KeyOf>
double phi_identity_impl(const IntegerSet& M, double a, KeyOf key_of) {
  struct Entry {
    CompensatedSum acc;
    double coef = 1.0;
  };
  std::map<Key, Entry> lattice;
  std::size_t visited = 0;
  for (const auto& m : M) {
    const auto& f = m.factors();
    const std::size_t r = f.size();
    std::vector<std::uint32_t> ex(r, 0);
    std::vector<double> logp(r);
    for (std::size_t i = 0; i < r; ++i) logp[i] = std::log(static_cast<double>(f[i].p));
    // odometer over exponent vectors 0 <= ex <= e
    while (true) {
      if (++visited > kMaxDivisorEntries)
        throw CapacityError("phi_identity: divisor lattice too large; use pairwise");
      double gap = 0.0, coef = 1.0;
      for (std::size_t i = 0; i < r; ++i) {
        gap += (f[i].e - ex[i]) * logp[i];
        if (ex[i]) coef *= -std::expm1(-2.0 * a * logp[i]);
      }
      auto& entry = lattice[key_of(f, ex)];
      entry.coef = coef;
      entry.acc.add(std::exp(-a * gap));
      std::size_t i = 0;
      while (i < r && ex[i] == f[i].e) ex[i++] = 0;
      if (i == r) break;
      ++ex[i];
    }
  }
  CompensatedSum s;
  for (auto& [k, entry] : lattice) {
    const double v = entry.acc.value();
    s.add(entry.coef * v * v);
  }
  return s.value();
}

}  // namespace

double gal_sum_real(const IntegerSet& M, double alpha) {
  require_nonempty(M);
  detail::Prepared P(M);
  CompensatedSum s;
  const std::size_t n = M.size();
  for (std::size_t i = 0; i < n; ++i) {
    s.add(1.0);
    for (std::size_t j = i + 1; j < n; ++j) s.add(2.0 * std::exp(-alpha * P.log_ratio(i, j)));
  }
  return s.value();
}

double gal_sum(const IntegerSet& M, GalExponent alpha, GalAlgorithm algo) {
  require_nonempty(M);
  if (algo == GalAlgorithm::pairwise) return gal_sum_real(M, alpha.value());
  if (!alpha.twice_integral())
    throw UnsupportedAlgorithm("phi_identity requires 2*alpha to be an integer (alpha = " +
                               alpha.str() + ")");
  const double a = alpha.value();
  bool small = true;
  for (auto& m : M)
    if (!m.to_u64()) small = false;
  using Ex = std::vector<std::uint32_t>;
  using F = std::vector<nt::PrimePower>;
  if (small) {
    return phi_identity_impl<std::uint64_t>(M, a, [](const F& f, const Ex& ex) {
      std::uint64_t d = 1;
      for (std::size_t i = 0; i < f.size(); ++i)
        for (std::uint32_t k = 0; k < ex[i]; ++k) d *= f[i].p;
      return d;
    });
  }
  return phi_identity_impl<BigInt>(M, a, [](const F& f, const Ex& ex) {
    BigInt d = 1;
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::uint32_t k = 0; k < ex[i]; ++k) d *= f[i].p;
    return d;
  });
}

double gal_sum_weighted(const IntegerSet& M, const WeightDescriptor& g) {
  require_nonempty(M);
  g.validate();
  CompensatedSum s;
  const std::size_t n = M.size();
  for (std::size_t i = 0; i < n; ++i) {
    s.add(1.0);  // g(1) = 1
    for (std::size_t j = i + 1; j < n; ++j) {
      auto [gcd, lcm] = nt::gcd_lcm(M[i], M[j]);
      s.add(2.0 * g(lcm.divided_by(gcd)));
    }
  }
  return s.value();
}

double gal_sum_weighted_plus(const IntegerSet& M, const WeightDescriptor& g) {
  require_nonempty(M);
  g.validate();
  CompensatedSum s;
  const std::size_t n = M.size();
  for (std::size_t i = 0; i < n; ++i) {
    s.add(1.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      auto gcd = nt::gcd_lcm(M[i], M[j]).first;
      s.add(2.0 * g(M[i].divided_by(gcd)) * g(M[j].divided_by(gcd)));
    }
  }
  return s.value();
}

double gal_subsum(const IntegerSet& M, GalExponent alpha) {
  require_nonempty(M);
  detail::Prepared P(M);
  const double a = alpha.value();
  CompensatedSum s;
  const std::size_t n = M.size();
  // Elements are sorted, so n | m with n != m forces n to come first.
  for (std::size_t j = 0; j < n; ++j) {
    s.add(1.0);
    for (std::size_t i = 0; i < j; ++i)
      if (P.divides(i, j)) s.add(std::exp(-a * P.log_ratio(i, j)));
  }
  return s.value();
}

GalMatrix build_gal_matrix(const IntegerSet& M, GalExponent alpha) {
  require_nonempty(M);
  if (M.size() > 8192) throw CapacityError("build_gal_matrix: order too large");
  detail::Prepared P(M);
  const double a = alpha.value();
  GalMatrix G(M.size());
  for (std::size_t i = 0; i < M.size(); ++i) {
    G(i, i) = 1.0;
    for (std::size_t j = i + 1; j < M.size(); ++j) G(i, j) = G(j, i) = std::exp(-a * P.log_ratio(i, j));
  }
  return G;
}

}  // namespace galsum::engine
