#include <algorithm>
#include <cmath>

#include "galsum/error.hpp"
#include "galsum/extremal.hpp"
#include "galsum/numeric.hpp"

namespace galsum::extremal {

namespace {
const double kLog2 = std::log(2.0);

double sum_B_term(double k) { return 1.0 / (k * k * (k + 1) * (k + 1) * std::log1p(1.0 / k)); }
}  // namespace

IntegerSet divisor_set(const FactoredInt& D) { return IntegerSet(D.divisors()); }

double divisor_set_sum(const FactoredInt& D, GalExponent alpha) {
  const double a = alpha.value();
  double tau = 1.0, prod = 1.0;
  for (auto [p, mu] : D.factors()) {
    const double pa = std::exp(-a * std::log(static_cast<double>(p)));  // p^-a
    CompensatedSum inner;
    double pk = 1.0;
    for (std::uint32_t k = 0; k < mu; ++k) {
      inner.add((1.0 - static_cast<double>(k) / mu) * pk);
      pk *= pa;
    }
    prod *= 1.0 + 2.0 * mu / ((1.0 + mu) * 1.0) * pa * inner.value();
    tau *= mu + 1.0;
  }
  return tau * prod;
}

DivisorBounds divisor_set_bounds(const FactoredInt& D) {
  double tau = 1.0, e42 = 0.0, s = 0.0, damp = 1.0;
  for (auto [p, mu] : D.factors()) {
    const double sp = std::sqrt(static_cast<double>(p));
    tau *= mu + 1.0;
    e42 += 2.0 * mu / ((1.0 + mu) * (sp - 1.0));
    s += 1.0 / sp;
    damp *= 1.0 + 1.0 / (2.0 * p);
  }
  return {tau * std::exp(e42), tau * std::exp(s) / damp, tau * std::exp(s)};
}

ConstantB constant_B(std::uint64_t terms) {
  if (terms < 1) throw DomainError("constant_B: terms >= 1 required");
  CompensatedSum s;
  for (std::uint64_t k = 1; k <= terms; ++k) s.add(sum_B_term(static_cast<double>(k)));
  const double S = s.value();
  // With 1/(k+1) < log(1+1/k) < 2/(2k+1), the k-th term lies between
  // 1/(k+1)^3 and 1/(2k^2) - 1/(2(k+1)^2); both tails are explicit.
  const double K = static_cast<double>(terms);
  const double lo = S + 1.0 / (2.0 * (K + 2) * (K + 2));
  const double hi = S + 1.0 / (2.0 * (K + 1) * (K + 1));
  return {4.0 * std::sqrt(S), 4.0 * std::sqrt(lo), 4.0 * std::sqrt(hi)};
}

SqrtPrimeSum sqrt_prime_sum(double y) {
  if (!(y >= 2.0)) throw DomainError("sqrt_prime_sum: y >= 2 required");
  if (y > 1e11) throw CapacityError("sqrt_prime_sum: y too large for a sieve");
  CompensatedSum s;
  for (auto p : nt::sieve_primes(static_cast<std::uint64_t>(std::floor(y))))
    s.add(1.0 / std::sqrt(static_cast<double>(p)));
  const double main = 2.0 * std::sqrt(y) / std::log(y);
  return {s.value(), s.value() / main};
}

double profile_r(int k) {
  const double v = k * (k + 1.0) * std::log1p(1.0 / k) / (2.0 * kLog2);
  return v * v;
}

ExponentProfile optimal_profile(std::uint64_t N) {
  if (N < 16) throw DomainError("optimal_profile: N >= 16 required");
  ExponentProfile prof;
  prof.lambda = 1.0 / (4.0 * kLog2);
  const double L1 = std::log(static_cast<double>(N)), L2 = std::log(L1);

  constexpr int kSeriesTerms = 10'000;
  CompensatedSum c1, c2;
  for (int k = 1; k <= kSeriesTerms; ++k) {
    const double r = profile_r(k);
    c1.add(1.0 / (k * (k + 1.0) * std::sqrt(r)));
    c2.add(std::log1p(1.0 / k) / r);
  }
  prof.C1 = c1.value();
  prof.C2 = c2.value();
  prof.B_ratio = 4.0 * prof.C1 / std::sqrt(prof.C2);
  prof.predicted_log_gamma = prof.B_ratio * std::sqrt(L1 / L2);

  auto K_of = [](double y) {
    const double ly2 = std::log(y) * std::log(y);
    int k = 1;
    while (profile_r(k) <= ly2) ++k;
    return k;
  };
  auto C2_of = [](int K) {
    CompensatedSum s;
    for (int k = 1; k <= K; ++k) s.add(std::log(k + 1.0) * (1.0 / profile_r(k) - 1.0 / profile_r(k + 1)));
    return s.value();
  };

  // y <- log N log y / C2(K(y))
  double y = std::max(3.0, L1 * L2 / prof.C2);
  for (int it = 1; it <= 64; ++it) {
    prof.fixed_point_iterations = it;
    const double next = std::max(3.0, L1 * std::log(y) / C2_of(K_of(y)));
    const double rel = std::abs(next - y) / y;
    y = next;
    if (rel < 1e-12) break;
  }

  auto build = [&](double yy, ExponentProfile& P) {
    P.y = yy;
    P.K = K_of(yy);
    P.C2_K = C2_of(P.K);
    P.r.clear();
    for (int k = 1; k <= P.K + 1; ++k) P.r.push_back(profile_r(k));
    P.mu_map.clear();
    std::vector<nt::PrimePower> f;
    if (yy >= 2.0) {
      for (auto p : nt::sieve_primes(static_cast<std::uint64_t>(std::floor(yy)))) {
        // mu_p = k on ]y/r_{k+1}, y/r_k], and K below y/r_K
        int mu = P.K;
        for (int k = 1; k < P.K; ++k) {
          if (p > yy / P.r[k] && p <= yy / P.r[k - 1]) {
            mu = k;
            break;
          }
        }
        P.mu_map.push_back({p, mu});
        f.push_back({p, static_cast<std::uint32_t>(mu)});
      }
    }
    P.D = FactoredInt::from_factors(std::move(f));
    P.tau_D = nt::arith_fn(P.D, nt::ArithFn::tau);
  };

  build(y, prof);
  if (prof.tau_D > N) {
    // The asymptotic constraint overshoots at finite N; take the largest y
    // whose profile still has tau(D) <= N.
    double lo = 2.0, hi = y;
    ExponentProfile probe;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      build(mid, probe);
      if (probe.tau_D <= N)
        lo = mid;
      else
        hi = mid;
    }
    build(lo, prof);
    prof.y_shrunk = true;
  }
  const double tau = prof.tau_D.convert_to<double>();
  prof.log_ratio = std::log(divisor_set_sum(prof.D, GalExponent(1, 2)) / tau);
  prof.normalized_exponent = prof.log_ratio / std::sqrt(L1 / L2);
  return prof;
}

PrimorialRow primorial_row(std::uint64_t N) {
  if (N < 16) throw DomainError("primorial_row: N >= 16 required");
  PrimorialRow row{};
  row.N = N;
  std::vector<nt::PrimePower> f;
  BigInt tau = 1;
  for (auto p : nt::small_primes()) {
    if (tau * 2 > N) break;
    tau *= 2;
    f.push_back({p, 1});
  }
  auto D = FactoredInt::from_factors(std::move(f));
  row.omega = static_cast<int>(D.factors().size());
  row.tau = tau;
  const double t = tau.convert_to<double>();
  row.log_ratio = std::log(divisor_set_sum(D, GalExponent(1, 2)) / t);
  auto b = divisor_set_bounds(D);
  row.lower_log = std::log(b.lower_sqfree / t);
  row.upper_log = std::log(b.upper_sqfree / t);
  const double L1 = std::log(static_cast<double>(N));
  row.normalized = row.log_ratio / std::sqrt(L1 / std::log(L1));
  return row;
}

}  // namespace galsum::extremal
