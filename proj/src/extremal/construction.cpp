#include <algorithm>
#include <cmath>
#include <sstream>

#include "galsum/error.hpp"
#include "galsum/extremal.hpp"

namespace galsum::extremal {

namespace {

constexpr double kE = 2.718281828459045;
constexpr double kMaxDpWork = 4e9;

BigInt binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

int even_floor(double x) {
  const auto f = static_cast<long long>(std::floor(x));
  return static_cast<int>(f - (((f % 2) + 2) % 2));
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

void ConstructionParams::validate() const {
  if (N < 1000) throw ValidationError("N >= 1000 required (got " + std::to_string(N) + ")");
  if (!(u > 1.0 && u <= kE + 1e-12)) throw ValidationError("u must lie in (1, e] (got " + fmt(u) + ")");
  if (!(a > 1.0) || !std::isfinite(a)) throw ValidationError("a > 1 required (got " + fmt(a) + ")");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ValidationError("gamma must lie in (0, 1) (got " + fmt(gamma) + ")");
  if (!(alpha_res > 0.0) || !std::isfinite(alpha_res))
    throw ValidationError("alpha_res > 0 required (got " + fmt(alpha_res) + ")");
  if (!(a * gamma * std::log(u) < 1.0))
    throw ValidationError("a*gamma*log(u) < 1 required (got " + fmt(a * gamma * std::log(u)) + ")");
  const double L3 = std::log(std::log(std::log(static_cast<double>(N))));
  if (!(L3 >= 0.1)) throw ValidationError("log3 N >= 0.1 required");
}

double block_gal_sum(const std::vector<std::uint64_t>& primes, int twos, int zeros, bool squarefree) {
  if (primes.empty()) return 1.0;
  if (squarefree) twos = 0;
  const int A = twos + 1, Z = zeros + 1;
  const double work = static_cast<double>(primes.size()) * A * A * Z * Z * 9.0;
  if (work > kMaxDpWork) throw CapacityError("block_gal_sum: budget too large for the exact DP");
  // state (twos_m, zeros_m, twos_n, zeros_n)
  auto idx = [&](int a2, int a0, int b2, int b0) { return ((a2 * Z + a0) * A + b2) * Z + b0; };
  std::vector<double> dp(static_cast<std::size_t>(A) * Z * A * Z, 0.0), nx(dp.size());
  dp[idx(0, 0, 0, 0)] = 1.0;
  const int emax = squarefree ? 1 : 2;
  for (auto p : primes) {
    const double w[3] = {1.0, 1.0 / std::sqrt(static_cast<double>(p)), 1.0 / static_cast<double>(p)};
    std::fill(nx.begin(), nx.end(), 0.0);
    for (int a2 = 0; a2 < A; ++a2)
      for (int a0 = 0; a0 < Z; ++a0)
        for (int b2 = 0; b2 < A; ++b2)
          for (int b0 = 0; b0 < Z; ++b0) {
            const double v = dp[idx(a2, a0, b2, b0)];
            if (v == 0.0) continue;
            for (int e = 0; e <= emax; ++e) {
              const int na2 = a2 + (e == 2), na0 = a0 + (e == 0);
              if (na2 >= A || na0 >= Z) continue;
              for (int f = 0; f <= emax; ++f) {
                const int nb2 = b2 + (f == 2), nb0 = b0 + (f == 0);
                if (nb2 >= A || nb0 >= Z) continue;
                nx[idx(na2, na0, nb2, nb0)] += v * w[std::abs(e - f)];
              }
            }
          }
    dp.swap(nx);
  }
  double s = 0.0;
  for (double v : dp) s += v;
  return s;
}

BigInt block_cardinality(std::size_t P, int twos, int zeros, bool squarefree) {
  if (P == 0) return 1;
  BigInt c = 0;
  if (squarefree) {
    for (int h = 0; h <= zeros && static_cast<std::size_t>(h) <= P; ++h) c += binom(P, h);
    return c;
  }
  for (int j = 0; j <= twos && static_cast<std::size_t>(j) <= P; ++j)
    for (int h = 0; h <= zeros && static_cast<std::size_t>(j + h) <= P; ++h) c += binom(P, j) * binom(P - j, h);
  return c;
}

std::vector<FactoredInt> block_elements(const std::vector<std::uint64_t>& primes, int twos, int zeros,
                                        bool squarefree) {
  std::vector<FactoredInt> out;
  std::vector<nt::PrimePower> cur;
  const int emax = squarefree ? 1 : 2;
  // depth-first over exponent vectors
  auto rec = [&](auto&& self, std::size_t i, int t, int z) -> void {
    if (i == primes.size()) {
      out.push_back(FactoredInt::from_factors(cur));
      return;
    }
    for (int e = 0; e <= emax; ++e) {
      const int nt2 = t + (e == 2), nz = z + (e == 0);
      if (nt2 > twos || nz > zeros) continue;
      if (e) cur.push_back({primes[i], static_cast<std::uint32_t>(e)});
      self(self, i + 1, nt2, nz);
      if (e) cur.pop_back();
    }
  };
  rec(rec, 0, 0, 0);
  return out;
}

ConstructionReport construct_extremal_set(const ConstructionParams& params) {
  params.validate();
  ConstructionReport rep;
  rep.params = params;
  const double N = static_cast<double>(params.N);
  rep.L1 = std::log(N);
  rep.L2 = std::log(rep.L1);
  rep.L3 = std::log(rep.L2);
  rep.K = static_cast<int>(std::floor(std::pow(rep.L2, params.gamma) + 1e-12));
  const double base = rep.L1 * rep.L2;
  const double top = std::pow(params.u, rep.K + 1) * base;
  auto all = nt::sieve_primes(static_cast<std::uint64_t>(std::floor(top)) + 1);

  for (int k = 1; k <= rep.K; ++k) {
    Block b;
    b.k = k;
    b.lower = std::pow(params.u, k) * base;
    b.upper = std::pow(params.u, k + 1) * base;
    for (auto p : all)
      if (p > b.lower && p <= b.upper) b.primes.push_back(p);
    b.N_k = 1;
    for (auto p : b.primes) b.N_k *= p;
    rep.blocks.push_back(std::move(b));
  }

  auto budgets = [&](double a, bool note) {
    std::vector<int> J;
    for (auto& b : rep.blocks) {
      const int k = b.k;
      int j = 2 * static_cast<int>(std::floor(a * rep.L1 / (2.0 * k * k * rep.L3)));
      const int cap = even_floor(4.0 * b.primes.size() / 3.0);
      if (note) {
        b.J_formula = j;
        if (j > cap) {
          rep.warnings.push_back("J_" + std::to_string(k) + " clamped from " + std::to_string(j) +
                                 " to " + std::to_string(cap) + " (4P_k/3)");
        }
      }
      j = std::min(j, std::max(cap, 0));
      if (note) b.J_clamped = j;
      J.push_back(j);
    }
    return J;
  };
  auto card_of = [&](const std::vector<int>& J) {
    BigInt c = 1;
    for (std::size_t i = 0; i < J.size(); ++i)
      c *= block_cardinality(rep.blocks[i].primes.size(), J[i] / 2, J[i] / 2, params.squarefree);
    return c;
  };

  auto J = budgets(params.a, true);
  rep.a_eff = params.a;
  if (card_of(J) > params.N) {
    // The asymptotic bound |M| <= N^{a gamma log u + o(1)} is not yet in
    // force; shrink a until the product set fits.
    double lo = 0.0, hi = params.a;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (card_of(budgets(mid, false)) <= params.N)
        lo = mid;
      else
        hi = mid;
    }
    rep.a_eff = lo;
    J = budgets(lo, false);
    rep.warnings.push_back("cardinality exceeded N at a = " + fmt(params.a) + "; using a_eff = " + fmt(lo));
  }

  const double sqrt_ratio = std::sqrt(rep.L1 / (rep.L2 * rep.L3));
  rep.cardinality = 1;
  rep.gal_sum_value = 1.0;
  rep.log_gal_sum = 0.0;
  for (std::size_t i = 0; i < rep.blocks.size(); ++i) {
    auto& b = rep.blocks[i];
    b.J = J[i];
    const int H = b.J / 2;
    b.cardinality = block_cardinality(b.primes.size(), H, H, params.squarefree);
    b.gal_sum = block_gal_sum(b.primes, H, H, params.squarefree);
    b.j_k = static_cast<int>(std::floor(params.alpha_res / b.k * sqrt_ratio));
    if (b.j_k > 0)
      b.T_k = 2.0 * kE * (std::sqrt(params.u) - 1.0) * std::pow(params.u, 0.5 * b.k) / b.j_k *
              std::sqrt(rep.L1 / rep.L2);
    const int Hv = H - b.j_k;
    b.V_k = Hv >= 0 ? block_cardinality(b.primes.size(), Hv, Hv, false) : BigInt(0);
    if (b.cardinality <= 1500) {
      auto elems = block_elements(b.primes, H, H, params.squarefree);
      const double direct = engine::gal_sum(IntegerSet(std::move(elems)), GalExponent(1, 2));
      b.explicit_checked = true;
      b.explicit_rel_err = std::abs(direct - b.gal_sum) / direct;
    }
    rep.cardinality *= b.cardinality;
    rep.gal_sum_value *= b.gal_sum;
    rep.log_gal_sum += std::log(b.gal_sum);
  }
  const double log_card = std::log(rep.cardinality.convert_to<double>());
  rep.normalized_exponent = (rep.log_gal_sum - log_card) / std::sqrt(rep.L1 * rep.L3 / rep.L2);
  rep.h = 2.0 * kE * kE * params.a * (std::sqrt(params.u) - 1.0) / (std::sqrt(params.u) + 1.0);
  rep.beta = 2.0 * params.gamma * params.alpha_res * std::log(rep.h / (params.alpha_res * params.alpha_res));

  if (rep.cardinality <= params.materialize_limit) {
    std::vector<FactoredInt> acc{FactoredInt()};
    for (auto& b : rep.blocks) {
      const int H = b.J / 2;
      auto elems = block_elements(b.primes, H, H, params.squarefree);
      std::vector<FactoredInt> next;
      next.reserve(acc.size() * elems.size());
      for (auto& x : acc)
        for (auto& y : elems) next.push_back(x * y);
      acc.swap(next);
    }
    rep.final_set = IntegerSet(std::move(acc));
    if (rep.cardinality <= params.verify_limit) {
      const double direct = engine::gal_sum(*rep.final_set, GalExponent(1, 2));
      rep.product_identity_checked = true;
      rep.product_identity_rel_err = std::abs(direct - rep.gal_sum_value) / direct;
    }
  }
  return rep;
}

}  // namespace galsum::extremal
