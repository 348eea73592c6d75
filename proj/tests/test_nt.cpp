#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <set>

#include "galsum/error.hpp"
#include "galsum/nt.hpp"
#include "oracles.hpp"

using namespace galsum;
using namespace galsum::nt;
using oracle::u64;

namespace {

// Every way to replace the primes of m by distinct primes q_i <= p_i.
bool complete_brute(const std::vector<u64>& v) {
  std::set<u64> S(v.begin(), v.end());
  for (u64 m : v) {
    const auto f = factorize(m);
    const auto& fs = f.factors();
    std::vector<u64> used;
    std::function<bool(std::size_t, u64)> rec = [&](std::size_t i, u64 acc) {
      if (i == fs.size()) return S.count(acc) > 0;
      for (u64 q = 2; q <= fs[i].p; ++q) {
        if (!oracle::is_prime(q) || std::find(used.begin(), used.end(), q) != used.end()) continue;
        u64 pw = 1;
        for (std::uint32_t e = 0; e < fs[i].e; ++e) pw *= q;
        used.push_back(q);
        const bool ok = rec(i + 1, acc * pw);
        used.pop_back();
        if (!ok) return false;
      }
      return true;
    };
    if (!rec(0, 1)) return false;
  }
  return true;
}

bool divisor_closed_brute(const std::vector<u64>& v) {
  std::set<u64> S(v.begin(), v.end());
  for (u64 m : v)
    for (u64 d : oracle::divisors(m))
      if (!S.count(d)) return false;
  return true;
}

}  // namespace

TEST_CASE("sieve matches trial division") {
  CHECK(sieve_primes(10) == std::vector<std::uint64_t>{2, 3, 5, 7});
  CHECK(sieve_primes(2) == std::vector<std::uint64_t>{2});
  CHECK_THROWS_AS(sieve_primes(1), EmptyRangeError);
  std::size_t count = 0;
  for (u64 n = 2; n <= 1'000'000; ++n)
    if (oracle::is_prime(n)) ++count;
  CHECK(sieve_primes(1'000'000).size() == count);
  CHECK(count == 78498);
  const auto small = sieve_primes(5000);
  for (u64 n = 0; n <= 5000; ++n) CHECK(std::binary_search(small.begin(), small.end(), n) == oracle::is_prime(n));
}

TEST_CASE("prime helpers") {
  CHECK(nth_prime(1) == 2);
  CHECK(nth_prime(100) == 541);
  CHECK(next_prime(13) == 17);
  CHECK(prime_pi(100) == 25);
  CHECK(is_prime(BigInt("170141183460469231731687303715884105727")));  // 2^127 - 1
  CHECK_FALSE(is_prime(BigInt("170141183460469231731687303715884105729")));
}

TEST_CASE("factorize examples") {
  CHECK(factorize(std::uint64_t{1}).is_one());
  CHECK(factorize(std::uint64_t{1}).value() == 1);
  const auto f12 = factorize(std::uint64_t{12});
  CHECK(f12.factors() == std::vector<PrimePower>{{2, 2}, {3, 1}});
  const auto big = factorize(BigInt(1) << 40);
  CHECK(big.factors() == std::vector<PrimePower>{{2, 40}});
  const auto f = factorize(parse_bigint("2^40*3"));
  CHECK(f.factors() == std::vector<PrimePower>{{2, 40}, {3, 1}});
  CHECK(f.value() == (BigInt(1) << 40) * 3);
  CHECK_THROWS_AS(factorize(std::uint64_t{0}), DomainError);
  // a product of two primes near 10^9 needs the rho splitter
  const auto pq = factorize(parse_bigint("1000000007*998244353"));
  CHECK(pq.factors() == std::vector<PrimePower>{{998244353, 1}, {1000000007, 1}});
}

TEST_CASE("factorize multiplies back (random up to 1e12)") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<u64> d(1, 1'000'000'000'000ull);
  for (int i = 0; i < 2000; ++i) {
    const u64 n = d(rng);
    const auto f = factorize(n);
    BigInt back = 1;
    std::uint64_t prev = 1;
    for (auto [p, e] : f.factors()) {
      CHECK(p > prev);
      CHECK(e >= 1);
      CHECK(oracle::is_prime(p));
      prev = p;
      for (std::uint32_t k = 0; k < e; ++k) back *= p;
    }
    CHECK(back == n);
    CHECK(f.value() == n);
  }
}

TEST_CASE("from_factors validates") {
  CHECK_THROWS(FactoredInt::from_factors({{3, 1}, {2, 1}}));
  CHECK_THROWS(FactoredInt::from_factors({{2, 0}}));
  CHECK_THROWS(FactoredInt::from_factors({{4, 1}}));
  CHECK(FactoredInt::from_factors({{2, 1}, {5, 2}}).value() == 50);
}

TEST_CASE("arithmetic functions") {
  auto F = [](u64 n) { return factorize(n); };
  CHECK(arith_fn(F(12), ArithFn::phi) == 4);
  CHECK(arith_fn(F(30), ArithFn::mu) == -1);
  CHECK(arith_fn(F(12), ArithFn::squarefree_kernel) == 6);
  CHECK(arith_fn(F(1), ArithFn::mu) == 1);
  for (u64 n = 1; n <= 3000; ++n) {
    const auto f = F(n);
    u64 phi = 0;
    for (u64 k = 1; k <= n; ++k) phi += std::gcd(k, n) == 1;
    CHECK(arith_fn(f, ArithFn::phi) == phi);
    CHECK(arith_fn(f, ArithFn::tau) == oracle::divisors(n).size());
    int omega = 0, Omega = 0;
    bool sqfree = true;
    u64 rad = 1, m = n;
    for (u64 p = 2; p <= m; ++p) {
      if (m % p) continue;
      ++omega;
      rad *= p;
      int e = 0;
      while (m % p == 0) m /= p, ++e;
      Omega += e;
      if (e > 1) sqfree = false;
    }
    CHECK(arith_fn(f, ArithFn::omega) == omega);
    CHECK(arith_fn(f, ArithFn::Omega) == Omega);
    CHECK(arith_fn(f, ArithFn::squarefree_kernel) == rad);
    CHECK(arith_fn(f, ArithFn::mu) == (sqfree ? (omega % 2 ? -1 : 1) : 0));
  }
}

TEST_CASE("multiplicativity on random coprime pairs") {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<u64> d(1, 1'000'000);
  int tested = 0;
  while (tested < 500) {
    const u64 a = d(rng), b = d(rng);
    if (std::gcd(a, b) != 1) continue;
    ++tested;
    for (auto fn : {ArithFn::phi, ArithFn::mu, ArithFn::tau})
      CHECK(arith_fn(factorize(a * b), fn) == arith_fn(factorize(a), fn) * arith_fn(factorize(b), fn));
  }
}

TEST_CASE("gcd_lcm") {
  auto F = [](u64 n) { return factorize(n); };
  auto [g, l] = gcd_lcm(F(12), F(18));
  CHECK(g.value() == 6);
  CHECK(l.value() == 36);
  auto [g1, l1] = gcd_lcm(F(1), F(35));
  CHECK(g1.value() == 1);
  CHECK(l1.value() == 35);
  auto [g2, l2] = gcd_lcm(F(343), F(16807));
  CHECK(g2.value() == 343);
  CHECK(l2.value() == 16807);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<u64> d(1, 1'000'000'000);
  for (int i = 0; i < 1000; ++i) {
    const u64 a = d(rng), b = d(rng);
    auto [gg, ll] = gcd_lcm(F(a), F(b));
    CHECK(gg.value() == std::gcd(a, b));
    CHECK(gg.value() * ll.value() == BigInt(a) * b);
  }
}

TEST_CASE("log_gcd_ratio") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<u64> d(1, 1'000'000);
  for (int i = 0; i < 500; ++i) {
    const u64 a = d(rng), b = d(rng);
    const u64 g = std::gcd(a, b);
    const double expect = std::log(static_cast<double>(a / g)) + std::log(static_cast<double>(b / g));
    CHECK(log_gcd_ratio(factorize(a), factorize(b)) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("IntegerSet structure and flags") {
  CHECK_THROWS_AS(IntegerSet::from_values({3, 1, 3}), ValidationError);
  const auto M = IntegerSet::from_values({6, 1, 3, 2});
  CHECK(M.size() == 4);
  CHECK(M[0].value() == 1);
  CHECK(M[3].value() == 6);
  CHECK(M.contains(3));
  CHECK_FALSE(M.contains(4));
  CHECK(M.divisor_closed());
  CHECK(M.complete());
  CHECK(M.squarefree_all());
  CHECK(M.cached_divisor_closed() == true);

  CHECK(IntegerSet::from_values({1, 3}).complete() == false);
  CHECK(IntegerSet::from_values({1, 2, 3, 5, 6, 10, 15, 30}).divisor_closed());

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> sz(1, 8);
  for (int i = 0; i < 400; ++i) {
    auto v = i % 2 ? oracle::random_set(rng, sz(rng), 40) : oracle::random_divisor_closed(rng, 2, 60);
    const auto S = IntegerSet::from_values(v);
    CHECK(S.divisor_closed() == divisor_closed_brute(v));
    CHECK(S.complete() == complete_brute(v));
    // cached flags agree with recomputation
    const auto S2 = IntegerSet::from_values(v);
    CHECK(S.cached_complete() == S2.complete());
  }
}

TEST_CASE("parse_bigint") {
  CHECK(parse_bigint("2^10") == 1024);
  CHECK(parse_bigint("3*5^2") == 75);
  CHECK(parse_bigint("1_000") == 1000);
  CHECK_THROWS(parse_bigint(""));
  CHECK_THROWS(parse_bigint("12a"));
}
