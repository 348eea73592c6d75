#include <algorithm>
#include <cmath>

#include <boost/multiprecision/miller_rabin.hpp>

#include "galsum/error.hpp"
#include "galsum/nt.hpp"

namespace galsum::nt {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool strong_probable_prime(u64 n, u64 a, u64 d, int s) {
  a %= n;
  if (a == 0) return true;
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
  if (limit < 2) throw EmptyRangeError("sieve_primes: limit must be >= 2");
  if (limit > (1ull << 36)) throw CapacityError("sieve_primes: limit too large");
  // odd-only sieve
  const u64 half = (limit - 1) / 2;  // index i <-> 2i+1, i in [1, half]
  std::vector<bool> composite(half + 1, false);
  for (u64 i = 1; (2 * i + 1) * (2 * i + 1) <= limit; ++i) {
    if (composite[i]) continue;
    const u64 p = 2 * i + 1;
    for (u64 j = (p * p - 1) / 2; j <= half; j += p) composite[j] = true;
  }
  std::vector<u64> out;
  if (limit >= 2) out.push_back(2);
  for (u64 i = 1; i <= half; ++i)
    if (!composite[i]) out.push_back(2 * i + 1);
  return out;
}

const std::vector<std::uint64_t>& small_primes() {
  static const std::vector<u64> table = sieve_primes(1'000'000);
  return table;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 41 * 41) return true;
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // Deterministic base set for all 64-bit n (Jim Sinclair).
  for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull})
    if (!strong_probable_prime(n, a, d, s)) return false;
  return true;
}

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  if (n <= std::numeric_limits<u64>::max()) return is_prime(static_cast<u64>(n));
  return boost::multiprecision::miller_rabin_test(n, 32);
}

std::uint64_t next_prime(std::uint64_t n) {
  u64 c = n + 1;
  if (c <= 2) return 2;
  if (c % 2 == 0) ++c;
  while (!is_prime(c)) c += 2;
  return c;
}

std::uint64_t nth_prime(std::uint64_t k) {
  if (k == 0) throw DomainError("nth_prime: index starts at 1");
  const auto& sp = small_primes();
  if (k <= sp.size()) return sp[k - 1];
  u64 p = sp.back();
  for (u64 i = sp.size(); i < k; ++i) p = next_prime(p);
  return p;
}

std::uint64_t prime_pi(std::uint64_t x) {
  const auto& sp = small_primes();
  if (x <= sp.back()) return std::upper_bound(sp.begin(), sp.end(), x) - sp.begin();
  auto all = sieve_primes(x);
  return all.size();
}

}  // namespace galsum::nt
