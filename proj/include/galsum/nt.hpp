#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace galsum {

using BigInt = boost::multiprecision::cpp_int;

namespace nt {

struct PrimePower {
  std::uint64_t p;
  std::uint32_t e;
  bool operator==(const PrimePower&) const = default;
};

// Positive integer together with its factorization. Primes are stored as
// 64-bit words: every integer this library builds is smooth, and cofactors
// with a prime factor beyond 2^64 are rejected by factorize().
class FactoredInt {
 public:
  FactoredInt() : value_(1) {}

  // Validates ordering/exponents and computes the value.
  static FactoredInt from_factors(std::vector<PrimePower> factors);
  static FactoredInt prime(std::uint64_t p) { return from_factors({{p, 1}}); }

  const BigInt& value() const { return value_; }
  const std::vector<PrimePower>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }

  std::optional<std::uint64_t> to_u64() const;
  double log() const;  // natural log of the value
  double to_double() const;
  std::uint32_t valuation(std::uint64_t p) const;
  std::uint64_t largest_prime() const { return factors_.empty() ? 1 : factors_.back().p; }
  bool squarefree() const;
  bool divides(const FactoredInt& other) const;
  bool coprime_to(const FactoredInt& other) const;
  FactoredInt divided_by(const FactoredInt& d) const;  // requires d | *this
  std::vector<FactoredInt> divisors() const;            // ascending
  std::string str() const;

  friend FactoredInt operator*(const FactoredInt& a, const FactoredInt& b);
  friend bool operator==(const FactoredInt& a, const FactoredInt& b) { return a.value_ == b.value_; }
  friend bool operator<(const FactoredInt& a, const FactoredInt& b) { return a.value_ < b.value_; }

 private:
  BigInt value_;
  std::vector<PrimePower> factors_;
};

// Sum over primes p of |v_p(a) - v_p(b)| log p, i.e. log([a,b]/(a,b)).
double log_gcd_ratio(const FactoredInt& a, const FactoredInt& b);

// Ordered, duplicate-free set of factored integers with lazily cached
// structural flags.
class IntegerSet {
 public:
  IntegerSet() = default;
  // Sorts; throws ValidationError on duplicate values.
  explicit IntegerSet(std::vector<FactoredInt> elems);
  static IntegerSet from_values(const std::vector<std::uint64_t>& values);

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const FactoredInt& operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<FactoredInt>& elements() const { return elems_; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  bool contains(const BigInt& v) const;
  std::uint64_t largest_prime() const;

  bool squarefree_all() const;
  bool divisor_closed() const;
  // Closed under replacing the primes of an element by distinct smaller
  // primes, keeping exponents.
  bool complete() const;

  std::optional<bool> cached_squarefree() const { return sqfree_; }
  std::optional<bool> cached_divisor_closed() const { return divclosed_; }
  std::optional<bool> cached_complete() const { return complete_; }

  std::string str() const;

 private:
  std::vector<FactoredInt> elems_;
  mutable std::optional<bool> sqfree_, divclosed_, complete_;
};

// --- primes -----------------------------------------------------------------

// All primes <= limit (limit >= 2, else EmptyRangeError).
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit);

// Shared read-only table of the primes below 10^6.
const std::vector<std::uint64_t>& small_primes();

bool is_prime(std::uint64_t n);
bool is_prime(const BigInt& n);
std::uint64_t next_prime(std::uint64_t n);  // smallest prime > n
std::uint64_t nth_prime(std::uint64_t k);   // 1-based: nth_prime(1) == 2
std::uint64_t prime_pi(std::uint64_t x);

// --- factorization and arithmetic functions ----------------------------------

FactoredInt factorize(const BigInt& n);
FactoredInt factorize(std::uint64_t n);

enum class ArithFn { phi, mu, tau, omega, Omega, squarefree_kernel };

BigInt arith_fn(const FactoredInt& n, ArithFn which);
std::optional<ArithFn> parse_arith_fn(const std::string& name);

std::pair<FactoredInt, FactoredInt> gcd_lcm(const FactoredInt& a, const FactoredInt& b);

BigInt parse_bigint(const std::string& s);

}  // namespace nt
}  // namespace galsum
