#include <algorithm>

#include "galsum/error.hpp"
#include "galsum/nt.hpp"

namespace galsum::nt {

IntegerSet::IntegerSet(std::vector<FactoredInt> elems) : elems_(std::move(elems)) {
  std::sort(elems_.begin(), elems_.end());
  for (std::size_t i = 1; i < elems_.size(); ++i)
    if (elems_[i] == elems_[i - 1])
      throw ValidationError("IntegerSet: duplicate element " + elems_[i].str());
}

IntegerSet IntegerSet::from_values(const std::vector<std::uint64_t>& values) {
  std::vector<FactoredInt> v;
  v.reserve(values.size());
  for (auto x : values) v.push_back(factorize(x));
  return IntegerSet(std::move(v));
}

bool IntegerSet::contains(const BigInt& v) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), v,
                             [](const FactoredInt& a, const BigInt& b) { return a.value() < b; });
  return it != elems_.end() && it->value() == v;
}

std::uint64_t IntegerSet::largest_prime() const {
  std::uint64_t p = 1;
  for (auto& m : elems_) p = std::max(p, m.largest_prime());
  return p;
}

bool IntegerSet::squarefree_all() const {
  if (!sqfree_)
    sqfree_ = std::all_of(elems_.begin(), elems_.end(), [](auto& m) { return m.squarefree(); });
  return *sqfree_;
}

bool IntegerSet::divisor_closed() const {
  if (divclosed_) return *divclosed_;
  bool ok = true;
  // Closure under m -> m/p for every p | m implies closure under all divisors.
  for (auto& m : elems_) {
    for (auto [p, e] : m.factors()) {
      if (!contains(m.value() / p)) {
        ok = false;
        break;
      }
    }
    if (!ok) break;
  }
  divclosed_ = ok;
  return ok;
}

bool IntegerSet::complete() const {
  if (complete_) return *complete_;
  // Any admissible relabelling q_j <= p_j factors into single moves that
  // swap one prime for a smaller prime not already present, so checking
  // those moves over primes up to the largest one in use is enough.
  bool ok = true;
  const std::uint64_t pmax = largest_prime();
  std::vector<std::uint64_t> primes;
  if (pmax >= 2) primes = sieve_primes(pmax);
  for (auto& m : elems_) {
    for (auto [p, e] : m.factors()) {
      for (std::uint64_t q : primes) {
        if (q >= p) break;
        if (m.valuation(q) != 0) continue;
        BigInt qe = 1, pe = 1;
        for (std::uint32_t k = 0; k < e; ++k) qe *= q, pe *= p;
        if (!contains(m.value() / pe * qe)) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (!ok) break;
  }
  complete_ = ok;
  return ok;
}

std::string IntegerSet::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (i) s += ",";
    s += elems_[i].str();
  }
  return s + "}";
}

}  // namespace galsum::nt
